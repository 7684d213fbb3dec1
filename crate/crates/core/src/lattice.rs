//! Finite lattices, the congruence generated by simple intervals, m-dimension, and bounded
//! interval probes on intervals of pp-formulas.

use alloc::collections::BTreeSet;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{vecops, Matrix};
use crate::module::Module;
use crate::pp::{pp_type_generator, pp_type_generator_with, present, FreeRealization, PpFormula};
use crate::subspace::Subspace;

/// A finite lattice with precomputed order, join and meet tables.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FiniteLattice<T> {
    pub elements: Vec<T>,
    leq: Vec<Vec<bool>>,
    join: Vec<Vec<usize>>,
    meet: Vec<Vec<usize>>,
}

impl<T: Clone> FiniteLattice<T> {
    /// Builds the tables from a partial order; fails if some pair lacks a join or meet.
    pub fn from_order(elements: Vec<T>, leq: impl Fn(&T, &T) -> bool) -> Result<Self> {
        let n = elements.len();
        if n == 0 {
            return Err(Error::InvalidParameter("a lattice needs at least one element".into()));
        }
        let le: Vec<Vec<bool>> = (0..n).map(|i| (0..n).map(|j| leq(&elements[i], &elements[j])).collect()).collect();
        for i in 0..n {
            if !le[i][i] {
                return Err(Error::StructureViolation("order is not reflexive".into()));
            }
            for j in 0..n {
                if i != j && le[i][j] && le[j][i] {
                    return Err(Error::StructureViolation("order is not antisymmetric".into()));
                }
            }
        }
        let bound = |i: usize, j: usize, upper: bool| -> Option<usize> {
            let cands: Vec<usize> = (0..n)
                .filter(|&k| if upper { le[i][k] && le[j][k] } else { le[k][i] && le[k][j] })
                .collect();
            cands
                .iter()
                .copied()
                .find(|&c| cands.iter().all(|&d| if upper { le[c][d] } else { le[d][c] }))
        };
        let mut join = vec![vec![0; n]; n];
        let mut meet = vec![vec![0; n]; n];
        for i in 0..n {
            for j in 0..n {
                join[i][j] = bound(i, j, true).ok_or_else(|| Error::StructureViolation("missing join".into()))?;
                meet[i][j] = bound(i, j, false).ok_or_else(|| Error::StructureViolation("missing meet".into()))?;
            }
        }
        Ok(FiniteLattice { elements, leq: le, join, meet })
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.leq[i][j]
    }

    pub fn join(&self, i: usize, j: usize) -> usize {
        self.join[i][j]
    }

    pub fn meet(&self, i: usize, j: usize) -> usize {
        self.meet[i][j]
    }

    pub fn bottom(&self) -> usize {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[i][j])).expect("finite lattice has a bottom")
    }

    pub fn top(&self) -> usize {
        (0..self.len()).find(|&i| (0..self.len()).all(|j| self.leq[j][i])).expect("finite lattice has a top")
    }

    /// `i ⋖ j`: `i < j` with nothing strictly between.
    pub fn covers(&self, i: usize, j: usize) -> bool {
        i != j && self.leq[i][j] && (0..self.len()).all(|k| k == i || k == j || !(self.leq[i][k] && self.leq[k][j]))
    }

    /// Number of strict steps in a longest chain.
    pub fn height(&self) -> usize {
        let n = self.len();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by_key(|&i| (0..n).filter(|&j| self.leq[j][i]).count());
        let mut best = vec![0usize; n];
        for &i in &order {
            for j in 0..n {
                if j != i && self.leq[j][i] {
                    best[i] = best[i].max(best[j] + 1);
                }
            }
        }
        best.into_iter().max().unwrap_or(0)
    }

    pub fn is_modular(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| {
                (0..n).all(|c| !self.leq[a][c] || self.join(a, self.meet(b, c)) == self.meet(self.join(a, b), c))
            })
        })
    }

    pub fn is_distributive(&self) -> bool {
        let n = self.len();
        (0..n).all(|a| {
            (0..n).all(|b| (0..n).all(|c| self.meet(a, self.join(b, c)) == self.join(self.meet(a, b), self.meet(a, c))))
        })
    }

    /// Quotient by the congruence generated by all covering pairs.
    pub fn collapse_simple_intervals(&self) -> FiniteLattice<Vec<T>> {
        let n = self.len();
        let mut pairs = Vec::new();
        for i in 0..n {
            for j in 0..n {
                if self.covers(i, j) {
                    pairs.push((i, j));
                }
            }
        }
        let classes = self.congruence(&pairs);
        let k = classes.iter().copied().max().map_or(0, |m| m + 1);
        let mut members: Vec<Vec<T>> = vec![Vec::new(); k];
        let mut rep = vec![usize::MAX; k];
        for i in 0..n {
            members[classes[i]].push(self.elements[i].clone());
            if rep[classes[i]] == usize::MAX {
                rep[classes[i]] = i;
            }
        }
        let cls = classes.clone();
        let idx: Vec<usize> = (0..k).collect();
        let lat = FiniteLattice::from_order(idx, |&a, &b| cls[self.join(rep[a], rep[b])] == b)
            .expect("quotient of a lattice by a congruence is a lattice");
        FiniteLattice { elements: members, leq: lat.leq, join: lat.join, meet: lat.meet }
    }

    /// Class index of every element under the lattice congruence generated by `pairs`.
    pub fn congruence(&self, pairs: &[(usize, usize)]) -> Vec<usize> {
        let n = self.len();
        let mut uf = UnionFind::new(n);
        for &(a, b) in pairs {
            uf.union(a, b);
        }
        loop {
            let mut changed = false;
            // classes must be closed under joins and meets with any element, and convex
            for a in 0..n {
                for b in 0..n {
                    if a >= b || uf.find(a) != uf.find(b) {
                        continue;
                    }
                    for z in 0..n {
                        changed |= uf.union(self.join(a, z), self.join(b, z));
                        changed |= uf.union(self.meet(a, z), self.meet(b, z));
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let mut ids = vec![usize::MAX; n];
        let mut next = 0;
        let mut out = vec![0; n];
        for i in 0..n {
            let r = uf.find(i);
            if ids[r] == usize::MAX {
                ids[r] = next;
                next += 1;
            }
            out[i] = ids[r];
        }
        out
    }

    /// m-dimension: `k` when `k + 1` rounds of collapsing are needed to reach one point.
    pub fn mdim(&self) -> usize {
        let mut cur = self.skeleton().collapse_simple_intervals().skeleton();
        let mut rounds = 1;
        while cur.len() > 1 {
            cur = cur.collapse_simple_intervals().skeleton();
            rounds += 1;
        }
        rounds - 1
    }

    /// The same lattice with elements replaced by their indices.
    pub fn skeleton(&self) -> FiniteLattice<usize> {
        FiniteLattice {
            elements: (0..self.len()).collect(),
            leq: self.leq.clone(),
            join: self.join.clone(),
            meet: self.meet.clone(),
        }
    }
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind { parent: (0..n).collect() }
    }
    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }
    fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (lo, hi) = if ra < rb { (ra, rb) } else { (rb, ra) };
        self.parent[hi] = lo;
        true
    }
}

/// Order type of a well-ordered chain with a top element: `c` points, or `ω + c` with `c ≥ 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum ChainDescriptor {
    Finite(usize),
    OmegaPlus(usize),
}

impl ChainDescriptor {
    pub fn finite(c: usize) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidParameter("a chain lattice has at least one point".into()));
        }
        Ok(ChainDescriptor::Finite(c))
    }

    /// `ω + c`; `c ≥ 1` so that the chain has a top and is a lattice.
    pub fn omega_plus(c: usize) -> Result<Self> {
        if c == 0 {
            return Err(Error::InvalidParameter("ω + 0 has no top element".into()));
        }
        Ok(ChainDescriptor::OmegaPlus(c))
    }

    /// One round of collapsing covering pairs.
    ///
    /// Writing the order type as `ω·β + c₀`, every block `ω` (together with the finite run of
    /// successors above a limit point) is one class, giving `β + [c₀ > 0]` points. In this grammar
    /// a finite chain collapses to one point and `ω + c` collapses to a two-point chain.
    pub fn collapse(self) -> Self {
        match self {
            ChainDescriptor::Finite(_) => ChainDescriptor::Finite(1),
            ChainDescriptor::OmegaPlus(_) => ChainDescriptor::Finite(2),
        }
    }

    pub fn is_point(self) -> bool {
        self == ChainDescriptor::Finite(1)
    }

    pub fn mdim(self) -> usize {
        let mut rounds = 1;
        let mut cur = self.collapse();
        while !cur.is_point() {
            cur = cur.collapse();
            rounds += 1;
        }
        rounds - 1
    }
}

impl fmt::Display for ChainDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ChainDescriptor::Finite(c) => write!(f, "finite({c})"),
            ChainDescriptor::OmegaPlus(c) => write!(f, "omega_plus({c})"),
        }
    }
}

/// Result of closing `{φ(M) : φ ∈ gens}` under sum and meet.
#[derive(Clone, Debug)]
pub struct GeneratedSublattice<F: Field> {
    pub elements: Vec<Subspace<F>>,
    /// Some round added nothing new.
    pub complete: bool,
    /// Present when complete.
    pub lattice: Option<FiniteLattice<Subspace<F>>>,
}

pub fn generated_sublattice<F: Field>(
    module: &Module<F>,
    gens: &[PpFormula<F>],
    depth_cap: usize,
) -> Result<GeneratedSublattice<F>> {
    if let Some(g) = gens.iter().find(|g| g.n() != 1) {
        return Err(Error::ArityMismatch(1, g.n()));
    }
    let mut set: BTreeSet<Subspace<F>> = BTreeSet::new();
    for g in gens {
        set.insert(g.eval(module)?);
    }
    let mut complete = false;
    for _ in 0..depth_cap {
        let cur: Vec<_> = set.iter().cloned().collect();
        let mut added = false;
        for a in &cur {
            for b in &cur {
                added |= set.insert(a.sum(b)?);
                added |= set.insert(a.meet(b)?);
            }
        }
        if !added {
            complete = true;
            break;
        }
    }
    let elements: Vec<_> = set.into_iter().collect();
    let lattice = if complete && !elements.is_empty() {
        Some(FiniteLattice::from_order(elements.clone(), |a, b| a.leq(b).unwrap_or(false))?)
    } else {
        None
    };
    Ok(GeneratedSublattice { elements, complete, lattice })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Verdict {
    ShortWithinBound,
    NotShortWitness,
    Inconclusive,
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::ShortWithinBound => "SHORT_WITHIN_BOUND",
            Verdict::NotShortWitness => "NOT_SHORT_WITNESS",
            Verdict::Inconclusive => "INCONCLUSIVE",
        })
    }
}

/// One strict step `χ_i > χ_{i+1}` of a certified chain.
#[derive(Clone, Debug)]
pub struct ChainStep {
    /// Index into the universe of a module where the two values differ.
    pub separator: usize,
    pub upper_dim: usize,
    pub lower_dim: usize,
}

#[derive(Clone, Debug)]
pub struct ProbeReport<F: Field> {
    pub verdict: Verdict,
    /// Descending chain `φ = χ_0 > χ_1 > …`, each formula implying its predecessor.
    pub chain: Vec<PpFormula<F>>,
    pub steps: Vec<ChainStep>,
    pub budget: usize,
    /// Size of the sum/meet closure of the candidate values, when it was reached.
    pub closure_size: Option<usize>,
    /// Longest chain in that closure.
    pub closure_height: Option<usize>,
    pub universe_labels: Vec<String>,
}

impl<F: Field> ProbeReport<F> {
    pub fn chain_length(&self) -> usize {
        self.steps.len()
    }
}

/// Bounds for [`interval_probe`].
#[derive(Clone, Copy, Debug)]
pub struct ProbeLimits {
    /// Largest number of tuples enumerated in one `φ(M)`.
    pub max_elements: u64,
    /// Largest sum/meet closure of fingerprints explored.
    pub max_closure: usize,
}

impl Default for ProbeLimits {
    fn default() -> Self {
        ProbeLimits { max_elements: 1 << 10, max_closure: 4096 }
    }
}

type Fingerprint<F> = Vec<Subspace<F>>;

fn fp_leq<F: Field>(a: &Fingerprint<F>, b: &Fingerprint<F>) -> bool {
    a.iter().zip(b).all(|(x, y)| x.leq(y).unwrap_or(false))
}

fn fp_total<F: Field>(a: &Fingerprint<F>) -> usize {
    a.iter().map(|s| s.dim()).sum()
}

fn tuples_of<F: Field>(s: &Subspace<F>, limit: u64) -> Vec<Vec<F::Elem>> {
    let f = s.field();
    let small = f.order().and_then(|q| q.checked_pow(s.dim() as u32)).is_some_and(|t| t <= limit);
    if small {
        return s.elements();
    }
    let basis = s.basis_vectors();
    let mut out = basis.clone();
    for i in 0..basis.len() {
        for j in i + 1..basis.len() {
            out.push(vecops::add(f, &basis[i], &basis[j]));
        }
    }
    out
}

/// Searches `[ψ, φ]` for long strictly descending chains of formulas `φ ∧ (θ + ψ)`, with `θ`
/// ranging over pp-type generators of tuples in `φ(M)` for universe modules `M`.
pub fn interval_probe<F: Field>(
    psi: &PpFormula<F>,
    phi: &PpFormula<F>,
    universe: &[(String, Module<F>)],
    budget: usize,
    limits: ProbeLimits,
) -> Result<ProbeReport<F>> {
    if !psi.implies(phi)? {
        return Err(Error::Precondition("interval_probe needs ψ ≤ φ".into()));
    }
    let n = phi.n();
    let fingerprint = |chi: &PpFormula<F>| -> Result<Fingerprint<F>> {
        universe.iter().map(|(_, m)| chi.eval(m)).collect()
    };
    let fp_phi = fingerprint(phi)?;
    let fp_psi = fingerprint(psi)?;

    // candidates, deduplicated by fingerprint
    let mut cands: Vec<(PpFormula<F>, Fingerprint<F>)> = vec![(phi.clone(), fp_phi.clone())];
    let mut seen: BTreeSet<Fingerprint<F>> = BTreeSet::new();
    seen.insert(fp_phi.clone());
    for ((_, m), val) in universe.iter().zip(&fp_phi) {
        if m.dim() == 0 {
            continue;
        }
        let pres = present(m);
        let d = m.dim();
        for t in tuples_of(val, limits.max_elements) {
            if vecops::is_zero(m.field(), &t) {
                continue;
            }
            let tuple: Vec<Vec<F::Elem>> = (0..n).map(|i| t[i * d..(i + 1) * d].to_vec()).collect();
            let theta = pp_type_generator_with(m, &pres, &tuple)?;
            let chi = phi.pp_meet(&theta.pp_sum(psi)?)?;
            let fp = fingerprint(&chi)?;
            if seen.insert(fp.clone()) {
                cands.push((chi, fp));
            }
        }
    }
    if seen.insert(fp_psi.clone()) {
        cands.push((psi.clone(), fp_psi.clone()));
    }
    // longest certified chain from φ downwards
    let k = cands.len();
    let mut order: Vec<usize> = (0..k).collect();
    order.sort_by_key(|&i| core::cmp::Reverse(fp_total(&cands[i].1)));
    let reals: Vec<FreeRealization<F>> = cands.iter().map(|(c, _)| c.free_realization()).collect();
    let mut best: Vec<Option<(usize, usize)>> = vec![None; k]; // (length, predecessor)
    best[0] = Some((0, usize::MAX));
    for (pos, &v) in order.iter().enumerate() {
        for &u in &order[..pos] {
            let Some((lu, _)) = best[u] else { continue };
            let (fu, fv) = (&cands[u].1, &cands[v].1);
            if fu == fv || !fp_leq(fv, fu) {
                continue;
            }
            if best[v].is_some_and(|(lv, _)| lv > lu) {
                continue;
            }
            if reals[v].satisfies(&cands[u].0)? {
                best[v] = Some((lu + 1, u));
            }
        }
    }
    let end = (0..k).filter(|&i| best[i].is_some()).max_by_key(|&i| (best[i].unwrap().0, core::cmp::Reverse(i))).unwrap_or(0);
    let mut path = vec![end];
    while let Some((_, p)) = best[*path.last().unwrap()] {
        if p == usize::MAX {
            break;
        }
        path.push(p);
    }
    path.reverse();
    let mut steps = Vec::new();
    for w in path.windows(2) {
        let (fu, fv) = (&cands[w[0]].1, &cands[w[1]].1);
        let sep = fu.iter().zip(fv).position(|(a, b)| a != b).expect("strict step");
        steps.push(ChainStep { separator: sep, upper_dim: fu[sep].dim(), lower_dim: fv[sep].dim() });
    }
    let chain: Vec<PpFormula<F>> = path.iter().map(|&i| cands[i].0.clone()).collect();

    // closure of the fingerprints under componentwise sum and meet
    let mut closure: BTreeSet<Fingerprint<F>> = cands.iter().map(|(_, f)| f.clone()).collect();
    let mut complete = false;
    while closure.len() <= limits.max_closure {
        let cur: Vec<_> = closure.iter().cloned().collect();
        let mut added = false;
        'outer: for a in &cur {
            for b in &cur {
                let s: Fingerprint<F> = a.iter().zip(b).map(|(x, y)| x.sum(y)).collect::<Result<_>>()?;
                let m: Fingerprint<F> = a.iter().zip(b).map(|(x, y)| x.meet(y)).collect::<Result<_>>()?;
                added |= closure.insert(s);
                added |= closure.insert(m);
                if closure.len() > limits.max_closure {
                    break 'outer;
                }
            }
        }
        if !added {
            complete = true;
            break;
        }
    }
    let (closure_size, closure_height) = if complete {
        let elems: Vec<_> = closure.into_iter().collect();
        let lat = FiniteLattice::from_order(elems, |a, b| fp_leq(a, b))?;
        (Some(lat.len()), Some(lat.height()))
    } else {
        (None, None)
    };
    let verdict = if steps.len() > budget {
        Verdict::NotShortWitness
    } else if closure_height.is_some_and(|h| h <= budget) {
        Verdict::ShortWithinBound
    } else {
        Verdict::Inconclusive
    };
    Ok(ProbeReport {
        verdict,
        chain,
        steps,
        budget,
        closure_size,
        closure_height,
        universe_labels: universe.iter().map(|(l, _)| l.clone()).collect(),
    })
}

/// Probes whether the embedding `g: X → Y` is short: `φ` generates the pp-type of a generating
/// tuple of `X`, `ψ` that of its image in `Y`.
pub fn embedding_probe<F: Field>(
    x: &Module<F>,
    y: &Module<F>,
    g: &Matrix<F>,
    universe: &[(String, Module<F>)],
    budget: usize,
    limits: ProbeLimits,
) -> Result<ProbeReport<F>> {
    if !x.is_hom_to(y, g) || g.rank() != x.dim() {
        return Err(Error::Precondition("embedding_probe needs an injective module map".into()));
    }
    let gens = x.generating_set();
    let images: Vec<Vec<F::Elem>> = gens.iter().map(|v| g.mul_vec(v)).collect();
    let phi = pp_type_generator(x, &gens)?;
    let psi = pp_type_generator(y, &images)?;
    interval_probe(&psi, &phi, universe, budget, limits)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_dvr;
    use crate::field::PrimeField;
    use crate::module::Side;
    use alloc::sync::Arc;

    fn chain(n: usize) -> FiniteLattice<usize> {
        FiniteLattice::from_order((0..n).collect(), |a, b| a <= b).unwrap()
    }

    fn diamond() -> FiniteLattice<usize> {
        // 0 bottom, 4 top, 1..3 atoms
        FiniteLattice::from_order((0..5).collect(), |&a, &b| a == b || a == 0 || b == 4).unwrap()
    }

    #[test]
    fn finite_lattices_collapse_to_a_point() {
        assert_eq!(chain(1).collapse_simple_intervals().len(), 1);
        assert_eq!(chain(5).collapse_simple_intervals().len(), 1);
        assert_eq!(diamond().collapse_simple_intervals().len(), 1);
        assert!(diamond().is_modular());
        assert!(!diamond().is_distributive());
        assert_eq!(chain(4).mdim(), 0);
        assert_eq!(chain(4).height(), 3);
    }

    #[test]
    fn non_lattice_orders_are_rejected() {
        // two incomparable maximal elements
        assert!(FiniteLattice::from_order(vec![0, 1, 2], |&a, &b| a == b || a == 0).is_err());
    }

    #[test]
    fn chain_descriptors() {
        assert_eq!(ChainDescriptor::finite(3).unwrap().mdim(), 0);
        assert_eq!(ChainDescriptor::finite(1).unwrap().mdim(), 0);
        assert_eq!(ChainDescriptor::omega_plus(1).unwrap().mdim(), 1);
        assert!(ChainDescriptor::omega_plus(0).is_err());
        assert_eq!(ChainDescriptor::omega_plus(2).unwrap().collapse(), ChainDescriptor::Finite(2));
    }

    #[test]
    fn divisibility_chain_in_truncated_polynomials() {
        let f = PrimeField::gf2();
        let a = Arc::new(truncated_dvr(4, f).unwrap());
        let m = Module::regular(a.clone(), Side::Right);
        let gens: Vec<_> = ["x", "x^2", "x^3"]
            .iter()
            .map(|l| PpFormula::divisibility(a.clone(), Side::Right, &a.elem(l).unwrap()))
            .collect();
        let g = generated_sublattice(&m, &gens, 4).unwrap();
        assert!(g.complete);
        let lat = g.lattice.unwrap();
        assert_eq!(lat.len(), 3);
        assert_eq!(lat.height(), 2);
        assert!(lat.is_distributive());
    }

    #[test]
    fn equal_bounds_probe_is_short() {
        let f = PrimeField::gf2();
        let a = Arc::new(truncated_dvr(3, f).unwrap());
        let x = a.elem("x").unwrap();
        let phi = PpFormula::divisibility(a.clone(), Side::Right, &x);
        let uni = vec![(String::from("A"), Module::regular(a.clone(), Side::Right))];
        let r = interval_probe(&phi, &phi, &uni, 0, ProbeLimits::default()).unwrap();
        assert_eq!(r.verdict, Verdict::ShortWithinBound);
        assert_eq!(r.chain_length(), 0);
    }
}
