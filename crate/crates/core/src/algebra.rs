//! Finite-dimensional algebras given by structure constants, and path algebras of bound quivers.

use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{vecops, Matrix};
use crate::subspace::Subspace;

/// Coordinate vector of an algebra element in the algebra's basis.
pub type AlgElem<F> = Vec<<F as Field>::Elem>;

#[derive(Clone, PartialEq, Eq)]
pub struct Algebra<F: Field> {
    field: F,
    labels: Vec<String>,
    /// `mult[i][j]` = coordinates of `b_i * b_j`.
    mult: Vec<Vec<AlgElem<F>>>,
    unit: AlgElem<F>,
    generators: Vec<AlgElem<F>>,
    /// Complete set of orthogonal idempotents summing to 1 (vertices of a quiver), if known.
    idempotents: Vec<AlgElem<F>>,
}

impl<F: Field> fmt::Debug for Algebra<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Algebra(dim {} over {:?}: {:?})", self.dim(), self.field, self.labels)
    }
}

impl<F: Field> Algebra<F> {
    /// Builds an algebra from structure constants, checking associativity and the unit law.
    pub fn new(field: F, labels: Vec<String>, mult: Vec<Vec<AlgElem<F>>>, unit: AlgElem<F>) -> Result<Self> {
        let d = labels.len();
        if mult.len() != d || mult.iter().any(|row| row.len() != d || row.iter().any(|v| v.len() != d)) {
            return Err(Error::StructureViolation("structure constant table has the wrong shape".into()));
        }
        if unit.len() != d {
            return Err(Error::DimensionMismatch { expected: d, found: unit.len() });
        }
        let mut alg = Algebra { field, labels, mult, unit, generators: Vec::new(), idempotents: Vec::new() };
        alg.check_axioms()?;
        alg.generators = alg.compute_generators();
        Ok(alg)
    }

    fn check_axioms(&self) -> Result<()> {
        let d = self.dim();
        for i in 0..d {
            let bi = self.basis_elem(i);
            if self.mul(&self.unit, &bi) != bi || self.mul(&bi, &self.unit) != bi {
                return Err(Error::StructureViolation(format!("unit law fails on {}", self.labels[i])));
            }
            for j in 0..d {
                let bij = &self.mult[i][j];
                for k in 0..d {
                    let left = self.mul(bij, &self.basis_elem(k));
                    let right = self.mul(&bi, &self.mult[j][k]);
                    if left != right {
                        return Err(Error::StructureViolation(format!(
                            "associativity fails on ({}, {}, {})",
                            self.labels[i], self.labels[j], self.labels[k]
                        )));
                    }
                }
            }
        }
        Ok(())
    }

    /// Greedy generating set: basis elements not in the subalgebra generated so far.
    fn compute_generators(&self) -> Vec<AlgElem<F>> {
        let d = self.dim();
        let mut gens: Vec<AlgElem<F>> = Vec::new();
        let mut sub = self.generated_subalgebra(&gens);
        for i in 0..d {
            let b = self.basis_elem(i);
            if !sub.contains(&b) {
                gens.push(b);
                sub = self.generated_subalgebra(&gens);
            }
        }
        gens
    }

    fn generated_subalgebra(&self, gens: &[AlgElem<F>]) -> Subspace<F> {
        let f = self.field;
        let d = self.dim();
        let mut span = Subspace::from_vectors(f, d, core::slice::from_ref(&self.unit));
        loop {
            let mut vecs = span.basis_vectors();
            for v in span.basis_vectors() {
                for g in gens {
                    vecs.push(self.mul(&v, g));
                }
            }
            let next = Subspace::from_vectors(f, d, &vecs);
            if next == span {
                return span;
            }
            span = next;
        }
    }

    pub fn field(&self) -> F {
        self.field
    }
    pub fn dim(&self) -> usize {
        self.labels.len()
    }
    pub fn labels(&self) -> &[String] {
        &self.labels
    }
    pub fn unit(&self) -> &AlgElem<F> {
        &self.unit
    }
    /// Elements generating the algebra as a unital algebra.
    pub fn generators(&self) -> &[AlgElem<F>] {
        &self.generators
    }
    /// Orthogonal idempotents summing to 1 recorded at construction (empty when unknown).
    pub fn idempotents(&self) -> &[AlgElem<F>] {
        &self.idempotents
    }

    pub fn set_idempotents(&mut self, idem: Vec<AlgElem<F>>) -> Result<()> {
        let f = self.field;
        let d = self.dim();
        let mut sum = vecops::zero(f, d);
        for (i, e) in idem.iter().enumerate() {
            sum = vecops::add(f, &sum, e);
            for (j, e2) in idem.iter().enumerate() {
                let p = self.mul(e, e2);
                let expect = if i == j { e.clone() } else { vecops::zero(f, d) };
                if p != expect {
                    return Err(Error::StructureViolation("idempotents are not orthogonal".into()));
                }
            }
        }
        if sum != self.unit {
            return Err(Error::StructureViolation("idempotents do not sum to 1".into()));
        }
        self.idempotents = idem;
        Ok(())
    }

    pub fn basis_elem(&self, i: usize) -> AlgElem<F> {
        vecops::unit(self.field, self.dim(), i)
    }

    pub fn zero_elem(&self) -> AlgElem<F> {
        vecops::zero(self.field, self.dim())
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l == label)
    }

    pub fn elem(&self, label: &str) -> Option<AlgElem<F>> {
        self.index_of(label).map(|i| self.basis_elem(i))
    }

    pub fn product_of_basis(&self, i: usize, j: usize) -> &AlgElem<F> {
        &self.mult[i][j]
    }

    pub fn mul(&self, a: &[F::Elem], b: &[F::Elem]) -> AlgElem<F> {
        let f = self.field;
        let d = self.dim();
        let mut out = vecops::zero(f, d);
        for (i, x) in a.iter().enumerate() {
            if f.is_zero(x) {
                continue;
            }
            for (j, y) in b.iter().enumerate() {
                if f.is_zero(y) {
                    continue;
                }
                let c = f.mul(x, y);
                for (o, m) in out.iter_mut().zip(&self.mult[i][j]) {
                    if !f.is_zero(m) {
                        *o = f.add(o, &f.mul(&c, m));
                    }
                }
            }
        }
        out
    }

    pub fn add(&self, a: &[F::Elem], b: &[F::Elem]) -> AlgElem<F> {
        vecops::add(self.field, a, b)
    }

    pub fn sub(&self, a: &[F::Elem], b: &[F::Elem]) -> AlgElem<F> {
        vecops::sub(self.field, a, b)
    }

    pub fn scale(&self, s: &F::Elem, a: &[F::Elem]) -> AlgElem<F> {
        vecops::scale(self.field, s, a)
    }

    pub fn neg(&self, a: &[F::Elem]) -> AlgElem<F> {
        a.iter().map(|x| self.field.neg(x)).collect()
    }

    pub fn is_zero(&self, a: &[F::Elem]) -> bool {
        vecops::is_zero(self.field, a)
    }

    /// Matrix of `v ↦ v * a` on the algebra's coordinates.
    pub fn right_mult(&self, a: &[F::Elem]) -> Matrix<F> {
        let d = self.dim();
        let cols: Vec<_> = (0..d).map(|j| self.mul(&self.basis_elem(j), a)).collect();
        Matrix::from_cols(self.field, d, &cols).expect("square")
    }

    /// Matrix of `v ↦ a * v`.
    pub fn left_mult(&self, a: &[F::Elem]) -> Matrix<F> {
        let d = self.dim();
        let cols: Vec<_> = (0..d).map(|j| self.mul(a, &self.basis_elem(j))).collect();
        Matrix::from_cols(self.field, d, &cols).expect("square")
    }

    /// Human-readable form such as `a + 2*x^2`.
    pub fn format_elem(&self, a: &[F::Elem]) -> String {
        let f = self.field;
        let mut parts = Vec::new();
        for (i, c) in a.iter().enumerate() {
            if f.is_zero(c) {
                continue;
            }
            if f.is_one(c) {
                parts.push(self.labels[i].clone());
            } else {
                parts.push(format!("{}*{}", c, self.labels[i]));
            }
        }
        if parts.is_empty() {
            "0".to_string()
        } else {
            parts.join(" + ")
        }
    }

    /// Same algebra up to structure (labels, constants, unit).
    pub fn same_as(&self, other: &Self) -> bool {
        core::ptr::eq(self, other)
            || (self.field == other.field && self.labels == other.labels && self.mult == other.mult && self.unit == other.unit)
    }

    /// Replaces the basis labels (same length).
    pub fn relabel(&mut self, labels: Vec<String>) -> Result<()> {
        if labels.len() != self.dim() {
            return Err(Error::DimensionMismatch { expected: self.dim(), found: labels.len() });
        }
        self.labels = labels;
        Ok(())
    }
}

/// The truncated polynomial ring `k[x]/(x^N)`, basis `1, x, …, x^{N-1}`.
pub fn truncated_dvr<F: Field>(n: usize, field: F) -> Result<Algebra<F>> {
    if n == 0 {
        return Err(Error::InvalidParameter("truncation horizon N must be at least 1".into()));
    }
    let labels = (0..n).map(power_label).collect();
    let mult = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| if i + j < n { vecops::unit(field, n, i + j) } else { vecops::zero(field, n) })
                .collect()
        })
        .collect();
    let mut alg = Algebra::new(field, labels, mult, vecops::unit(field, n, 0))?;
    alg.set_idempotents(vec![vecops::unit(field, n, 0)])?;
    Ok(alg)
}

fn power_label(i: usize) -> String {
    match i {
        0 => "1".into(),
        1 => "x".into(),
        _ => format!("x^{i}"),
    }
}

/// An arrow `source → target` of a quiver.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Arrow {
    pub source: usize,
    pub target: usize,
    pub label: String,
}

/// A bound quiver: arrows, relations (linear combinations of parallel paths) and a path length cap.
///
/// Paths are written left to right: `p q` means first `p`, then `q` (so `t(p) = s(q)`),
/// matching right modules where `P(i) = e_i A`.
#[derive(Clone, Debug)]
pub struct QuiverPresentation<F: Field> {
    pub field: F,
    pub vertices: usize,
    pub arrows: Vec<Arrow>,
    /// Each relation is a list of (coefficient, arrow-index path).
    pub relations: Vec<Vec<(F::Elem, Vec<usize>)>>,
    pub path_length_cap: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
struct Path {
    vertex: usize,
    arrows: Vec<usize>,
}

impl<F: Field> QuiverPresentation<F> {
    fn source(&self, p: &[usize], v: usize) -> usize {
        p.first().map_or(v, |&a| self.arrows[a].source)
    }

    fn target(&self, p: &[usize], v: usize) -> usize {
        p.last().map_or(v, |&a| self.arrows[a].target)
    }

    fn composable(&self, p: &[usize]) -> bool {
        p.windows(2).all(|w| self.arrows[w[0]].target == self.arrows[w[1]].source)
    }

    fn label(&self, p: &Path) -> String {
        if p.arrows.is_empty() {
            return format!("e{}", p.vertex + 1);
        }
        let mut out = String::new();
        let mut i = 0;
        while i < p.arrows.len() {
            let a = p.arrows[i];
            let mut run = 1;
            while i + run < p.arrows.len() && p.arrows[i + run] == a {
                run += 1;
            }
            out.push_str(&self.arrows[a].label);
            if run > 1 {
                out.push_str(&format!("^{run}"));
            }
            i += run;
        }
        out
    }
}

/// Path algebra modulo relations, truncated at the path length cap.
///
/// Finite-dimensionality is verified by checking that every path of length equal to the cap lies
/// in the ideal generated by the relations inside the truncated path space. The truncation is
/// exact for admissible or homogeneous relations.
pub fn algebra_from_quiver<F: Field>(q: &QuiverPresentation<F>) -> Result<Algebra<F>> {
    let f = q.field;
    if q.path_length_cap == 0 {
        return Err(Error::InvalidParameter("path length cap must be at least 1".into()));
    }
    for a in &q.arrows {
        if a.source >= q.vertices || a.target >= q.vertices {
            return Err(Error::InvalidParameter(format!("arrow {} has an endpoint outside the quiver", a.label)));
        }
    }
    // every path of length <= cap
    let mut paths: Vec<Path> = (0..q.vertices).map(|v| Path { vertex: v, arrows: Vec::new() }).collect();
    let mut frontier = paths.clone();
    for _ in 0..q.path_length_cap {
        let mut next = Vec::new();
        for p in &frontier {
            let end = q.target(&p.arrows, p.vertex);
            for (ai, a) in q.arrows.iter().enumerate() {
                if a.source == end {
                    let mut arrows = p.arrows.clone();
                    arrows.push(ai);
                    next.push(Path { vertex: q.source(&arrows, 0), arrows });
                }
            }
        }
        paths.extend(next.iter().cloned());
        frontier = next;
    }
    // coordinates: longest paths first so that standard monomials are the short ones
    paths.sort_by(|a, b| b.arrows.len().cmp(&a.arrows.len()).then(a.cmp(b)));
    let index = |p: &[usize], v: usize| -> Option<usize> {
        paths.iter().position(|x| x.arrows == p && (!p.is_empty() || x.vertex == v))
    };
    let w = paths.len();

    // validate relations
    for (ri, rel) in q.relations.iter().enumerate() {
        let mut ends = None;
        for (_, p) in rel {
            if p.is_empty() {
                return Err(Error::MalformedRelation(format!("relation {ri} contains a trivial path")));
            }
            if p.iter().any(|&a| a >= q.arrows.len()) || !q.composable(p) {
                return Err(Error::MalformedRelation(format!("relation {ri} contains a non-composable path")));
            }
            let e = (q.source(p, 0), q.target(p, 0));
            if ends.is_some_and(|x| x != e) {
                return Err(Error::MalformedRelation(format!("relation {ri} mixes non-parallel paths")));
            }
            ends = Some(e);
        }
    }

    // two-sided ideal inside the truncated path space
    let mut gens = Vec::new();
    for rel in &q.relations {
        let (s, t) = {
            let p = &rel[0].1;
            (q.source(p, 0), q.target(p, 0))
        };
        for left in paths.iter().filter(|p| q.target(&p.arrows, p.vertex) == s) {
            for right in paths.iter().filter(|p| q.source(&p.arrows, p.vertex) == t) {
                let mut v = vecops::zero(f, w);
                let mut any = false;
                for (c, p) in rel {
                    let mut full = left.arrows.clone();
                    full.extend(p.iter().copied());
                    full.extend(right.arrows.iter().copied());
                    if full.len() > q.path_length_cap {
                        continue;
                    }
                    let idx = index(&full, s).expect("path enumerated");
                    v[idx] = f.add(&v[idx], c);
                    any = true;
                }
                if any {
                    gens.push(v);
                }
            }
        }
    }
    let ideal = Subspace::from_vectors(f, w, &gens);
    for (i, p) in paths.iter().enumerate() {
        if p.arrows.len() == q.path_length_cap && !ideal.contains(&vecops::unit(f, w, i)) {
            return Err(Error::InfiniteDimensional(q.path_length_cap));
        }
    }
    let basis_idx = ideal.non_pivots();
    let d = basis_idx.len();
    let coords = |v: &[F::Elem]| -> AlgElem<F> {
        let r = ideal.reduce(v);
        basis_idx.iter().map(|&i| r[i].clone()).collect()
    };
    let mut mult = vec![vec![vecops::zero(f, d); d]; d];
    for (bi, &i) in basis_idx.iter().enumerate() {
        for (bj, &j) in basis_idx.iter().enumerate() {
            let (p, r) = (&paths[i], &paths[j]);
            let pt = q.target(&p.arrows, p.vertex);
            let rs = if r.arrows.is_empty() { r.vertex } else { q.source(&r.arrows, 0) };
            if pt != rs {
                continue;
            }
            let mut full = p.arrows.clone();
            full.extend(r.arrows.iter().copied());
            if full.len() > q.path_length_cap {
                continue;
            }
            let v0 = if full.is_empty() { p.vertex } else { q.source(&full, 0) };
            let idx = index(&full, v0).expect("path enumerated");
            mult[bi][bj] = coords(&vecops::unit(f, w, idx));
        }
    }
    let mut labels: Vec<String> = basis_idx.iter().map(|&i| q.label(&paths[i])).collect();
    // basis order: trivial paths by vertex, then by path
    let mut order: Vec<usize> = (0..d).collect();
    order.sort_by(|&a, &b| {
        let (pa, pb) = (&paths[basis_idx[a]], &paths[basis_idx[b]]);
        pa.arrows.len().cmp(&pb.arrows.len()).then(pa.vertex.cmp(&pb.vertex)).then(pa.arrows.cmp(&pb.arrows))
    });
    let perm = |v: &AlgElem<F>| -> AlgElem<F> { order.iter().map(|&o| v[o].clone()).collect() };
    let mult: Vec<Vec<AlgElem<F>>> = order.iter().map(|&a| order.iter().map(|&b| perm(&mult[a][b])).collect()).collect();
    labels = order.iter().map(|&o| labels[o].clone()).collect();
    let mut unit = vecops::zero(f, d);
    let mut idem = Vec::new();
    for v in 0..q.vertices {
        let pos = order.iter().position(|&o| {
            let p = &paths[basis_idx[o]];
            p.arrows.is_empty() && p.vertex == v
        });
        let pos = pos.ok_or_else(|| Error::StructureViolation(format!("vertex {} vanishes modulo relations", v + 1)))?;
        unit[pos] = f.one();
        idem.push(vecops::unit(f, d, pos));
    }
    let mut alg = Algebra::new(f, labels, mult, unit)?;
    alg.set_idempotents(idem)?;
    Ok(alg)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn kronecker(f: PrimeField) -> Algebra<PrimeField> {
        let q = QuiverPresentation {
            field: f,
            vertices: 2,
            arrows: vec![
                Arrow { source: 0, target: 1, label: "a".into() },
                Arrow { source: 0, target: 1, label: "b".into() },
            ],
            relations: vec![],
            path_length_cap: 2,
        };
        algebra_from_quiver(&q).unwrap()
    }

    #[test]
    fn kronecker_has_four_paths() {
        let a = kronecker(PrimeField::gf2());
        assert_eq!(a.labels(), &["e1", "e2", "a", "b"]);
        let e1 = a.elem("e1").unwrap();
        let alpha = a.elem("a").unwrap();
        assert_eq!(a.mul(&e1, &alpha), alpha);
        assert!(a.is_zero(&a.mul(&alpha, &e1)));
        assert_eq!(a.idempotents().len(), 2);
    }

    #[test]
    fn single_vertex_is_the_field() {
        let f = PrimeField::gf2();
        let q = QuiverPresentation { field: f, vertices: 1, arrows: vec![], relations: vec![], path_length_cap: 1 };
        assert_eq!(algebra_from_quiver(&q).unwrap().dim(), 1);
    }

    #[test]
    fn loop_with_cubic_relation() {
        let f = PrimeField::gf2();
        let q = QuiverPresentation {
            field: f,
            vertices: 1,
            arrows: vec![Arrow { source: 0, target: 0, label: "x".into() }],
            relations: vec![vec![(f.one(), vec![0, 0, 0])]],
            path_length_cap: 3,
        };
        let a = algebra_from_quiver(&q).unwrap();
        // paths of length < 3 on one loop: e1, x, x^2
        assert_eq!(a.labels(), &["e1", "x", "x^2"]);
        let x = a.elem("x").unwrap();
        assert_eq!(a.mul(&x, &x), a.elem("x^2").unwrap());
        assert!(a.is_zero(&a.mul(&x, &a.elem("x^2").unwrap())));
    }

    #[test]
    fn free_loop_is_rejected() {
        let f = PrimeField::gf2();
        let q = QuiverPresentation {
            field: f,
            vertices: 1,
            arrows: vec![Arrow { source: 0, target: 0, label: "x".into() }],
            relations: vec![],
            path_length_cap: 4,
        };
        assert_eq!(algebra_from_quiver(&q), Err(Error::InfiniteDimensional(4)));
    }

    #[test]
    fn non_parallel_relation_is_rejected() {
        let f = PrimeField::gf2();
        let q = QuiverPresentation {
            field: f,
            vertices: 2,
            arrows: vec![
                Arrow { source: 0, target: 1, label: "a".into() },
                Arrow { source: 1, target: 1, label: "c".into() },
            ],
            relations: vec![vec![(f.one(), vec![0]), (f.one(), vec![1])]],
            path_length_cap: 3,
        };
        assert!(matches!(algebra_from_quiver(&q), Err(Error::MalformedRelation(_))));
    }

    #[test]
    fn truncated_dvr_laws() {
        let f = PrimeField::gf2();
        assert!(truncated_dvr(0, f).is_err());
        assert_eq!(truncated_dvr(1, f).unwrap().dim(), 1);
        let a = truncated_dvr(3, f).unwrap();
        let x = a.elem("x").unwrap();
        assert!(a.is_zero(&a.mul(&x, &a.elem("x^2").unwrap())));
        assert_eq!(a.generators().len(), 1);
    }
}
