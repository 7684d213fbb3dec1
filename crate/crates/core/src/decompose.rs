//! Krull-Schmidt decomposition of finite-dimensional modules.
//!
//! Splitting uses Fitting's lemma: for an endomorphism `f` of `M` (dim `d`), `M = im f^d ⊕ ker f^d`.
//! A summand is accepted as indecomposable only after its endomorphism ring is certified local.

use alloc::format;
use alloc::vec::Vec;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{vecops, Matrix};
use crate::module::Module;
use crate::subspace::Subspace;

/// Largest endomorphism ring (number of elements) enumerated exhaustively.
const ENUMERATION_LIMIT: u64 = 1 << 16;
const RANDOM_TRIES: usize = 96;

/// An indecomposable direct summand with its split inclusion and projection.
#[derive(Clone, Debug)]
pub struct Summand<F: Field> {
    pub module: Module<F>,
    /// `dim M × dim S`
    pub embedding: Matrix<F>,
    /// `dim S × dim M`
    pub projection: Matrix<F>,
    pub end: LocalEnd<F>,
}

impl<F: Field> Summand<F> {
    /// The idempotent endomorphism of the ambient module with this summand as image.
    pub fn idempotent(&self) -> Matrix<F> {
        self.embedding.mul(&self.projection)
    }
}

/// A local endomorphism ring: a basis and its (nilpotent) Jacobson radical in basis coordinates.
#[derive(Clone, Debug)]
pub struct LocalEnd<F: Field> {
    pub basis: Vec<Matrix<F>>,
    pub radical: Subspace<F>,
}

impl<F: Field> LocalEnd<F> {
    /// Coordinates of an endomorphism in the basis.
    pub fn coordinates(&self, g: &Matrix<F>) -> Option<Vec<F::Elem>> {
        let f = g.field();
        if self.basis.is_empty() {
            return if g.is_zero() { Some(Vec::new()) } else { None };
        }
        let cols: Vec<_> = self.basis.iter().map(|b| b.to_flat()).collect();
        let m = Matrix::from_cols(f, g.rows() * g.cols(), &cols).ok()?;
        m.solve(&g.to_flat())
    }

    pub fn in_radical(&self, g: &Matrix<F>) -> bool {
        self.coordinates(g).is_some_and(|c| self.radical.contains(&c))
    }

    /// Dimension of `End / rad` over the ground field.
    pub fn residue_dim(&self) -> usize {
        self.basis.len() - self.radical.dim()
    }
}

#[derive(Clone, Debug)]
pub struct Decomposition<F: Field> {
    pub summands: Vec<Summand<F>>,
    /// Isomorphism classes as lists of indices into `summands`; the first index is the representative.
    pub classes: Vec<Vec<usize>>,
}

impl<F: Field> Decomposition<F> {
    /// Pairwise non-isomorphic indecomposables with multiplicities.
    pub fn multiplicities(&self) -> Vec<(Module<F>, usize)> {
        self.classes.iter().map(|c| (self.summands[c[0]].module.clone(), c.len())).collect()
    }

    pub fn idempotents(&self) -> Vec<Matrix<F>> {
        self.summands.iter().map(|s| s.idempotent()).collect()
    }

    pub fn len(&self) -> usize {
        self.summands.len()
    }

    pub fn is_empty(&self) -> bool {
        self.summands.is_empty()
    }
}

enum LocalCheck<F: Field> {
    Local(Subspace<F>),
    Split(Matrix<F>),
    Unknown,
}

fn rng_for(dim: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(0x6b73_6465_636f_6d70 ^ dim as u64)
}

fn random_combination<F: Field>(f: F, basis: &[Matrix<F>], rng: &mut ChaCha8Rng) -> Matrix<F> {
    let d = basis[0].rows();
    let mut g = Matrix::zeros(f, d, d);
    for b in basis {
        g.add_scaled(&f.sample(rng), b);
    }
    g
}

/// `f^d` when it is a proper nonzero idempotent-like splitter (0 < rank < d).
fn fitting_split<F: Field>(g: &Matrix<F>) -> Option<Matrix<F>> {
    let d = g.rows();
    let p = g.pow(d as u64);
    let r = p.rank();
    (r > 0 && r < d).then_some(p)
}

fn nilpotent_shift<F: Field>(g: &Matrix<F>) -> Option<F::Elem> {
    let f = g.field();
    let d = g.rows();
    let shifted = |l: &F::Elem| g.sub(&Matrix::scalar(f, d, l));
    match f.elements() {
        Some(elems) => elems.into_iter().find(|l| shifted(l).is_nilpotent()),
        None => {
            let l = f.div(&g.trace(), &f.from_i64(d as i64))?;
            shifted(&l).is_nilpotent().then_some(l)
        }
    }
}

fn span_in_coords<F: Field>(f: F, basis: &[Matrix<F>], elems: &[Matrix<F>]) -> Option<Subspace<F>> {
    let cols: Vec<_> = basis.iter().map(|b| b.to_flat()).collect();
    let n = basis[0].rows() * basis[0].cols();
    let m = Matrix::from_cols(f, n, &cols).ok()?;
    let mut coords = Vec::new();
    for e in elems {
        coords.push(m.solve(&e.to_flat())?);
    }
    Some(Subspace::from_vectors(f, basis.len(), &coords))
}

fn combine<F: Field>(f: F, basis: &[Matrix<F>], c: &[F::Elem]) -> Matrix<F> {
    let d = basis[0].rows();
    let mut g = Matrix::zeros(f, d, d);
    for (x, b) in c.iter().zip(basis) {
        g.add_scaled(x, b);
    }
    g
}

fn certify_local<F: Field>(basis: &[Matrix<F>]) -> LocalCheck<F> {
    let f = basis[0].field();
    let d = basis[0].rows();
    let r = basis.len();

    // residue field k: every basis element is a scalar plus a nilpotent
    let mut shifted = Vec::with_capacity(r);
    let mut all_shift = true;
    for b in basis {
        match nilpotent_shift(b) {
            Some(l) => shifted.push(b.sub(&Matrix::scalar(f, d, &l))),
            None => {
                all_shift = false;
                if let Some(els) = f.elements() {
                    for l in els {
                        let s = b.sub(&Matrix::scalar(f, d, &l));
                        if !s.is_invertible() {
                            return LocalCheck::Split(s.pow(d as u64));
                        }
                    }
                }
            }
        }
    }
    if all_shift {
        if let Some(j) = span_in_coords(f, basis, &shifted) {
            if j.dim() + 1 == r && is_nilpotent_ideal(f, basis, &j) {
                return LocalCheck::Local(j);
            }
        }
    }
    let Some(q) = f.order() else {
        return LocalCheck::Unknown;
    };
    match q.checked_pow(r as u32) {
        Some(total) if total <= ENUMERATION_LIMIT => {}
        _ => return LocalCheck::Unknown,
    }
    // exhaustive: a ring in which every element is a unit or nilpotent is local
    let mut nil = Vec::new();
    for c in vecops::enumerate(f, r) {
        let g = combine(f, basis, &c);
        if g.is_nilpotent() {
            nil.push(c);
        } else if !g.is_invertible() {
            return LocalCheck::Split(g.pow(d as u64));
        }
    }
    LocalCheck::Local(Subspace::from_vectors(f, r, &nil))
}

fn is_nilpotent_ideal<F: Field>(f: F, basis: &[Matrix<F>], j: &Subspace<F>) -> bool {
    let jm: Vec<Matrix<F>> = j.basis_vectors().iter().map(|c| combine(f, basis, c)).collect();
    if jm.is_empty() {
        return true;
    }
    for a in &jm {
        for b in basis {
            for p in [a.mul(b), b.mul(a)] {
                match span_in_coords(f, basis, &[p]) {
                    Some(s) if s.leq(j).unwrap_or(false) => {}
                    _ => return false,
                }
            }
        }
    }
    // powers of the ideal
    let mut power = jm.clone();
    for _ in 0..=basis[0].rows() {
        if power.iter().all(|m| m.is_zero()) {
            return true;
        }
        let mut next = Vec::new();
        for a in &power {
            for b in &jm {
                next.push(a.mul(b));
            }
        }
        let sp = match span_in_coords(f, basis, &next) {
            Some(s) => s,
            None => return false,
        };
        power = sp.basis_vectors().iter().map(|c| combine(f, basis, c)).collect();
    }
    power.iter().all(|m| m.is_zero())
}

/// Searches for a splitting endomorphism, or certifies that `End(M)` is local.
fn analyse<F: Field>(m: &Module<F>) -> Result<core::result::Result<Matrix<F>, LocalEnd<F>>> {
    let basis = m.endomorphisms();
    let f = m.field();
    for b in &basis {
        if let Some(p) = fitting_split(b) {
            return Ok(Ok(p));
        }
    }
    match certify_local(&basis) {
        LocalCheck::Local(radical) => return Ok(Err(LocalEnd { basis, radical })),
        LocalCheck::Split(p) => return Ok(Ok(p)),
        LocalCheck::Unknown => {}
    }
    let mut rng = rng_for(m.dim());
    for _ in 0..RANDOM_TRIES {
        let g = random_combination(f, &basis, &mut rng);
        if let Some(p) = fitting_split(&g) {
            return Ok(Ok(p));
        }
    }
    Err(Error::Unsupported(format!(
        "cannot certify a local endomorphism ring of dimension {} over {}",
        basis.len(),
        f.name()
    )))
}

fn split_rec<F: Field>(m: Module<F>, emb: Matrix<F>, proj: Matrix<F>, out: &mut Vec<Summand<F>>) -> Result<()> {
    if m.dim() == 0 {
        return Ok(());
    }
    match analyse(&m)? {
        Err(end) => {
            out.push(Summand { module: m, embedding: emb, projection: proj, end });
            Ok(())
        }
        Ok(p) => {
            let f = m.field();
            let (s1, i1) = m.submodule(&p.image())?;
            let (s2, i2) = m.submodule(&p.kernel())?;
            let d1 = s1.dim();
            let full = Matrix::hstack(f, m.dim(), &[&i1, &i2]);
            let inv = full.inverse().ok_or_else(|| Error::StructureViolation("Fitting splitting is not direct".into()))?;
            let p1 = inv.submatrix(0, d1, 0, m.dim());
            let p2 = inv.submatrix(d1, s2.dim(), 0, m.dim());
            split_rec(s1, emb.mul(&i1), p1.mul(&proj), out)?;
            split_rec(s2, emb.mul(&i2), p2.mul(&proj), out)
        }
    }
}

/// Decomposes `m` into indecomposable summands, grouped into isomorphism classes.
pub fn decompose<F: Field>(m: &Module<F>) -> Result<Decomposition<F>> {
    let f = m.field();
    let mut summands = Vec::new();
    split_rec(m.clone(), Matrix::identity(f, m.dim()), Matrix::identity(f, m.dim()), &mut summands)?;
    let mut classes: Vec<Vec<usize>> = Vec::new();
    for i in 0..summands.len() {
        let mut placed = false;
        for c in classes.iter_mut() {
            if indecomposables_isomorphic(&summands[c[0]].module, &summands[i].module)? {
                c.push(i);
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push(alloc::vec![i]);
        }
    }
    Ok(Decomposition { summands, classes })
}

/// Certified local endomorphism ring of an indecomposable module.
pub fn local_endomorphisms<F: Field>(m: &Module<F>) -> Result<LocalEnd<F>> {
    match analyse(m)? {
        Err(end) => Ok(end),
        Ok(_) => Err(Error::Precondition("module is decomposable".into())),
    }
}

pub fn is_indecomposable<F: Field>(m: &Module<F>) -> Result<bool> {
    if m.dim() == 0 {
        return Ok(false);
    }
    Ok(analyse(m)?.is_err())
}

/// Isomorphism test for indecomposables: `X ≅ Y` iff some `g_j ∘ f_i` is invertible,
/// `f_i`, `g_j` running over bases of `Hom(X, Y)` and `Hom(Y, X)`.
pub fn indecomposables_isomorphic<F: Field>(x: &Module<F>, y: &Module<F>) -> Result<bool> {
    x.check_compatible(y)?;
    if x.dim() != y.dim() {
        return Ok(false);
    }
    let fs = x.hom_space(y)?;
    if fs.is_empty() {
        return Ok(false);
    }
    let gs = y.hom_space(x)?;
    for fi in &fs {
        for gj in &gs {
            if gj.mul(fi).is_invertible() {
                return Ok(true);
            }
        }
    }
    Ok(false)
}

/// An explicit isomorphism between indecomposables, if one exists.
pub fn find_isomorphism_indecomposable<F: Field>(x: &Module<F>, y: &Module<F>) -> Result<Option<Matrix<F>>> {
    x.check_compatible(y)?;
    if x.dim() != y.dim() {
        return Ok(None);
    }
    let fs = x.hom_space(y)?;
    let gs = y.hom_space(x)?;
    for fi in &fs {
        if fi.is_invertible() {
            return Ok(Some(fi.clone()));
        }
        for gj in &gs {
            let c = gj.mul(fi);
            if c.is_invertible() {
                // f_i is split mono between equal dimensions, hence invertible
                return Ok(Some(fi.clone()));
            }
        }
    }
    Ok(None)
}

/// General isomorphism test: a random invertible intertwiner, else comparison of decompositions.
pub fn isomorphic<F: Field>(x: &Module<F>, y: &Module<F>) -> Result<bool> {
    x.check_compatible(y)?;
    if x.dim() != y.dim() {
        return Ok(false);
    }
    if x.dim() == 0 {
        return Ok(true);
    }
    let hs = x.hom_space(y)?;
    if hs.is_empty() {
        return Ok(false);
    }
    if hs.iter().any(|h| h.is_invertible()) {
        return Ok(true);
    }
    let mut rng = rng_for(x.dim());
    for _ in 0..16 {
        if random_combination(x.field(), &hs, &mut rng).is_invertible() {
            return Ok(true);
        }
    }
    let dx = decompose(x)?;
    let dy = decompose(y)?;
    same_multiset(&dx.multiplicities(), &dy.multiplicities())
}

/// Whether two lists of (indecomposable, multiplicity) agree up to isomorphism.
pub fn same_multiset<F: Field>(a: &[(Module<F>, usize)], b: &[(Module<F>, usize)]) -> Result<bool> {
    let total = |v: &[(Module<F>, usize)]| v.iter().map(|(m, k)| m.dim() * k).sum::<usize>();
    if total(a) != total(b) {
        return Ok(false);
    }
    let mut used = alloc::vec![false; b.len()];
    for (ma, ka) in a {
        let mut found = false;
        for (j, (mb, kb)) in b.iter().enumerate() {
            if !used[j] && ka == kb && indecomposables_isomorphic(ma, mb)? {
                used[j] = true;
                found = true;
                break;
            }
        }
        if !found {
            return Ok(false);
        }
    }
    Ok(used.iter().all(|&u| u))
}

/// Merges multiplicity lists, identifying isomorphic indecomposables.
pub fn merge_multiplicities<F: Field>(
    a: &[(Module<F>, usize)],
    b: &[(Module<F>, usize)],
) -> Result<Vec<(Module<F>, usize)>> {
    let mut out: Vec<(Module<F>, usize)> = a.to_vec();
    for (mb, kb) in b {
        let mut merged = false;
        for (ma, ka) in out.iter_mut() {
            if indecomposables_isomorphic(ma, mb)? {
                *ka += kb;
                merged = true;
                break;
            }
        }
        if !merged {
            out.push((mb.clone(), *kb));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_dvr;
    use crate::field::PrimeField;
    use crate::module::Side;
    use alloc::sync::Arc;

    fn uniserial(a: &Arc<crate::algebra::Algebra<PrimeField>>, j: usize) -> Module<PrimeField> {
        let f = a.field();
        let mut shift = Matrix::zeros(f, j, j);
        for i in 0..j.saturating_sub(1) {
            shift.set(i + 1, i, f.one());
        }
        Module::from_generator_action(a.clone(), Side::Right, j, &[(a.elem("x").unwrap(), shift)]).unwrap()
    }

    #[test]
    fn indecomposable_is_returned_whole() {
        let a = Arc::new(truncated_dvr(3, PrimeField::gf2()).unwrap());
        let m = uniserial(&a, 3);
        let d = decompose(&m).unwrap();
        assert_eq!(d.len(), 1);
        assert!(d.summands[0].idempotent().is_identity());
        assert_eq!(d.summands[0].end.residue_dim(), 1);
    }

    #[test]
    fn sum_of_two_uniserials() {
        let a = Arc::new(truncated_dvr(3, PrimeField::gf2()).unwrap());
        let m = Module::direct_sum(&[&uniserial(&a, 1), &uniserial(&a, 2)]).unwrap();
        let d = decompose(&m).unwrap();
        let mut dims: Vec<_> = d.multiplicities().iter().map(|(s, k)| (s.dim(), *k)).collect();
        dims.sort();
        assert_eq!(dims, [(1, 1), (2, 1)]);
        let total = d.idempotents().iter().fold(Matrix::zeros(m.field(), 3, 3), |acc, e| acc.add(e));
        assert!(total.is_identity());
    }

    #[test]
    fn semisimple_block_has_multiplicity_five() {
        let a = Arc::new(truncated_dvr(3, PrimeField::gf2()).unwrap());
        let m = uniserial(&a, 1).power(5);
        let d = decompose(&m).unwrap();
        assert_eq!(d.classes.len(), 1);
        assert_eq!(d.multiplicities()[0].1, 5);
        for e in d.idempotents() {
            assert_eq!(e.mul(&e), e);
            assert!(m.is_hom_to(&m, &e));
        }
    }

    #[test]
    fn isomorphism_up_to_basis_change() {
        let a = Arc::new(truncated_dvr(3, PrimeField::gf2()).unwrap());
        let m = Module::direct_sum(&[&uniserial(&a, 2), &uniserial(&a, 1)]).unwrap();
        let n = Module::direct_sum(&[&uniserial(&a, 1), &uniserial(&a, 2)]).unwrap();
        assert!(isomorphic(&m, &n).unwrap());
        let o = Module::direct_sum(&[&uniserial(&a, 1), &uniserial(&a, 1), &uniserial(&a, 1)]).unwrap();
        assert!(!isomorphic(&m, &o).unwrap());
    }
}
