//! Modules over a finite-dimensional algebra, given by one action matrix per basis element.
//!
//! Vectors are columns. For a right module `X(ab) = X(b) X(a)` (so `m·a = X(a) m`); for a left
//! module `X(ab) = X(a) X(b)`.

use alloc::format;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;

use crate::algebra::{AlgElem, Algebra};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{vecops, Matrix};
use crate::subspace::Subspace;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    Right,
    Left,
}

impl Side {
    pub fn flip(self) -> Side {
        match self {
            Side::Right => Side::Left,
            Side::Left => Side::Right,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::Right => "right",
            Side::Left => "left",
        })
    }
}

#[derive(Clone)]
pub struct Module<F: Field> {
    algebra: Arc<Algebra<F>>,
    side: Side,
    dim: usize,
    action: Vec<Matrix<F>>,
}

impl<F: Field> fmt::Debug for Module<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} module of dim {}", self.side, self.dim)
    }
}

impl<F: Field> PartialEq for Module<F> {
    fn eq(&self, other: &Self) -> bool {
        self.side == other.side && self.dim == other.dim && self.action == other.action && self.same_algebra(other)
    }
}
impl<F: Field> Eq for Module<F> {}

/// Composition rule for the action matrices of a product `a * b`.
fn compose<F: Field>(side: Side, xa: &Matrix<F>, xb: &Matrix<F>) -> Matrix<F> {
    match side {
        Side::Right => xb.mul(xa),
        Side::Left => xa.mul(xb),
    }
}

impl<F: Field> Module<F> {
    /// Checked constructor: shapes, unit acts as identity, and the module law on all basis pairs.
    pub fn new(algebra: Arc<Algebra<F>>, side: Side, dim: usize, action: Vec<Matrix<F>>) -> Result<Self> {
        let m = Self::new_unchecked(algebra, side, dim, action)?;
        m.verify()?;
        Ok(m)
    }

    /// Shape-checked constructor that skips the (quadratic) module-law check.
    pub fn new_unchecked(algebra: Arc<Algebra<F>>, side: Side, dim: usize, action: Vec<Matrix<F>>) -> Result<Self> {
        if action.len() != algebra.dim() {
            return Err(Error::DimensionMismatch { expected: algebra.dim(), found: action.len() });
        }
        for x in &action {
            if x.rows() != dim || x.cols() != dim {
                return Err(Error::DimensionMismatch { expected: dim, found: x.rows().max(x.cols()) });
            }
        }
        Ok(Module { algebra, side, dim, action })
    }

    pub fn verify(&self) -> Result<()> {
        let a = &self.algebra;
        if !self.act(a.unit()).is_identity() {
            return Err(Error::StructureViolation("unit does not act as the identity".into()));
        }
        for i in 0..a.dim() {
            for j in 0..a.dim() {
                let lhs = self.act(a.product_of_basis(i, j));
                let rhs = compose(self.side, &self.action[i], &self.action[j]);
                if lhs != rhs {
                    return Err(Error::StructureViolation(format!(
                        "{} module law fails on ({}, {})",
                        self.side,
                        a.labels()[i],
                        a.labels()[j]
                    )));
                }
            }
        }
        Ok(())
    }

    /// Builds a module from the action of a generating set of the algebra.
    pub fn from_generator_action(
        algebra: Arc<Algebra<F>>,
        side: Side,
        dim: usize,
        gens: &[(AlgElem<F>, Matrix<F>)],
    ) -> Result<Self> {
        let f = algebra.field();
        let d = algebra.dim();
        let mut words: Vec<(AlgElem<F>, Matrix<F>)> = alloc::vec![(algebra.unit().clone(), Matrix::identity(f, dim))];
        let mut span = Subspace::from_vectors(f, d, &[algebra.unit().clone()]);
        let mut frontier = 0;
        while frontier < words.len() && span.dim() < d {
            let (w, xw) = words[frontier].clone();
            frontier += 1;
            for (g, xg) in gens {
                let wg = algebra.mul(&w, g);
                if span.contains(&wg) {
                    continue;
                }
                span = span.sum(&Subspace::from_vectors(f, d, core::slice::from_ref(&wg)))?;
                words.push((wg, compose(side, &xw, xg)));
            }
        }
        if span.dim() < d {
            return Err(Error::InvalidParameter("given elements do not generate the algebra".into()));
        }
        let wmat = Matrix::from_cols(f, d, &words.iter().map(|(w, _)| w.clone()).collect::<Vec<_>>())?;
        let mut action = Vec::with_capacity(d);
        for i in 0..d {
            let c = wmat.solve(&algebra.basis_elem(i)).expect("words span the algebra");
            let mut x = Matrix::zeros(f, dim, dim);
            for (ck, (_, xw)) in c.iter().zip(&words) {
                x.add_scaled(ck, xw);
            }
            action.push(x);
        }
        Self::new(algebra, side, dim, action)
    }

    pub fn zero(algebra: Arc<Algebra<F>>, side: Side) -> Self {
        let f = algebra.field();
        let action = (0..algebra.dim()).map(|_| Matrix::zeros(f, 0, 0)).collect();
        Module { algebra, side, dim: 0, action }
    }

    /// The algebra as a module over itself on the given side.
    pub fn regular(algebra: Arc<Algebra<F>>, side: Side) -> Self {
        let d = algebra.dim();
        let action = (0..d)
            .map(|i| {
                let b = algebra.basis_elem(i);
                match side {
                    Side::Right => algebra.right_mult(&b),
                    Side::Left => algebra.left_mult(&b),
                }
            })
            .collect();
        Module { algebra, side, dim: d, action }
    }

    /// The cyclic projective `eA` (right) or `Ae` (left) for an idempotent `e`.
    pub fn projective(algebra: Arc<Algebra<F>>, side: Side, e: &[F::Elem]) -> Result<(Self, Matrix<F>)> {
        let f = algebra.field();
        if algebra.mul(e, e) != e {
            return Err(Error::Precondition("element is not idempotent".into()));
        }
        let vecs: Vec<_> = (0..algebra.dim())
            .map(|j| {
                let b = algebra.basis_elem(j);
                match side {
                    Side::Right => algebra.mul(e, &b),
                    Side::Left => algebra.mul(&b, e),
                }
            })
            .collect();
        let sub = Subspace::from_vectors(f, algebra.dim(), &vecs);
        Self::regular(algebra, side).submodule(&sub)
    }

    pub fn algebra(&self) -> &Arc<Algebra<F>> {
        &self.algebra
    }
    pub fn field(&self) -> F {
        self.algebra.field()
    }
    pub fn side(&self) -> Side {
        self.side
    }
    pub fn dim(&self) -> usize {
        self.dim
    }
    pub fn actions(&self) -> &[Matrix<F>] {
        &self.action
    }
    pub fn action(&self, i: usize) -> &Matrix<F> {
        &self.action[i]
    }

    pub fn same_algebra(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.algebra, &other.algebra) || self.algebra.same_as(&other.algebra)
    }

    pub fn check_compatible(&self, other: &Self) -> Result<()> {
        if !self.same_algebra(other) {
            return Err(Error::AlgebraMismatch);
        }
        if self.side != other.side {
            return Err(Error::SideMismatch);
        }
        Ok(())
    }

    /// Action matrix of an arbitrary algebra element.
    pub fn act(&self, a: &[F::Elem]) -> Matrix<F> {
        let f = self.field();
        let mut out = Matrix::zeros(f, self.dim, self.dim);
        for (c, x) in a.iter().zip(&self.action) {
            out.add_scaled(c, x);
        }
        out
    }

    /// Action matrices of the algebra's generating set.
    pub fn generator_actions(&self) -> Vec<Matrix<F>> {
        self.algebra.generators().iter().map(|g| self.act(g)).collect()
    }

    pub fn direct_sum(parts: &[&Self]) -> Result<Self> {
        let first = parts.first().ok_or_else(|| Error::InvalidParameter("empty direct sum".into()))?;
        for p in parts {
            first.check_compatible(p)?;
        }
        let f = first.field();
        let dim = parts.iter().map(|p| p.dim).sum();
        let action = (0..first.algebra.dim())
            .map(|i| Matrix::block_diag(f, &parts.iter().map(|p| &p.action[i]).collect::<Vec<_>>()))
            .collect();
        Ok(Module { algebra: first.algebra.clone(), side: first.side, dim, action })
    }

    pub fn power(&self, k: usize) -> Self {
        if k == 0 {
            return Self::zero(self.algebra.clone(), self.side);
        }
        let parts: Vec<&Self> = (0..k).map(|_| self).collect();
        Self::direct_sum(&parts).expect("compatible copies")
    }

    pub fn is_submodule(&self, s: &Subspace<F>) -> bool {
        s.ambient_dim() == self.dim
            && self.generator_actions().iter().all(|x| s.image_under(x).leq(s).unwrap_or(false))
    }

    /// Smallest submodule containing the given vectors.
    pub fn submodule_generated(&self, vectors: &[Vec<F::Elem>]) -> Subspace<F> {
        let f = self.field();
        let gens = self.generator_actions();
        let mut span = Subspace::from_vectors(f, self.dim, vectors);
        loop {
            let mut vecs = span.basis_vectors();
            for v in span.basis_vectors() {
                for x in &gens {
                    vecs.push(x.mul_vec(&v));
                }
            }
            let next = Subspace::from_vectors(f, self.dim, &vecs);
            if next == span {
                return span;
            }
            span = next;
        }
    }

    /// Standard basis vectors that generate the module, chosen greedily in basis order.
    pub fn generating_set(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let d = self.dim;
        let mut out: Vec<Vec<F::Elem>> = Vec::new();
        let mut span = Subspace::from_vectors(f, d, &[]);
        for i in 0..d {
            if span.dim() == d {
                break;
            }
            let v = crate::matrix::vecops::unit(f, d, i);
            if !span.contains(&v) {
                out.push(v);
                span = self.submodule_generated(&out);
            }
        }
        out
    }

    /// Restriction to an invariant subspace, with the inclusion matrix (dim × sub-dim).
    pub fn submodule(&self, s: &Subspace<F>) -> Result<(Self, Matrix<F>)> {
        if !self.is_submodule(s) {
            return Err(Error::Precondition("subspace is not a submodule".into()));
        }
        let incl = s.basis().transpose();
        let action = self
            .action
            .iter()
            .map(|x| incl.solve_matrix(&x.mul(&incl)).expect("invariant subspace"))
            .collect();
        Ok((Module { algebra: self.algebra.clone(), side: self.side, dim: s.dim(), action }, incl))
    }

    /// Quotient by a submodule, with the projection matrix (quotient-dim × dim).
    pub fn quotient(&self, s: &Subspace<F>) -> Result<(Self, Matrix<F>)> {
        if !self.is_submodule(s) {
            return Err(Error::Precondition("subspace is not a submodule".into()));
        }
        let f = self.field();
        let keep = s.non_pivots();
        let project = |v: &[F::Elem]| -> Vec<F::Elem> {
            let r = s.reduce(v);
            keep.iter().map(|&i| r[i].clone()).collect()
        };
        let proj_cols: Vec<_> = (0..self.dim).map(|c| project(&vecops::unit(f, self.dim, c))).collect();
        let proj = Matrix::from_cols(f, keep.len(), &proj_cols)?;
        let action = self
            .action
            .iter()
            .map(|x| {
                let cols: Vec<_> = keep.iter().map(|&c| project(&x.col(c))).collect();
                Matrix::from_cols(f, keep.len(), &cols).expect("shape")
            })
            .collect();
        Ok((Module { algebra: self.algebra.clone(), side: self.side, dim: keep.len(), action }, proj))
    }

    /// Module on the image of an idempotent endomorphism (or any endomorphism), with inclusion.
    pub fn image_of(&self, e: &Matrix<F>) -> Result<(Self, Matrix<F>)> {
        self.submodule(&e.image())
    }

    /// `k`-dual `Hom_k(M, k)`: transposed action on the opposite side.
    pub fn k_dual(&self) -> Self {
        Module {
            algebra: self.algebra.clone(),
            side: self.side.flip(),
            dim: self.dim,
            action: self.action.iter().map(|x| x.transpose()).collect(),
        }
    }

    /// Whether `f` (target-dim × source-dim) intertwines the actions.
    pub fn is_hom_to(&self, target: &Self, f: &Matrix<F>) -> bool {
        f.rows() == target.dim
            && f.cols() == self.dim
            && self.same_algebra(target)
            && self.side == target.side
            && self
                .algebra
                .generators()
                .iter()
                .all(|g| f.mul(&self.act(g)) == target.act(g).mul(f))
    }

    /// Basis of `Hom(self, target)` as matrices `target.dim × self.dim`.
    pub fn hom_space(&self, target: &Self) -> Result<Vec<Matrix<F>>> {
        self.check_compatible(target)?;
        Ok(hom_basis(self.field(), &self.generator_actions(), &target.generator_actions(), self.dim, target.dim))
    }

    pub fn hom_dim(&self, target: &Self) -> Result<usize> {
        Ok(self.hom_space(target)?.len())
    }

    pub fn endomorphisms(&self) -> Vec<Matrix<F>> {
        self.hom_space(self).expect("same module")
    }
}

/// Solves `F A_g = B_g F` for all generator actions.
pub fn hom_basis<F: Field>(f: F, src: &[Matrix<F>], dst: &[Matrix<F>], dm: usize, dn: usize) -> Vec<Matrix<F>> {
    let vars = dm * dn;
    if vars == 0 {
        return Vec::new();
    }
    let mut rows: Vec<Vec<F::Elem>> = Vec::with_capacity(src.len() * vars);
    for (a, b) in src.iter().zip(dst) {
        for r in 0..dn {
            for c in 0..dm {
                let mut row = vecops::zero(f, vars);
                for k in 0..dm {
                    let x = a.get(k, c);
                    if !f.is_zero(x) {
                        row[r * dm + k] = f.add(&row[r * dm + k], x);
                    }
                }
                for k in 0..dn {
                    let x = b.get(r, k);
                    if !f.is_zero(x) {
                        row[k * dm + c] = f.sub(&row[k * dm + c], x);
                    }
                }
                if !vecops::is_zero(f, &row) {
                    rows.push(row);
                }
            }
        }
    }
    let sys = Matrix::from_rows(f, vars, &rows).expect("shape");
    sys.kernel()
        .basis_vectors()
        .into_iter()
        .map(|v| Matrix::from_vec(f, dn, dm, v).expect("shape"))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::truncated_dvr;
    use crate::field::PrimeField;

    fn dvr_module(n: usize, j: usize) -> Module<PrimeField> {
        let f = PrimeField::gf2();
        let a = Arc::new(truncated_dvr(n, f).unwrap());
        // V/m^j: basis 1, x, ..., x^{j-1}; x acts by the shift
        let mut shift = Matrix::zeros(f, j, j);
        for i in 0..j.saturating_sub(1) {
            shift.set(i + 1, i, f.one());
        }
        Module::from_generator_action(a.clone(), Side::Right, j, &[(a.elem("x").unwrap(), shift)]).unwrap()
    }

    #[test]
    fn regular_module_satisfies_law() {
        let a = Arc::new(truncated_dvr(3, PrimeField::gf2()).unwrap());
        Module::regular(a.clone(), Side::Right).verify().unwrap();
        Module::regular(a, Side::Left).verify().unwrap();
    }

    #[test]
    fn hom_between_uniserials() {
        let s = dvr_module(2, 1);
        let m = dvr_module(2, 2);
        assert_eq!(s.hom_dim(&m).unwrap(), 1);
        assert_eq!(m.hom_dim(&s).unwrap(), 1);
        assert_eq!(s.hom_dim(&s).unwrap(), 1);
        assert_eq!(m.hom_dim(&m).unwrap(), 2);
    }

    #[test]
    fn quotient_and_submodule() {
        let m = dvr_module(3, 3);
        let soc = m.submodule_generated(&[vecops::unit(m.field(), 3, 2)]);
        assert_eq!(soc.dim(), 1);
        let (q, p) = m.quotient(&soc).unwrap();
        assert_eq!(q.dim(), 2);
        assert!(m.is_hom_to(&q, &p));
        let (s, i) = m.submodule(&soc).unwrap();
        assert!(s.is_hom_to(&m, &i));
    }

    #[test]
    fn dual_flips_side() {
        let m = dvr_module(3, 2);
        let d = m.k_dual();
        assert_eq!(d.side(), Side::Left);
        d.verify().unwrap();
        assert_eq!(d.k_dual(), m);
    }
}
