//! Subspaces of `k^d` kept in reduced row-echelon form, so set equality is structural equality.

use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::{vecops, Matrix};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Subspace<F: Field> {
    ambient: usize,
    basis: Matrix<F>,
    pivots: Vec<usize>,
}

impl<F: Field> fmt::Debug for Subspace<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Subspace(dim {} in {}; ", self.dim(), self.ambient)?;
        for r in 0..self.basis.rows() {
            write!(f, "[")?;
            for (i, x) in self.basis.row(r).iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{x}")?;
            }
            write!(f, "]")?;
        }
        write!(f, ")")
    }
}

impl<F: Field> Subspace<F> {
    pub fn zero(field: F, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::zeros(field, 0, ambient), pivots: Vec::new() }
    }

    pub fn full(field: F, ambient: usize) -> Self {
        Subspace { ambient, basis: Matrix::identity(field, ambient), pivots: (0..ambient).collect() }
    }

    /// The span of the rows of `m`.
    pub fn from_matrix_rows(m: &Matrix<F>) -> Self {
        let (r, pivots) = m.rref();
        let basis = r.submatrix(0, pivots.len(), 0, m.cols());
        Subspace { ambient: m.cols(), basis, pivots }
    }

    pub fn from_vectors(field: F, ambient: usize, vectors: &[Vec<F::Elem>]) -> Self {
        let m = Matrix::from_rows(field, ambient, vectors).expect("vector length equals ambient dimension");
        Self::from_matrix_rows(&m)
    }

    pub fn field(&self) -> F {
        self.basis.field()
    }
    pub fn dim(&self) -> usize {
        self.pivots.len()
    }
    pub fn ambient_dim(&self) -> usize {
        self.ambient
    }
    /// Canonical echelon basis, one row per basis vector.
    pub fn basis(&self) -> &Matrix<F> {
        &self.basis
    }
    pub fn basis_vectors(&self) -> Vec<Vec<F::Elem>> {
        self.basis.row_vecs()
    }
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }
    pub fn is_zero(&self) -> bool {
        self.dim() == 0
    }
    pub fn is_full(&self) -> bool {
        self.dim() == self.ambient
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.ambient != other.ambient {
            return Err(Error::DimensionMismatch { expected: self.ambient, found: other.ambient });
        }
        Ok(())
    }

    /// Canonical representative of `v` modulo this subspace (zero on pivot coordinates).
    pub fn reduce(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(v.len(), self.ambient, "vector length");
        let f = self.field();
        let mut w = v.to_vec();
        for (i, &p) in self.pivots.iter().enumerate() {
            let c = w[p].clone();
            if f.is_zero(&c) {
                continue;
            }
            for (k, b) in self.basis.row(i).iter().enumerate().skip(p) {
                if !f.is_zero(b) {
                    w[k] = f.sub(&w[k], &f.mul(&c, b));
                }
            }
        }
        w
    }

    pub fn contains(&self, v: &[F::Elem]) -> bool {
        vecops::is_zero(self.field(), &self.reduce(v))
    }

    /// Coefficients of `v` in the echelon basis, if `v` lies in the subspace.
    pub fn coordinates(&self, v: &[F::Elem]) -> Option<Vec<F::Elem>> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|&p| v[p].clone()).collect())
    }

    pub fn leq(&self, other: &Self) -> Result<bool> {
        self.check(other)?;
        if self.dim() > other.dim() {
            return Ok(false);
        }
        Ok((0..self.dim()).all(|r| other.contains(self.basis.row(r))))
    }

    pub fn sum(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let f = self.field();
        let stacked = Matrix::vstack(f, self.ambient, &[&self.basis, &other.basis]);
        Ok(Self::from_matrix_rows(&stacked))
    }

    pub fn meet(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        // U ∩ W = ann(ann U + ann W)
        let ann = self.annihilator().sum(&other.annihilator())?;
        Ok(ann.annihilator())
    }

    /// Orthogonal complement under the standard bilinear pairing.
    pub fn annihilator(&self) -> Self {
        self.basis.kernel()
    }

    /// `{A u : u ∈ self}` for a matrix `A` with `ambient` columns.
    pub fn image_under(&self, a: &Matrix<F>) -> Self {
        assert_eq!(a.cols(), self.ambient, "map source dimension");
        let f = self.field();
        let imgs: Vec<_> = (0..self.dim()).map(|r| a.mul_vec(self.basis.row(r))).collect();
        Self::from_vectors(f, a.rows(), &imgs)
    }

    /// `{v : A v ∈ self}` for a matrix `A` with `ambient` rows.
    pub fn preimage_under(&self, a: &Matrix<F>) -> Self {
        assert_eq!(a.rows(), self.ambient, "map target dimension");
        let ann = self.annihilator();
        ann.basis().mul(a).kernel()
    }

    /// Coordinates not used as pivots; a basis of a complement is given by the unit vectors there.
    pub fn non_pivots(&self) -> Vec<usize> {
        let mut is_pivot = alloc::vec![false; self.ambient];
        for &p in &self.pivots {
            is_pivot[p] = true;
        }
        (0..self.ambient).filter(|&c| !is_pivot[c]).collect()
    }

    /// Elements of the subspace, for finite fields.
    pub fn elements(&self) -> Vec<Vec<F::Elem>> {
        let f = self.field();
        let vecs = self.basis_vectors();
        vecops::enumerate(f, self.dim())
            .into_iter()
            .map(|c| vecops::combine(f, self.ambient, &c, &vecs))
            .collect()
    }

    /// Projection onto the first `k` coordinates.
    pub fn project_prefix(&self, k: usize) -> Self {
        assert!(k <= self.ambient);
        let m = self.basis.submatrix(0, self.dim(), 0, k);
        Self::from_matrix_rows(&m)
    }
}

impl<F: Field> PartialOrd for Subspace<F> {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Canonical total order: ambient dimension, then dimension, then echelon entries.
impl<F: Field> Ord for Subspace<F> {
    fn cmp(&self, other: &Self) -> Ordering {
        self.ambient
            .cmp(&other.ambient)
            .then(self.dim().cmp(&other.dim()))
            .then_with(|| self.basis.data().cmp(other.basis.data()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;

    fn e(f: PrimeField, n: usize, i: usize) -> Vec<<PrimeField as Field>::Elem> {
        vecops::unit(f, n, i)
    }

    #[test]
    fn span_of_two_axes() {
        let f = PrimeField::gf2();
        let u = Subspace::from_vectors(f, 3, &[e(f, 3, 0)]);
        let w = Subspace::from_vectors(f, 3, &[e(f, 3, 1)]);
        let s = u.sum(&w).unwrap();
        assert_eq!(s, Subspace::from_vectors(f, 3, &[e(f, 3, 1), e(f, 3, 0)]));
        assert_eq!(s.dim(), 2);
    }

    #[test]
    fn meet_by_enumeration() {
        let f = PrimeField::gf2();
        let u = Subspace::from_vectors(f, 3, &[e(f, 3, 0), e(f, 3, 1)]);
        let w = Subspace::from_vectors(f, 3, &[e(f, 3, 1), e(f, 3, 2)]);
        let m = u.meet(&w).unwrap();
        let brute: Vec<_> = vecops::enumerate(f, 3).into_iter().filter(|v| u.contains(v) && w.contains(v)).collect();
        assert_eq!(m.elements().len(), brute.len());
        assert_eq!(m, Subspace::from_vectors(f, 3, &[e(f, 3, 1)]));
    }

    #[test]
    fn identities_with_extremes() {
        let f = PrimeField::new(3).unwrap();
        let u = Subspace::from_vectors(f, 2, &[vec![f.from_i64(1), f.from_i64(2)]]);
        assert_eq!(u.sum(&Subspace::zero(f, 2)).unwrap(), u);
        assert_eq!(u.meet(&Subspace::full(f, 2)).unwrap(), u);
        assert!(Subspace::zero(f, 3).sum(&Subspace::zero(f, 2)).is_err());
    }

    #[test]
    fn preimage_and_image() {
        let f = PrimeField::gf2();
        // projection onto first coordinate of k^2
        let a = Matrix::from_i64(f, 1, 2, &[1, 0]);
        let z = Subspace::zero(f, 1);
        let pre = z.preimage_under(&a);
        assert_eq!(pre, Subspace::from_vectors(f, 2, &[e(f, 2, 1)]));
        assert_eq!(Subspace::full(f, 2).image_under(&a), Subspace::full(f, 1));
    }

    #[test]
    fn reduce_is_canonical() {
        let f = PrimeField::gf2();
        let u = Subspace::from_vectors(f, 3, &[vec![f.one(), f.one(), f.zero()]]);
        let a = u.reduce(&[f.one(), f.zero(), f.one()]);
        let b = u.reduce(&[f.zero(), f.one(), f.one()]);
        assert_eq!(a, b);
    }
}
