//! Dense row-major matrices over an exact [`Field`].

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::subspace::Subspace;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Matrix<F: Field> {
    field: F,
    rows: usize,
    cols: usize,
    data: Vec<F::Elem>,
}

impl<F: Field> fmt::Debug for Matrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{} over {:?}", self.rows, self.cols, self.field)?;
        for r in 0..self.rows {
            write!(f, "  [")?;
            for c in 0..self.cols {
                if c > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", self.get(r, c))?;
            }
            writeln!(f, "]")?;
        }
        Ok(())
    }
}

impl<F: Field> Matrix<F> {
    pub fn zeros(field: F, rows: usize, cols: usize) -> Self {
        Matrix { field, rows, cols, data: vec![field.zero(); rows * cols] }
    }

    pub fn identity(field: F, n: usize) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, field.one());
        }
        m
    }

    pub fn from_vec(field: F, rows: usize, cols: usize, data: Vec<F::Elem>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::DimensionMismatch { expected: rows * cols, found: data.len() });
        }
        Ok(Matrix { field, rows, cols, data })
    }

    /// Builds a matrix from row vectors of length `cols`.
    pub fn from_rows(field: F, cols: usize, rows: &[Vec<F::Elem>]) -> Result<Self> {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            if r.len() != cols {
                return Err(Error::DimensionMismatch { expected: cols, found: r.len() });
            }
            data.extend(r.iter().cloned());
        }
        Ok(Matrix { field, rows: rows.len(), cols, data })
    }

    /// Builds a matrix whose columns are the given vectors of length `rows`.
    pub fn from_cols(field: F, rows: usize, cols: &[Vec<F::Elem>]) -> Result<Self> {
        Ok(Self::from_rows(field, rows, cols)?.transpose())
    }

    pub fn from_i64(field: F, rows: usize, cols: usize, entries: &[i64]) -> Self {
        assert_eq!(entries.len(), rows * cols, "entry count");
        Matrix { field, rows, cols, data: entries.iter().map(|&v| field.from_i64(v)).collect() }
    }

    /// Diagonal matrix with every diagonal entry equal to `s`.
    pub fn scalar(field: F, n: usize, s: &F::Elem) -> Self {
        let mut m = Self::zeros(field, n, n);
        for i in 0..n {
            m.set(i, i, s.clone());
        }
        m
    }

    #[inline]
    pub fn field(&self) -> F {
        self.field
    }
    #[inline]
    pub fn rows(&self) -> usize {
        self.rows
    }
    #[inline]
    pub fn cols(&self) -> usize {
        self.cols
    }
    #[inline]
    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }
    #[inline]
    pub fn get(&self, r: usize, c: usize) -> &F::Elem {
        &self.data[r * self.cols + c]
    }
    #[inline]
    pub fn set(&mut self, r: usize, c: usize, v: F::Elem) {
        self.data[r * self.cols + c] = v;
    }
    #[inline]
    pub fn row(&self, r: usize) -> &[F::Elem] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }
    pub fn col(&self, c: usize) -> Vec<F::Elem> {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }
    pub fn data(&self) -> &[F::Elem] {
        &self.data
    }
    pub fn row_vecs(&self) -> Vec<Vec<F::Elem>> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|x| self.field.is_zero(x))
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let x = self.get(r, c);
                    if r == c {
                        self.field.is_one(x)
                    } else {
                        self.field.is_zero(x)
                    }
                })
            })
    }

    pub fn transpose(&self) -> Self {
        let mut data = Vec::with_capacity(self.data.len());
        for c in 0..self.cols {
            for r in 0..self.rows {
                data.push(self.get(r, c).clone());
            }
        }
        Matrix { field: self.field, rows: self.cols, cols: self.rows, data }
    }

    pub fn mul(&self, other: &Self) -> Self {
        assert_eq!(self.cols, other.rows, "matrix product shape");
        let f = self.field;
        let mut out = Self::zeros(f, self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if f.is_zero(a) {
                    continue;
                }
                let orow = other.row(k);
                let base = r * other.cols;
                for (c, b) in orow.iter().enumerate() {
                    if !f.is_zero(b) {
                        let cur = &out.data[base + c];
                        out.data[base + c] = f.add(cur, &f.mul(a, b));
                    }
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[F::Elem]) -> Vec<F::Elem> {
        assert_eq!(self.cols, v.len(), "matrix-vector shape");
        let f = self.field;
        (0..self.rows)
            .map(|r| {
                let mut acc = f.zero();
                for (a, b) in self.row(r).iter().zip(v) {
                    if !f.is_zero(a) && !f.is_zero(b) {
                        acc = f.add(&acc, &f.mul(a, b));
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix sum shape");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.add(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols), "matrix difference shape");
        let f = self.field;
        let data = self.data.iter().zip(&other.data).map(|(a, b)| f.sub(a, b)).collect();
        Matrix { field: f, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let f = self.field;
        Matrix { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.neg(a)).collect() }
    }

    pub fn scale(&self, s: &F::Elem) -> Self {
        let f = self.field;
        Matrix { field: f, rows: self.rows, cols: self.cols, data: self.data.iter().map(|a| f.mul(a, s)).collect() }
    }

    /// `self += s * other`
    pub fn add_scaled(&mut self, s: &F::Elem, other: &Self) {
        assert_eq!((self.rows, self.cols), (other.rows, other.cols));
        let f = self.field;
        if f.is_zero(s) {
            return;
        }
        for (a, b) in self.data.iter_mut().zip(&other.data) {
            if !f.is_zero(b) {
                *a = f.add(a, &f.mul(s, b));
            }
        }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        assert!(self.is_square());
        let mut base = self.clone();
        let mut acc = Self::identity(self.field, self.rows);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Horizontal concatenation; all blocks must have the same row count.
    pub fn hstack(field: F, rows: usize, blocks: &[&Self]) -> Self {
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let mut off = 0;
        for b in blocks {
            assert_eq!(b.rows, rows, "hstack row count");
            out.paste(0, off, b);
            off += b.cols;
        }
        out
    }

    /// Vertical concatenation; all blocks must have the same column count.
    pub fn vstack(field: F, cols: usize, blocks: &[&Self]) -> Self {
        let mut data = Vec::new();
        let mut rows = 0;
        for b in blocks {
            assert_eq!(b.cols, cols, "vstack column count");
            data.extend(b.data.iter().cloned());
            rows += b.rows;
        }
        Matrix { field, rows, cols, data }
    }

    pub fn block_diag(field: F, blocks: &[&Self]) -> Self {
        let rows = blocks.iter().map(|b| b.rows).sum();
        let cols = blocks.iter().map(|b| b.cols).sum();
        let mut out = Self::zeros(field, rows, cols);
        let (mut r, mut c) = (0, 0);
        for b in blocks {
            out.paste(r, c, b);
            r += b.rows;
            c += b.cols;
        }
        out
    }

    /// Copies `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn paste(&mut self, r0: usize, c0: usize, block: &Self) {
        assert!(r0 + block.rows <= self.rows && c0 + block.cols <= self.cols, "paste out of bounds");
        for r in 0..block.rows {
            for c in 0..block.cols {
                self.set(r0 + r, c0 + c, block.get(r, c).clone());
            }
        }
    }

    pub fn submatrix(&self, r0: usize, nrows: usize, c0: usize, ncols: usize) -> Self {
        let mut out = Self::zeros(self.field, nrows, ncols);
        for r in 0..nrows {
            for c in 0..ncols {
                out.set(r, c, self.get(r0 + r, c0 + c).clone());
            }
        }
        out
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        let mut data = Vec::with_capacity(idx.len() * self.cols);
        for &r in idx {
            data.extend(self.row(r).iter().cloned());
        }
        Matrix { field: self.field, rows: idx.len(), cols: self.cols, data }
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        let mut out = Self::zeros(self.field, self.rows, idx.len());
        for r in 0..self.rows {
            for (j, &c) in idx.iter().enumerate() {
                out.set(r, j, self.get(r, c).clone());
            }
        }
        out
    }

    /// Reduced row-echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        (m, pivots)
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let f = self.field;
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut pr = 0;
        for c in 0..cols {
            if pr == rows {
                break;
            }
            let Some(p) = (pr..rows).find(|&r| !f.is_zero(self.get(r, c))) else {
                continue;
            };
            if p != pr {
                for k in 0..cols {
                    self.data.swap(p * cols + k, pr * cols + k);
                }
            }
            let inv = f.inv(self.get(pr, c)).expect("pivot is nonzero");
            if !f.is_one(&inv) {
                for k in c..cols {
                    let v = f.mul(self.get(pr, k), &inv);
                    self.set(pr, k, v);
                }
            }
            for r in 0..rows {
                if r == pr {
                    continue;
                }
                let factor = self.get(r, c).clone();
                if f.is_zero(&factor) {
                    continue;
                }
                for k in c..cols {
                    let pv = self.get(pr, k);
                    if f.is_zero(pv) {
                        continue;
                    }
                    let v = f.sub(self.get(r, k), &f.mul(&factor, pv));
                    self.set(r, k, v);
                }
            }
            pivots.push(c);
            pr += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Null space `{v : self * v = 0}`.
    pub fn kernel(&self) -> Subspace<F> {
        let f = self.field;
        let (r, pivots) = self.rref();
        let mut is_pivot = vec![false; self.cols];
        for &p in &pivots {
            is_pivot[p] = true;
        }
        let mut basis = Vec::new();
        for free in (0..self.cols).filter(|&c| !is_pivot[c]) {
            let mut v = vec![f.zero(); self.cols];
            v[free] = f.one();
            for (i, &p) in pivots.iter().enumerate() {
                v[p] = f.neg(r.get(i, free));
            }
            basis.push(v);
        }
        Subspace::from_vectors(f, self.cols, &basis)
    }

    /// Column space as a subspace of `k^rows`.
    pub fn image(&self) -> Subspace<F> {
        Subspace::from_matrix_rows(&self.transpose())
    }

    /// Row space as a subspace of `k^cols`.
    pub fn row_space(&self) -> Subspace<F> {
        Subspace::from_matrix_rows(self)
    }

    /// Some solution of `self * x = b`.
    pub fn solve(&self, b: &[F::Elem]) -> Option<Vec<F::Elem>> {
        assert_eq!(b.len(), self.rows, "right-hand side length");
        let bm = Self::from_cols(self.field, self.rows, &[b.to_vec()]).expect("shape");
        self.solve_matrix(&bm).map(|x| x.col(0))
    }

    /// Some solution of `self * X = B`.
    pub fn solve_matrix(&self, b: &Self) -> Option<Self> {
        assert_eq!(b.rows, self.rows, "right-hand side rows");
        let f = self.field;
        let aug = Self::hstack(f, self.rows, &[self, b]);
        let (r, pivots) = aug.rref();
        if pivots.iter().any(|&p| p >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(f, self.cols, b.cols);
        for (i, &p) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x.set(p, j, r.get(i, self.cols + j).clone());
            }
        }
        Some(x)
    }

    pub fn inverse(&self) -> Option<Self> {
        if !self.is_square() {
            return None;
        }
        let x = self.solve_matrix(&Self::identity(self.field, self.rows))?;
        // a square solvable system with identity right-hand side has full rank
        Some(x)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// True when some power is zero.
    pub fn is_nilpotent(&self) -> bool {
        assert!(self.is_square());
        if self.rows == 0 {
            return true;
        }
        self.pow(self.rows as u64).is_zero()
    }

    /// Kronecker product `self ⊗ other`.
    pub fn kron(&self, other: &Self) -> Self {
        let f = self.field;
        let mut out = Self::zeros(f, self.rows * other.rows, self.cols * other.cols);
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = self.get(r, c);
                if f.is_zero(a) {
                    continue;
                }
                out.paste(r * other.rows, c * other.cols, &other.scale(a));
            }
        }
        out
    }

    /// Trace of a square matrix.
    pub fn trace(&self) -> F::Elem {
        let f = self.field;
        (0..self.rows.min(self.cols)).fold(f.zero(), |acc, i| f.add(&acc, self.get(i, i)))
    }

    /// Row vector representation of the entries (row-major).
    pub fn to_flat(&self) -> Vec<F::Elem> {
        self.data.clone()
    }
}

/// Vector helpers over a field.
pub mod vecops {
    use super::*;

    pub fn zero<F: Field>(f: F, n: usize) -> Vec<F::Elem> {
        vec![f.zero(); n]
    }

    pub fn unit<F: Field>(f: F, n: usize, i: usize) -> Vec<F::Elem> {
        let mut v = zero(f, n);
        v[i] = f.one();
        v
    }

    pub fn add<F: Field>(f: F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| f.add(x, y)).collect()
    }

    pub fn sub<F: Field>(f: F, a: &[F::Elem], b: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().zip(b).map(|(x, y)| f.sub(x, y)).collect()
    }

    pub fn scale<F: Field>(f: F, s: &F::Elem, a: &[F::Elem]) -> Vec<F::Elem> {
        a.iter().map(|x| f.mul(s, x)).collect()
    }

    pub fn is_zero<F: Field>(f: F, a: &[F::Elem]) -> bool {
        a.iter().all(|x| f.is_zero(x))
    }

    /// `sum_i coeffs[i] * vecs[i]`
    pub fn combine<F: Field>(f: F, n: usize, coeffs: &[F::Elem], vecs: &[Vec<F::Elem>]) -> Vec<F::Elem> {
        let mut acc = zero(f, n);
        for (c, v) in coeffs.iter().zip(vecs) {
            if f.is_zero(c) {
                continue;
            }
            for (a, x) in acc.iter_mut().zip(v) {
                *a = f.add(a, &f.mul(c, x));
            }
        }
        acc
    }

    /// Every vector of `F^n` for a finite field, in lexicographic order.
    pub fn enumerate<F: Field>(f: F, n: usize) -> Vec<Vec<F::Elem>> {
        let elems = f.elements().expect("enumeration requires a finite field");
        let mut out = vec![Vec::new()];
        for _ in 0..n {
            let mut next = Vec::with_capacity(out.len() * elems.len());
            for v in &out {
                for e in &elems {
                    let mut w = v.clone();
                    w.push(e.clone());
                    next.push(w);
                }
            }
            out = next;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rat, Rationals};

    #[test]
    fn kernel_of_identity_is_zero() {
        let f = PrimeField::gf2();
        assert_eq!(Matrix::identity(f, 2).kernel().dim(), 0);
        assert_eq!(Matrix::zeros(f, 1, 2).kernel().dim(), 2);
    }

    #[test]
    fn kernel_of_all_ones() {
        let f = PrimeField::gf2();
        let k = Matrix::from_i64(f, 2, 2, &[1, 1, 1, 1]).kernel();
        assert_eq!(k.dim(), 1);
        assert!(k.contains(&[f.one(), f.one()]));
    }

    #[test]
    fn inverse_over_rationals() {
        let q = Rationals;
        let a = Matrix::from_i64(q, 2, 2, &[2, 1, 1, 1]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).is_identity());
        assert_eq!(*inv.get(0, 1), Rat::new(-1, 1));
        assert!(Matrix::from_i64(q, 2, 2, &[1, 2, 2, 4]).inverse().is_none());
    }

    #[test]
    fn solve_detects_inconsistency() {
        let f = PrimeField::new(3).unwrap();
        let a = Matrix::from_i64(f, 2, 2, &[1, 1, 2, 2]);
        assert!(a.solve(&[f.from_i64(1), f.from_i64(1)]).is_none());
        let x = a.solve(&[f.from_i64(1), f.from_i64(2)]).unwrap();
        assert_eq!(a.mul_vec(&x), vec![f.from_i64(1), f.from_i64(2)]);
    }

    #[test]
    fn nilpotency_and_powers() {
        let f = PrimeField::gf2();
        let j = Matrix::from_i64(f, 3, 3, &[0, 1, 0, 0, 0, 1, 0, 0, 0]);
        assert!(j.is_nilpotent());
        assert!(!j.pow(2).is_zero());
        assert!(!Matrix::identity(f, 2).is_nilpotent());
    }
}
