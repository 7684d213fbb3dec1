//! Brute-force reference computations by exhaustive enumeration over finite fields.
//!
//! Nothing here calls into the echelon-form machinery of the core crate beyond plain matrix
//! products; every answer comes from listing elements.

use std::collections::{BTreeSet, HashSet};

use anyhow::{bail, ensure, Result};
use ppz_core::matrix::vecops;
use ppz_core::module::Module;
use ppz_core::pp::PpFormula;
use ppz_core::ziegler::{PointSet, ZieglerPoint};
use ppz_core::{Field, Matrix};

/// Largest number of tuples any single enumeration may visit.
pub const ENUMERATION_CAP: u64 = 1 << 22;

fn field_size<F: Field>(f: F) -> Result<u64> {
    match f.order() {
        Some(q) => Ok(q),
        None => bail!("brute-force enumeration needs a finite field"),
    }
}

fn check_cap(q: u64, exponent: usize) -> Result<()> {
    match q.checked_pow(exponent as u32) {
        Some(t) if t <= ENUMERATION_CAP => Ok(()),
        _ => bail!("enumeration of {q}^{exponent} tuples exceeds the cap"),
    }
}

/// `Σ_b h_b X(b)`, built from the basis action matrices.
fn coefficient_action<F: Field>(m: &Module<F>, h: &[F::Elem]) -> Matrix<F> {
    let f = m.field();
    let mut out = Matrix::zeros(f, m.dim(), m.dim());
    for (b, c) in h.iter().enumerate() {
        if !f.is_zero(c) {
            out.add_scaled(c, m.action(b));
        }
    }
    out
}

/// Every `x̄ ∈ M^n` for which some `ȳ ∈ M^l` satisfies all equations, flattened.
pub fn brute_eval<F: Field>(phi: &PpFormula<F>, m: &Module<F>) -> Result<BTreeSet<Vec<F::Elem>>> {
    let f = m.field();
    let q = field_size(f)?;
    let (n, l, eqs, d) = (phi.n(), phi.l(), phi.m(), m.dim());
    check_cap(q, d * n)?;
    check_cap(q, d * l)?;
    let elems = vecops::enumerate(f, d);
    // contribution of variable v taking value elems[e], as a vector in M^eqs
    let table: Vec<Vec<Vec<F::Elem>>> = (0..n + l)
        .map(|v| {
            let acts: Vec<Matrix<F>> = (0..eqs).map(|eq| coefficient_action(m, phi.entry(v, eq))).collect();
            elems.iter().map(|u| acts.iter().flat_map(|a| a.mul_vec(u)).collect()).collect()
        })
        .collect();
    let zero = vecops::zero(f, eqs * d);
    let sum_over = |vars: std::ops::Range<usize>, idx: &[usize]| {
        let mut acc = zero.clone();
        for (v, &e) in vars.zip(idx) {
            acc = vecops::add(f, &acc, &table[v][e]);
        }
        acc
    };
    let mut reachable: HashSet<Vec<F::Elem>> = HashSet::new();
    for idx in tuples(elems.len(), l) {
        reachable.insert(sum_over(n..n + l, &idx));
    }
    let mut out = BTreeSet::new();
    for idx in tuples(elems.len(), n) {
        let x_part = sum_over(0..n, &idx);
        let need: Vec<F::Elem> = x_part.iter().map(|c| f.neg(c)).collect();
        if reachable.contains(&need) {
            out.insert(idx.iter().flat_map(|&e| elems[e].iter().cloned()).collect());
        }
    }
    Ok(out)
}

/// All index tuples of length `len` over `0..base`, lexicographically.
fn tuples(base: usize, len: usize) -> impl Iterator<Item = Vec<usize>> {
    let total = (base as u64).pow(len as u32);
    (0..total).map(move |mut code| {
        let mut idx = vec![0; len];
        for slot in idx.iter_mut().rev() {
            *slot = (code % base as u64) as usize;
            code /= base as u64;
        }
        idx
    })
}

/// Every linear combination of `basis`, a list of `rows × cols` matrices.
pub fn span_elements<F: Field>(f: F, basis: &[Matrix<F>], rows: usize, cols: usize) -> Result<Vec<Matrix<F>>> {
    let q = field_size(f)?;
    check_cap(q, basis.len())?;
    let scalars = f.elements().expect("finite field");
    Ok(tuples(scalars.len(), basis.len())
        .map(|idx| {
            let mut acc = Matrix::zeros(f, rows, cols);
            for (b, &s) in basis.iter().zip(&idx) {
                acc.add_scaled(&scalars[s], b);
            }
            acc
        })
        .collect())
}

/// Number of idempotents of `End(M)`, found by listing the whole ring.
pub fn count_idempotents<F: Field>(m: &Module<F>) -> Result<usize> {
    let ends = span_elements(m.field(), &m.endomorphisms(), m.dim(), m.dim())?;
    Ok(ends.iter().filter(|e| e.mul(e) == **e).count())
}

/// `M ≠ 0` is indecomposable iff `End(M)` has no idempotents besides 0 and 1.
pub fn is_indecomposable_brute<F: Field>(m: &Module<F>) -> Result<bool> {
    Ok(m.dim() > 0 && count_idempotents(m)? == 2)
}

/// `f ∈ rad(A, B)` by the definition: `1 − g f` is invertible for every `g: B → A`.
pub struct RadicalByDefinition<F: Field> {
    back: Vec<Matrix<F>>,
    dim_a: usize,
}

impl<F: Field> RadicalByDefinition<F> {
    pub fn new(a: &Module<F>, b: &Module<F>) -> Result<Self> {
        let back = span_elements(a.field(), &b.hom_space(a)?, a.dim(), b.dim())?;
        Ok(RadicalByDefinition { back, dim_a: a.dim() })
    }

    pub fn contains(&self, f: &Matrix<F>) -> bool {
        if self.dim_a == 0 {
            return true;
        }
        let one = Matrix::identity(f.field(), self.dim_a);
        self.back.iter().all(|g| one.sub(&g.mul(f)).is_invertible())
    }
}

/// Counts `|φ(M)|` for a formula by enumeration.
pub fn count_solutions<F: Field>(phi: &PpFormula<F>, m: &Module<F>) -> Result<u64> {
    Ok(brute_eval(phi, m)?.len() as u64)
}

/// Reference closure of a point set, applying the three closure rules literally copy by copy.
pub fn closure_by_rules(s: &PointSet) -> Result<PointSet> {
    let n = s.height();
    let mut out = s.clone();
    let mut forced: BTreeSet<ZieglerPoint> = BTreeSet::new();
    for (l, _) in s.cofinite_families() {
        forced.insert(ZieglerPoint::Prufer { f0: n - l, f1: l });
        forced.insert(ZieglerPoint::Adic { n });
        forced.insert(ZieglerPoint::Q { n });
    }
    for p in s.explicit_points() {
        if matches!(p, ZieglerPoint::Prufer { .. } | ZieglerPoint::Adic { .. }) {
            forced.insert(ZieglerPoint::Q { n });
        }
    }
    for p in forced {
        out.insert(p)?;
    }
    ensure!(out.height() == n, "height changed");
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use ppz_core::module::Side;
    use ppz_core::universe::{dvr_algebra, dvr_uniserial};
    use ppz_core::PrimeField;

    #[test]
    fn annihilator_of_x_on_a_uniserial() {
        let f = PrimeField::gf2();
        let alg = dvr_algebra(f, 3).unwrap();
        let u3 = dvr_uniserial(&alg, 3);
        let phi = PpFormula::annihilator(alg.clone(), Side::Right, &alg.elem("x").unwrap());
        // the socle of U3 has two elements
        assert_eq!(count_solutions(&phi, &u3).unwrap(), 2);
        let psi = PpFormula::divisibility(alg.clone(), Side::Right, &alg.elem("x").unwrap());
        assert_eq!(count_solutions(&psi, &u3).unwrap(), 4);
    }

    #[test]
    fn idempotent_counts() {
        let f = PrimeField::gf2();
        let alg = dvr_algebra(f, 3).unwrap();
        let u = dvr_uniserial(&alg, 2);
        assert!(is_indecomposable_brute(&u).unwrap());
        let sum = Module::direct_sum(&[&u, &dvr_uniserial(&alg, 1)]).unwrap();
        assert!(!is_indecomposable_brute(&sum).unwrap());
    }

    #[test]
    fn radical_by_definition_on_uniserials() {
        let f = PrimeField::gf2();
        let alg = dvr_algebra(f, 3).unwrap();
        let u = dvr_uniserial(&alg, 2);
        let r = RadicalByDefinition::new(&u, &u).unwrap();
        assert!(!r.contains(&Matrix::identity(f, 2)));
        let ends = u.endomorphisms();
        let nilpotent = ends.iter().find(|e| !e.is_zero() && e.is_nilpotent()).unwrap();
        assert!(r.contains(nilpotent));
    }
}
