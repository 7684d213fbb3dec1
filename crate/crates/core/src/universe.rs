//! The fixed module lists used for universal checks: Kronecker representations and
//! preprojectives, uniserial and all modules over `k[x]/(x^N)`, and the descending chain of
//! pp-formulas in the Kronecker example.

use alloc::format;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec;
use alloc::vec::Vec;

use crate::algebra::{algebra_from_quiver, truncated_dvr, Algebra, Arrow, QuiverPresentation};
use crate::decompose::isomorphic;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::matrix::Matrix;
use crate::module::{Module, Side};
use crate::pp::PpFormula;

/// Bumped whenever a module list below changes.
pub const UNIVERSE_VERSION: u32 = 1;

/// The path algebra of `1 ⇉ 2`, basis `e1, e2, a, b`.
pub fn kronecker_algebra<F: Field>(f: F) -> Result<Arc<Algebra<F>>> {
    let q = QuiverPresentation {
        field: f,
        vertices: 2,
        arrows: vec![Arrow { source: 0, target: 1, label: "a".into() }, Arrow { source: 0, target: 1, label: "b".into() }],
        relations: vec![],
        path_length_cap: 2,
    };
    Ok(Arc::new(algebra_from_quiver(&q)?))
}

/// The right module given by `α, β: V_1 → V_2`; basis `V_1` then `V_2`.
pub fn kronecker_representation<F: Field>(alg: &Arc<Algebra<F>>, alpha: &Matrix<F>, beta: &Matrix<F>) -> Result<Module<F>> {
    let f = alg.field();
    let (d2, d1) = (alpha.rows(), alpha.cols());
    let n = d1 + d2;
    let mut e1 = Matrix::zeros(f, n, n);
    e1.paste(0, 0, &Matrix::identity(f, d1));
    let mut e2 = Matrix::zeros(f, n, n);
    e2.paste(d1, d1, &Matrix::identity(f, d2));
    let arrow = |m: &Matrix<F>| {
        let mut a = Matrix::zeros(f, n, n);
        a.paste(d1, 0, m);
        a
    };
    let by_label = |l: &str| -> Matrix<F> {
        match l {
            "e1" => e1.clone(),
            "e2" => e2.clone(),
            "a" => arrow(alpha),
            _ => arrow(beta),
        }
    };
    let actions = alg.labels().iter().map(|l| by_label(l)).collect();
    Module::new(alg.clone(), Side::Right, n, actions)
}

/// The preprojective of dimension vector `(k, k+1)`: `α = [I; 0]`, `β = [0; I]`.
/// `k = 0` is `P(2)`, `k = 1` is `P(1)`.
pub fn kronecker_preprojective<F: Field>(alg: &Arc<Algebra<F>>, k: usize) -> Result<Module<F>> {
    let f = alg.field();
    let mut alpha = Matrix::zeros(f, k + 1, k);
    let mut beta = Matrix::zeros(f, k + 1, k);
    for i in 0..k {
        alpha.set(i, i, f.one());
        beta.set(i + 1, i, f.one());
    }
    kronecker_representation(alg, &alpha, &beta)
}

/// Preprojectives of dimension `1, 3, …, 2k_max + 1`, labelled `Pre(dim)`.
pub fn kronecker_preprojectives<F: Field>(alg: &Arc<Algebra<F>>, k_max: usize) -> Result<Vec<(String, Module<F>)>> {
    (0..=k_max).map(|k| Ok((format!("Pre({})", 2 * k + 1), kronecker_preprojective(alg, k)?))).collect()
}

/// The embeddings `P(2) → P(1)` by `a` and by `b`.
pub fn kronecker_embeddings<F: Field>(f: F) -> (Matrix<F>, Matrix<F>) {
    // P(1) has basis (V_1 = e1 | V_2 = a, b), P(2) = V_2 = e2
    let by_a = Matrix::from_i64(f, 3, 1, &[0, 1, 0]);
    let by_b = Matrix::from_i64(f, 3, 1, &[0, 0, 1]);
    (by_a, by_b)
}

/// `∃ y_1..y_k: x = y_1 a ∧ y_1 b = y_2 a ∧ … ∧ y_{k-1} b = y_k a`.
pub fn kronecker_ladder<F: Field>(alg: &Arc<Algebra<F>>, k: usize) -> Result<PpFormula<F>> {
    let a = label(alg, "a")?;
    let b = label(alg, "b")?;
    let zero = alg.zero_elem();
    let mut rows = vec![vec![zero.clone(); k]; k + 1];
    rows[0][0] = alg.unit().clone();
    rows[1][0] = alg.neg(&a);
    for i in 1..k {
        rows[i][i] = b.clone();
        rows[i + 1][i] = alg.neg(&a);
    }
    PpFormula::from_rows(alg.clone(), Side::Right, 1, rows)
}

/// `e_2 | x`, then `ladder(k) + b | x` for `k = 1, 2, …`: the strictly descending chain between
/// the pp-types of a generator of `P(2)` and of its image under the `b`-embedding.
pub fn kronecker_chain<F: Field>(alg: &Arc<Algebra<F>>, len: usize) -> Result<Vec<PpFormula<F>>> {
    let b = label(alg, "b")?;
    let by_b = PpFormula::divisibility(alg.clone(), Side::Right, &b);
    let mut out = vec![PpFormula::divisibility(alg.clone(), Side::Right, &label(alg, "e2")?)];
    for k in 1..len {
        out.push(kronecker_ladder(alg, k)?.pp_sum(&by_b)?);
    }
    Ok(out)
}

/// Every Kronecker module of dimension `≤ max_dim`, one per isomorphism class.
pub fn kronecker_modules_up_to_iso<F: Field>(alg: &Arc<Algebra<F>>, max_dim: usize) -> Result<Vec<Module<F>>> {
    let f = alg.field();
    let elems = f.elements().ok_or_else(|| Error::Unsupported("module enumeration needs a finite field".into()))?;
    let mut classes: Vec<Module<F>> = Vec::new();
    for total in 1..=max_dim {
        for d1 in 0..=total {
            let d2 = total - d1;
            let cells = 2 * d1 * d2;
            let count = (elems.len() as u64).pow(cells as u32);
            for code in 0..count {
                let mut c = code;
                let mut vals = Vec::with_capacity(cells);
                for _ in 0..cells {
                    vals.push(elems[(c % elems.len() as u64) as usize].clone());
                    c /= elems.len() as u64;
                }
                let alpha = Matrix::from_vec(f, d2, d1, vals[..d1 * d2].to_vec())?;
                let beta = Matrix::from_vec(f, d2, d1, vals[d1 * d2..].to_vec())?;
                let m = kronecker_representation(alg, &alpha, &beta)?;
                let mut new = true;
                for c in classes.iter().filter(|c| c.dim() == total) {
                    if isomorphic(c, &m)? {
                        new = false;
                        break;
                    }
                }
                if new {
                    classes.push(m);
                }
            }
        }
    }
    Ok(classes)
}

/// `k[x]/(x^N)`.
pub fn dvr_algebra<F: Field>(f: F, horizon: usize) -> Result<Arc<Algebra<F>>> {
    Ok(Arc::new(truncated_dvr(horizon, f)?))
}

/// `k[x]/(x^j)` as a right module over `k[x]/(x^N)`.
pub fn dvr_uniserial<F: Field>(alg: &Arc<Algebra<F>>, j: usize) -> Module<F> {
    crate::tower::uniserial(alg.clone(), j)
}

fn label<F: Field>(alg: &Algebra<F>, name: &str) -> Result<Vec<F::Elem>> {
    alg.elem(name).ok_or_else(|| Error::InvalidParameter(format!("algebra has no basis element `{name}`")))
}

fn partitions(n: usize, max_part: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for first in (1..=max_part.min(n)).rev() {
        for mut rest in partitions(n - first, first) {
            rest.insert(0, first);
            out.push(rest);
        }
    }
    out
}

/// Every module of dimension `≤ max_dim` over `k[x]/(x^N)`, one per isomorphism class
/// (sums of uniserials indexed by partitions with parts `≤ N`).
pub fn dvr_modules_up_to_iso<F: Field>(alg: &Arc<Algebra<F>>, max_dim: usize) -> Result<Vec<(String, Module<F>)>> {
    let horizon = alg.dim();
    let mut out = Vec::new();
    for d in 1..=max_dim {
        for p in partitions(d, horizon) {
            let parts: Vec<Module<F>> = p.iter().map(|&j| dvr_uniserial(alg, j)).collect();
            let refs: Vec<&Module<F>> = parts.iter().collect();
            let name = p.iter().map(|j| format!("U{j}")).collect::<Vec<_>>().join("+");
            out.push((name, Module::direct_sum(&refs)?));
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::PrimeField;
    use crate::lattice::{interval_probe, ProbeLimits, Verdict};
    use crate::pp::pp_type_generator;

    #[test]
    fn preprojectives_are_indecomposable_with_odd_dimensions() {
        let alg = kronecker_algebra(PrimeField::gf2()).unwrap();
        for (name, m) in kronecker_preprojectives(&alg, 4).unwrap() {
            assert!(crate::decompose::is_indecomposable(&m).unwrap(), "{name}");
        }
        let p2 = kronecker_preprojective(&alg, 0).unwrap();
        let p1 = kronecker_preprojective(&alg, 1).unwrap();
        assert_eq!(p2.hom_dim(&p1).unwrap(), 2);
        let (fa, fb) = kronecker_embeddings(PrimeField::gf2());
        assert!(p2.is_hom_to(&p1, &fa) && p2.is_hom_to(&p1, &fb));
    }

    #[test]
    fn kronecker_pp_types_of_the_example() {
        let f = PrimeField::gf2();
        let alg = kronecker_algebra(f).unwrap();
        let p2 = kronecker_preprojective(&alg, 0).unwrap();
        let p1 = kronecker_preprojective(&alg, 1).unwrap();
        let (fa, fb) = kronecker_embeddings(f);
        let m = vec![vec![f.one()]];
        let chain = kronecker_chain(&alg, 2).unwrap();
        assert!(pp_type_generator(&p2, &m).unwrap().equivalent(&chain[0]).unwrap());
        let by_a = PpFormula::divisibility(alg.clone(), Side::Right, &alg.elem("a").unwrap());
        let by_b = PpFormula::divisibility(alg.clone(), Side::Right, &alg.elem("b").unwrap());
        assert!(pp_type_generator(&p1, &[fa.col(0)]).unwrap().equivalent(&by_a).unwrap());
        assert!(pp_type_generator(&p1, &[fb.col(0)]).unwrap().equivalent(&by_b).unwrap());
    }

    #[test]
    fn kronecker_chain_is_strict_and_separated() {
        let alg = kronecker_algebra(PrimeField::gf2()).unwrap();
        let universe = kronecker_preprojectives(&alg, 4).unwrap();
        let chain = kronecker_chain(&alg, 4).unwrap();
        for w in chain.windows(2) {
            assert!(w[1].implies(&w[0]).unwrap());
            let sep = universe.iter().find(|(_, m)| w[0].eval(m).unwrap() != w[1].eval(m).unwrap());
            assert!(sep.is_some());
        }
        let psi = PpFormula::divisibility(alg.clone(), Side::Right, &alg.elem("b").unwrap());
        let rep = interval_probe(&psi, &chain[0], &universe, 3, ProbeLimits::default()).unwrap();
        assert_eq!(rep.verdict, Verdict::NotShortWitness);
        assert!(rep.chain_length() > 3);
    }

    #[test]
    fn module_lists() {
        let f = PrimeField::gf2();
        let dvr = dvr_algebra(f, 3).unwrap();
        // partitions of 1..4 with parts ≤ 3
        assert_eq!(dvr_modules_up_to_iso(&dvr, 4).unwrap().len(), 1 + 2 + 3 + 4);
        let alg = kronecker_algebra(f).unwrap();
        let small = kronecker_modules_up_to_iso(&alg, 2).unwrap();
        // two simples; S1², S2², S1⊕S2 and the three regular simples
        assert_eq!(small.len(), 2 + 3 + 3);
    }
}
