//! Deterministic test material: the fixed formula corpus and seeded random modules.

use std::sync::Arc;

use anyhow::{bail, Result};
use ppz_core::algebra::{AlgElem, Algebra};
use ppz_core::module::{Module, Side};
use ppz_core::pp::PpFormula;
use ppz_core::Field;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub const CORPUS_SIZE: usize = 50;
const CORPUS_SEED: u64 = 0x7070_0050;

/// The seeded generator used for every randomized command.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn random_elem<F: Field, R: Rng>(alg: &Algebra<F>, rng: &mut R) -> AlgElem<F> {
    let f = alg.field();
    match rng.gen_range(0..6) {
        0 | 1 => alg.zero_elem(),
        2 => alg.unit().clone(),
        3 | 4 => alg.basis_elem(rng.gen_range(0..alg.dim())),
        _ => (0..alg.dim()).map(|_| f.sample(rng)).collect(),
    }
}

/// A random pp-1-formula with `l ≤ 3` bound variables and `1 ≤ m ≤ 3` equations.
pub fn random_formula<F: Field, R: Rng>(alg: &Arc<Algebra<F>>, side: Side, rng: &mut R) -> Result<PpFormula<F>> {
    let l = rng.gen_range(0..=3);
    let m = rng.gen_range(1..=3);
    let h = (0..(1 + l) * m).map(|_| random_elem(alg, rng)).collect();
    Ok(PpFormula::new(alg.clone(), side, 1, l, m, h)?)
}

/// Fifty right pp-1-formulas: annihilators and divisibility by each non-unit basis element,
/// `x = x`, `x = 0`, then seeded random formulas.
pub fn corpus<F: Field>(alg: &Arc<Algebra<F>>) -> Result<Vec<PpFormula<F>>> {
    let mut out = Vec::new();
    for i in 0..alg.dim() {
        let a = alg.basis_elem(i);
        if a == *alg.unit() {
            continue;
        }
        out.push(PpFormula::annihilator(alg.clone(), Side::Right, &a));
        out.push(PpFormula::divisibility(alg.clone(), Side::Right, &a));
    }
    out.push(PpFormula::tautology(alg.clone(), Side::Right, 1));
    out.push(PpFormula::zero(alg.clone(), Side::Right, 1));
    out.truncate(CORPUS_SIZE);
    let mut rng = rng(CORPUS_SEED);
    while out.len() < CORPUS_SIZE {
        out.push(random_formula(alg, Side::Right, &mut rng)?);
    }
    Ok(out)
}

fn random_vector<F: Field, R: Rng>(f: F, dim: usize, rng: &mut R) -> Vec<F::Elem> {
    (0..dim).map(|_| if rng.gen_bool(0.5) { f.zero() } else { f.sample(rng) }).collect()
}

/// `R / (r_1, …, r_k)` on the given side, with `k ≤ 2` random relations.
fn random_cyclic<F: Field, R: Rng>(alg: &Arc<Algebra<F>>, side: Side, rng: &mut R) -> Result<Module<F>> {
    let reg = Module::regular(alg.clone(), side);
    let k = rng.gen_range(1..=2);
    let rels: Vec<Vec<F::Elem>> = (0..k).map(|_| random_vector(alg.field(), reg.dim(), rng)).collect();
    let sub = reg.submodule_generated(&rels);
    Ok(reg.quotient(&sub)?.0)
}

/// A random right module of dimension `1..=max_dim`: a cyclic quotient of `R`, the k-dual of a
/// cyclic quotient of the left regular module, or a sum of two such.
pub fn random_module<F: Field, R: Rng>(alg: &Arc<Algebra<F>>, max_dim: usize, rng: &mut R) -> Result<Module<F>> {
    let piece = |rng: &mut R| -> Result<Module<F>> {
        if rng.gen_bool(0.5) {
            random_cyclic(alg, Side::Right, rng)
        } else {
            Ok(random_cyclic(alg, Side::Left, rng)?.k_dual())
        }
    };
    for _ in 0..10_000 {
        let m = if rng.gen_range(0..3) == 0 {
            let a = piece(rng)?;
            let b = piece(rng)?;
            Module::direct_sum(&[&a, &b])?
        } else {
            piece(rng)?
        };
        if (1..=max_dim).contains(&m.dim()) {
            return Ok(m);
        }
    }
    bail!("no random module of dimension at most {max_dim} found")
}

/// A quotient of a random projective `⊕ e_i R` of dimension at most `max_dim` by up to three
/// random elements.
pub fn random_presentation<F: Field, R: Rng>(
    projectives: &[Module<F>],
    max_dim: usize,
    rng: &mut R,
) -> Result<Module<F>> {
    for _ in 0..10_000 {
        let count = rng.gen_range(1..=3);
        let parts: Vec<&Module<F>> = (0..count).map(|_| &projectives[rng.gen_range(0..projectives.len())]).collect();
        if parts.iter().map(|p| p.dim()).sum::<usize>() > max_dim {
            continue;
        }
        let p = Module::direct_sum(&parts)?;
        let k = rng.gen_range(0..=3);
        let rels: Vec<Vec<F::Elem>> = (0..k).map(|_| random_vector(p.field(), p.dim(), rng)).collect();
        let sub = p.submodule_generated(&rels);
        let (q, _) = p.quotient(&sub)?;
        if q.dim() > 0 {
            return Ok(q);
        }
    }
    bail!("no non-zero presentation of dimension at most {max_dim} found")
}

#[cfg(test)]
mod tests {
    use super::*;
    use ppz_core::universe::{dvr_algebra, kronecker_algebra};
    use ppz_core::PrimeField;

    #[test]
    fn corpus_is_fixed_and_has_fifty_unary_formulas() {
        let alg = kronecker_algebra(PrimeField::gf2()).unwrap();
        let a = corpus(&alg).unwrap();
        let b = corpus(&alg).unwrap();
        assert_eq!(a.len(), CORPUS_SIZE);
        assert_eq!(a, b);
        assert!(a.iter().all(|p| p.n() == 1 && p.l() <= 3 && p.m() <= 3));
    }

    #[test]
    fn random_modules_respect_the_bound() {
        let alg = dvr_algebra(PrimeField::gf2(), 3).unwrap();
        let mut r = rng(3);
        for _ in 0..20 {
            let m = random_module(&alg, 4, &mut r).unwrap();
            assert!((1..=4).contains(&m.dim()));
            assert_eq!(m.side(), Side::Right);
            m.verify().unwrap();
        }
    }
}
