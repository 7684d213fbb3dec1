use std::sync::Arc;

use ppz_core::algebra::Algebra;
use ppz_core::decompose::{decompose, is_indecomposable, isomorphic, merge_multiplicities, same_multiset};
use ppz_core::module::{Module, Side};
use ppz_core::pp::PpFormula;
use ppz_core::tube::{FormalPath, TranslationQuiver};
use ppz_core::universe::{dvr_algebra, dvr_uniserial, kronecker_algebra, kronecker_preprojective};
use ppz_core::ziegler::{PointSet, ZieglerPoint};
use ppz_core::{Field, Fp, PrimeField, Subspace};
use proptest::prelude::*;

fn f3() -> PrimeField {
    PrimeField::new(3).unwrap()
}

fn subspace(vectors: &[Vec<u32>]) -> Subspace<PrimeField> {
    let vs: Vec<Vec<Fp>> = vectors.iter().map(|v| v.iter().map(|&x| Fp(x)).collect()).collect();
    Subspace::from_vectors(f3(), 4, &vs)
}

fn vectors() -> impl Strategy<Value = Vec<Vec<u32>>> {
    prop::collection::vec(prop::collection::vec(0u32..3, 4), 0..4)
}

fn uniserial_sum(alg: &Arc<Algebra<PrimeField>>, parts: &[usize]) -> Module<PrimeField> {
    let mods: Vec<Module<PrimeField>> = parts.iter().map(|&j| dvr_uniserial(alg, j)).collect();
    Module::direct_sum(&mods.iter().collect::<Vec<_>>()).unwrap()
}

fn kronecker_formula(entries: &[u8], l: usize, m: usize) -> PpFormula<PrimeField> {
    let f = PrimeField::gf2();
    let alg = kronecker_algebra(f).unwrap();
    let h = (0..(1 + l) * m).map(|i| (0..4).map(|b| Fp(((entries[i % entries.len()] >> b) & 1) as u32)).collect()).collect();
    PpFormula::new(alg, Side::Right, 1, l, m, h).unwrap()
}

fn formula() -> impl Strategy<Value = PpFormula<PrimeField>> {
    (prop::collection::vec(any::<u8>(), 1..12), 0usize..3, 1usize..3).prop_map(|(e, l, m)| kronecker_formula(&e, l, m))
}

fn point(n: usize) -> impl Strategy<Value = ZieglerPoint> {
    (0..=n, 1usize..6, 0u8..5, 0..=n).prop_map(move |(l, j, kind, m)| match kind {
        0 => ZieglerPoint::FinLen { f0: n - l, f1: l, j },
        1 => ZieglerPoint::Prufer { f0: n - l, f1: l },
        2 => ZieglerPoint::Adic { n },
        3 if m >= 1 => ZieglerPoint::T { f0: 0, f1: n - m, m },
        _ => ZieglerPoint::Q { n },
    })
}

fn point_set(n: usize) -> impl Strategy<Value = PointSet> {
    (prop::collection::vec(point(n), 0..5), prop::option::of((0..=n, prop::collection::btree_set(1usize..6, 0..3)))).prop_map(move |(pts, fam)| {
        let mut s = PointSet::from_points(n, pts).unwrap();
        if let Some((l, except)) = fam {
            s.insert_cofinite(l, except).unwrap();
        }
        s
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn subspace_dimension_formula(a in vectors(), b in vectors()) {
        let (u, v) = (subspace(&a), subspace(&b));
        let (s, m) = (u.sum(&v).unwrap(), u.meet(&v).unwrap());
        prop_assert_eq!(s.dim() + m.dim(), u.dim() + v.dim());
        for x in m.elements() {
            prop_assert!(u.contains(&x) && v.contains(&x));
        }
        let both = u.elements().into_iter().filter(|x| v.contains(x)).count();
        prop_assert_eq!(both, m.elements().len());
    }

    #[test]
    fn subspace_modular_law(a in vectors(), b in vectors(), c in vectors()) {
        let u = subspace(&a);
        let v = subspace(&b);
        let w = u.sum(&subspace(&c)).unwrap();
        let left = u.sum(&v.meet(&w).unwrap()).unwrap();
        let right = u.sum(&v).unwrap().meet(&w).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn annihilator_is_an_involution(a in vectors()) {
        let u = subspace(&a);
        let ann = u.annihilator();
        prop_assert_eq!(ann.dim(), 4 - u.dim());
        prop_assert_eq!(ann.annihilator(), u);
    }

    #[test]
    fn krull_schmidt_on_uniserial_sums(a in prop::collection::vec(1usize..=3, 1..3), b in prop::collection::vec(1usize..=3, 1..3)) {
        let alg = dvr_algebra(PrimeField::gf2(), 3).unwrap();
        let (ma, mb) = (uniserial_sum(&alg, &a), uniserial_sum(&alg, &b));
        let sum = Module::direct_sum(&[&ma, &mb]).unwrap();
        let ds = decompose(&sum).unwrap();
        let merged = merge_multiplicities(&decompose(&ma).unwrap().multiplicities(), &decompose(&mb).unwrap().multiplicities()).unwrap();
        prop_assert!(same_multiset(&ds.multiplicities(), &merged).unwrap());
        prop_assert_eq!(ds.summands.len(), a.len() + b.len());
        for s in &ds.summands {
            prop_assert!(is_indecomposable(&s.module).unwrap());
        }
        let mut parts = a.clone();
        parts.extend(&b);
        parts.sort();
        prop_assert!(isomorphic(&sum, &uniserial_sum(&alg, &parts)).unwrap());
    }

    #[test]
    fn pp_operations_match_values(phi in formula(), psi in formula(), k in 0usize..3) {
        let alg = phi.algebra();
        let m = Module::direct_sum(&[&kronecker_preprojective(alg, k).unwrap(), &Module::regular(alg.clone(), Side::Right)]).unwrap();
        let (a, b) = (phi.eval(&m).unwrap(), psi.eval(&m).unwrap());
        prop_assert_eq!(phi.pp_sum(&psi).unwrap().eval(&m).unwrap(), a.sum(&b).unwrap());
        prop_assert_eq!(phi.pp_meet(&psi).unwrap().eval(&m).unwrap(), a.meet(&b).unwrap());
        if phi.implies(&psi).unwrap() {
            prop_assert!(a.leq(&b).unwrap());
        }
        prop_assert!(phi.dual().dual().equivalent(&phi).unwrap());
        prop_assert_eq!(phi.implies(&psi).unwrap(), psi.dual().implies(&phi.dual()).unwrap());
    }

    #[test]
    fn ziegler_closure_is_a_closure_operator((n, s, t) in (0usize..=3).prop_flat_map(|n| (Just(n), point_set(n), point_set(n)))) {
        let c = s.closure();
        prop_assert!(s.is_subset(&c).unwrap());
        prop_assert_eq!(c.closure(), c.clone());
        prop_assert!(c.is_subset(&s.union(&t).unwrap().closure()).unwrap());
        prop_assert!(c.is_closed());
        prop_assert_eq!(PointSet::parse(n, &s.to_string()).unwrap(), s);
    }

    #[test]
    fn mesh_rewriting_is_confluent(m in 1usize..=3, rays in prop::collection::vec(0usize..=2, 3), walk in prop::collection::vec(any::<bool>(), 1..9), start in any::<usize>()) {
        let q = TranslationQuiver::new(m, &rays[..m], 4).unwrap();
        let vertices = q.vertices();
        let mut v = vertices[start % vertices.len()];
        let mut arrows = Vec::new();
        for mu in walk {
            let a = if mu { q.mu_from(v).or(q.lambda_from(v)) } else { q.lambda_from(v).or(q.mu_from(v)) };
            let Some(a) = a else { break };
            let Some(t) = q.target(a) else { break };
            arrows.push(a);
            v = t;
        }
        prop_assume!(!arrows.is_empty());
        let p = FormalPath::from_arrows(&q, arrows).unwrap();
        let forms = q.all_normal_forms(&p).unwrap();
        prop_assert_eq!(forms.len(), 1);
        prop_assert_eq!(forms.into_iter().next().unwrap(), q.normalize(&p).unwrap());
    }
}

#[test]
fn field_arithmetic_axioms_in_f5() {
    let f = PrimeField::new(5).unwrap();
    let elems = f.elements().unwrap();
    for a in &elems {
        for b in &elems {
            assert_eq!(f.add(a, b), f.add(b, a));
            assert_eq!(f.mul(a, b), f.mul(b, a));
            if !f.is_zero(b) {
                assert_eq!(f.mul(&f.div(a, b).unwrap(), b), *a);
            }
        }
    }
}
