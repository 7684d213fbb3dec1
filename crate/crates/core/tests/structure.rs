use ppz_core::lattice::{interval_probe, ProbeLimits, Verdict};
use ppz_core::module::Side;
use ppz_core::pp::PpFormula;
use ppz_core::realize::{realize_in_tower, RealizedTube};
use ppz_core::tower::Tower;
use ppz_core::tube::TranslationQuiver;
use ppz_core::universe::{kronecker_algebra, kronecker_chain, kronecker_preprojectives};
use ppz_core::ziegler::PointSet;
use ppz_core::{Error, PrimeField};

#[test]
fn hom_from_the_bimodule_is_at_most_one_dimensional() {
    let t = Tower::new(3, 2, PrimeField::gf2()).unwrap();
    let report = t.verify_hom_bounds(6).unwrap();
    assert!(report.all_pass(), "{:?}", report.failures());
}

#[test]
fn no_maps_from_raised_bimodule_to_f0_images() {
    let t = Tower::new(3, 2, PrimeField::gf2()).unwrap();
    for q in 0..2 {
        let l = t.bimodule(q + 1).unwrap();
        for k in t.labels(q, 6).unwrap() {
            let x = t.f0(q, &t.build_label(&k).unwrap()).unwrap();
            assert_eq!(l.hom_dim(&x).unwrap(), 0, "q={q} K={k}");
        }
    }
}

#[test]
fn rank_two_tube_realizes_in_r2() {
    let t = Tower::new(5, 2, PrimeField::gf2()).unwrap();
    let q = TranslationQuiver::new(2, &[1, 0], 3).unwrap();
    let (realized, report) = realize_in_tower(&t, &q).unwrap();
    assert!(report.all_pass());
    assert!(realized.verify_bimodule_idempotents().unwrap().matches());
}

#[test]
fn realization_needs_room_below_the_horizon() {
    let t = Tower::new(3, 1, PrimeField::gf2()).unwrap();
    let q = TranslationQuiver::new(1, &[0], 3).unwrap();
    assert!(matches!(RealizedTube::build(&t, &q), Err(Error::HorizonExceeded { .. })));
}

#[test]
fn kronecker_chain_is_not_short() {
    let alg = kronecker_algebra(PrimeField::gf2()).unwrap();
    let universe = kronecker_preprojectives(&alg, 4).unwrap();
    let chain = kronecker_chain(&alg, 4).unwrap();
    let psi = PpFormula::divisibility(alg.clone(), Side::Right, &alg.elem("b").unwrap());
    let rep = interval_probe(&psi, &chain[0], &universe, 3, ProbeLimits::default()).unwrap();
    assert_eq!(rep.verdict, Verdict::NotShortWitness);
}

#[test]
fn closure_of_a_prufer_point() {
    let s = PointSet::parse(1, "{F0 Prufer}").unwrap();
    assert_eq!(s.closure().to_string(), "{F0 Prufer, F0 Q}");
}
