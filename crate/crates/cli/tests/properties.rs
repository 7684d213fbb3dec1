use ppz::corpus::{random_formula, random_module, rng};
use ppz::oracle::{brute_eval, is_indecomposable_brute, RadicalByDefinition};
use ppz::syntax::{format_formula, parse_formula};
use ppz_core::decompose::{decompose, is_indecomposable};
use ppz_core::module::Side;
use ppz_core::radical::radical_subspace;
use ppz_core::universe::{dvr_algebra, kronecker_algebra};
use ppz_core::{Field, PrimeField, Rationals};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn printed_formulas_parse_back(seed in any::<u64>(), left in any::<bool>()) {
        let side = if left { Side::Left } else { Side::Right };
        let mut r = rng(seed);
        let f3 = PrimeField::new(3).unwrap();
        let kr = kronecker_algebra(f3).unwrap();
        let phi = random_formula(&kr, side, &mut r).unwrap();
        let text = format_formula(&phi);
        let back = parse_formula(&kr, side, &text, Some(phi.n())).unwrap();
        prop_assert!(back.equivalent(&phi).unwrap(), "{}", text);
        prop_assert_eq!(format_formula(&back), text);

        let dvr = dvr_algebra(Rationals, 3).unwrap();
        let psi = random_formula(&dvr, side, &mut r).unwrap();
        let text = format_formula(&psi);
        let back = parse_formula(&dvr, side, &text, Some(1)).unwrap();
        prop_assert!(back.equivalent(&psi).unwrap(), "{}", text);
    }

    #[test]
    fn eval_matches_enumeration_over_f3(seed in any::<u64>()) {
        let f = PrimeField::new(3).unwrap();
        let alg = dvr_algebra(f, 3).unwrap();
        let mut r = rng(seed);
        let phi = random_formula(&alg, Side::Right, &mut r).unwrap();
        let m = random_module(&alg, 3, &mut r).unwrap();
        let fast = phi.eval(&m).unwrap();
        let brute = brute_eval(&phi, &m).unwrap();
        prop_assert_eq!(brute.len() as u64, 3u64.pow(fast.dim() as u32));
        prop_assert!(brute.iter().all(|v| fast.contains(v)));
    }

    #[test]
    fn summands_are_indecomposable_by_enumeration(seed in any::<u64>()) {
        let f = PrimeField::gf2();
        let alg = kronecker_algebra(f).unwrap();
        let mut r = rng(seed);
        let m = random_module(&alg, 5, &mut r).unwrap();
        let d = decompose(&m).unwrap();
        prop_assert_eq!(d.summands.iter().map(|s| s.module.dim()).sum::<usize>(), m.dim());
        for s in &d.summands {
            prop_assert!(is_indecomposable_brute(&s.module).unwrap());
        }
        prop_assert_eq!(is_indecomposable(&m).unwrap(), d.summands.len() == 1);
    }

    #[test]
    fn radical_basis_agrees_with_definition(seed in any::<u64>()) {
        let f = PrimeField::gf2();
        let alg = dvr_algebra(f, 3).unwrap();
        let mut r = rng(seed);
        let a = random_module(&alg, 3, &mut r).unwrap();
        let b = random_module(&alg, 3, &mut r).unwrap();
        let rad = radical_subspace(&a, &b).unwrap();
        let def = RadicalByDefinition::new(&a, &b).unwrap();
        for g in &rad.matrices() {
            prop_assert!(def.contains(g));
        }
        prop_assert!(rad.dim() <= a.hom_dim(&b).unwrap());
        prop_assert_eq!(f.order(), Some(2));
    }
}
