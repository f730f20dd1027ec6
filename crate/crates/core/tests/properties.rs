//! Structural properties of depth and Milnor fiber homology on random inputs.

use milnor_core::exactnum::{divisors, gcd, AnyField};
use milnor_core::grouppres::{arrangement_spec, build_deconed_presentation, hyperplane_labels, ArrangementSpec};
use milnor_core::milnorfiber::{
    character_tk, cv_component_point, eigen_character_reduced, lambda_power, milnor_h1_field,
    milnor_h1_integral, multiplicities_from_character, Character, ConeDecone, DepthEvaluator,
};
use proptest::prelude::*;

const PRIMES: [u64; 6] = [2, 3, 5, 7, 11, 13];

fn first_prime_not_dividing(n: u64, skip: usize) -> u64 {
    PRIMES.iter().copied().filter(|q| n % q != 0).nth(skip).unwrap()
}

/// Depth over `Q(zeta)` never exceeds depth over a field of characteristic
/// `q` at the same character.
fn flatness_holds(eval: &DepthEvaluator, names: &[String], order: u64, exps: &[i64], q: u64) -> bool {
    let over_c = Character::over(names.to_vec(), order, exps, 0).unwrap();
    let over_q = Character::over(names.to_vec(), order, exps, q).unwrap();
    eval.depth(&over_c).unwrap() <= eval.depth(&over_q).unwrap()
}

#[test]
fn flatness_on_every_tk() {
    for p in [2usize, 3, 5] {
        let pr = build_deconed_presentation(p).unwrap();
        let eval = DepthEvaluator::new(&pr);
        let n = arrangement_spec(p, None).unwrap().total_degree();
        for k in divisors(n).into_iter().filter(|&k| k != 1) {
            let t = character_tk(p, k, &AnyField::containing_roots(0, n).unwrap()).unwrap();
            let (order, exps) = t.reduced();
            assert_eq!(order, k);
            for q in PRIMES.iter().copied().filter(|q| k % q != 0) {
                assert!(
                    flatness_holds(&eval, pr.generators(), order, &exps, q),
                    "p = {p}, k = {k}, q = {q}"
                );
            }
        }
    }
}

fn random_flatness(p: usize, order: u64, raw: &[i64], pick: usize) -> bool {
    let pr = build_deconed_presentation(p).unwrap();
    let eval = DepthEvaluator::new(&pr);
    let exps: Vec<i64> = raw[..pr.num_generators()].to_vec();
    let q = first_prime_not_dividing(order, pick % 3);
    flatness_holds(&eval, pr.generators(), order, &exps, q)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn flatness_on_random_characters_p2(order in 2u64..=12, raw in prop::collection::vec(0i64..60, 16), pick in 0usize..3) {
        prop_assert!(random_flatness(2, order, &raw, pick));
    }

    #[test]
    fn flatness_on_random_characters_p3(order in 2u64..=12, raw in prop::collection::vec(0i64..60, 16), pick in 0usize..3) {
        prop_assert!(random_flatness(3, order, &raw, pick));
    }

    #[test]
    fn flatness_on_random_characters_p5(order in 2u64..=12, raw in prop::collection::vec(0i64..60, 16), pick in 0usize..3) {
        prop_assert!(random_flatness(5, order, &raw, pick));
    }
}

/// A character on the `3p + 2` hyperplanes whose values multiply to 1.
fn tau_trivial(p: usize, order: u64, raw: &[i64], q: u64) -> Character {
    let n = 3 * p + 2;
    let mut exps: Vec<i64> = raw[..n].to_vec();
    let partial: i64 = exps[..n - 1].iter().sum();
    exps[n - 1] = -partial;
    Character::over(hyperplane_labels(p), order, &exps, q).unwrap()
}

fn additivity_case(p: usize, order: u64, raw: &[i64], pick: usize) -> Result<(), TestCaseError> {
    // characteristic 0 or a prime not dividing the order
    let q = if pick == 0 { 0 } else { first_prime_not_dividing(order, pick - 1) };
    let ch = tau_trivial(p, order, raw, q);
    let check = ConeDecone::new(p).unwrap().additivity(&ch).unwrap();
    prop_assert!(check.holds(), "{check:?}");
    prop_assert_eq!(check.h0, usize::from(ch.is_trivial()));
    Ok(())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(20))]

    #[test]
    fn depth_additivity_p2(order in 1u64..=10, raw in prop::collection::vec(0i64..40, 11), pick in 0usize..3) {
        additivity_case(2, order, &raw, pick)?;
    }

    #[test]
    fn depth_additivity_p3(order in 1u64..=10, raw in prop::collection::vec(0i64..40, 11), pick in 0usize..3) {
        additivity_case(3, order, &raw, pick)?;
    }
}

#[test]
fn eigenspace_total_matches_dimension_formula() {
    for p in [2usize, 3] {
        let spec = arrangement_spec(p, None).unwrap();
        let n = spec.total_degree();
        let integral = milnor_h1_integral(&spec, &mut |_| {}).unwrap();
        for q in [0u64, 2, 3, 5, 7, 11].into_iter().filter(|&q| q == 0 || n % q != 0) {
            let d = milnor_h1_field(&spec, q).unwrap();
            assert_eq!(d.eigenspace_total(), d.dimension, "p = {p}, q = {q}");
            assert_eq!(d.eigenspaces[0], spec.n() - 1);
            assert_eq!(integral.field_dimension(q), d.dimension, "p = {p}, q = {q}");
        }
    }
}

fn small_multiplicities() -> impl Strategy<Value = Vec<u64>> {
    prop::collection::vec(1u64..=3, 7).prop_map(|rest| {
        let mut a = vec![1];
        a.extend(rest);
        a
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(12))]

    /// Eigenspace sums, Galois and Frobenius symmetry, and the universal
    /// coefficient comparison with the integral group.
    #[test]
    fn field_dimensions_on_random_multiplicities(a in small_multiplicities(), pick in 0usize..4) {
        let spec = ArrangementSpec::new(2, a).unwrap();
        let n = spec.total_degree();
        let integral = milnor_h1_integral(&spec, &mut |_| {}).unwrap();
        let over_c = milnor_h1_field(&spec, 0).unwrap();
        prop_assert_eq!(over_c.eigenspace_total(), over_c.dimension);
        prop_assert!(over_c.galois_stable());
        prop_assert_eq!(integral.field_dimension(0), over_c.dimension);
        let q = first_prime_not_dividing(n, pick);
        let over_q = milnor_h1_field(&spec, q).unwrap();
        prop_assert_eq!(over_q.eigenspace_total(), over_q.dimension);
        prop_assert_eq!(integral.field_dimension(q), over_q.dimension);
        for j in 0..n as usize {
            prop_assert_eq!(over_q.eigenspaces[j], over_q.eigenspaces[j * q as usize % n as usize]);
            prop_assert!(over_c.eigenspaces[j] <= over_q.eigenspaces[j]);
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    /// The multiplicities built from `s` realize it as `lambda_a^(N/k)`.
    #[test]
    fn multiplicities_realize_the_character(order in 2u64..=8, raw in prop::collection::vec(0i64..40, 8), pick in 0usize..3) {
        let q = if pick == 0 { 0 } else { first_prime_not_dividing(order, pick - 1) };
        let s = tau_trivial(2, order, &raw, q);
        prop_assume!(!s.is_trivial());
        let a = multiplicities_from_character(&s).unwrap();
        let (k, reduced) = s.reduced();
        let n: u64 = a.iter().sum();
        prop_assert_eq!(n % k, 0);
        prop_assert!(q == 0 || n % q != 0);
        prop_assert_eq!(a.iter().fold(0, |g, &x| gcd(g, x)), 1);
        let modk: Vec<i64> = reduced.iter().map(|e| e.rem_euclid(k as i64)).collect();
        prop_assert_eq!(eigen_character_reduced(&a, k).unwrap(), modk);
        if q == 0 {
            // lambda_a^(N/k) is a Galois conjugate of s, so depths agree
            let spec = ArrangementSpec::new(2, a).unwrap();
            let pr = build_deconed_presentation(2).unwrap();
            let eval = DepthEvaluator::new(&pr);
            let field = AnyField::containing_roots(0, n).unwrap();
            let t = lambda_power(&spec, k, &field).unwrap();
            let sources = spec.deconed_generator_hyperplanes();
            let s_on_gens = s.pull_back(pr.generators().to_vec(), &sources).unwrap();
            prop_assert_eq!(eval.depth(&t).unwrap(), eval.depth(&s_on_gens).unwrap());
        }
    }

    #[test]
    fn character_file_roundtrip(order in 1u64..=30, raw in prop::collection::vec(-50i64..50, 11), q in prop::sample::select(vec![0u64, 7, 11, 13])) {
        prop_assume!(q == 0 || order % q != 0);
        let ch = Character::over(hyperplane_labels(3), order, &raw, q).unwrap();
        prop_assert_eq!(Character::from_json(&ch.to_json()).unwrap(), ch);
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(10))]

    /// Every sample point of a component `C_i` is a jump point.
    #[test]
    fn component_points_jump(m in 1u64..=6, j in 0i64..6, i in 1usize..3, pick in 0usize..2) {
        let p = 3;
        let order = 3 * m / gcd(3, m);
        let q = if pick == 0 { 0 } else { PRIMES.iter().copied().find(|&q| q != 3 && order % q != 0).unwrap() };
        let field = AnyField::containing_roots(q, order).unwrap();
        let u = field.root_of_unity(m).unwrap().pow(j).unwrap();
        let pt = cv_component_point(p, i, &u).unwrap();
        let cd = ConeDecone::new(p).unwrap();
        prop_assert!(cd.deconed_depth_at(&pt).unwrap() >= 1);
        prop_assert!(cd.cone_depth_at(&pt).unwrap() >= 1);
    }
}
