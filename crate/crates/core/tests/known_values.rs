//! Known values for the deleted monomial arrangements A_2, A_3, A_5.

use milnor_core::braidword::closed_form_identities;
use milnor_core::exactla::{smith_normal_form, IntMatrix};
use milnor_core::exactnum::{divisors, AnyField};
use milnor_core::grouppres::{arrangement_spec, build_deconed_presentation};
use milnor_core::milnorfiber::{
    alexander_at_sign_translation_p2, alexander_at_t2, character_tk, cv_component_point,
    milnor_h1_field, milnor_h1_integral, torus_point, translation_point, ConeDecone, DepthEvaluator,
};
use num_bigint::BigInt;

fn fixture(name: &str) -> IntMatrix {
    let path = format!("{}/../../fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    IntMatrix::parse_text(&std::fs::read_to_string(&path).unwrap()).unwrap()
}

#[test]
fn integral_h1_for_p2() {
    let h = milnor_h1_integral(&arrangement_spec(2, None).unwrap(), &mut |_| {}).unwrap();
    assert_eq!(h.group.to_string(), "Z^7 + Z/2 + Z/2");
    assert_eq!(h.order, 15);
}

#[test]
fn integral_h1_for_odd_p() {
    for p in [3usize, 5] {
        let h = milnor_h1_integral(&arrangement_spec(p, None).unwrap(), &mut |_| {}).unwrap();
        assert_eq!(h.group.free_rank, 3 * p + 1);
        assert_eq!(h.group.primary_part(p as u64), vec![BigInt::from(p)]);
        let envelope = [2u64, p as u64, 2 * p as u64 + 1];
        assert!(h.torsion_primes.iter().all(|q| envelope.contains(q)), "{:?}", h.torsion_primes);
    }
}

#[test]
fn monodromy_on_torsion() {
    let h2 = milnor_h1_integral(&arrangement_spec(2, None).unwrap(), &mut |_| {}).unwrap();
    assert_eq!(h2.primary(2).unwrap().order, Some(3));
    assert!(!h2.primary(2).unwrap().is_negation);
    let h3 = milnor_h1_integral(&arrangement_spec(3, None).unwrap(), &mut |_| {}).unwrap();
    assert!(h3.primary(3).unwrap().is_negation);
    assert_eq!(h3.primary(3).unwrap().order, Some(2));
}

#[test]
fn smith_form_of_a2() {
    for p in [3usize, 5] {
        let m = alexander_at_t2(p).unwrap();
        assert_eq!((m.rows(), m.cols()), (2 * p * (p + 1), 3 * p + 1));
        assert_eq!(m, fixture(&format!("a2_p{p}.txt")));
        let mut expected = vec![BigInt::from(2); 3 * p - 1];
        expected.push(BigInt::from(2 * p));
        assert_eq!(smith_normal_form(&m).invariant_factors, expected);
    }
    let s = alexander_at_sign_translation_p2().unwrap();
    assert_eq!(s, fixture("sign_translation_p2.txt"));
}

#[test]
fn depth_table_for_odd_p() {
    for p in [3usize, 5] {
        let n = 4 * p as u64 + 2;
        let eval = DepthEvaluator::new(&build_deconed_presentation(p).unwrap());
        let over_q = AnyField::containing_roots(0, n).unwrap();
        for k in divisors(n).into_iter().filter(|&k| k != 1) {
            assert_eq!(eval.depth(&character_tk(p, k, &over_q).unwrap()).unwrap(), 0, "p = {p}, k = {k}");
        }
        // q does not divide 2pN
        for q in [13u64, 17, 19] {
            let field = AnyField::containing_roots(q, n).unwrap();
            assert_eq!(eval.depth(&character_tk(p, 2, &field).unwrap()).unwrap(), 0, "q = {q}");
        }
        let char_p = AnyField::containing_roots(p as u64, n).unwrap();
        assert_eq!(eval.depth(&character_tk(p, 2, &char_p).unwrap()).unwrap(), 1);
    }
}

#[test]
fn field_dimensions() {
    for p in [3usize, 5] {
        let spec = arrangement_spec(p, None).unwrap();
        assert_eq!(milnor_h1_field(&spec, 0).unwrap().dimension, 3 * p + 1);
        assert_eq!(milnor_h1_field(&spec, p as u64).unwrap().dimension, 3 * p + 2);
    }
    let spec = arrangement_spec(2, None).unwrap();
    assert_eq!(milnor_h1_field(&spec, 0).unwrap().dimension, 7);
    assert_eq!(milnor_h1_field(&spec, 7).unwrap().dimension, 7);
    assert_eq!(milnor_h1_field(&spec, 2).unwrap().dimension, 9);
    assert!(milnor_h1_field(&spec, 3).is_err());
}

#[test]
fn braid_identities() {
    for p in [2usize, 3, 5] {
        let checks = closed_form_identities(p).unwrap();
        assert_eq!(checks.len(), if p == 2 { 2 } else { 4 });
        for (name, holds) in checks {
            assert!(holds, "p = {p}: {name}");
        }
    }
}

#[test]
fn characteristic_variety_points() {
    for p in [2usize, 3] {
        let cd = ConeDecone::new(p).unwrap();
        let field = AnyField::containing_roots(0, 6 * p as u64).unwrap();
        let u = field.root_of_unity(3).unwrap();
        for i in 1..p {
            let pt = cv_component_point(p, i, &u).unwrap();
            assert!(pt.product().unwrap().is_one());
            assert!(cd.deconed_depth_at(&pt).unwrap() >= 1);
            assert!(cd.cone_depth_at(&pt).unwrap() >= 1);
        }
    }
    let cd = ConeDecone::new(2).unwrap();
    let field = AnyField::containing_roots(0, 6).unwrap();
    let t = torus_point(2, &field.root_of_unity(3).unwrap()).unwrap();
    assert_eq!(cd.deconed_depth_at(&t).unwrap(), 0);
    let st = translation_point(2, 1, &field).unwrap().translate(&t).unwrap();
    assert!(cd.deconed_depth_at(&st).unwrap() >= 1);
}
