use gwcount_core::bezoutian::{
    bezoutian_form, bezoutian_form_in_order, bezoutian_form_union_gb, local_form_at, local_form_from_global,
    PolynomialSystem,
};
use gwcount_core::field::FieldDescriptor;
use gwcount_core::gw::GwClass;
use gwcount_core::json::GwClassJson;
use gwcount_core::oracle::{real_signed_count, solve, sturm_count, univariate_signed_count, Interval};
use gwcount_core::poly::UniPoly;
use gwcount_core::verify::{random_bezout_system, random_planted_system};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn q() -> FieldDescriptor {
    FieldDescriptor::rationals()
}

fn univariate_text(coeffs: &[i64]) -> String {
    coeffs
        .iter()
        .enumerate()
        .map(|(i, c)| format!("({c})*x^{i}"))
        .collect::<Vec<_>>()
        .join(" + ")
}

fn nonconstant() -> impl Strategy<Value = Vec<i64>> {
    prop::collection::vec(-6i64..=6, 2..=7).prop_filter("leading coefficient", |c| *c.last().unwrap() != 0)
}

#[test]
fn worked_degrees() {
    let sys = PolynomialSystem::parse(q(), &["x"], "x^3").unwrap();
    let c = bezoutian_form(&sys).unwrap().gw_class().unwrap();
    assert_eq!(c.rank(), BigInt::from(3));
    assert_eq!(c.signature(), Some(BigInt::from(1)));
    let sys = PolynomialSystem::parse(q(), &["x", "y"], "x; y").unwrap();
    assert_eq!(bezoutian_form(&sys).unwrap().gw_class().unwrap(), GwClass::one(q()));
    let sys = PolynomialSystem::parse(q(), &["x"], "x^2").unwrap();
    let c = bezoutian_form(&sys).unwrap().gw_class().unwrap();
    assert!(c.same_invariants(&GwClass::hyperbolic(q())));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn univariate_signature_is_signed_root_count(coeffs in nonconstant()) {
        let sys = PolynomialSystem::parse(q(), &["x"], &univariate_text(&coeffs)).unwrap();
        let form = bezoutian_form(&sys).unwrap();
        let sig = form.gw_class().unwrap().signature().unwrap();
        let f = UniPoly::from_i64s(q(), &coeffs);
        prop_assert_eq!(sig.clone(), BigInt::from(univariate_signed_count(&f)));
        prop_assert_eq!(sig, BigInt::from(real_signed_count(&sys, 1).unwrap()));
    }

    #[test]
    fn sturm_agrees_with_eigenvalues(coeffs in nonconstant()) {
        let f = UniPoly::from_i64s(q(), &coeffs);
        let sys = PolynomialSystem::parse(q(), &["x"], &univariate_text(&coeffs)).unwrap();
        if let Ok(zs) = solve(&sys, 7) {
            prop_assume!(zs.certified);
            prop_assert_eq!(zs.real_count(), sturm_count(&f, &Interval::real_line()));
        }
    }

    #[test]
    fn signature_matches_numerical_count(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_bezout_system(&mut rng, q(), n, 3);
        let form = bezoutian_form(&sys).unwrap();
        let class = form.gw_class().unwrap();
        prop_assert_eq!(class.rank(), BigInt::from(form.dim()));
        if let Ok(zs) = solve(&sys, seed) {
            prop_assume!(zs.certified && zs.zeros.iter().all(|z| z.multiplicity == 1));
            prop_assert_eq!(class.signature().unwrap(), BigInt::from(zs.signed_real_count()));
        }
    }

    #[test]
    fn class_is_independent_of_route(seed in any::<u64>(), n in 1usize..=3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_bezout_system(&mut rng, q(), n, 3);
        let a = bezoutian_form(&sys).unwrap().gw_class().unwrap();
        let b = bezoutian_form_union_gb(&sys).unwrap().gw_class().unwrap();
        let order: Vec<usize> = (0..n).rev().collect();
        let c = bezoutian_form_in_order(&sys, &order).unwrap().gw_class().unwrap();
        prop_assert!(a.same_invariants(&b));
        prop_assert!(a.same_invariants(&c));
    }

    #[test]
    fn local_forms_sum_to_global(seed in any::<u64>(), n in 1usize..=2) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let planted = random_planted_system(&mut rng, n, 3);
        let sys = &planted.system;
        let global = bezoutian_form(sys).unwrap();
        let mut sum = GwClass::zero(q());
        for z in &planted.zeros {
            let direct = local_form_at(sys, z).unwrap();
            let via_global = local_form_from_global(sys, &global, z).unwrap();
            prop_assert_eq!(direct.local_dim, via_global.local_dim);
            let c = direct.gw_class().unwrap();
            prop_assert!(c.same_invariants(&via_global.gw_class().unwrap()));
            sum = sum.add(&c);
        }
        prop_assert!(sum.same_invariants(&global.gw_class().unwrap()));
    }

    #[test]
    fn json_round_trip(seed in any::<u64>(), p in prop::sample::select(vec![0u64, 3, 5, 7, 13])) {
        let field = if p == 0 { q() } else { FieldDescriptor::prime(p).unwrap() };
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let sys = random_bezout_system(&mut rng, field, 2, 2);
        let class = bezoutian_form(&sys).unwrap().gw_class().unwrap();
        let json = serde_json::to_string(&GwClassJson::from(&class)).unwrap();
        let back: GwClassJson = serde_json::from_str(&json).unwrap();
        prop_assert_eq!(back.to_class(field).unwrap(), class);
    }
}
