use num_traits::Zero;
use proptest::prelude::*;

use hgpade_core::arith::{rat, ratio};
use hgpade_core::numerics::{
    check_remainder_identity, eval_f_direct, eval_f_family, eval_pfq, fault_injected_identity_holds, lerch_phi,
    linear_form_shadow, relative_gap_log2, remainder_at,
};
use hgpade_core::pade::build_system;
use hgpade_core::polyops::HypergeometricSpec;
use hgpade_core::Rational;

fn r2() -> HypergeometricSpec {
    HypergeometricSpec::from_parameters(&[ratio(1, 3), ratio(1, 4)], &[ratio(1, 2)], None).unwrap()
}

#[test]
fn pfq_at_zero_is_one() {
    for (a, b) in [(vec![ratio(1, 3)], vec![]), (vec![ratio(1, 3), ratio(1, 4)], vec![ratio(1, 2)])] {
        let v = eval_pfq(&a, &b, &rat(0), 64).unwrap();
        assert!(v.contains(&rat(1)));
    }
}

#[test]
fn two_f_one_gives_log_two() {
    // 2F1(1,1;2;z) = -log(1-z)/z
    let v = eval_pfq(&[rat(1), rat(1)], &[rat(2)], &ratio(1, 2), 200).unwrap();
    assert!((v.to_f64() - 2.0 * std::f64::consts::LN_2).abs() < 1e-15);
    assert!(v.rad_log2() <= -200.0);
    assert!(v.to_decimal(20).starts_with("1.3862943611198906188"), "{}", v.to_decimal(20));
}

#[test]
fn binomial_series_squares_to_rational() {
    // 1F0(1/2;;1/4) = (3/4)^{-1/2}
    let w = eval_pfq(&[ratio(1, 2)], &[], &ratio(1, 4), 160).unwrap();
    assert!(w.mul(&w).contains(&ratio(4, 3)));
    assert!(!w.mul(&w).contains(&(ratio(4, 3) + ratio(1, 1 << 40))));
}

#[test]
fn divergent_arguments_are_rejected() {
    assert!(eval_pfq(&[rat(1), rat(1)], &[rat(2)], &rat(1), 64).is_err());
    assert!(eval_pfq(&[rat(1), rat(1)], &[], &ratio(1, 10), 64).is_err());
    assert!(eval_pfq(&[rat(1)], &[rat(-2)], &ratio(1, 10), 64).is_err());
}

#[test]
fn f_zero_vanishes_at_zero() {
    for f in eval_f_family(&r2(), &rat(0), 64).unwrap() {
        assert!(f.direct.contains(&Rational::zero()), "s = {}", f.s);
    }
}

#[test]
fn routes_agree_on_the_family() {
    let spec = HypergeometricSpec::from_parameters(
        &[ratio(1, 3), ratio(1, 4), ratio(1, 5)],
        &[ratio(1, 2), ratio(2, 3)],
        None,
    )
    .unwrap();
    for x in [ratio(1, 3), ratio(-2, 5), ratio(9, 10)] {
        for f in eval_f_family(&spec, &x, 192).unwrap() {
            assert!(f.route_gap_log2().unwrap() < -180.0, "x = {x}, s = {}", f.s);
        }
    }
}

#[test]
fn lerch_family_matches_phi() {
    let xl = ratio(1, 3);
    let spec = HypergeometricSpec::lerch(&xl, 2).unwrap();
    let z = ratio(1, 2);
    for s in 0..2 {
        let direct = eval_f_direct(&spec, s, &z, 160).unwrap();
        let phi = lerch_phi(&xl, 2 - s, &z, 160).unwrap();
        assert!(relative_gap_log2(&direct, &phi) < -150.0, "s = {s}");
    }
    // Phi_1(0, z) = -log(1 - z)
    let log = lerch_phi(&rat(0), 1, &ratio(1, 2), 100).unwrap();
    assert!((log.to_f64() - std::f64::consts::LN_2).abs() < 1e-15);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn more_bits_never_widen(p in -9i64..=9, q in 10i64..40, bits in 32u32..160) {
        let z = ratio(p, q);
        let coarse = eval_pfq(&[ratio(1, 3), ratio(1, 4)], &[ratio(1, 2)], &z, bits).unwrap();
        let fine = eval_pfq(&[ratio(1, 3), ratio(1, 4)], &[ratio(1, 2)], &z, 2 * bits).unwrap();
        prop_assert!(fine.is_within(&coarse));
        prop_assert!(fine.rad_log2() <= coarse.rad_log2());
    }
}

#[test]
fn canonical_identity_holds() {
    let beta = rat(1_000_000);
    for (alphas, n) in [(vec![rat(1), rat(2)], 2), (vec![rat(1)], 5)] {
        let sys = build_system(&r2(), &alphas, n, None).unwrap();
        let rep = check_remainder_identity(&sys, &beta, 128).unwrap();
        assert_eq!(rep.entries.len(), (sys.rm() + 1) * sys.m() * sys.r());
        assert!(rep.all_hold, "n = {n}: {:?}", rep.entries.iter().find(|e| !e.holds));
    }
}

#[test]
fn corrupted_polynomial_breaks_the_identity() {
    let sys = build_system(&r2(), &[rat(1), rat(2)], 2, None).unwrap();
    let beta = rat(1000);
    for (l, i, s) in [(0, 0, 0), (2, 1, 1), (4, 0, 1)] {
        assert!(!fault_injected_identity_holds(&sys, l, i, s, &beta, 128).unwrap(), "(l,i,s) = ({l},{i},{s})");
    }
}

#[test]
fn linear_form_equals_remainder_combination() {
    let sys = build_system(&r2(), &[rat(1), rat(2)], 2, None).unwrap();
    let lambda = vec![vec![rat(3), ratio(-1, 2)], vec![rat(1), rat(7)]];
    let (form, rem) = linear_form_shadow(&sys, 1, &rat(500), &lambda, 128).unwrap();
    assert!(!rem.contains_zero());
    assert!(relative_gap_log2(&form, &rem) < -120.0);
}

#[test]
fn remainders_shrink_with_n() {
    let spec = r2();
    let alphas = [rat(1), rat(2)];
    let beta = rat(10_000);
    let mut last = f64::INFINITY;
    for n in 1..=6 {
        let sys = build_system(&spec, &alphas, n, None).unwrap();
        let mut worst = f64::NEG_INFINITY;
        for i in 0..2 {
            for s in 0..2 {
                let b = remainder_at(&spec, &alphas[i], s, &sys.p[0], n, &beta, 32).unwrap();
                worst = worst.max(b.mid_log2());
            }
        }
        assert!(worst < last, "n = {n}: 2^{worst:.1} after 2^{last:.1}");
        last = worst;
    }
}
