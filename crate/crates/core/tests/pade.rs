use num_traits::{One, Zero};
use proptest::prelude::*;

use hgpade_core::arith::{rat, ratio};
use hgpade_core::pade::{
    build_p, build_p_is, build_system, corrupt_coefficient, key_vanishing_polynomial, oracle_membership, p_is_from_poly,
    remainder, remainder_coefficients, remainder_series_route, solve_pade_nullspace, verify_system,
};
use hgpade_core::polyops::{expand_f_s, psi, HypergeometricSpec, LaurentTail, RationalPoly};
use hgpade_core::Rational;

fn toy() -> HypergeometricSpec {
    // A = X + 2, B = X + 1, c_0 = 1
    HypergeometricSpec::from_roots(&[rat(2)], &[rat(1)], rat(1)).unwrap()
}

fn r2() -> HypergeometricSpec {
    HypergeometricSpec::from_parameters(&[ratio(1, 3), ratio(1, 4)], &[ratio(1, 2)], None).unwrap()
}

fn r3(b: [Rational; 2]) -> HypergeometricSpec {
    HypergeometricSpec::from_parameters(&[ratio(1, 3), ratio(1, 4), ratio(1, 5)], &b, None).unwrap()
}

#[test]
fn toy_approximants() {
    let spec = toy();
    let one = [rat(1)];
    assert_eq!(build_p(&spec, &one, 1, 0).unwrap(), RationalPoly::from_ints(&[-1, 1]));
    assert_eq!(build_p_is(&spec, &one, 1, 0, 0, 0).unwrap(), RationalPoly::one());
}

#[test]
fn toy_remainder_vanishes_identically() {
    // c_k = 1 for every k, so psi(t^k (t - 1)) = 1 - 1
    let sys = build_system(&toy(), &[rat(1)], 1, Some(30)).unwrap();
    let r = remainder(&sys, 0, 0, 0, 30).unwrap();
    assert!(r.is_zero_to_truncation());
    assert!(verify_system(&sys).passed);
}

#[test]
fn degree_is_rmn_plus_l() {
    let sys = build_system(&r2(), &[rat(1), rat(2)], 2, None).unwrap();
    for (l, p) in sys.p.iter().enumerate() {
        assert_eq!(p.degree(), Some(8 + l));
        for per_i in &sys.p_is[l] {
            for q in per_i {
                assert!(q.degree().map_or(true, |d| d <= 8 + l));
            }
        }
    }
}

#[test]
fn p_does_not_depend_on_gamma() {
    // reordering b reorders gamma but leaves B(X), hence P_l, unchanged
    let s1 = r3([ratio(1, 2), ratio(2, 3)]);
    let s2 = r3([ratio(2, 3), ratio(1, 2)]);
    assert_ne!(s1.gamma(), s2.gamma());
    let alphas = [rat(1)];
    for l in 0..=3 {
        assert_eq!(build_p(&s1, &alphas, 2, l).unwrap(), build_p(&s2, &alphas, 2, l).unwrap());
    }
}

#[test]
fn constant_polynomial_has_zero_divided_difference() {
    let spec = r2();
    let c = RationalPoly::constant(ratio(7, 3));
    assert!(p_is_from_poly(&spec, &[rat(1)], &c, 0, 1).is_zero());
}

proptest! {
    #[test]
    fn divided_difference_is_linear(
        p in prop::collection::vec((-9i64..9, 1i64..5), 0..12),
        q in prop::collection::vec((-9i64..9, 1i64..5), 0..12),
        s in 0usize..2,
    ) {
        let spec = r2();
        let alphas = [ratio(1, 2), rat(3)];
        let mk = |v: &Vec<(i64, i64)>| RationalPoly::from_coeffs(v.iter().map(|&(a, b)| ratio(a, b)).collect());
        let (p, q) = (mk(&p), mk(&q));
        let sum = &p + &q;
        for i in 0..2 {
            let lhs = p_is_from_poly(&spec, &alphas, &sum, i, s);
            let rhs = &p_is_from_poly(&spec, &alphas, &p, i, s) + &p_is_from_poly(&spec, &alphas, &q, i, s);
            prop_assert_eq!(lhs, rhs);
        }
    }
}

#[test]
fn every_built_system_meets_the_contract() {
    let cases: Vec<(HypergeometricSpec, Vec<Rational>, usize)> = vec![
        (r2(), vec![rat(1)], 3),
        (r2(), vec![rat(1), rat(2)], 2),
        (r2(), vec![ratio(-1, 2), ratio(3, 5)], 1),
        (r3([ratio(1, 2), ratio(2, 3)]), vec![rat(1)], 2),
        (HypergeometricSpec::lerch(&ratio(1, 3), 2).unwrap(), vec![rat(1), rat(-1)], 2),
    ];
    for (spec, alphas, n) in cases {
        let sys = build_system(&spec, &alphas, n, None).unwrap();
        let (r, m) = (sys.r(), sys.m());
        for l in 0..=r * m {
            assert_eq!(sys.p[l].degree(), Some(r * m * n + l));
            for i in 0..m {
                for s in 0..r {
                    let rem = &sys.remainders[l][i][s];
                    assert_eq!(rem.ord_at_least(n as i64 + 1).unwrap(), true, "(l,i,s) = ({l},{i},{s})");
                }
            }
        }
        let report = verify_system(&sys);
        assert!(report.passed, "{:?}", report.failures);
    }
}

#[test]
fn remainder_coefficients_are_psi_values() {
    let spec = r2();
    let alphas = [rat(1), rat(2)];
    let sys = build_system(&spec, &alphas, 2, Some(30)).unwrap();
    for l in 0..=4 {
        for i in 0..2 {
            for s in 0..2 {
                let rem = &sys.remainders[l][i][s];
                for k in 0..29usize {
                    let direct = psi(&spec, &alphas, i, s, &sys.p[l].shift(k));
                    assert_eq!(rem.coeff(k as i64 + 1).unwrap(), direct);
                }
                let series = remainder_series_route(&spec, &alphas, &sys.p[l], &sys.p_is[l][i][s], i, s, 30);
                assert_eq!(&series, rem, "routes differ at (l,i,s) = ({l},{i},{s})");
            }
        }
    }
}

#[test]
fn vanishing_window_below_n() {
    let spec = r3([ratio(1, 2), ratio(2, 3)]);
    let alphas = [rat(1), ratio(5, 2)];
    let n = 3;
    for l in 0..=6 {
        let p = build_p(&spec, &alphas, n, l).unwrap();
        for a in &alphas {
            for s in 0..3 {
                let first = remainder_coefficients(&spec, a, s, &p, 0, n + 1);
                assert!(first[..n].iter().all(Zero::is_zero), "l = {l}, alpha = {a}, s = {s}");
            }
        }
    }
}

#[test]
fn key_polynomial_vanishes_at_each_alpha() {
    let spec = r2();
    let alphas = [rat(1), ratio(-2, 3)];
    let n = 3;
    for l in 0..=4 {
        for k in 0..n {
            for s in 0..2 {
                let q = key_vanishing_polynomial(&spec, &alphas, n, l, k, s);
                for a in &alphas {
                    let (_, rem) = q.div_linear(a);
                    assert!(rem.is_zero(), "(l,k,s) = ({l},{k},{s}) at alpha = {a}");
                }
            }
        }
    }
}

#[test]
fn oracle_contains_every_column() {
    for (spec, alphas, n) in [
        (r2(), vec![rat(1)], 3),
        (r2(), vec![rat(1), rat(2)], 2),
        (r3([ratio(1, 2), ratio(2, 3)]), vec![rat(1)], 1),
    ] {
        let sys = build_system(&spec, &alphas, n, None).unwrap();
        assert!(oracle_membership(&sys).unwrap().iter().all(|&ok| ok));
    }
}

#[test]
fn nullspace_dimension_count() {
    let spec = r2();
    let alphas = [rat(1), rat(3)];
    let funcs: Vec<LaurentTail> = (0..2)
        .flat_map(|i| (0..2).map(move |s| (i, s)))
        .map(|(i, s)| expand_f_s(&spec, &alphas[i], s, 40))
        .collect();
    for (n_vec, m_deg) in [(vec![1, 1, 1, 1], 4usize), (vec![2, 1, 3, 2], 9), (vec![2, 2, 2, 2], 8)] {
        let space = solve_pade_nullspace(&funcs, &n_vec, m_deg).unwrap();
        let total: usize = n_vec.iter().sum();
        assert!(space.dimension() >= m_deg + 1 - total);
        for k in 0..space.dimension() {
            let approx = space.approximants(k);
            for (j, f) in funcs.iter().enumerate() {
                let rem = f.mul_poly(&approx[0]).sub(&LaurentTail::from_poly(&approx[j + 1], f.truncation()));
                assert!(rem.ord_at_least(n_vec[j] as i64 + 1).unwrap());
            }
        }
    }
}

#[test]
fn geometric_function_example() {
    // f = 1/z, n = 1, M = 1: P_0 = z, P_1 = 1 up to scaling
    let f = LaurentTail::new(1, {
        let mut v = vec![Rational::one()];
        v.extend(std::iter::repeat(Rational::zero()).take(10));
        v
    });
    let space = solve_pade_nullspace(&[f], &[1], 1).unwrap();
    assert_eq!(space.dimension(), 1);
    let ap = space.approximants(0);
    let scale = ap[0].coeff(1);
    assert!(!scale.is_zero());
    assert_eq!(ap[0], RationalPoly::monomial(1, scale.clone()));
    assert_eq!(ap[1], RationalPoly::constant(scale));
}

#[test]
fn fault_injection_names_the_column() {
    let mut sys = build_system(&r2(), &[rat(1)], 3, None).unwrap();
    sys.p[1] = corrupt_coefficient(&sys.p[1], 0);
    let report = verify_system(&sys);
    assert!(!report.passed);
    assert!(report.failures.iter().any(|c| c.l == Some(1)));
    assert!(report.failures.iter().all(|c| c.l.is_none() || c.l == Some(1)));
}

#[test]
fn m1_reduction_instance_verifies() {
    let sys = build_system(&r2(), &[rat(1)], 3, None).unwrap();
    let report = verify_system(&sys);
    assert!(report.passed);
    assert!(report.checks_run > 0);
}
