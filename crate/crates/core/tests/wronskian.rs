use num_traits::{One, Zero};

use hgpade_core::arith::{rat, ratio};
use hgpade_core::pade::build_system;
use hgpade_core::polyops::HypergeometricSpec;
use hgpade_core::wronskian::{
    a0s_change_of_basis, a0s_values, c_um, c_um_factor, certify_nonvanishing, delta_of_system, final_det,
    homogeneity_degree, reduction_chain, theta_matrix, vanishing_order, WronskianVerdict,
};
use hgpade_core::Rational;

fn spec_ab(a: &[Rational], b: &[Rational]) -> HypergeometricSpec {
    HypergeometricSpec::from_parameters(a, b, None).unwrap()
}

fn r1() -> HypergeometricSpec {
    spec_ab(&[ratio(1, 3)], &[])
}

fn r2() -> HypergeometricSpec {
    spec_ab(&[ratio(1, 3), ratio(1, 4)], &[ratio(1, 2)])
}

fn r3() -> HypergeometricSpec {
    spec_ab(&[ratio(1, 3), ratio(1, 4), ratio(1, 5)], &[ratio(1, 2), ratio(2, 3)])
}

#[test]
fn canonical_instance_is_certified() {
    let sys = build_system(&r2(), &[rat(1), rat(2)], 1, None).unwrap();
    let rep = certify_nonvanishing(&sys, true).unwrap();
    assert_eq!(rep.verdict, WronskianVerdict::CertifiedNonzero);
    assert_eq!(rep.delta_z_degree, Some(0));
    assert!(rep.theory_violation.is_none());
    assert!(rep.rn_holds);
    assert!(rep.reduction.iter().all(|l| l.holds));
    assert!(rep.final_dets.iter().all(|f| !f.det.is_zero() && f.l_matches));
    assert_eq!(rep.c_um_chain.last(), Some(&Rational::one()));
}

#[test]
fn single_point_determinant_is_constant_and_nonzero() {
    let sys = build_system(&r2(), &[rat(1)], 1, None).unwrap();
    let d = delta_of_system(&sys).unwrap();
    assert!(!d.is_zero());
}

#[test]
fn delta_theta_routes_agree() {
    // Delta = lc(P_rm) Theta; the (-1)^{rm} sign is only checked in the acceptance suite
    let cases: Vec<(HypergeometricSpec, Vec<Rational>, usize)> = vec![
        (r1(), vec![rat(1)], 3),
        (r1(), vec![rat(1), ratio(-1, 2)], 2),
        (r2(), vec![rat(1)], 3),
        (r2(), vec![rat(1), rat(2)], 2),
        (r3(), vec![rat(1)], 2),
    ];
    for (spec, alphas, n) in cases {
        let sys = build_system(&spec, &alphas, n, None).unwrap();
        let rep = certify_nonvanishing(&sys, false).unwrap();
        let rm = sys.rm();
        assert_eq!(rep.delta_z_degree, Some(0));
        assert!(!rep.delta.is_zero());
        assert!(rep.bunkai_unsigned_holds, "rm = {rm}, n = {n}");
        assert_eq!(rep.bunkai_signed_holds, rm % 2 == 0 || rep.delta.is_zero(), "rm = {rm}, n = {n}");
        assert!(rep.rn_holds, "rm = {rm}, n = {n}");
    }
}

#[test]
fn theta_entries_are_remainder_coefficients() {
    let sys = build_system(&r2(), &[rat(1), rat(3)], 2, None).unwrap();
    let q = theta_matrix(&sys);
    let n = sys.n as i64;
    // rows (i, s) with s descending, columns l
    for l in 0..sys.rm() {
        let mut row = 0;
        for i in 0..sys.m() {
            for s in (0..sys.r()).rev() {
                assert_eq!(q[row][l], sys.remainders[l][i][s].coeff(n + 1).unwrap(), "(i, s, l) = ({i}, {s}, {l})");
                row += 1;
            }
        }
    }
}

#[test]
fn single_entry_theta() {
    let sys = build_system(&r1(), &[rat(1)], 2, None).unwrap();
    let q = theta_matrix(&sys);
    assert_eq!(q.len(), 1);
    assert_eq!(q[0][0], sys.remainders[0][0][0].coeff(3).unwrap());
}

#[test]
fn a0s_examples() {
    let degenerate = HypergeometricSpec::from_roots(&[rat(2)], &[rat(1)], rat(1)).unwrap();
    let (v, ok) = a0s_values(&degenerate, 1);
    assert_eq!(v, vec![Rational::zero()]);
    assert!(!ok);
    let fine = HypergeometricSpec::from_roots(&[ratio(5, 2)], &[rat(1)], rat(1)).unwrap();
    assert_eq!(a0s_values(&fine, 1), (vec![ratio(1, 2)], true));
}

#[test]
fn a0s_agrees_with_change_of_basis() {
    for spec in [r1(), r2(), r3()] {
        for n in 1..=4 {
            assert_eq!(a0s_values(&spec, n).0, a0s_change_of_basis(&spec, n), "r = {}, n = {n}", spec.r());
        }
    }
}

#[test]
fn c_um_single_point_example() {
    // psi~ t^k -> 1/(k+1); the base carries t^u, so P^ = t - 1 at u = 0 and t (t - 1) at u = 1
    let spec = HypergeometricSpec::from_roots(&[ratio(5, 2)], &[rat(1)], rat(1)).unwrap();
    assert_eq!(c_um(&spec, &[rat(1)], 1, 0), ratio(-1, 2));
    assert_eq!(c_um(&spec, &[rat(1)], 1, 1), ratio(-1, 6));
}

#[test]
fn c_um_without_points_is_one() {
    assert_eq!(c_um(&r2(), &[], 1, 3), Rational::one());
}

#[test]
fn homogeneity_of_c_um() {
    let spec = r2();
    let alphas = [rat(1), rat(2)];
    for u in 0..=2 {
        let h = homogeneity_degree(&spec, &alphas, 1, u).unwrap();
        let f = c_um_factor(&spec, &alphas, 1, u).unwrap();
        let tail = 2 * 1 * 3 * 4 / 2;
        assert_eq!(h.measured, 2 * f.e + tail, "u = {u}");
        assert!(h.measured == h.stated_factorization || h.measured == h.stated_homogeneity);
    }
}

#[test]
fn vanishing_order_along_the_diagonal() {
    let spec = r2();
    for n in 1..=2 {
        let order = vanishing_order(&spec, &[rat(1), rat(2)], n, n).unwrap();
        assert!(order >= (2 * n + 1) * 4, "n = {n}: order {order}");
    }
}

#[test]
fn swapping_points_multiplies_by_sign() {
    // C = c prod alpha^e (alpha_2 - alpha_1)^{(2n+1) r^2}
    for (spec, n) in [(r1(), 1), (r1(), 2), (r2(), 1)] {
        let r = spec.r();
        let c12 = c_um(&spec, &[rat(1), rat(3)], n, n);
        let c21 = c_um(&spec, &[rat(3), rat(1)], n, n);
        let sign = if ((2 * n + 1) * r * r) % 2 == 0 { rat(1) } else { rat(-1) };
        assert!(!c12.is_zero());
        assert_eq!(c21, sign * c12, "r = {r}, n = {n}");
    }
}

#[test]
fn factor_quotient_is_point_independent() {
    for (spec, alphas) in [(r1(), vec![rat(1), rat(2), rat(4)]), (r2(), vec![ratio(1, 2), rat(3)])] {
        let f = c_um_factor(&spec, &alphas, 1, 1).unwrap();
        assert!(f.tuples_checked >= 3);
        assert!(!f.c.is_zero());
    }
}

#[test]
fn reduction_from_two_points_to_one() {
    let spec = r2();
    for u in 0..=1 {
        let links = reduction_chain(&spec, &[rat(1), rat(2)], 1, u).unwrap();
        assert_eq!(links.len(), 2);
        assert!(links.iter().all(|l| l.holds), "u = {u}");
    }
}

#[test]
fn final_determinant_examples() {
    let spec = HypergeometricSpec::from_roots(&[ratio(5, 2)], &[rat(1)], rat(1)).unwrap();
    assert_eq!(final_det(&spec, 1, 0).unwrap().det, ratio(-1, 2));
    let fd = final_det(&r2(), 2, 3).unwrap();
    assert!(fd.l_matches);
    assert!(fd.triangular);
    assert!(!fd.e_scalar.is_zero());
}

#[test]
fn final_determinants_do_not_vanish() {
    for spec in [r1(), r2(), r3()] {
        let r = spec.r();
        for n in 1..=3 {
            for u in 0..=4 * r {
                let fd = final_det(&spec, n, u).unwrap();
                assert!(!fd.det.is_zero(), "r = {r}, n = {n}, u = {u}");
                assert!(fd.l_matches);
            }
        }
    }
}

#[test]
fn positive_integer_parameter_is_reported() {
    // a_1 = 2 gives eta_1 = 3, and eta_1 - 2 - 1 = 0 enters a_{0,1} from n = 2 on
    let spec = spec_ab(&[rat(2), ratio(1, 4)], &[ratio(1, 2)]);
    assert!(!spec.hypotheses_hold());
    let sys = build_system(&spec, &[rat(1)], 2, None).unwrap();
    let rep = certify_nonvanishing(&sys, false).unwrap();
    assert!(rep.hypotheses.iter().any(|h| !h.passed));
    assert!(!rep.a0s_nonzero);
    assert!(rep.theory_violation.is_none());
    if rep.verdict == WronskianVerdict::Zero {
        assert!(rep.zero_enters_at.as_deref().unwrap().starts_with("a_{0,"));
    }
}
