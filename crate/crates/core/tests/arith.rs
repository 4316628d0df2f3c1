use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed};
use proptest::prelude::*;

use hgpade_core::arith::{
    abs_at_prime_exact, d_c_profiles, d_n_profile, den_of_set, den_over_phi, den_shifted_binomial, log_mu, mu_n,
    pochhammer, prime_factors, ratio, select_mu_rounding, valuation, MuRounding,
};
use hgpade_core::Rational;

fn small_rational() -> impl Strategy<Value = Rational> {
    (-60i64..60, 1i64..40).prop_map(|(p, q)| ratio(p, q))
}

fn nonzero_rational() -> impl Strategy<Value = Rational> {
    (1i64..1_000_000, 1i64..1_000_000, any::<bool>()).prop_map(|(p, q, neg)| ratio(if neg { -p } else { p }, q))
}

proptest! {
    #[test]
    fn pochhammer_splits(a in small_rational(), j in 0usize..8, k in 0usize..8) {
        let shifted = &a + Rational::from_integer(BigInt::from(j));
        prop_assert_eq!(pochhammer(&a, j + k), pochhammer(&a, j) * pochhammer(&shifted, k));
    }

    #[test]
    fn product_formula(x in nonzero_rational()) {
        // |x|_inf * prod_p |x|_p = 1 exactly
        let mut primes = prime_factors(&x.numer().abs().to_biguint().unwrap());
        primes.extend(prime_factors(&x.denom().to_biguint().unwrap()));
        primes.sort_unstable();
        primes.dedup();
        let mut prod = x.abs();
        for p in primes {
            prod *= abs_at_prime_exact(&x, p);
        }
        prop_assert_eq!(prod, Rational::one());
    }

    #[test]
    fn denominator_profiles_are_divisibility_chains(a in small_rational(), bp in 1i64..30, bq in 1i64..12, n in 1usize..40) {
        let b = ratio(bp, bq);
        let prof = d_n_profile(&a, &b, n).unwrap();
        prop_assert_eq!(prof.values.len(), n + 1);
        for w in prof.values.windows(2) {
            prop_assert!(w[1].is_multiple_of(&w[0]), "{} does not divide {}", w[0], w[1]);
        }
    }

    #[test]
    fn den_of_set_clears_every_denominator(xs in prop::collection::vec(small_rational(), 1..8)) {
        let d = den_of_set(xs.iter());
        for x in &xs {
            let y = x * Rational::from_integer(d.clone());
            prop_assert!(y.is_integer());
        }
        // minimality: no proper divisor d/p works
        for p in prime_factors(&d.to_biguint().unwrap()) {
            let smaller = Rational::from_integer(&d / BigInt::from(p));
            prop_assert!(xs.iter().any(|x| !(x * &smaller).is_integer()));
        }
    }
}

#[test]
fn product_formula_thousand_rationals() {
    // deterministic sweep in addition to the proptest
    let mut seen = 0;
    for p in 1..=50i64 {
        for q in 1..=20i64 {
            let x = ratio(if p % 3 == 0 { -p } else { p }, q);
            let mut prod = x.abs();
            let mut primes = prime_factors(&x.numer().abs().to_biguint().unwrap());
            primes.extend(prime_factors(&x.denom().to_biguint().unwrap()));
            primes.sort_unstable();
            primes.dedup();
            for pr in primes {
                prod *= abs_at_prime_exact(&x, pr);
            }
            assert_eq!(prod, Rational::one(), "x = {x}");
            seen += 1;
        }
    }
    assert_eq!(seen, 1000);
}

#[test]
fn d2_for_half_over_third() {
    // den{1, 3/2, 27/16}
    let prof = d_n_profile(&ratio(1, 2), &ratio(1, 3), 2).unwrap();
    assert_eq!(prof.values, vec![BigInt::from(1), BigInt::from(2), BigInt::from(16)]);
}

#[test]
fn d_n_profile_rejects_nonpositive_integer_b() {
    assert!(d_n_profile(&ratio(1, 2), &ratio(-2, 1), 5).is_err());
}

#[test]
fn denominator_growth_bound() {
    let n = 200;
    let mut report = Vec::new();
    for (a, b) in [(ratio(1, 3), ratio(1, 2)), (ratio(1, 4), ratio(2, 3)), (ratio(2, 5), ratio(1, 5))] {
        let rate = d_n_profile(&a, &b, n).unwrap().rate_at(n);
        let bound = log_mu(&a) + den_over_phi(&b) + 0.05;
        if rate > bound {
            report.push(format!("a = {a}, b = {b}: {rate:.4} > {bound:.4}"));
        }
    }
    assert!(report.is_empty(), "{}", report.join("; "));
}

#[test]
fn mu_n_divisibility_oracle() {
    let zetas = [ratio(1, 2), ratio(1, 3), ratio(2, 3), ratio(1, 5)];
    let sel = select_mu_rounding(&zetas, 100).unwrap();
    for z in &zetas {
        for n in 0..=100 {
            let m = mu_n(z, n, sel.rounding);
            let d = den_shifted_binomial(z, n);
            assert!(m.is_multiple_of(&d), "zeta = {z}, n = {n}: {d} does not divide {m}");
        }
    }
    // the smaller exponent is chosen whenever it suffices
    if sel.rounding == MuRounding::Ceil {
        assert!(!sel.floor_holds);
    }
}

#[test]
fn d_c_profiles_r1_enumeration() {
    // (3/2)_k / (1/4)_k for k <= 2 is 1, 6, 12
    let (d, d_inv) = d_c_profiles(&[ratio(1, 4)], &[ratio(1, 2)], 2).unwrap();
    let direct: Vec<Rational> = (0..=2)
        .map(|k| pochhammer(&ratio(3, 2), k) / pochhammer(&ratio(1, 4), k))
        .collect();
    let mut den = BigInt::one();
    let mut den_inv = BigInt::one();
    for (k, x) in direct.iter().enumerate() {
        den = den.lcm(x.denom());
        den_inv = den_inv.lcm(x.recip().denom());
        assert_eq!(d.values[k], den);
        assert_eq!(d_inv.values[k], den_inv);
    }
    assert_eq!(d.values[2], BigInt::from(1));
    assert_eq!(d_inv.values[2], BigInt::from(12));
}

#[test]
fn valuation_examples() {
    assert_eq!(valuation(&ratio(3, 4), 2), -2);
    assert_eq!(valuation(&ratio(12, 5), 2), 2);
}
