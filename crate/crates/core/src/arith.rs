//! Exact number-theoretic primitives: Pochhammer symbols, denominators,
//! the growth constant `mu`, valuations at places of `Q` and the
//! denominator sequences of Pochhammer ratios.

use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::{Error, Result, Rational};

/// Slack used for every floating-point comparison in the crate.
pub const FLOAT_SLACK: f64 = 1e-12;

/// Integer `n` as a rational.
pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `num / den` as a rational. Panics on `den == 0`.
pub fn ratio(num: i64, den: i64) -> Rational {
    Rational::new(BigInt::from(num), BigInt::from(den))
}

/// Parse `"num/den"` or an integer string.
pub fn parse_rational(s: &str) -> Result<Rational> {
    let s = s.trim();
    let bad = || Error::Parse(format!("malformed rational '{s}'"));
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: BigInt = n.parse().map_err(|_| bad())?;
    let d: BigInt = d.parse().map_err(|_| bad())?;
    if d.is_zero() {
        return Err(Error::Parse(format!("zero denominator in '{s}'")));
    }
    Ok(Rational::new(n, d))
}

/// Parse a comma separated list of rationals. The empty string is the empty list.
pub fn parse_rational_list(s: &str) -> Result<Vec<Rational>> {
    if s.trim().is_empty() {
        return Ok(Vec::new());
    }
    s.split(',').map(parse_rational).collect()
}

/// Canonical `"num/den"` form, denominator omitted when 1.
pub fn fmt_rational(x: &Rational) -> String {
    if x.denom().is_one() {
        x.numer().to_string()
    } else {
        format!("{}/{}", x.numer(), x.denom())
    }
}

/// `true` when `x` is an integer `<= 0`.
pub fn is_nonpositive_integer(x: &Rational) -> bool {
    x.is_integer() && !x.is_positive()
}

/// `true` when `x` is an integer `>= 1`.
pub fn is_positive_integer(x: &Rational) -> bool {
    x.is_integer() && x.is_positive()
}

/// Rising factorial `a (a+1) ... (a+k-1)`.
pub fn pochhammer(a: &Rational, k: usize) -> Rational {
    let mut acc = Rational::one();
    let mut x = a.clone();
    for _ in 0..k {
        acc *= &x;
        x += Rational::one();
    }
    acc
}

/// `k!` as a big integer.
pub fn factorial(k: usize) -> BigInt {
    (1..=k).fold(BigInt::one(), |acc, j| acc * BigInt::from(j))
}

/// Least `n >= 1` with `n x` integral for every `x` in `set`.
pub fn den_of_set<'a, I>(set: I) -> BigInt
where
    I: IntoIterator<Item = &'a Rational>,
{
    set.into_iter()
        .fold(BigInt::one(), |acc, x| acc.lcm(x.denom()))
}

/// Deterministic Miller-Rabin for 64-bit integers.
pub fn is_prime_u64(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    const SMALL: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];
    for p in SMALL {
        if n % p == 0 {
            return n == p;
        }
    }
    let mul = |a: u64, b: u64| ((a as u128 * b as u128) % n as u128) as u64;
    let pow = |mut b: u64, mut e: u64| {
        let mut r = 1u64;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, b);
            }
            b = mul(b, b);
            e >>= 1;
        }
        r
    };
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in SMALL {
        let mut x = pow(a, d);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul(x, x);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

/// Distinct prime factors of `n` by trial division.
pub fn prime_factors(n: &BigUint) -> Vec<u64> {
    let mut n = n.clone();
    let mut out = Vec::new();
    if n.is_zero() {
        return out;
    }
    let mut p: u64 = 2;
    loop {
        let pb = BigUint::from(p);
        if &pb * &pb > n {
            break;
        }
        if (&n % &pb).is_zero() {
            out.push(p);
            while (&n % &pb).is_zero() {
                n /= &pb;
            }
        }
        p += if p == 2 { 1 } else { 2 };
    }
    if n > BigUint::one() {
        out.push(n.to_u64().expect("prime cofactor exceeds 64 bits"));
    }
    out
}

/// Distinct primes dividing the denominator of `x`.
pub fn den_primes(x: &Rational) -> Vec<u64> {
    prime_factors(x.denom().magnitude())
}

/// `log mu(x)` with `mu(x) = prod_{q | den x} q^{q/(q-1)}`.
pub fn log_mu(x: &Rational) -> f64 {
    den_primes(x)
        .into_iter()
        .map(|q| {
            let q = q as f64;
            q / (q - 1.0) * q.ln()
        })
        .sum()
}

/// `log( den(x) * prod_{q | den x} q^{1/(q-1)} )`.
///
/// Agrees with [`log_mu`] for square-free denominators and is the sharp
/// growth rate of `den((x)_k / k!)` in general.
pub fn log_mu_sharp(x: &Rational) -> f64 {
    let d = x.denom().magnitude();
    log_abs_biguint(d)
        + den_primes(x)
            .into_iter()
            .map(|q| (q as f64).ln() / (q as f64 - 1.0))
            .sum::<f64>()
}

/// Euler's totient.
pub fn totient(n: u64) -> u64 {
    assert!(n >= 1, "totient of 0");
    prime_factors(&BigUint::from(n))
        .into_iter()
        .fold(n, |acc, p| acc / p * (p - 1))
}

/// `den(b) / phi(den(b))`.
pub fn den_over_phi(b: &Rational) -> f64 {
    let d = b.denom().to_u64().expect("denominator exceeds 64 bits");
    d as f64 / totient(d) as f64
}

/// A place of `Q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Archimedean,
    Prime(u64),
}

impl Place {
    /// The `p`-adic place, with primality checked.
    pub fn prime(p: u64) -> Result<Place> {
        if is_prime_u64(p) {
            Ok(Place::Prime(p))
        } else {
            Err(Error::InvalidInput(format!("{p} is not a prime")))
        }
    }

    pub fn is_archimedean(&self) -> bool {
        matches!(self, Place::Archimedean)
    }
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Archimedean => write!(f, "inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

impl std::str::FromStr for Place {
    type Err = Error;
    fn from_str(s: &str) -> Result<Place> {
        match s.trim() {
            "inf" | "infinity" | "archimedean" | "oo" => Ok(Place::Archimedean),
            t => {
                let p: u64 = t
                    .parse()
                    .map_err(|_| Error::Parse(format!("malformed place '{s}'")))?;
                Place::prime(p)
            }
        }
    }
}

impl Serialize for Place {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Place {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}

/// `p`-adic valuation of a nonzero integer.
pub fn valuation_int(n: &BigInt, p: u64) -> i64 {
    assert!(!n.is_zero(), "valuation of zero");
    let p = BigInt::from(p);
    let mut n = n.clone();
    let mut v = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return v;
        }
        n = q;
        v += 1;
    }
}

/// `p`-adic valuation of a nonzero rational.
pub fn valuation(x: &Rational, p: u64) -> i64 {
    valuation_int(x.numer(), p) - valuation_int(x.denom(), p)
}

/// Natural log of `|n|` for arbitrarily large integers.
pub fn log_abs_bigint(n: &BigInt) -> f64 {
    log_abs_biguint(n.magnitude())
}

pub fn log_abs_biguint(n: &BigUint) -> f64 {
    if n.is_zero() {
        return f64::NEG_INFINITY;
    }
    let bits = n.bits();
    if bits <= 1000 {
        return n.to_f64().unwrap().ln();
    }
    let shift = bits - 64;
    let top: BigUint = n >> shift;
    top.to_f64().unwrap().ln() + shift as f64 * std::f64::consts::LN_2
}

/// `log |x|_v`; `-inf` at `x = 0`.
pub fn log_abs_at_place(x: &Rational, v: Place) -> f64 {
    if x.is_zero() {
        return f64::NEG_INFINITY;
    }
    match v {
        Place::Archimedean => log_abs_bigint(x.numer()) - log_abs_bigint(x.denom()),
        Place::Prime(p) => -(valuation(x, p) as f64) * (p as f64).ln(),
    }
}

/// Normalized absolute value `|x|_v`.
pub fn abs_at_place(x: &Rational, v: Place) -> f64 {
    if x.is_zero() {
        0.0
    } else {
        log_abs_at_place(x, v).exp()
    }
}

/// `|x|_v` at a prime place as an exact rational `p^{-v_p(x)}`.
pub fn abs_at_prime_exact(x: &Rational, p: u64) -> Rational {
    if x.is_zero() {
        return Rational::zero();
    }
    let v = valuation(x, p);
    let pp = BigInt::from(p).pow(v.unsigned_abs() as u32);
    if v >= 0 {
        Rational::new(BigInt::one(), pp)
    } else {
        Rational::from_integer(pp)
    }
}

/// Exact denominators `D_0..D_N` of a growing prefix family.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct DenominatorProfile {
    #[serde(with = "crate::report::bigint_vec")]
    pub values: Vec<BigInt>,
    pub log_rate: f64,
}

impl DenominatorProfile {
    fn from_terms(terms: &[Rational]) -> DenominatorProfile {
        let mut values = Vec::with_capacity(terms.len());
        let mut d = BigInt::one();
        for t in terms {
            d = d.lcm(t.denom());
            values.push(d.clone());
        }
        let n = terms.len().saturating_sub(1);
        let log_rate = if n == 0 {
            0.0
        } else {
            log_abs_bigint(values.last().unwrap()) / n as f64
        };
        DenominatorProfile { values, log_rate }
    }

    /// Index bound `N`.
    pub fn n(&self) -> usize {
        self.values.len() - 1
    }

    /// `(1/k) log D_k`.
    pub fn rate_at(&self, k: usize) -> f64 {
        if k == 0 {
            0.0
        } else {
            log_abs_bigint(&self.values[k]) / k as f64
        }
    }
}

/// `D_k = den{ (a)_j / (b)_j : j <= k }` for `k <= N`.
pub fn d_n_profile(a: &Rational, b: &Rational, n: usize) -> Result<DenominatorProfile> {
    if is_nonpositive_integer(b) {
        return Err(Error::InvalidInput(format!(
            "b = {} is a non-positive integer",
            fmt_rational(b)
        )));
    }
    let mut terms = Vec::with_capacity(n + 1);
    let mut q = Rational::one();
    terms.push(q.clone());
    for k in 0..n {
        let kk = rat(k as i64);
        q = q * (a + &kk) / (b + &kk);
        terms.push(q.clone());
    }
    Ok(DenominatorProfile::from_terms(&terms))
}

/// Rounding of `n/(q-1)` in the exponent of [`mu_n`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum MuRounding {
    Floor,
    Ceil,
}

/// `prod_{q | den zeta} q^{n + e(n,q)}` with `e` the chosen rounding of `n/(q-1)`.
pub fn mu_n(zeta: &Rational, n: usize, rounding: MuRounding) -> BigInt {
    den_primes(zeta)
        .into_iter()
        .fold(BigInt::one(), |acc, q| {
            let qm = (q - 1) as usize;
            let e = match rounding {
                MuRounding::Floor => n / qm,
                MuRounding::Ceil => n.div_ceil(qm),
            };
            acc * BigInt::from(q).pow((n + e) as u32)
        })
}

/// `den((zeta+1)_n / n!)`.
pub fn den_shifted_binomial(zeta: &Rational, n: usize) -> BigInt {
    let x = pochhammer(&(zeta + Rational::one()), n) / Rational::from_integer(factorial(n));
    x.denom().clone()
}

/// Outcome of the rounding selection for [`mu_n`].
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MuRoundingSelection {
    pub rounding: MuRounding,
    pub floor_holds: bool,
    pub ceil_holds: bool,
    #[serde(with = "crate::report::rat_vec")]
    pub zetas: Vec<Rational>,
    pub n_max: usize,
}

/// Pick the smaller exponent convention for which `den((zeta+1)_n/n!)`
/// divides `mu_n(zeta, n)` for every `zeta` in `zetas` and `n <= n_max`.
pub fn select_mu_rounding(zetas: &[Rational], n_max: usize) -> Result<MuRoundingSelection> {
    let holds = |r: MuRounding| {
        zetas.par_iter().all(|z| {
            (0..=n_max).all(|n| (mu_n(z, n, r) % den_shifted_binomial(z, n)).is_zero())
        })
    };
    let floor_holds = holds(MuRounding::Floor);
    let ceil_holds = holds(MuRounding::Ceil);
    let rounding = if floor_holds {
        MuRounding::Floor
    } else if ceil_holds {
        MuRounding::Ceil
    } else {
        return Err(Error::TheoryViolation(
            "no rounding of n/(q-1) makes mu_n a multiple of den((zeta+1)_n/n!)".into(),
        ));
    };
    Ok(MuRoundingSelection {
        rounding,
        floor_holds,
        ceil_holds,
        zetas: zetas.to_vec(),
        n_max,
    })
}

/// Denominator profiles of `prod (1+zeta_j)_k / prod (eta_i)_k` and of its
/// reciprocal, for `k <= N`.
pub fn d_c_profiles(
    eta: &[Rational],
    zeta: &[Rational],
    n: usize,
) -> Result<(DenominatorProfile, DenominatorProfile)> {
    let one = Rational::one();
    for e in eta {
        if is_nonpositive_integer(e) {
            return Err(Error::InvalidInput(format!(
                "eta = {} is a non-positive integer",
                fmt_rational(e)
            )));
        }
    }
    for z in zeta {
        if is_nonpositive_integer(&(z + &one)) {
            return Err(Error::InvalidInput(format!(
                "1 + zeta = {} is a non-positive integer",
                fmt_rational(&(z + &one))
            )));
        }
    }
    let mut fwd = Vec::with_capacity(n + 1);
    let mut q = Rational::one();
    fwd.push(q.clone());
    for k in 0..n {
        let kk = rat(k as i64);
        for z in zeta {
            q *= z + &one + &kk;
        }
        for e in eta {
            q /= e + &kk;
        }
        fwd.push(q.clone());
    }
    let inv: Vec<Rational> = fwd.iter().map(|x| x.recip()).collect();
    Ok((
        DenominatorProfile::from_terms(&fwd),
        DenominatorProfile::from_terms(&inv),
    ))
}

/// Content-free logarithmic data of a rational vector:
/// `log lcm(den) - log gcd(num)` equals `sum_p log max_i |x_i|_p`.
pub fn log_finite_norm_sum(xs: &[Rational]) -> f64 {
    let mut l = BigInt::one();
    let mut g = BigInt::zero();
    for x in xs {
        if x.is_zero() {
            continue;
        }
        l = l.lcm(x.denom());
        g = g.gcd(x.numer());
    }
    if g.is_zero() {
        return f64::NEG_INFINITY;
    }
    log_abs_bigint(&l) - log_abs_bigint(&g)
}

/// `log max_i |x_i|_v`.
pub fn log_norm_at_place(xs: &[Rational], v: Place) -> f64 {
    xs.iter()
        .map(|x| log_abs_at_place(x, v))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Sign of a rational as `-1, 0, 1`.
pub fn sign(x: &Rational) -> i32 {
    match x.numer().sign() {
        Sign::Minus => -1,
        Sign::NoSign => 0,
        Sign::Plus => 1,
    }
}

/// `|x|` as an `f64`, robust to huge numerators and denominators.
pub fn to_f64(x: &Rational) -> f64 {
    if x.is_zero() {
        return 0.0;
    }
    if let Some(v) = num_traits::ToPrimitive::to_f64(x).filter(|v| v.is_finite() && *v != 0.0) {
        return v;
    }
    let l = log_abs_bigint(x.numer()) - log_abs_bigint(x.denom());
    let m = l.exp();
    if x.is_negative() {
        -m
    } else {
        m
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pochhammer_examples() {
        assert_eq!(pochhammer(&ratio(1, 2), 0), rat(1));
        assert_eq!(pochhammer(&ratio(1, 2), 3), ratio(15, 8));
        assert_eq!(pochhammer(&ratio(-1, 3), 2), ratio(-2, 9));
    }

    #[test]
    fn den_examples() {
        assert_eq!(den_of_set(&[ratio(1, 2), ratio(1, 3)]), BigInt::from(6));
        assert_eq!(den_of_set(&[rat(2)]), BigInt::from(1));
        assert_eq!(den_of_set(&[ratio(3, 4), ratio(5, 6)]), BigInt::from(12));
    }

    #[test]
    fn log_mu_examples() {
        assert_eq!(log_mu(&rat(5)), 0.0);
        assert!((log_mu(&ratio(1, 2)) - 4f64.ln()).abs() < FLOAT_SLACK);
        let want = 2.0 * 2f64.ln() + 1.5 * 3f64.ln();
        assert!((log_mu(&ratio(1, 6)) - want).abs() < FLOAT_SLACK);
        assert!((log_mu_sharp(&ratio(1, 6)) - want).abs() < FLOAT_SLACK);
        assert!((log_mu_sharp(&ratio(1, 4)) - 8f64.ln()).abs() < FLOAT_SLACK);
    }

    #[test]
    fn totient_examples() {
        assert_eq!(totient(1), 1);
        assert_eq!(totient(2), 1);
        assert_eq!(totient(12), 4);
        assert_eq!(totient(97), 96);
    }

    #[test]
    fn places() {
        assert!((abs_at_place(&ratio(3, 4), Place::Archimedean) - 0.75).abs() < FLOAT_SLACK);
        assert!((abs_at_place(&ratio(3, 4), Place::Prime(2)) - 4.0).abs() < FLOAT_SLACK);
        assert_eq!(abs_at_place(&rat(0), Place::Prime(3)), 0.0);
        assert!(Place::prime(91).is_err());
        assert_eq!("inf".parse::<Place>().unwrap(), Place::Archimedean);
        assert_eq!("7".parse::<Place>().unwrap(), Place::Prime(7));
        assert!(is_prime_u64(18446744073709551557));
        assert!(!is_prime_u64(3215031751));
    }

    #[test]
    fn d_n_examples() {
        let p = d_n_profile(&ratio(1, 2), &ratio(1, 3), 2).unwrap();
        assert_eq!(p.values[2], BigInt::from(16));
        let p = d_n_profile(&rat(3), &rat(1), 30).unwrap();
        assert!(p.values.iter().all(|d| d.is_one()));
        assert!(d_n_profile(&rat(1), &rat(-2), 3).is_err());
    }

    #[test]
    fn mu_n_examples() {
        assert_eq!(mu_n(&rat(4), 7, MuRounding::Floor), BigInt::one());
        assert_eq!(mu_n(&ratio(1, 2), 3, MuRounding::Floor), BigInt::from(64));
        assert_eq!(mu_n(&ratio(1, 2), 3, MuRounding::Ceil), BigInt::from(64));
        for n in 0..=50 {
            let z = ratio(1, 3);
            assert!((mu_n(&z, n, MuRounding::Floor) % den_shifted_binomial(&z, n)).is_zero());
        }
    }

    #[test]
    fn d_c_examples() {
        let eta = [ratio(3, 2), ratio(7, 3)];
        let zeta = [ratio(1, 2), ratio(4, 3)];
        let (d, dp) = d_c_profiles(&eta, &zeta, 10).unwrap();
        assert!(d.values.iter().chain(dp.values.iter()).all(|x| x.is_one()));

        // (3/2)_k/(1/4)_k for k <= 2: 1, 6, 6*(5/2)/(5/4) = 12.
        let (d, dp) = d_c_profiles(&[ratio(1, 4)], &[ratio(1, 2)], 2).unwrap();
        assert_eq!(d.values, vec![BigInt::one(), BigInt::one(), BigInt::one()]);
        // reciprocals 1, 1/6, 1/12.
        assert_eq!(dp.values[2], BigInt::from(12));
        assert!(d_c_profiles(&[rat(0)], &[rat(1)], 2).is_err());
        assert!(d_c_profiles(&[rat(1)], &[rat(-1)], 2).is_err());
    }

    #[test]
    fn parse_roundtrip() {
        for s in ["0", "-3", "7/2", "-1/6"] {
            assert_eq!(fmt_rational(&parse_rational(s).unwrap()), s);
        }
        assert_eq!(fmt_rational(&parse_rational("4/6").unwrap()), "2/3");
        assert!(parse_rational("1/0").is_err());
        assert!(parse_rational("x").is_err());
    }

    #[test]
    fn finite_norm_sum_matches_places() {
        let xs = [ratio(3, 4), ratio(9, 10), ratio(-15, 2)];
        let direct: f64 = [2u64, 3, 5]
            .iter()
            .map(|&p| log_norm_at_place(&xs, Place::Prime(p)))
            .sum();
        assert!((log_finite_norm_sum(&xs) - direct).abs() < 1e-9);
    }
}
