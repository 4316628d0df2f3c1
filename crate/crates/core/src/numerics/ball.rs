use std::fmt;

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::arith::log_abs_biguint;
use crate::Rational;

/// A real number `x` with `|x - mid 2^-prec| <= rad 2^-prec`.
///
/// All arithmetic widens `rad` enough to keep the enclosure valid.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Ball {
    mid: BigInt,
    rad: BigUint,
    prec: u32,
}

fn ceil_div(a: &BigUint, b: &BigUint) -> BigUint {
    let (q, r) = a.div_rem(b);
    if r.is_zero() {
        q
    } else {
        q + 1u32
    }
}

/// `ceil(|x| 2^prec)` for a nonnegative bound `x`.
fn ulps_ceil(x: &Rational, prec: u32) -> BigUint {
    let num = x.numer().magnitude() << prec;
    ceil_div(&num, x.denom().magnitude())
}

impl Ball {
    pub fn zero(prec: u32) -> Self {
        Ball { mid: BigInt::zero(), rad: BigUint::zero(), prec }
    }

    /// Enclosure of `q` with at most one ulp of error.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let num = q.numer() << prec;
        let (mid, rem) = num.div_mod_floor(q.denom());
        let rad = if rem.is_zero() { BigUint::zero() } else { BigUint::one() };
        Ball { mid, rad, prec }
    }

    /// Enclosure of `num / den` without reducing the fraction first.
    pub fn from_fraction(num: &BigInt, den: &BigInt, prec: u32) -> Self {
        let (num, den) = if den.is_negative() { (-num, -den) } else { (num.clone(), den.clone()) };
        let (mid, rem) = (num << prec).div_mod_floor(&den);
        let rad = if rem.is_zero() { BigUint::zero() } else { BigUint::one() };
        Ball { mid, rad, prec }
    }

    pub fn prec(&self) -> u32 {
        self.prec
    }

    pub fn mid(&self) -> Rational {
        Rational::new(self.mid.clone(), BigInt::one() << self.prec)
    }

    pub fn rad(&self) -> Rational {
        Rational::new(BigInt::from(self.rad.clone()), BigInt::one() << self.prec)
    }

    /// Change the working precision, rounding outward when it decreases.
    pub fn with_prec(&self, prec: u32) -> Self {
        if prec >= self.prec {
            let d = prec - self.prec;
            Ball { mid: &self.mid << d, rad: &self.rad << d, prec }
        } else {
            let d = self.prec - prec;
            let den = BigInt::one() << d;
            let mid = self.mid.div_floor(&den);
            let rad = ceil_div(&self.rad, den.magnitude()) + 1u32;
            Ball { mid, rad, prec }
        }
    }

    fn align(&self, o: &Ball) -> (Ball, Ball) {
        let p = self.prec.max(o.prec);
        (self.with_prec(p), o.with_prec(p))
    }

    pub fn add(&self, o: &Ball) -> Ball {
        let (a, b) = self.align(o);
        Ball { mid: a.mid + b.mid, rad: a.rad + b.rad, prec: a.prec }
    }

    pub fn sub(&self, o: &Ball) -> Ball {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Ball {
        Ball { mid: -self.mid.clone(), rad: self.rad.clone(), prec: self.prec }
    }

    pub fn mul(&self, o: &Ball) -> Ball {
        let (a, b) = self.align(o);
        let p = a.prec;
        let den = BigInt::one() << p;
        let mid = (&a.mid * &b.mid).div_floor(&den);
        let err = a.mid.magnitude() * &b.rad + b.mid.magnitude() * &a.rad + &a.rad * &b.rad;
        let rad = ceil_div(&err, den.magnitude()) + 1u32;
        Ball { mid, rad, prec: p }
    }

    /// Multiply by an exact rational.
    pub fn mul_rational(&self, q: &Rational) -> Ball {
        let num = &self.mid * q.numer();
        let (mid, rem) = num.div_mod_floor(q.denom());
        let mut rad = ceil_div(&(&self.rad * q.numer().magnitude()), q.denom().magnitude());
        if !rem.is_zero() {
            rad += 1u32;
        }
        Ball { mid, rad, prec: self.prec }
    }

    /// Widen by an absolute error `e >= 0`.
    pub fn add_error(&self, e: &Rational) -> Ball {
        Ball {
            mid: self.mid.clone(),
            rad: &self.rad + ulps_ceil(e, self.prec),
            prec: self.prec,
        }
    }

    pub fn contains_zero(&self) -> bool {
        self.mid.magnitude() <= &self.rad
    }

    /// Whether `q` lies in the enclosure.
    pub fn contains(&self, q: &Rational) -> bool {
        let scaled = q * Rational::from_integer(BigInt::one() << self.prec);
        let d = (scaled - Rational::from_integer(self.mid.clone())).abs();
        d <= Rational::from_integer(BigInt::from(self.rad.clone()))
    }

    /// Whether `self` is contained in `o`.
    pub fn is_within(&self, o: &Ball) -> bool {
        let (a, b) = self.align(o);
        let lo_a = &a.mid - BigInt::from(a.rad.clone());
        let hi_a = &a.mid + BigInt::from(a.rad.clone());
        let lo_b = &b.mid - BigInt::from(b.rad.clone());
        let hi_b = &b.mid + BigInt::from(b.rad.clone());
        lo_a >= lo_b && hi_a <= hi_b
    }

    /// Upper bound for `|x|`.
    pub fn abs_upper(&self) -> Rational {
        Rational::new(
            BigInt::from(self.mid.magnitude() + &self.rad),
            BigInt::one() << self.prec,
        )
    }

    /// Lower bound for `|x|` (zero if the ball contains zero).
    pub fn abs_lower(&self) -> Rational {
        if self.contains_zero() {
            return Rational::zero();
        }
        Rational::new(
            BigInt::from(self.mid.magnitude() - &self.rad),
            BigInt::one() << self.prec,
        )
    }

    /// `log2` of the radius, `-inf` for exact values.
    pub fn rad_log2(&self) -> f64 {
        if self.rad.is_zero() {
            return f64::NEG_INFINITY;
        }
        log_abs_biguint(&self.rad) / std::f64::consts::LN_2 - self.prec as f64
    }

    /// `log2 |mid|`.
    pub fn mid_log2(&self) -> f64 {
        if self.mid.is_zero() {
            return f64::NEG_INFINITY;
        }
        log_abs_biguint(self.mid.magnitude()) / std::f64::consts::LN_2 - self.prec as f64
    }

    /// `log2(rad / |x|_lower)`; `+inf` if the ball contains zero.
    pub fn rel_rad_log2(&self) -> f64 {
        if self.contains_zero() {
            return f64::INFINITY;
        }
        if self.rad.is_zero() {
            return f64::NEG_INFINITY;
        }
        let lo = self.mid.magnitude() - &self.rad;
        (log_abs_biguint(&self.rad) - log_abs_biguint(&lo)) / std::f64::consts::LN_2
    }

    pub fn to_f64(&self) -> f64 {
        crate::arith::to_f64(&self.mid())
    }

    /// The midpoint in decimal with `digits` fractional digits, truncated.
    pub fn to_decimal(&self, digits: usize) -> String {
        let scaled = self.mid.magnitude() * BigUint::from(10u32).pow(digits as u32) >> self.prec;
        let mut s = scaled.to_string();
        if s.len() <= digits {
            s = "0".repeat(digits + 1 - s.len()) + &s;
        }
        let split = s.len() - digits;
        let sign = if self.mid.sign() == Sign::Minus { "-" } else { "" };
        if digits == 0 {
            format!("{sign}{s}")
        } else {
            format!("{sign}{}.{}", &s[..split], &s[split..])
        }
    }
}

/// `log2` of the relative distance between two enclosures of the same value:
/// `(|mid_a - mid_b| + rad_a + rad_b) / min(|a|, |b|)`.
pub fn relative_gap_log2(a: &Ball, b: &Ball) -> f64 {
    let (x, y) = a.align(b);
    let gap = (&x.mid - &y.mid).magnitude() + &x.rad + &y.rad;
    let lo = x.abs_lower().min(y.abs_lower());
    if lo.is_zero() {
        return f64::INFINITY;
    }
    if gap.is_zero() {
        return f64::NEG_INFINITY;
    }
    let lo_units = lo * Rational::from_integer(BigInt::one() << x.prec);
    (log_abs_biguint(&gap) - crate::arith::log_abs_bigint(&lo_units.floor().to_integer()))
        / std::f64::consts::LN_2
}

impl fmt::Display for Ball {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let digits = ((self.prec as f64) * std::f64::consts::LOG10_2).ceil() as usize;
        write!(f, "{} +/- 2^{:.1}", self.to_decimal(digits.min(60)), self.rad_log2())
    }
}
