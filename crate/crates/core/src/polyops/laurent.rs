use num_traits::Zero;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::RationalPoly;
use crate::{Error, Rational, Result};

/// Truncated expansion `sum_{e < truncation} c_e z^{-e}` in powers of `1/z`.
///
/// Every exponent below `truncation` is known exactly; the stored block
/// starts at the first nonzero coefficient.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LaurentTail {
    start: i64,
    coeffs: Vec<Rational>,
    truncation: i64,
}

impl LaurentTail {
    /// Build from coefficients of `z^{-start}, z^{-start-1}, ...`, all known up to `start + len`.
    pub fn new(start: i64, coeffs: Vec<Rational>) -> Self {
        let truncation = start + coeffs.len() as i64;
        let mut t = LaurentTail {
            start,
            coeffs,
            truncation,
        };
        t.normalize();
        t
    }

    /// The zero series, known up to `truncation`.
    pub fn zero(truncation: i64) -> Self {
        LaurentTail {
            start: truncation,
            coeffs: Vec::new(),
            truncation,
        }
    }

    fn normalize(&mut self) {
        let lead = self.coeffs.iter().position(|c| !c.is_zero());
        match lead {
            Some(j) => {
                self.coeffs.drain(..j);
                self.start += j as i64;
            }
            None => {
                self.coeffs.clear();
                self.start = self.truncation;
            }
        }
    }

    /// A polynomial in `z` viewed as a Laurent series in `1/z`.
    pub fn from_poly(p: &RationalPoly, truncation: i64) -> Self {
        match p.degree() {
            None => Self::zero(truncation),
            Some(d) => {
                let start = -(d as i64);
                let coeffs = (start..truncation)
                    .map(|e| if e <= 0 { p.coeff((-e) as usize) } else { Rational::zero() })
                    .collect();
                Self::new(start, coeffs)
            }
        }
    }

    /// First exponent not represented.
    pub fn truncation(&self) -> i64 {
        self.truncation
    }

    /// Exponent of the first stored coefficient.
    pub fn start(&self) -> i64 {
        self.start
    }

    pub fn stored(&self) -> &[Rational] {
        &self.coeffs
    }

    /// `true` when every coefficient below the truncation vanishes.
    pub fn is_zero_to_truncation(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `z^{-e}`.
    pub fn coeff(&self, e: i64) -> Result<Rational> {
        if e >= self.truncation {
            return Err(Error::InsufficientPrecision {
                requested: e,
                truncation: self.truncation,
            });
        }
        if e < self.start {
            return Ok(Rational::zero());
        }
        Ok(self.coeffs[(e - self.start) as usize].clone())
    }

    /// `ord_inf`: the least exponent with a nonzero coefficient.
    pub fn ord(&self) -> Result<i64> {
        if self.coeffs.is_empty() {
            Err(Error::InsufficientPrecision {
                requested: self.truncation,
                truncation: self.truncation,
            })
        } else {
            Ok(self.start)
        }
    }

    /// Decide `ord_inf >= k` using only exact coefficients.
    pub fn ord_at_least(&self, k: i64) -> Result<bool> {
        if !self.coeffs.is_empty() {
            return Ok(self.start >= k);
        }
        if k <= self.truncation {
            Ok(true)
        } else {
            Err(Error::InsufficientPrecision {
                requested: k,
                truncation: self.truncation,
            })
        }
    }

    /// Lower the truncation to `t` (no-op if already lower).
    pub fn truncate(&self, t: i64) -> Self {
        if t >= self.truncation {
            return self.clone();
        }
        let keep = (t - self.start).max(0) as usize;
        let mut out = LaurentTail {
            start: self.start.min(t),
            coeffs: self.coeffs.iter().take(keep).cloned().collect(),
            truncation: t,
        };
        if out.coeffs.is_empty() {
            out.start = t;
        }
        out.normalize();
        out
    }

    fn combine(&self, o: &Self, sign: bool) -> Self {
        let t = self.truncation.min(o.truncation);
        let s = self.start.min(o.start).min(t);
        let coeffs = (s..t)
            .map(|e| {
                let a = self.coeff(e).unwrap();
                let b = o.coeff(e).unwrap();
                if sign {
                    a + b
                } else {
                    a - b
                }
            })
            .collect();
        let mut out = LaurentTail {
            start: s,
            coeffs,
            truncation: t,
        };
        out.normalize();
        out
    }

    pub fn add(&self, o: &Self) -> Self {
        self.combine(o, true)
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.combine(o, false)
    }

    pub fn scale(&self, c: &Rational) -> Self {
        let mut out = LaurentTail {
            start: self.start,
            coeffs: self.coeffs.iter().map(|x| x * c).collect(),
            truncation: self.truncation,
        };
        out.normalize();
        out
    }

    /// Multiply by `z^k` (exponents of `1/z` decrease by `k`).
    pub fn mul_z_pow(&self, k: i64) -> Self {
        LaurentTail {
            start: self.start - k,
            coeffs: self.coeffs.clone(),
            truncation: self.truncation - k,
        }
    }

    /// Product with a polynomial in `z`; the truncation drops by `deg p`.
    pub fn mul_poly(&self, p: &RationalPoly) -> Self {
        let Some(d) = p.degree() else {
            return Self::zero(self.truncation);
        };
        let t = self.truncation - d as i64;
        if self.coeffs.is_empty() {
            return Self::zero(t);
        }
        let s = self.start - d as i64;
        let len = (t - s).max(0) as usize;
        let mut coeffs = vec![Rational::zero(); len];
        for (j, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let e = self.start + j as i64;
            for (k, pk) in p.coeffs().iter().enumerate() {
                let ee = e - k as i64;
                if ee >= t || pk.is_zero() {
                    continue;
                }
                coeffs[(ee - s) as usize] += c * pk;
            }
        }
        let mut out = LaurentTail {
            start: s,
            coeffs,
            truncation: t,
        };
        out.normalize();
        out
    }

    /// Polynomial part (exponents `<= 0`), as a polynomial in `z`.
    pub fn polynomial_part(&self) -> RationalPoly {
        if self.start > 0 {
            return RationalPoly::zero();
        }
        let d = (-self.start) as usize;
        RationalPoly::from_coeffs(
            (0..=d)
                .map(|k| self.coeff(-(k as i64)).unwrap_or_else(|_| Rational::zero()))
                .collect(),
        )
    }

    /// Principal part (exponents `>= 1`), truncation unchanged.
    pub fn principal_part(&self) -> Self {
        let mut out = LaurentTail {
            start: self.start.max(1).min(self.truncation),
            coeffs: (self.start.max(1)..self.truncation)
                .map(|e| self.coeff(e).unwrap())
                .collect(),
            truncation: self.truncation,
        };
        out.normalize();
        out
    }
}

#[derive(Serialize, Deserialize)]
struct TailRepr {
    order: Option<i64>,
    start: i64,
    truncation: i64,
    #[serde(with = "crate::report::rat_vec")]
    coefficients: Vec<Rational>,
}

impl Serialize for LaurentTail {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        TailRepr {
            order: self.ord().ok(),
            start: self.start,
            truncation: self.truncation,
            coefficients: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for LaurentTail {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let r = TailRepr::deserialize(d)?;
        if r.start + r.coefficients.len() as i64 != r.truncation {
            return Err(serde::de::Error::custom(
                "tail coefficients do not fill the window up to the truncation",
            ));
        }
        let t = LaurentTail::new(r.start, r.coefficients);
        if t.ord().ok() != r.order {
            return Err(serde::de::Error::custom("tail order does not match its coefficients"));
        }
        Ok(t)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    #[test]
    fn order_bookkeeping() {
        let t = LaurentTail::new(0, vec![rat(0), rat(0), rat(3), rat(0)]);
        assert_eq!(t.ord().unwrap(), 2);
        assert_eq!(t.truncation(), 4);
        assert!(t.ord_at_least(2).unwrap());
        assert!(!t.ord_at_least(3).unwrap());
        assert!(t.coeff(4).is_err());
        let z = LaurentTail::zero(5);
        assert!(z.ord().is_err());
        assert!(z.ord_at_least(5).unwrap());
        assert!(z.ord_at_least(6).is_err());
    }

    #[test]
    fn poly_products() {
        // 1/z times z - 1 = 1 - 1/z.
        let f = LaurentTail::new(1, vec![rat(1), rat(0), rat(0), rat(0)]);
        let p = RationalPoly::from_ints(&[-1, 1]);
        let g = f.mul_poly(&p);
        assert_eq!(g.start(), 0);
        assert_eq!(g.truncation(), 4);
        assert_eq!(g.coeff(0).unwrap(), rat(1));
        assert_eq!(g.coeff(1).unwrap(), rat(-1));
        assert_eq!(g.coeff(2).unwrap(), rat(0));
        assert_eq!(g.polynomial_part(), RationalPoly::one());
        assert_eq!(g.principal_part().ord().unwrap(), 1);
        let h = LaurentTail::from_poly(&p, 3);
        assert_eq!(h.sub(&h).ord_at_least(3).unwrap(), true);
    }
}
