use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::arith::fmt_rational;
use crate::Rational;

/// Dense univariate polynomial over `Q`, trailing zeros stripped.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct RationalPoly {
    coeffs: Vec<Rational>,
}

impl RationalPoly {
    pub fn zero() -> Self {
        RationalPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(Rational::one())
    }

    pub fn constant(c: Rational) -> Self {
        Self::from_coeffs(vec![c])
    }

    /// `c t^k`.
    pub fn monomial(k: usize, c: Rational) -> Self {
        let mut v = vec![Rational::zero(); k + 1];
        v[k] = c;
        Self::from_coeffs(v)
    }

    /// `t - alpha`.
    pub fn linear_root(alpha: &Rational) -> Self {
        Self::from_coeffs(vec![-alpha.clone(), Rational::one()])
    }

    pub fn from_coeffs(mut coeffs: Vec<Rational>) -> Self {
        while coeffs.last().is_some_and(|c| c.is_zero()) {
            coeffs.pop();
        }
        RationalPoly { coeffs }
    }

    pub fn from_ints(cs: &[i64]) -> Self {
        Self::from_coeffs(cs.iter().map(|&c| Rational::from_integer(c.into())).collect())
    }

    /// Monic polynomial `prod (t - r)` over the given roots.
    pub fn from_roots(roots: &[Rational]) -> Self {
        roots
            .iter()
            .fold(Self::one(), |acc, r| &acc * &Self::linear_root(r))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<Rational> {
        self.coeffs
    }

    /// Degree, `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Coefficient of `t^k`, zero beyond the degree.
    pub fn coeff(&self, k: usize) -> Rational {
        self.coeffs.get(k).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeff_ref(&self, k: usize) -> Option<&Rational> {
        self.coeffs.get(k)
    }

    pub fn leading_coeff(&self) -> Rational {
        self.coeffs.last().cloned().unwrap_or_else(Rational::zero)
    }

    /// Replace the coefficient of `t^k`.
    pub fn set_coeff(&mut self, k: usize, c: Rational) {
        if self.coeffs.len() <= k {
            self.coeffs.resize(k + 1, Rational::zero());
        }
        self.coeffs[k] = c;
        let v = std::mem::take(&mut self.coeffs);
        *self = Self::from_coeffs(v);
    }

    /// Apply `f(k, c_k)` to every coefficient.
    pub fn map_coeffs<F: FnMut(usize, &Rational) -> Rational>(&self, mut f: F) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .map(|(k, c)| if c.is_zero() { c.clone() } else { f(k, c) })
                .collect(),
        )
    }

    pub fn scale(&self, c: &Rational) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self::from_coeffs(self.coeffs.iter().map(|x| x * c).collect())
    }

    /// Multiply by `t^k`.
    pub fn shift(&self, k: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut v = vec![Rational::zero(); k];
        v.extend(self.coeffs.iter().cloned());
        RationalPoly { coeffs: v }
    }

    pub fn pow(&self, e: usize) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Horner evaluation.
    pub fn eval(&self, x: &Rational) -> Rational {
        if x.is_zero() {
            return self.coeff(0);
        }
        if x.is_integer() {
            return self.eval_integer(x.numer());
        }
        let mut acc = Rational::zero();
        for c in self.coeffs.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Evaluation at an integer after clearing denominators once.
    pub fn eval_integer(&self, x: &BigInt) -> Rational {
        let (num, den) = self.integer_form();
        let mut acc = BigInt::zero();
        for c in num.iter().rev() {
            acc = acc * x + c;
        }
        Rational::new(acc, den)
    }

    /// `(N, L)` with `L` the lcm of denominators and `N = L * self` integral.
    pub fn integer_form(&self) -> (Vec<BigInt>, BigInt) {
        let l = self
            .coeffs
            .iter()
            .fold(BigInt::one(), |acc, c| acc.lcm(c.denom()));
        let num = self
            .coeffs
            .iter()
            .map(|c| c.numer() * (&l / c.denom()))
            .collect();
        (num, l)
    }

    /// Formal derivative.
    pub fn derivative(&self) -> Self {
        Self::from_coeffs(
            self.coeffs
                .iter()
                .enumerate()
                .skip(1)
                .map(|(k, c)| c * Rational::from_integer(k.into()))
                .collect(),
        )
    }

    /// Division by `t - alpha`: returns `(quotient, remainder)`.
    pub fn div_linear(&self, alpha: &Rational) -> (Self, Rational) {
        if self.is_zero() {
            return (Self::zero(), Rational::zero());
        }
        let d = self.coeffs.len() - 1;
        let mut q = vec![Rational::zero(); d];
        let mut acc = Rational::zero();
        for k in (0..=d).rev() {
            acc = acc * alpha + &self.coeffs[k];
            if k > 0 {
                q[k - 1] = acc.clone();
            }
        }
        (Self::from_coeffs(q), acc)
    }

    /// Largest `j` with `(t - alpha)^j` dividing `self`; `None` for zero.
    pub fn root_multiplicity(&self, alpha: &Rational) -> Option<usize> {
        if self.is_zero() {
            return None;
        }
        let mut p = self.clone();
        let mut j = 0;
        loop {
            let (q, r) = p.div_linear(alpha);
            if !r.is_zero() {
                return Some(j);
            }
            p = q;
            j += 1;
        }
    }

    /// Euclidean division by a nonzero polynomial.
    pub fn div_rem(&self, d: &Self) -> (Self, Self) {
        assert!(!d.is_zero(), "division by the zero polynomial");
        let dd = d.degree().unwrap();
        let lc = d.leading_coeff();
        let mut r = self.coeffs.clone();
        if r.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut q = vec![Rational::zero(); r.len() - dd];
        for k in (dd..r.len()).rev() {
            if r[k].is_zero() {
                continue;
            }
            let f = &r[k] / &lc;
            for (j, c) in d.coeffs.iter().enumerate() {
                let t = &f * c;
                r[k - dd + j] -= t;
            }
            q[k - dd] = f;
        }
        (Self::from_coeffs(q), Self::from_coeffs(r))
    }

    /// Substitute `t -> t + h`.
    pub fn taylor_shift(&self, h: &Rational) -> Self {
        let mut acc = Self::zero();
        let x = Self::from_coeffs(vec![h.clone(), Rational::one()]);
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * &x) + &Self::constant(c.clone());
        }
        acc
    }
}

impl fmt::Display for RationalPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "{}", fmt_rational(c))?,
                1 => write!(f, "({})*t", fmt_rational(c))?,
                _ => write!(f, "({})*t^{k}", fmt_rational(c))?,
            }
        }
        Ok(())
    }
}

impl Add for &RationalPoly {
    type Output = RationalPoly;
    fn add(self, o: &RationalPoly) -> RationalPoly {
        let n = self.coeffs.len().max(o.coeffs.len());
        RationalPoly::from_coeffs(
            (0..n)
                .map(|k| match (self.coeffs.get(k), o.coeffs.get(k)) {
                    (Some(a), Some(b)) => a + b,
                    (Some(a), None) => a.clone(),
                    (None, Some(b)) => b.clone(),
                    (None, None) => unreachable!(),
                })
                .collect(),
        )
    }
}

impl Sub for &RationalPoly {
    type Output = RationalPoly;
    fn sub(self, o: &RationalPoly) -> RationalPoly {
        self + &(-o)
    }
}

impl Neg for &RationalPoly {
    type Output = RationalPoly;
    fn neg(self) -> RationalPoly {
        RationalPoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &RationalPoly {
    type Output = RationalPoly;
    fn mul(self, o: &RationalPoly) -> RationalPoly {
        if self.is_zero() || o.is_zero() {
            return RationalPoly::zero();
        }
        let mut v = vec![Rational::zero(); self.coeffs.len() + o.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.coeffs.iter().enumerate() {
                if !b.is_zero() {
                    v[i + j] += a * b;
                }
            }
        }
        RationalPoly::from_coeffs(v)
    }
}

macro_rules! owned_ops {
    ($tr:ident, $m:ident) => {
        impl $tr for RationalPoly {
            type Output = RationalPoly;
            fn $m(self, o: RationalPoly) -> RationalPoly {
                (&self).$m(&o)
            }
        }
    };
}
owned_ops!(Add, add);
owned_ops!(Sub, sub);
owned_ops!(Mul, mul);

#[derive(Serialize, Deserialize)]
struct PolyRepr {
    degree: Option<usize>,
    #[serde(with = "crate::report::rat_vec")]
    coefficients: Vec<Rational>,
}

impl Serialize for RationalPoly {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        PolyRepr {
            degree: self.degree(),
            coefficients: self.coeffs.clone(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for RationalPoly {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let r = PolyRepr::deserialize(d)?;
        let p = RationalPoly::from_coeffs(r.coefficients);
        if p.degree() != r.degree {
            return Err(serde::de::Error::custom(
                "polynomial degree does not match its coefficients",
            ));
        }
        Ok(p)
    }
}
