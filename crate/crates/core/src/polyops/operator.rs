use std::fmt;
use std::sync::Arc;

use num_traits::{One, Zero};

use super::{HypergeometricSpec, LaurentTail, RationalPoly};
use crate::arith::{fmt_rational, rat};
use crate::{Error, Rational, Result};

/// Symbolic description of a diagonal operator.
#[derive(Clone, Debug, PartialEq)]
pub enum OperatorTag {
    /// `theta_t + zeta`.
    ThetaShift(Rational),
    /// `H(theta_t + shift)`.
    HTheta { h: RationalPoly, shift: Rational },
    /// `H(theta_t + shift)^{-1}`.
    HThetaInverse { h: RationalPoly, shift: Rational },
    /// `t^k -> t^k / c_k`.
    Tc,
    /// `t^k -> c_k t^k`.
    TcInverse,
    /// `t^k -> (k + zeta + 1)_n / n! t^k`.
    SnZeta { n: usize, zeta: Rational },
    Composite(Vec<OperatorTag>),
}

impl fmt::Display for OperatorTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OperatorTag::ThetaShift(z) => write!(f, "(theta+{})", fmt_rational(z)),
            OperatorTag::HTheta { h, shift } => write!(f, "H(theta+{})[H={h}]", fmt_rational(shift)),
            OperatorTag::HThetaInverse { h, shift } => {
                write!(f, "H(theta+{})^-1[H={h}]", fmt_rational(shift))
            }
            OperatorTag::Tc => write!(f, "T_c"),
            OperatorTag::TcInverse => write!(f, "T_c^-1"),
            OperatorTag::SnZeta { n, zeta } => write!(f, "S_{{{n},{}}}", fmt_rational(zeta)),
            OperatorTag::Composite(v) => {
                let parts: Vec<String> = v.iter().map(|t| t.to_string()).collect();
                write!(f, "{}", parts.join(" o "))
            }
        }
    }
}

type Eigen = Arc<dyn Fn(usize) -> Rational + Send + Sync>;

/// An endomorphism of `Q[t]` acting diagonally on monomials.
#[derive(Clone)]
pub struct DiagonalOperator {
    eigen: Eigen,
    tag: OperatorTag,
}

impl fmt::Debug for DiagonalOperator {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DiagonalOperator({})", self.tag)
    }
}

impl DiagonalOperator {
    pub fn new<F>(tag: OperatorTag, eigen: F) -> Self
    where
        F: Fn(usize) -> Rational + Send + Sync + 'static,
    {
        DiagonalOperator {
            eigen: Arc::new(eigen),
            tag,
        }
    }

    pub fn tag(&self) -> &OperatorTag {
        &self.tag
    }

    pub fn eigenvalue(&self, k: usize) -> Rational {
        (self.eigen)(k)
    }

    /// `theta_t + zeta`.
    pub fn theta_plus(zeta: Rational) -> Self {
        let z = zeta.clone();
        Self::new(OperatorTag::ThetaShift(zeta), move |k| rat(k as i64) + &z)
    }

    /// `H(theta_t + shift)`.
    pub fn h_theta(h: RationalPoly, shift: Rational) -> Self {
        let (hh, ss) = (h.clone(), shift.clone());
        Self::new(OperatorTag::HTheta { h, shift }, move |k| hh.eval(&(rat(k as i64) + &ss)))
    }

    /// `H(theta_t + shift)^{-1}`; singular degrees surface in [`Self::apply`].
    pub fn h_theta_inverse(h: RationalPoly, shift: Rational) -> Self {
        let (hh, ss) = (h.clone(), shift.clone());
        Self::new(OperatorTag::HThetaInverse { h, shift }, move |k| {
            let v = hh.eval(&(rat(k as i64) + &ss));
            if v.is_zero() {
                v
            } else {
                v.recip()
            }
        })
    }

    /// `T_c` or its inverse.
    pub fn t_c(spec: &HypergeometricSpec, direction: Direction) -> Self {
        let s = spec.clone();
        match direction {
            Direction::Forward => Self::new(OperatorTag::Tc, move |k| s.c(k).recip()),
            Direction::Inverse => Self::new(OperatorTag::TcInverse, move |k| s.c(k)),
        }
    }

    /// `S_{n,zeta}: t^k -> (k + zeta + 1)_n / n! t^k`.
    pub fn s_n_zeta(n: usize, zeta: Rational) -> Self {
        let z = zeta.clone();
        Self::new(OperatorTag::SnZeta { n, zeta }, move |k| {
            crate::arith::pochhammer(&(rat(k as i64) + &z + Rational::one()), n)
                / Rational::from_integer(crate::arith::factorial(n))
        })
    }

    /// `self o other`.
    pub fn compose(&self, other: &DiagonalOperator) -> Self {
        let (a, b) = (self.eigen.clone(), other.eigen.clone());
        let mut tags = match &self.tag {
            OperatorTag::Composite(v) => v.clone(),
            t => vec![t.clone()],
        };
        match &other.tag {
            OperatorTag::Composite(v) => tags.extend(v.iter().cloned()),
            t => tags.push(t.clone()),
        }
        Self::new(OperatorTag::Composite(tags), move |k| a(k) * b(k))
    }

    /// Apply to a polynomial. A zero eigenvalue is only an error for inverse
    /// factors met on a nonzero coefficient.
    pub fn apply(&self, p: &RationalPoly) -> Result<RationalPoly> {
        let mut out = Vec::with_capacity(p.coeffs().len());
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                out.push(Rational::zero());
                continue;
            }
            let e = self.eigenvalue(k);
            if e.is_zero() && self.has_inverse_factor() {
                return Err(Error::SingularEigenvalue { degree: k });
            }
            out.push(c * e);
        }
        Ok(RationalPoly::from_coeffs(out))
    }

    /// Apply the inverse operator.
    pub fn apply_inverse(&self, p: &RationalPoly) -> Result<RationalPoly> {
        let mut out = Vec::with_capacity(p.coeffs().len());
        for (k, c) in p.coeffs().iter().enumerate() {
            if c.is_zero() {
                out.push(Rational::zero());
                continue;
            }
            let e = self.eigenvalue(k);
            if e.is_zero() {
                return Err(Error::SingularEigenvalue { degree: k });
            }
            out.push(c / e);
        }
        Ok(RationalPoly::from_coeffs(out))
    }

    fn has_inverse_factor(&self) -> bool {
        fn walk(t: &OperatorTag) -> bool {
            match t {
                OperatorTag::HThetaInverse { .. } => true,
                OperatorTag::Composite(v) => v.iter().any(walk),
                _ => false,
            }
        }
        walk(&self.tag)
    }
}

/// Direction of `T_c`.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Direction {
    Forward,
    Inverse,
}

/// `H(theta_t + shift)(P)`: the `t^k` coefficient is multiplied by `H(k + shift)`.
pub fn apply_h_theta(h: &RationalPoly, p: &RationalPoly, shift: &Rational) -> RationalPoly {
    p.map_coeffs(|k, c| c * h.eval(&(rat(k as i64) + shift)))
}

/// Coefficientwise division by `H(k + shift)`.
pub fn apply_h_theta_inverse(h: &RationalPoly, p: &RationalPoly, shift: &Rational) -> Result<RationalPoly> {
    DiagonalOperator::h_theta(h.clone(), shift.clone()).apply_inverse(p)
}

/// `T_c` in either direction.
pub fn t_c(spec: &HypergeometricSpec, p: &RationalPoly, direction: Direction) -> RationalPoly {
    let Some(d) = p.degree() else {
        return RationalPoly::zero();
    };
    let c = spec.c_table(d);
    p.map_coeffs(|k, x| match direction {
        Direction::Forward => x / &c[k],
        Direction::Inverse => x * &c[k],
    })
}

/// `psi_{i,s}(t^b)` for `b < len`: `(b+gamma_1)...(b+gamma_s) c_b alpha^{b+1}`.
pub fn psi_weights(spec: &HypergeometricSpec, alpha: &Rational, s: usize, len: usize) -> Vec<Rational> {
    if len == 0 {
        return Vec::new();
    }
    let c = spec.c_table(len - 1);
    let mut apow = alpha.clone();
    let mut out = Vec::with_capacity(len);
    for (b, cb) in c.iter().enumerate() {
        out.push(spec.gamma_prod(b, s) * cb * &apow);
        apow *= alpha;
    }
    out
}

/// `psi_{i,s}(P)` with `alpha = alphas[i]` (0-based `i`).
pub fn psi(spec: &HypergeometricSpec, alphas: &[Rational], i: usize, s: usize, p: &RationalPoly) -> Rational {
    assert!(s < spec.r(), "level s out of range");
    let w = psi_weights(spec, &alphas[i], s, p.coeffs().len());
    p.coeffs()
        .iter()
        .zip(w.iter())
        .fold(Rational::zero(), |acc, (c, w)| acc + c * w)
}

/// `phi_{zeta,s}(P) = sum_k c_k / (k + zeta)^s`.
pub fn phi_zeta_s(zeta: &Rational, s: usize, p: &RationalPoly) -> Result<Rational> {
    let mut acc = Rational::zero();
    for (k, c) in p.coeffs().iter().enumerate() {
        if c.is_zero() {
            continue;
        }
        let x = rat(k as i64) + zeta;
        if x.is_zero() && s > 0 {
            return Err(Error::Pole { k: k as i64 });
        }
        let mut d = Rational::one();
        for _ in 0..s {
            d *= &x;
        }
        acc += c / d;
    }
    Ok(acc)
}

/// `F_s(alpha/z) = sum_k (k+gamma_1)...(k+gamma_s) c_k alpha^{k+1} z^{-(k+1)}`
/// known up to exponent `truncation` (exclusive).
pub fn expand_f_s(spec: &HypergeometricSpec, alpha: &Rational, s: usize, truncation: usize) -> LaurentTail {
    if truncation <= 1 {
        return LaurentTail::zero(truncation as i64);
    }
    let w = psi_weights(spec, alpha, s, truncation - 1);
    LaurentTail::new(1, w)
}
