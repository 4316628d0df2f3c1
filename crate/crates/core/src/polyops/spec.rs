use std::sync::RwLock;

use num_traits::{One, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::RationalPoly;
use crate::arith::{fmt_rational, is_nonpositive_integer, is_positive_integer, rat};
use crate::{Error, Rational, Result};

/// Where the root vectors of a [`HypergeometricSpec`] came from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecOrigin {
    /// Parameters `a` (length `r`) and `b` (length `r-1`) of `rF(r-1)`.
    Hypergeometric {
        #[serde(with = "crate::report::rat_vec")]
        a: Vec<Rational>,
        #[serde(with = "crate::report::rat_vec")]
        b: Vec<Rational>,
    },
    /// `A = B = (X + x + 1)^r`: the Lerch functions `Phi_s(x, z)`.
    Lerch {
        #[serde(with = "crate::report::rat")]
        x: Rational,
    },
    /// Roots given directly.
    Roots,
}

/// One hypothesis on the instance and whether it holds.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct HypothesisCheck {
    pub name: String,
    pub passed: bool,
    pub detail: String,
}

/// The instance: `A(X) = prod (X + eta_i)`, `B(X) = prod (X + zeta_j)` and the
/// sequence `c_{k+1} = c_k A(k) / B(k+1)`.
pub struct HypergeometricSpec {
    origin: SpecOrigin,
    eta: Vec<Rational>,
    zeta: Vec<Rational>,
    gamma: Vec<Rational>,
    c0: Rational,
    c_cache: RwLock<Vec<Rational>>,
}

impl Clone for HypergeometricSpec {
    fn clone(&self) -> Self {
        HypergeometricSpec {
            origin: self.origin.clone(),
            eta: self.eta.clone(),
            zeta: self.zeta.clone(),
            gamma: self.gamma.clone(),
            c0: self.c0.clone(),
            c_cache: RwLock::new(self.c_cache.read().unwrap().clone()),
        }
    }
}

impl std::fmt::Debug for HypergeometricSpec {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("HypergeometricSpec")
            .field("origin", &self.origin)
            .field("eta", &self.eta)
            .field("zeta", &self.zeta)
            .field("c0", &self.c0)
            .finish()
    }
}

impl PartialEq for HypergeometricSpec {
    fn eq(&self, o: &Self) -> bool {
        self.origin == o.origin && self.eta == o.eta && self.zeta == o.zeta && self.c0 == o.c0
    }
}

/// Group equal values contiguously in order of first occurrence, with the
/// group equal to 1 moved to the end.
pub fn group_values(values: &[Rational]) -> Vec<Rational> {
    let one = Rational::one();
    let mut order: Vec<Rational> = Vec::new();
    for v in values {
        if *v != one && !order.contains(v) {
            order.push(v.clone());
        }
    }
    let mut out = Vec::with_capacity(values.len());
    for g in &order {
        out.extend(values.iter().filter(|v| *v == g).cloned());
    }
    out.extend(values.iter().filter(|v| **v == one).cloned());
    out
}

impl HypergeometricSpec {
    /// The `rF(r-1)` instance. `c0 = None` selects `prod a / prod b`.
    pub fn from_parameters(a: &[Rational], b: &[Rational], c0: Option<Rational>) -> Result<Self> {
        let r = a.len();
        if r == 0 {
            return Err(Error::InvalidInput("need at least one parameter a".into()));
        }
        if b.len() + 1 != r {
            return Err(Error::InvalidInput(format!(
                "expected {} lower parameters b, got {}",
                r - 1,
                b.len()
            )));
        }
        if let Some(x) = a.iter().find(|x| x.is_zero()) {
            return Err(Error::InvalidInput(format!("a = {} vanishes", fmt_rational(x))));
        }
        if let Some(x) = b.iter().find(|x| is_nonpositive_integer(x)) {
            return Err(Error::InvalidInput(format!(
                "b = {} is a non-positive integer",
                fmt_rational(x)
            )));
        }
        let b = group_values(b);
        let one = Rational::one();
        let eta: Vec<Rational> = a.iter().map(|x| x + &one).collect();
        let mut zeta = b.clone();
        zeta.push(one);
        let c0 = match c0 {
            Some(c) => c,
            None => {
                a.iter().fold(Rational::one(), |acc, x| acc * x)
                    / b.iter().fold(Rational::one(), |acc, x| acc * x)
            }
        };
        Self::assemble(
            SpecOrigin::Hypergeometric {
                a: a.to_vec(),
                b,
            },
            eta,
            zeta,
            c0,
        )
    }

    /// Arbitrary roots. `zeta` is regrouped canonically.
    pub fn from_roots(eta: &[Rational], zeta: &[Rational], c0: Rational) -> Result<Self> {
        if eta.len() != zeta.len() || eta.is_empty() {
            return Err(Error::InvalidInput(
                "eta and zeta must be nonempty and of equal length".into(),
            ));
        }
        Self::assemble(SpecOrigin::Roots, eta.to_vec(), group_values(zeta), c0)
    }

    /// `A = B = (X + x + 1)^r`, `c_k = 1/(k + x + 1)^r`.
    pub fn lerch(x: &Rational, r: usize) -> Result<Self> {
        if r == 0 {
            return Err(Error::InvalidInput("order r must be positive".into()));
        }
        let e = x + Rational::one();
        let c0 = Rational::one() / pow_rat(&e, r);
        Self::assemble(
            SpecOrigin::Lerch { x: x.clone() },
            vec![e.clone(); r],
            vec![e; r],
            c0,
        )
    }

    fn assemble(origin: SpecOrigin, eta: Vec<Rational>, zeta: Vec<Rational>, c0: Rational) -> Result<Self> {
        for x in eta.iter().chain(zeta.iter()) {
            if is_nonpositive_integer(x) {
                return Err(Error::Hypothesis(format!(
                    "A(k)B(k) vanishes at k = {}: root {} is a non-positive integer",
                    fmt_rational(&-x),
                    fmt_rational(x)
                )));
            }
        }
        if c0.is_zero() {
            return Err(Error::InvalidInput("c0 must be nonzero".into()));
        }
        let r = zeta.len();
        let gamma = (0..r).map(|j| zeta[r - 1 - j].clone()).collect();
        Ok(HypergeometricSpec {
            origin,
            eta,
            zeta,
            gamma,
            c_cache: RwLock::new(vec![c0.clone()]),
            c0,
        })
    }

    pub fn origin(&self) -> &SpecOrigin {
        &self.origin
    }

    /// Order `r`.
    pub fn r(&self) -> usize {
        self.zeta.len()
    }

    pub fn eta(&self) -> &[Rational] {
        &self.eta
    }

    pub fn zeta(&self) -> &[Rational] {
        &self.zeta
    }

    /// `gamma_1..gamma_r` with `gamma_j = zeta_{r+1-j}` (stored 0-based).
    pub fn gamma(&self) -> &[Rational] {
        &self.gamma
    }

    pub fn c0(&self) -> &Rational {
        &self.c0
    }

    /// `A(x)`.
    pub fn a_poly_at(&self, x: &Rational) -> Rational {
        self.eta.iter().fold(Rational::one(), |acc, e| acc * (x + e))
    }

    /// `B(x)`.
    pub fn b_poly_at(&self, x: &Rational) -> Rational {
        self.zeta.iter().fold(Rational::one(), |acc, z| acc * (x + z))
    }

    /// `A` as a polynomial in `X`.
    pub fn a_poly(&self) -> RationalPoly {
        RationalPoly::from_roots(&self.eta.iter().map(|e| -e.clone()).collect::<Vec<_>>())
    }

    /// `B` as a polynomial in `X`.
    pub fn b_poly(&self) -> RationalPoly {
        RationalPoly::from_roots(&self.zeta.iter().map(|z| -z.clone()).collect::<Vec<_>>())
    }

    /// `c_k`, memoized.
    pub fn c(&self, k: usize) -> Rational {
        {
            let cache = self.c_cache.read().unwrap();
            if k < cache.len() {
                return cache[k].clone();
            }
        }
        self.extend_cache(k);
        self.c_cache.read().unwrap()[k].clone()
    }

    /// `c_0..=c_k`.
    pub fn c_table(&self, k: usize) -> Vec<Rational> {
        self.extend_cache(k);
        self.c_cache.read().unwrap()[..=k].to_vec()
    }

    fn extend_cache(&self, k: usize) {
        if self.c_cache.read().unwrap().len() > k {
            return;
        }
        let mut cache = self.c_cache.write().unwrap();
        while cache.len() <= k {
            let j = cache.len() - 1;
            let next = &cache[j] * self.a_poly_at(&rat(j as i64)) / self.b_poly_at(&rat(j as i64 + 1));
            cache.push(next);
        }
    }

    /// `(k + gamma_1) ... (k + gamma_s)`, 1 for `s = 0`.
    pub fn gamma_prod(&self, k: usize, s: usize) -> Rational {
        let kk = rat(k as i64);
        self.gamma[..s]
            .iter()
            .fold(Rational::one(), |acc, g| acc * (&kk + g))
    }

    /// All hypotheses on the instance.
    pub fn hypothesis_flags(&self) -> Vec<HypothesisCheck> {
        let mut out = Vec::new();
        let ab_bad: Vec<String> = self
            .eta
            .iter()
            .chain(self.zeta.iter())
            .filter(|x| is_nonpositive_integer(x))
            .map(fmt_rational)
            .collect();
        out.push(HypothesisCheck {
            name: "A(k)B(k) != 0 for k >= 0".into(),
            passed: ab_bad.is_empty(),
            detail: if ab_bad.is_empty() {
                "no root is a non-positive integer".into()
            } else {
                format!("non-positive integer roots: {}", ab_bad.join(", "))
            },
        });
        if let SpecOrigin::Hypergeometric { a, b } = &self.origin {
            let bad: Vec<String> = a
                .iter()
                .filter(|x| is_positive_integer(x))
                .map(fmt_rational)
                .collect();
            out.push(HypothesisCheck {
                name: "a_k not in Z_{>0}".into(),
                passed: bad.is_empty(),
                detail: if bad.is_empty() {
                    "ok".into()
                } else {
                    format!("positive integer a: {}", bad.join(", "))
                },
            });
            let one = Rational::one();
            let mut bad = Vec::new();
            for x in a {
                for y in b {
                    let d = x + &one - y;
                    if is_positive_integer(&d) {
                        bad.push(format!("a={} b={}", fmt_rational(x), fmt_rational(y)));
                    }
                }
            }
            out.push(HypothesisCheck {
                name: "a_k+1-b_j not in Z_{>0}".into(),
                passed: bad.is_empty(),
                detail: if bad.is_empty() { "ok".into() } else { bad.join("; ") },
            });
        }
        let mut bad = Vec::new();
        for e in &self.eta {
            for z in &self.zeta {
                if is_positive_integer(&(e - z)) {
                    bad.push(format!("eta={} zeta={}", fmt_rational(e), fmt_rational(z)));
                }
            }
        }
        out.push(HypothesisCheck {
            name: "eta_i-zeta_j not in Z_{>0}".into(),
            passed: bad.is_empty(),
            detail: if bad.is_empty() { "ok".into() } else { bad.join("; ") },
        });
        out
    }

    /// `true` when every hypothesis holds.
    pub fn hypotheses_hold(&self) -> bool {
        self.hypothesis_flags().iter().all(|h| h.passed)
    }

    /// First failing hypothesis as an error.
    pub fn require_hypotheses(&self) -> Result<()> {
        match self.hypothesis_flags().into_iter().find(|h| !h.passed) {
            None => Ok(()),
            Some(h) => Err(Error::Hypothesis(format!("{} ({})", h.name, h.detail))),
        }
    }
}

fn pow_rat(x: &Rational, e: usize) -> Rational {
    (0..e).fold(Rational::one(), |acc, _| acc * x)
}

#[derive(Serialize, Deserialize)]
struct SpecRepr {
    origin: SpecOrigin,
    #[serde(with = "crate::report::rat_vec")]
    eta: Vec<Rational>,
    #[serde(with = "crate::report::rat_vec")]
    zeta: Vec<Rational>,
    #[serde(with = "crate::report::rat_vec")]
    gamma: Vec<Rational>,
    #[serde(with = "crate::report::rat")]
    c0: Rational,
    r: usize,
}

impl Serialize for HypergeometricSpec {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        SpecRepr {
            origin: self.origin.clone(),
            eta: self.eta.clone(),
            zeta: self.zeta.clone(),
            gamma: self.gamma.clone(),
            c0: self.c0.clone(),
            r: self.r(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for HypergeometricSpec {
    fn deserialize<D: Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let r = SpecRepr::deserialize(d)?;
        let spec = match &r.origin {
            SpecOrigin::Hypergeometric { a, b } => {
                HypergeometricSpec::from_parameters(a, b, Some(r.c0.clone()))
            }
            SpecOrigin::Lerch { x } => HypergeometricSpec::lerch(x, r.zeta.len()).and_then(|s| {
                if s.c0 == r.c0 {
                    Ok(s)
                } else {
                    Err(Error::InvalidInput("Lerch seed c0 mismatch".into()))
                }
            }),
            SpecOrigin::Roots => HypergeometricSpec::from_roots(&r.eta, &r.zeta, r.c0.clone()),
        }
        .map_err(D::Error::custom)?;
        if spec.eta != r.eta || spec.zeta != r.zeta || spec.gamma != r.gamma {
            return Err(D::Error::custom("stored roots do not match the parameters"));
        }
        Ok(spec)
    }
}
