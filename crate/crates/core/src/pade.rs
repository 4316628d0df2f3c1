//! Explicit type-II Padé approximants of `F_s(alpha_i / z)`, their
//! remainders, the weight/degree contract and a null-space solver used as an
//! independent oracle.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, fmt_rational, rat};
use crate::linalg;
use crate::polyops::{expand_f_s, psi_weights, HypergeometricSpec, LaurentTail, RationalPoly};
use crate::{Error, Rational, Result};

/// The family `{P_l, P_{l,i,s}, R_{l,i,s}}` for fixed `(spec, alphas, n)`.
///
/// Indices are 0-based: `l` in `0..=rm`, `i` in `0..m`, `s` in `0..r`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PadeSystem {
    pub spec: HypergeometricSpec,
    #[serde(with = "crate::report::rat_vec")]
    pub alphas: Vec<Rational>,
    pub n: usize,
    pub truncation: usize,
    pub p: Vec<RationalPoly>,
    pub p_is: Vec<Vec<Vec<RationalPoly>>>,
    pub remainders: Vec<Vec<Vec<LaurentTail>>>,
}

impl PadeSystem {
    pub fn r(&self) -> usize {
        self.spec.r()
    }

    pub fn m(&self) -> usize {
        self.alphas.len()
    }

    /// `rm`.
    pub fn rm(&self) -> usize {
        self.r() * self.m()
    }

    /// The column vector `p_l = (P_l, P_{l,0,r-1}, .., P_{l,0,0}, P_{l,1,r-1}, ..)`.
    pub fn column(&self, l: usize) -> Vec<RationalPoly> {
        let mut v = vec![self.p[l].clone()];
        for i in 0..self.m() {
            for s in (0..self.r()).rev() {
                v.push(self.p_is[l][i][s].clone());
            }
        }
        v
    }
}

/// Default truncation `rm(n+1) + n + 5`.
pub fn default_truncation(r: usize, m: usize, n: usize) -> usize {
    r * m * (n + 1) + n + 5
}

/// Check that the points are nonzero and pairwise distinct.
pub fn validate_alphas(alphas: &[Rational]) -> Result<()> {
    if alphas.is_empty() {
        return Err(Error::InvalidInput("need at least one point alpha".into()));
    }
    for (j, a) in alphas.iter().enumerate() {
        if a.is_zero() {
            return Err(Error::InvalidInput("alpha must be nonzero".into()));
        }
        if alphas[..j].contains(a) {
            return Err(Error::InvalidInput(format!(
                "alpha = {} repeated",
                fmt_rational(a)
            )));
        }
    }
    Ok(())
}

/// `t^l prod_i (t - alpha_i)^{rn}`.
pub fn base_polynomial(alphas: &[Rational], r: usize, n: usize, l: usize) -> RationalPoly {
    let prod = alphas
        .iter()
        .fold(RationalPoly::one(), |acc, a| &acc * &RationalPoly::linear_root(a).pow(r * n));
    prod.shift(l)
}

/// `P_l(z) = [1/(n-1)!^r] Eval_z T_c prod_{j=1}^{n-1} B(theta_t + j) (t^l prod (t-alpha_i)^{rn})`.
pub fn build_p(spec: &HypergeometricSpec, alphas: &[Rational], n: usize, l: usize) -> Result<RationalPoly> {
    if n == 0 {
        return Err(Error::InvalidInput("weight n must be >= 1".into()));
    }
    validate_alphas(alphas)?;
    let r = spec.r();
    let base = base_polynomial(alphas, r, n, l);
    let d = base.degree().unwrap();
    let c = spec.c_table(d);
    let norm = Rational::from_integer(factorial(n - 1).pow(r as u32));
    Ok(base.map_coeffs(|k, h| {
        let mut e = Rational::one();
        for j in 1..n {
            e *= spec.b_poly_at(&rat((k + j) as i64));
        }
        h * e / (&c[k] * &norm)
    }))
}

/// `Q(z) = psi((P(z) - P(t)) / (z - t))` for the functional with weights `w_b = psi(t^b)`.
pub fn divided_difference_functional(p: &RationalPoly, w: &[Rational]) -> RationalPoly {
    let Some(d) = p.degree() else {
        return RationalPoly::zero();
    };
    let pc = p.coeffs();
    // (P(z) - P(t))/(z - t) = sum_a z^a sum_b p_{a+b+1} t^b
    RationalPoly::from_coeffs(
        (0..d)
            .map(|a| {
                (0..d - a).fold(Rational::zero(), |acc, b| {
                    let c = &pc[a + b + 1];
                    if c.is_zero() {
                        acc
                    } else {
                        acc + c * &w[b]
                    }
                })
            })
            .collect(),
    )
}

/// `psi_{i,s}((P(z) - P(t)) / (z - t))` for an arbitrary polynomial `P`.
pub fn p_is_from_poly(
    spec: &HypergeometricSpec,
    alphas: &[Rational],
    p: &RationalPoly,
    i: usize,
    s: usize,
) -> RationalPoly {
    let w = psi_weights(spec, &alphas[i], s, p.coeffs().len());
    divided_difference_functional(p, &w)
}

/// `P_{l,i,s}`.
pub fn build_p_is(
    spec: &HypergeometricSpec,
    alphas: &[Rational],
    n: usize,
    l: usize,
    i: usize,
    s: usize,
) -> Result<RationalPoly> {
    let p = build_p(spec, alphas, n, l)?;
    Ok(p_is_from_poly(spec, alphas, &p, i, s))
}

/// `psi_{i,s}(t^k P(t))` for `k` in `from..from+count`.
pub fn remainder_coefficients(
    spec: &HypergeometricSpec,
    alpha: &Rational,
    s: usize,
    p: &RationalPoly,
    from: usize,
    count: usize,
) -> Vec<Rational> {
    let len = p.coeffs().len();
    if len == 0 || count == 0 {
        return vec![Rational::zero(); count];
    }
    let w = psi_weights(spec, alpha, s, from + count + len);
    (from..from + count)
        .map(|k| {
            p.coeffs()
                .iter()
                .enumerate()
                .filter(|(_, c)| !c.is_zero())
                .fold(Rational::zero(), |acc, (d, c)| acc + c * &w[k + d])
        })
        .collect()
}

/// Remainder from the functional route: the `1/z^{k+1}` coefficient is `psi_{i,s}(t^k P_l)`.
pub fn remainder_of(
    spec: &HypergeometricSpec,
    alphas: &[Rational],
    p: &RationalPoly,
    i: usize,
    s: usize,
    truncation: usize,
) -> LaurentTail {
    if truncation <= 1 {
        return LaurentTail::zero(truncation as i64);
    }
    LaurentTail::new(1, remainder_coefficients(spec, &alphas[i], s, p, 0, truncation - 1))
}

/// Remainder from the series route: `P F_s(alpha_i/z) - P_{l,i,s}`.
pub fn remainder_series_route(
    spec: &HypergeometricSpec,
    alphas: &[Rational],
    p: &RationalPoly,
    p_is: &RationalPoly,
    i: usize,
    s: usize,
    truncation: usize,
) -> LaurentTail {
    let d = p.degree().unwrap_or(0);
    let f = expand_f_s(spec, &alphas[i], s, truncation + d);
    f.mul_poly(p)
        .sub(&LaurentTail::from_poly(p_is, truncation as i64))
        .truncate(truncation as i64)
}

/// `R_{l,i,s}` of a built system, to the requested truncation.
pub fn remainder(system: &PadeSystem, l: usize, i: usize, s: usize, truncation: usize) -> Result<LaurentTail> {
    if truncation <= system.n + 1 {
        return Err(Error::InvalidInput(format!(
            "truncation {truncation} must exceed n + 1 = {}",
            system.n + 1
        )));
    }
    Ok(remainder_of(&system.spec, &system.alphas, &system.p[l], i, s, truncation))
}

/// Build the whole family, in parallel over `l`.
pub fn build_system(
    spec: &HypergeometricSpec,
    alphas: &[Rational],
    n: usize,
    truncation: Option<usize>,
) -> Result<PadeSystem> {
    validate_alphas(alphas)?;
    if n == 0 {
        return Err(Error::InvalidInput("weight n must be >= 1".into()));
    }
    let (r, m) = (spec.r(), alphas.len());
    let rm = r * m;
    let truncation = truncation.unwrap_or_else(|| default_truncation(r, m, n));
    if truncation <= n + 1 {
        return Err(Error::InvalidInput(format!(
            "truncation {truncation} must exceed n + 1 = {}",
            n + 1
        )));
    }
    // warm the memo table once so the parallel section only reads
    spec.c_table(rm * n + rm + truncation + 2);
    let rows: Vec<(RationalPoly, Vec<Vec<RationalPoly>>, Vec<Vec<LaurentTail>>)> = (0..=rm)
        .into_par_iter()
        .map(|l| {
            let p = build_p(spec, alphas, n, l)?;
            let mut pis = Vec::with_capacity(m);
            let mut rs = Vec::with_capacity(m);
            for i in 0..m {
                let mut pi = Vec::with_capacity(r);
                let mut ri = Vec::with_capacity(r);
                for s in 0..r {
                    pi.push(p_is_from_poly(spec, alphas, &p, i, s));
                    ri.push(remainder_of(spec, alphas, &p, i, s, truncation));
                }
                pis.push(pi);
                rs.push(ri);
            }
            Ok((p, pis, rs))
        })
        .collect::<Result<_>>()?;
    let mut p = Vec::with_capacity(rm + 1);
    let mut p_is = Vec::with_capacity(rm + 1);
    let mut remainders = Vec::with_capacity(rm + 1);
    for (a, b, c) in rows {
        p.push(a);
        p_is.push(b);
        remainders.push(c);
    }
    Ok(PadeSystem {
        spec: spec.clone(),
        alphas: alphas.to_vec(),
        n,
        truncation,
        p,
        p_is,
        remainders,
    })
}

/// The polynomial whose vanishing at `alpha_i` gives `psi_{i,s}(t^k P_l) = 0`:
/// `prod_{j''<=s}(theta+gamma_j'') prod_{j'<=k} A(theta-j') prod_{j<=n-1-k} B(theta+j)`
/// applied to `t^{l+k} prod (t-alpha_i)^{rn}`.
pub fn key_vanishing_polynomial(
    spec: &HypergeometricSpec,
    alphas: &[Rational],
    n: usize,
    l: usize,
    k: usize,
    s: usize,
) -> RationalPoly {
    assert!(k < n);
    let base = base_polynomial(alphas, spec.r(), n, l + k);
    base.map_coeffs(|deg, h| {
        let x = rat(deg as i64);
        let mut e = Rational::one();
        for g in &spec.gamma()[..s] {
            e *= &x + g;
        }
        for j in 1..=k {
            e *= spec.a_poly_at(&(&x - rat(j as i64)));
        }
        for j in 1..n - k {
            e *= spec.b_poly_at(&(&x + rat(j as i64)));
        }
        h * e
    })
}

/// One verified property.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationCheck {
    pub property: String,
    pub anchor: String,
    pub l: Option<usize>,
    pub i: Option<usize>,
    pub s: Option<usize>,
    pub passed: bool,
    pub detail: String,
}

/// Outcome of [`verify_system`]. Only failures are listed individually.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub passed: bool,
    pub checks_run: usize,
    pub failures: Vec<VerificationCheck>,
}

struct Recorder {
    run: usize,
    failures: Vec<VerificationCheck>,
}

impl Recorder {
    fn check(&mut self, ok: bool, property: &str, anchor: &str, idx: (Option<usize>, Option<usize>, Option<usize>), detail: impl FnOnce() -> String) {
        self.run += 1;
        if !ok {
            self.failures.push(VerificationCheck {
                property: property.into(),
                anchor: anchor.into(),
                l: idx.0,
                i: idx.1,
                s: idx.2,
                passed: false,
                detail: detail(),
            });
        }
    }
}

/// Re-check every invariant of a system from its stored data.
pub fn verify_system(system: &PadeSystem) -> VerificationReport {
    let mut rec = Recorder {
        run: 0,
        failures: Vec::new(),
    };
    let (r, m, n) = (system.r(), system.m(), system.n);
    let rm = r * m;
    let shape_ok = validate_alphas(&system.alphas).is_ok()
        && n >= 1
        && system.p.len() == rm + 1
        && system.p_is.len() == rm + 1
        && system.remainders.len() == rm + 1
        && system.p_is.iter().all(|x| x.len() == m && x.iter().all(|y| y.len() == r))
        && system.remainders.iter().all(|x| x.len() == m && x.iter().all(|y| y.len() == r));
    rec.check(shape_ok, "system shape", "pade.shape", (None, None, None), || {
        format!("expected rm+1 = {} columns over m = {m} points and r = {r} levels with distinct nonzero points", rm + 1)
    });
    if !shape_ok {
        return VerificationReport {
            passed: false,
            checks_run: rec.run,
            failures: rec.failures,
        };
    }
    let trunc = system.truncation.max(n + 2);
    for l in 0..=rm {
        let p = &system.p[l];
        let want = rm * n + l;
        rec.check(p.degree() == Some(want), "deg P_l = rmn+l", "pade.degree", (Some(l), None, None), || {
            format!("degree {:?}, expected {want}", p.degree())
        });
        let rebuilt = build_p(&system.spec, &system.alphas, n, l);
        rec.check(
            rebuilt.as_ref().map(|q| q == p).unwrap_or(false),
            "P_l matches its defining formula",
            "pade.definition",
            (Some(l), None, None),
            || "stored P_l differs from the construction".into(),
        );
        for i in 0..m {
            for s in 0..r {
                let idx = (Some(l), Some(i), Some(s));
                let pis = &system.p_is[l][i][s];
                rec.check(
                    pis.degree().is_none_or(|d| d <= want),
                    "deg P_{l,i,s} <= rmn+l",
                    "pade.degree",
                    idx,
                    || format!("degree {:?} exceeds {want}", pis.degree()),
                );
                let series = remainder_series_route(&system.spec, &system.alphas, p, pis, i, s, trunc);
                let ord_ok = series.ord_at_least(n as i64 + 1);
                rec.check(
                    matches!(ord_ok, Ok(true)),
                    "ord R_{l,i,s} >= n+1",
                    "pade.weight",
                    idx,
                    || match ord_ok {
                        Ok(_) => format!("ord = {}", series.ord().map(|o| o.to_string()).unwrap_or("?".into())),
                        Err(e) => e.to_string(),
                    },
                );
                let functional = remainder_of(&system.spec, &system.alphas, p, i, s, trunc);
                rec.check(
                    functional == series,
                    "remainder routes agree",
                    "pade.remainder_identity",
                    idx,
                    || "series-product and functional remainders differ".into(),
                );
                let stored = &system.remainders[l][i][s];
                let t = stored.truncation().min(trunc as i64);
                rec.check(
                    stored.truncate(t) == series.truncate(t),
                    "stored remainder matches",
                    "pade.remainder_identity",
                    idx,
                    || "stored R differs from P F_s - P_{l,i,s}".into(),
                );
            }
        }
    }
    VerificationReport {
        passed: rec.failures.is_empty(),
        checks_run: rec.run,
        failures: rec.failures,
    }
}

/// The solution space of `deg P_0 <= M`, `ord(P_0 f_j - P_j) >= n_j + 1`.
#[derive(Clone, Debug)]
pub struct PadeSolutionSpace {
    pub m_deg: usize,
    pub n_vec: Vec<usize>,
    pub functions: Vec<LaurentTail>,
    /// Rows: vanishing conditions; columns: coefficients of `P_0`.
    pub matrix: Vec<Vec<Rational>>,
    /// Basis of admissible `P_0` coefficient vectors.
    pub basis: Vec<Vec<Rational>>,
}

impl PadeSolutionSpace {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    /// `(P_0, P_1, .., P_r)` for basis vector `k`.
    pub fn approximants(&self, k: usize) -> Vec<RationalPoly> {
        let p0 = RationalPoly::from_coeffs(self.basis[k].clone());
        self.completion(&p0)
    }

    /// `P_0` followed by the polynomial parts of `P_0 f_j`.
    pub fn completion(&self, p0: &RationalPoly) -> Vec<RationalPoly> {
        let mut out = vec![p0.clone()];
        out.extend(self.functions.iter().map(|f| f.mul_poly(p0).polynomial_part()));
        out
    }

    /// Exact membership of `p0` in the solution space.
    pub fn contains(&self, p0: &RationalPoly) -> bool {
        if p0.degree().is_some_and(|d| d > self.m_deg) {
            return false;
        }
        let v: Vec<Rational> = (0..=self.m_deg).map(|k| p0.coeff(k)).collect();
        if !linalg::mat_vec(&self.matrix, &v).iter().all(|x| x.is_zero()) {
            return false;
        }
        let mut stacked = self.basis.clone();
        let base_rank = linalg::rank(&stacked);
        stacked.push(v);
        if linalg::rank(&stacked) != base_rank {
            return false;
        }
        // and the order conditions themselves, from the tails
        self.functions.iter().zip(&self.n_vec).all(|(f, &nj)| {
            let rem = f.mul_poly(p0).principal_part();
            matches!(rem.ord_at_least(nj as i64 + 1), Ok(true))
        })
    }
}

/// Exact kernel computation for the homogeneous Padé system.
pub fn solve_pade_nullspace(f: &[LaurentTail], n_vec: &[usize], m_deg: usize) -> Result<PadeSolutionSpace> {
    if f.len() != n_vec.len() || f.is_empty() {
        return Err(Error::InvalidInput("one weight per function required".into()));
    }
    let total: usize = n_vec.iter().sum();
    if m_deg < total {
        return Err(Error::InvalidInput(format!(
            "degree bound {m_deg} below the total weight {total}"
        )));
    }
    let need = *n_vec.iter().max().unwrap() + m_deg + 2;
    for fj in f {
        if fj.truncation() < need as i64 {
            return Err(Error::InsufficientPrecision {
                requested: need as i64,
                truncation: fj.truncation(),
            });
        }
        if !fj.is_zero_to_truncation() && fj.start() < 1 {
            return Err(Error::InvalidInput("functions must lie in (1/z) Q[[1/z]]".into()));
        }
    }
    let mut matrix = Vec::with_capacity(total);
    for (fj, &nj) in f.iter().zip(n_vec) {
        for e in 1..=nj as i64 {
            matrix.push(
                (0..=m_deg as i64)
                    .map(|d| fj.coeff(e + d))
                    .collect::<Result<Vec<_>>>()?,
            );
        }
    }
    let basis = linalg::kernel(&matrix, m_deg + 1);
    if basis.is_empty() {
        return Err(Error::TheoryViolation("empty Padé solution space".into()));
    }
    Ok(PadeSolutionSpace {
        m_deg,
        n_vec: n_vec.to_vec(),
        functions: f.to_vec(),
        matrix,
        basis,
    })
}

/// The tails `F_s(alpha_i/z)` in `(i, s)` order, known to `truncation`.
pub fn system_functions(system: &PadeSystem, truncation: usize) -> Vec<LaurentTail> {
    let mut out = Vec::new();
    for i in 0..system.m() {
        for s in 0..system.r() {
            out.push(expand_f_s(&system.spec, &system.alphas[i], s, truncation));
        }
    }
    out
}

/// Confirm that every `P_l` of a system lies in the null-space solver's
/// solution space for `(M, weights) = (rmn + l, (n, .., n))`, and that the
/// completions reproduce `P_{l,i,s}`.
pub fn oracle_membership(system: &PadeSystem) -> Result<Vec<bool>> {
    let rm = system.rm();
    let n = system.n;
    (0..=rm)
        .map(|l| {
            let m_deg = rm * n + l;
            let funcs = system_functions(system, n + m_deg + 3);
            let space = solve_pade_nullspace(&funcs, &vec![n; rm], m_deg)?;
            let p = &system.p[l];
            let mut ok = space.contains(p);
            let completion = space.completion(p);
            let mut j = 1;
            for i in 0..system.m() {
                for s in 0..system.r() {
                    ok &= completion[j] == system.p_is[l][i][s];
                    j += 1;
                }
            }
            Ok(ok)
        })
        .collect()
}

/// Scale helper used by fault-injection tests.
pub fn corrupt_coefficient(p: &RationalPoly, k: usize) -> RationalPoly {
    let mut q = p.clone();
    q.set_coeff(k, p.coeff(k) + Rational::from_integer(BigInt::one()));
    q
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    fn toy() -> HypergeometricSpec {
        HypergeometricSpec::from_roots(&[rat(2)], &[rat(1)], rat(1)).unwrap()
    }

    #[test]
    fn toy_examples() {
        let s = toy();
        let p = build_p(&s, &[rat(1)], 1, 0).unwrap();
        assert_eq!(p, RationalPoly::from_ints(&[-1, 1]));
        let q = build_p_is(&s, &[rat(1)], 1, 0, 0, 0).unwrap();
        assert_eq!(q, RationalPoly::one());
        // c_k = 1, so F(alpha/z) = alpha/(z-alpha) and P_0 = z - alpha is exact.
        let sys = build_system(&s, &[rat(1)], 1, None).unwrap();
        let r0 = &sys.remainders[0][0][0];
        assert!(r0.is_zero_to_truncation());
        assert!(r0.ord_at_least(2).unwrap());
        let sys = build_system(&s, &[rat(2)], 1, None).unwrap();
        let r0 = &sys.remainders[0][0][0];
        assert!(r0.ord_at_least(2).unwrap());
        assert!(verify_system(&sys).passed);
    }

    #[test]
    fn canonical_system_verifies() {
        let s = HypergeometricSpec::from_parameters(&[ratio(1, 3), ratio(1, 4)], &[ratio(1, 2)], None)
            .unwrap();
        let sys = build_system(&s, &[rat(1)], 3, None).unwrap();
        let rep = verify_system(&sys);
        assert!(rep.passed, "{:?}", rep.failures);
        let sys2 = build_system(&s, &[rat(1), rat(2)], 2, None).unwrap();
        for l in 0..=4 {
            assert_eq!(sys2.p[l].degree(), Some(8 + l));
        }
    }

    #[test]
    fn fault_injection_names_index() {
        let s = HypergeometricSpec::from_parameters(&[ratio(1, 3), ratio(1, 4)], &[ratio(1, 2)], None)
            .unwrap();
        let mut sys = build_system(&s, &[rat(1)], 2, None).unwrap();
        sys.p[1] = corrupt_coefficient(&sys.p[1], 2);
        let rep = verify_system(&sys);
        assert!(!rep.passed);
        assert!(rep.failures.iter().all(|f| f.l == Some(1)));
        assert!(rep.failures.iter().any(|f| f.property == "ord R_{l,i,s} >= n+1"));
    }

    #[test]
    fn nullspace_geometric_example() {
        let f = LaurentTail::new(1, vec![rat(1), rat(0), rat(0), rat(0), rat(0)]);
        let sp = solve_pade_nullspace(&[f], &[1], 1).unwrap();
        assert_eq!(sp.dimension(), 1);
        let ap = sp.approximants(0);
        // P0 = c z, P1 = c
        assert!(ap[0].coeff(0).is_zero());
        assert_eq!(ap[1], RationalPoly::constant(ap[0].coeff(1)));
    }

    #[test]
    fn constant_p_gives_zero_p_is() {
        let s = toy();
        let q = p_is_from_poly(&s, &[rat(3)], &RationalPoly::constant(rat(5)), 0, 0);
        assert!(q.is_zero());
    }
}
