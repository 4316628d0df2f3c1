//! Non-vanishing of the generalized Wronskian `Delta(z) = det(p_0 .. p_rm)`:
//! the determinant itself, `Theta`, the constants `a_{0,s}`, the values
//! `C_{u,m}`, their factorization, the reduction in `m` and the final
//! determinants.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{factorial, fmt_rational, rat};
use crate::linalg;
use crate::pade::{base_polynomial, remainder_coefficients, PadeSystem};
use crate::polyops::{phi_zeta_s, HypergeometricSpec, HypothesisCheck, RationalPoly};
use crate::{Error, Rational, Result};

fn binom2(r: usize) -> usize {
    r * r.saturating_sub(1) / 2
}

fn pow_rat(x: &Rational, e: usize) -> Rational {
    let mut acc = Rational::one();
    for _ in 0..e {
        acc *= x;
    }
    acc
}

fn sign_pow(e: usize) -> Rational {
    if e % 2 == 0 {
        Rational::one()
    } else {
        -Rational::one()
    }
}

/// The `(rm+1) x (rm+1)` polynomial matrix with columns `p_l`.
pub fn delta_matrix(system: &PadeSystem) -> Vec<Vec<RationalPoly>> {
    let rm = system.rm();
    let cols: Vec<Vec<RationalPoly>> = (0..=rm).map(|l| system.column(l)).collect();
    (0..=rm)
        .map(|row| (0..=rm).map(|l| cols[l][row].clone()).collect())
        .collect()
}

/// `Delta(z)` as a polynomial in `z`.
pub fn delta_polynomial(system: &PadeSystem) -> RationalPoly {
    linalg::poly_det(&delta_matrix(system))
}

/// `Delta`, asserting that it does not depend on `z`.
pub fn delta_of_system(system: &PadeSystem) -> Result<Rational> {
    let d = delta_polynomial(system);
    match d.degree() {
        None | Some(0) => Ok(d.coeff(0)),
        Some(degree) => Err(Error::NonconstantDeterminant { degree }),
    }
}

/// The `rm x rm` matrix with columns `q_l`, entries `psi_{i,s}(t^n P_l)` in
/// row order `(i, s = r-1 .. 0)`.
pub fn theta_matrix(system: &PadeSystem) -> Vec<Vec<Rational>> {
    let (r, m, n) = (system.r(), system.m(), system.n);
    let rm = r * m;
    let cols: Vec<Vec<Rational>> = (0..rm)
        .into_par_iter()
        .map(|l| {
            let mut v = Vec::with_capacity(rm);
            for i in 0..m {
                for s in (0..r).rev() {
                    v.push(
                        remainder_coefficients(&system.spec, &system.alphas[i], s, &system.p[l], n, 1)
                            .remove(0),
                    );
                }
            }
            v
        })
        .collect();
    (0..rm).map(|row| (0..rm).map(|l| cols[l][row].clone()).collect()).collect()
}

/// `Theta = det(q_0 .. q_{rm-1})`.
pub fn theta_det(system: &PadeSystem) -> Rational {
    linalg::det(&theta_matrix(system))
}

/// `a_{0,s} = prod_i prod_{k=1}^n (eta_i - k - zeta_{s+1})` for `s = 0..r-1`,
/// and whether all are nonzero.
pub fn a0s_values(spec: &HypergeometricSpec, n: usize) -> (Vec<Rational>, bool) {
    let vals: Vec<Rational> = (0..spec.r())
        .map(|s| {
            let z = &spec.zeta()[s];
            spec.eta().iter().fold(Rational::one(), |acc, e| {
                (1..=n).fold(acc, |acc, k| acc * (e - rat(k as i64) - z))
            })
        })
        .collect();
    let ok = vals.iter().all(|v| !v.is_zero());
    (vals, ok)
}

/// `gamma_1 .. gamma_len`: the spec's `gamma_1..gamma_r` extended by fixed
/// auxiliary values.
pub fn extended_gamma(spec: &HypergeometricSpec, len: usize) -> Vec<Rational> {
    let mut g = spec.gamma().to_vec();
    let mut q = 1i64;
    while g.len() < len {
        g.push(Rational::new(BigInt::from(q * q + 1), BigInt::from(q + 2)));
        q += 1;
    }
    g.truncate(len);
    g
}

/// `a_{0,s}` by expanding `prod_{j=1}^n A(X - j)` in the Newton basis
/// `prod_{w=1}^k (X + gamma_{r-s-1+w})` with exact linear algebra.
pub fn a0s_change_of_basis(spec: &HypergeometricSpec, n: usize) -> Vec<Rational> {
    let r = spec.r();
    let rn = r * n;
    let gamma = extended_gamma(spec, r * (n + 1) - 1);
    let target = (1..=n).fold(RationalPoly::one(), |acc, j| {
        let shifted = spec.a_poly().taylor_shift(&rat(-(j as i64)));
        &acc * &shifted
    });
    (0..r)
        .map(|s| {
            // basis polynomial k: prod_{w=1}^k (X + gamma_{r-s-1+w}), gamma 1-based
            let mut basis = vec![RationalPoly::one()];
            for w in 1..=rn {
                let g = &gamma[r - s - 1 + w - 1];
                let next = &basis[w - 1] * &RationalPoly::from_coeffs(vec![g.clone(), Rational::one()]);
                basis.push(next);
            }
            let a: Vec<Vec<Rational>> = (0..=rn)
                .map(|deg| (0..=rn).map(|k| basis[k].coeff(deg)).collect())
                .collect();
            let b: Vec<Rational> = (0..=rn).map(|deg| target.coeff(deg)).collect();
            linalg::solve(&a, &b).expect("Newton basis is triangular")[0].clone()
        })
        .collect()
}

/// `psi~_{alpha,s}(t^k) = alpha^k / prod_{q=1}^{s+1} (k + zeta_q)`.
pub fn psi_tilde(spec: &HypergeometricSpec, alpha: &Rational, s: usize, p: &RationalPoly) -> Rational {
    let mut acc = Rational::zero();
    let mut apow = Rational::one();
    for (k, c) in p.coeffs().iter().enumerate() {
        if !c.is_zero() {
            let kk = rat(k as i64);
            let d = spec.zeta()[..=s].iter().fold(Rational::one(), |acc, z| acc * (&kk + z));
            acc += c * &apow / d;
        }
        apow *= alpha;
    }
    acc
}

/// `C_{u,m} = Psi(P^_u)`.
///
/// The Vandermonde factor of `P^_u` is `det(t_a^j)` with rows in
/// lexicographic `(i, s)` order; by multilinearity `Psi` collapses to the
/// determinant of `psi~_{alpha_i,s}(t^{u+j} prod_l (t-alpha_l)^{rn})`.
pub fn c_um(spec: &HypergeometricSpec, alphas: &[Rational], n: usize, u: usize) -> Rational {
    let r = spec.r();
    let rm = r * alphas.len();
    let base = base_polynomial(alphas, r, n, u);
    let mut rows = Vec::with_capacity(rm);
    for a in alphas {
        for s in 0..r {
            rows.push(
                (0..rm)
                    .map(|j| psi_tilde(spec, a, s, &base.shift(j)))
                    .collect::<Vec<_>>(),
            );
        }
    }
    linalg::det(&rows)
}

/// `prod_{i1 < i2} (alpha_i2 - alpha_i1)^{(2n+1) r^2}`.
pub fn vandermonde_power(alphas: &[Rational], r: usize, n: usize) -> Rational {
    let e = (2 * n + 1) * r * r;
    let mut acc = Rational::one();
    for i2 in 0..alphas.len() {
        for i1 in 0..i2 {
            acc *= pow_rat(&(&alphas[i2] - &alphas[i1]), e);
        }
    }
    acc
}

/// `e` with `x = lambda^e`, if any.
fn exact_log(x: &Rational, lambda: i64) -> Option<i64> {
    if !x.is_positive() {
        return None;
    }
    let l = rat(lambda);
    let (mut y, inv) = if *x >= Rational::one() { (x.clone(), false) } else { (x.recip(), true) };
    let mut e = 0i64;
    while y > Rational::one() {
        y /= &l;
        e += 1;
    }
    if y == Rational::one() {
        Some(if inv { -e } else { e })
    } else {
        None
    }
}

/// Which stated exponent the measured one matches.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExponentStatement {
    /// `ru + r^2 n + C(r,2)`.
    Factorization,
    /// `r(u+1) + r^2 n + C(r,2)`.
    Homogeneity,
    Neither,
}

/// Factorization `C_{u,m} = c_{u,m} prod alpha_i^e prod (alpha_i2 - alpha_i1)^{(2n+1)r^2}`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CumFactor {
    pub m: usize,
    pub u: usize,
    #[serde(with = "crate::report::rat")]
    pub c: Rational,
    pub e: i64,
    pub statement: ExponentStatement,
    pub tuples_checked: usize,
}

/// The point tuples used to measure and confirm the factorization: the
/// given tuple, two rescalings of `alpha_1` and one translate.
fn factor_tuples(alphas: &[Rational]) -> (Vec<Vec<Rational>>, [i64; 2]) {
    let mut out = vec![alphas.to_vec()];
    let mut lambdas = Vec::new();
    for lambda in 2..64 {
        let mut t = alphas.to_vec();
        t[0] *= rat(lambda);
        if crate::pade::validate_alphas(&t).is_ok() {
            out.push(t);
            lambdas.push(lambda);
            if lambdas.len() == 2 {
                break;
            }
        }
    }
    for shift in 1..64 {
        let t: Vec<Rational> = alphas.iter().map(|a| a + rat(shift)).collect();
        if crate::pade::validate_alphas(&t).is_ok() {
            out.push(t);
            break;
        }
    }
    (out, [lambdas[0], lambdas[1]])
}

/// Measure `e` and `c_{u,m}` from several point tuples.
pub fn c_um_factor(spec: &HypergeometricSpec, alphas: &[Rational], n: usize, u: usize) -> Result<CumFactor> {
    crate::pade::validate_alphas(alphas)?;
    let r = spec.r();
    let m = alphas.len();
    let (tuples, lambdas) = factor_tuples(alphas);
    let quotients: Vec<Rational> = tuples
        .par_iter()
        .map(|t| c_um(spec, t, n, u) / vandermonde_power(t, r, n))
        .collect();
    if quotients[0].is_zero() {
        return Err(Error::TheoryViolation(format!(
            "C_{{u,m}} vanishes at u = {u}, m = {m}"
        )));
    }
    let e2 = exact_log(&(&quotients[1] / &quotients[0]), lambdas[0]);
    let e3 = exact_log(&(&quotients[2] / &quotients[0]), lambdas[1]);
    let e = match (e2, e3) {
        (Some(a), Some(b)) if a == b => a,
        _ => {
            return Err(Error::FactorizationMismatch(format!(
                "C_{{u,m}} / Vandermonde is not a monomial in alpha_1 (u = {u}, m = {m})"
            )))
        }
    };
    let mono = |t: &[Rational]| -> Rational {
        t.iter().fold(Rational::one(), |acc, a| {
            let p = pow_rat(a, e.unsigned_abs() as usize);
            if e >= 0 {
                acc * p
            } else {
                acc / p
            }
        })
    };
    let cs: Vec<Rational> = tuples
        .iter()
        .zip(&quotients)
        .map(|(t, q)| q / mono(t))
        .collect();
    if cs.iter().any(|c| *c != cs[0]) {
        return Err(Error::FactorizationMismatch(format!(
            "c_{{u,m}} depends on the points (u = {u}, m = {m})"
        )));
    }
    let base = (r * r * n + binom2(r)) as i64;
    let statement = if e == (r * u) as i64 + base {
        ExponentStatement::Factorization
    } else if e == (r * (u + 1)) as i64 + base {
        ExponentStatement::Homogeneity
    } else {
        ExponentStatement::Neither
    };
    Ok(CumFactor {
        m,
        u,
        c: cs[0].clone(),
        e,
        statement,
        tuples_checked: tuples.len(),
    })
}

/// Measured homogeneity degree of `C_{u,m}` together with both stated forms.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Homogeneity {
    pub measured: i64,
    /// `m [r(u+1) + r^2 n + C(r,2)] + C(m,2)(2n+1) r^2`.
    pub stated_homogeneity: i64,
    /// `m [ru + r^2 n + C(r,2)] + C(m,2)(2n+1) r^2`.
    pub stated_factorization: i64,
}

/// `C(lambda alpha) = lambda^deg C(alpha)`, measured at `lambda = 2` and confirmed at 3.
pub fn homogeneity_degree(spec: &HypergeometricSpec, alphas: &[Rational], n: usize, u: usize) -> Result<Homogeneity> {
    let r = spec.r() as i64;
    let m = alphas.len() as i64;
    let c = c_um(spec, alphas, n, u);
    if c.is_zero() {
        return Err(Error::TheoryViolation("C_{u,m} vanishes".into()));
    }
    let scaled = |l: i64| -> Vec<Rational> { alphas.iter().map(|a| a * rat(l)).collect() };
    let d2 = exact_log(&(c_um(spec, &scaled(2), n, u) / &c), 2);
    let d3 = exact_log(&(c_um(spec, &scaled(3), n, u) / &c), 3);
    let measured = match (d2, d3) {
        (Some(a), Some(b)) if a == b => a,
        _ => return Err(Error::FactorizationMismatch("C_{u,m} is not homogeneous".into())),
    };
    let (u, n) = (u as i64, n as i64);
    let tail = m * (m - 1) / 2 * (2 * n + 1) * r * r;
    let b2 = r * (r - 1) / 2;
    Ok(Homogeneity {
        measured,
        stated_homogeneity: m * (r * (u + 1) + r * r * n + b2) + tail,
        stated_factorization: m * (r * u + r * r * n + b2) + tail,
    })
}

/// Order of vanishing of `C_{u,m}` along `alpha_2 = alpha_1`, by exact
/// interpolation in `eps` with `alpha_2 = alpha_1 + eps`.
pub fn vanishing_order(spec: &HypergeometricSpec, alphas: &[Rational], n: usize, u: usize) -> Result<usize> {
    if alphas.len() < 2 {
        return Err(Error::InvalidInput("vanishing order needs m >= 2".into()));
    }
    let h = homogeneity_degree(spec, alphas, n, u)?;
    let deg = h.measured.max(0) as usize;
    // deg + 1 nodes determine the interpolant; one more node confirms it
    let xs: Vec<Rational> = (1..=deg as i64 + 2).map(rat).collect();
    let ys: Vec<Rational> = xs
        .par_iter()
        .map(|eps| {
            let mut t = alphas.to_vec();
            t[1] = &t[0] + eps;
            c_um(spec, &t, n, u)
        })
        .collect();
    let p = linalg::newton_interpolate(&xs[..=deg], &ys[..=deg]);
    if p.eval(&xs[deg + 1]) != ys[deg + 1] {
        return Err(Error::FactorizationMismatch(
            "C_{u,m} restricted to alpha_2 = alpha_1 + eps exceeds its degree bound".into(),
        ));
    }
    p.coeffs()
        .iter()
        .position(|c| !c.is_zero())
        .ok_or_else(|| Error::TheoryViolation("C_{u,m} vanishes identically along the line".into()))
}

/// `L(u) = det(psi_s(t^{u+l} (t-1)^{rn}))_{s,l}` with `psi_s(t^k) = 1/prod_{q<=s+1}(k + zeta_q)`.
pub fn l_value(spec: &HypergeometricSpec, n: usize, u: usize) -> Rational {
    let r = spec.r();
    let base = RationalPoly::linear_root(&Rational::one()).pow(r * n).shift(u);
    let rows: Vec<Vec<Rational>> = (0..r)
        .map(|s| (0..r).map(|l| psi_tilde(spec, &Rational::one(), s, &base.shift(l))).collect())
        .collect();
    linalg::det(&rows)
}

/// Distinct values of `zeta` with multiplicities, in grouped order.
pub fn zeta_groups(zeta: &[Rational]) -> Vec<(Rational, usize)> {
    let mut out: Vec<(Rational, usize)> = Vec::new();
    for z in zeta {
        match out.last_mut() {
            Some((v, c)) if v == z => *c += 1,
            _ => out.push((z.clone(), 1)),
        }
    }
    out
}

/// Partial fractions of `1/prod_{q<=s+1}(k + zeta_q)`: coefficients of
/// `1/(k + zbar_j)^e` indexed by `(j, e)`, `e` from 1.
pub fn partial_fractions(zeta: &[Rational], s: usize) -> Vec<Vec<Rational>> {
    let groups = zeta_groups(&zeta[..=s]);
    let all = zeta_groups(zeta);
    all.iter()
        .map(|(zv, mult_all)| {
            let Some(&(_, mw)) = groups.iter().find(|(v, _)| v == zv) else {
                return vec![Rational::zero(); *mult_all];
            };
            let x0 = -zv.clone();
            // Taylor series of prod_{v != w} (k + zbar_v)^{-m_v} at k = x0, mw terms
            let mut series = vec![Rational::zero(); mw];
            series[0] = Rational::one();
            for (v, mv) in &groups {
                if v == zv {
                    continue;
                }
                let d = &x0 + v;
                let inv: Vec<Rational> = (0..mw)
                    .map(|i| {
                        let t = pow_rat(&d, i + 1).recip();
                        if i % 2 == 0 {
                            t
                        } else {
                            -t
                        }
                    })
                    .collect();
                for _ in 0..*mv {
                    let mut next = vec![Rational::zero(); mw];
                    for a in 0..mw {
                        for b in 0..mw - a {
                            next[a + b] += &series[a] * &inv[b];
                        }
                    }
                    series = next;
                }
            }
            // coefficient of (k - x0)^{-e} is series[mw - e]
            (1..=*mult_all)
                .map(|e| if e <= mw { series[mw - e].clone() } else { Rational::zero() })
                .collect()
        })
        .collect()
}

/// The final determinant and its relation to `L(u)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FinalDet {
    pub u: usize,
    #[serde(with = "crate::report::rat")]
    pub det: Rational,
    #[serde(with = "crate::report::rat")]
    pub e_scalar: Rational,
    #[serde(with = "crate::report::rat")]
    pub l_value: Rational,
    /// `L(u) = E * det` exactly.
    pub l_matches: bool,
    /// The partial-fraction expansion of every `psi_s` is triangular with diagonal `E`.
    pub triangular: bool,
}

/// `det(phi_{zbar_j, s_j}(t^{u+l} (t-1)^{rn}))` with rows `(j, s_j)`.
pub fn final_det(spec: &HypergeometricSpec, n: usize, u: usize) -> Result<FinalDet> {
    let r = spec.r();
    let zeta = spec.zeta();
    let groups = zeta_groups(zeta);
    if groups.iter().map(|g| g.1).sum::<usize>() != r
        || groups.iter().enumerate().any(|(j, g)| groups[..j].iter().any(|h| h.0 == g.0))
    {
        return Err(Error::InvalidInput("zeta must be grouped by value".into()));
    }
    let base = RationalPoly::linear_root(&Rational::one()).pow(r * n).shift(u);
    let mut rows = Vec::with_capacity(r);
    let mut row_index = Vec::with_capacity(r);
    for (j, (zv, mult)) in groups.iter().enumerate() {
        for sj in 1..=*mult {
            rows.push(
                (0..r)
                    .map(|l| phi_zeta_s(zv, sj, &base.shift(l)))
                    .collect::<Result<Vec<_>>>()?,
            );
            row_index.push((j, sj));
        }
    }
    let det = linalg::det(&rows);
    // psi_s = sum_{(j,e)} pf[s][j][e-1] phi_{zbar_j,e}; check triangular form
    let mut e_scalar = Rational::one();
    let mut triangular = true;
    for s in 0..r {
        let pf = partial_fractions(zeta, s);
        let (jd, ed) = row_index[s];
        for (idx, &(j, e)) in row_index.iter().enumerate() {
            let coef = &pf[j][e - 1];
            if idx > s && !coef.is_zero() {
                triangular = false;
            }
            if (j, e) == (jd, ed) {
                e_scalar *= coef;
            }
        }
        // expected diagonal: 1/prod_{v < w} (zbar_v - zbar_w)^{r_v}
        let want = groups[..jd].iter().fold(Rational::one(), |acc, (zv, mv)| {
            acc / pow_rat(&(zv - &groups[jd].0), *mv)
        });
        if pf[jd][ed - 1] != want {
            triangular = false;
        }
    }
    let l = l_value(spec, n, u);
    Ok(FinalDet {
        u,
        l_matches: l == &e_scalar * &det,
        det,
        e_scalar,
        l_value: l,
        triangular,
    })
}

/// One link `m -> m-1` of the reduction.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ReductionLink {
    pub m: usize,
    pub u: usize,
    pub factor: CumFactor,
    #[serde(with = "crate::report::rat")]
    pub c_next: Rational,
    #[serde(with = "crate::report::rat")]
    pub l_value: Rational,
    /// `c_{u,m} = (-1)^{r^2 n (m-1)} c_{u+r(n+1),m-1} L(u)`.
    pub holds: bool,
}

/// Walk `c_{u,m} -> c_{u+r(n+1),m-1} -> .. -> c_{.,0} = 1`.
pub fn reduction_chain(spec: &HypergeometricSpec, alphas: &[Rational], n: usize, u: usize) -> Result<Vec<ReductionLink>> {
    let r = spec.r();
    let m = alphas.len();
    let factors: Vec<CumFactor> = (1..=m)
        .into_par_iter()
        .map(|k| c_um_factor(spec, &alphas[..k], n, u + (m - k) * r * (n + 1)))
        .collect::<Result<_>>()?;
    let mut out = Vec::with_capacity(m);
    for k in (1..=m).rev() {
        let uk = u + (m - k) * r * (n + 1);
        let factor = factors[k - 1].clone();
        let c_next = if k == 1 { Rational::one() } else { factors[k - 2].c.clone() };
        let l = l_value(spec, n, uk);
        let rhs = sign_pow(r * r * n * (k - 1)) * &c_next * &l;
        out.push(ReductionLink {
            m: k,
            u: uk,
            holds: factor.c == rhs,
            factor,
            c_next,
            l_value: l,
        });
    }
    Ok(out)
}

/// Overall verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum WronskianVerdict {
    CertifiedNonzero,
    Zero,
}

/// Everything computed along the chain, exactly.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WronskianReport {
    pub r: usize,
    pub m: usize,
    pub n: usize,
    pub hypotheses: Vec<HypothesisCheck>,
    #[serde(with = "crate::report::rat")]
    pub delta: Rational,
    pub delta_z_degree: Option<usize>,
    #[serde(with = "crate::report::rat")]
    pub theta: Rational,
    #[serde(with = "crate::report::rat")]
    pub leading_coeff_prm: Rational,
    /// `Delta = (-1)^{rm} lc(P_rm) Theta`.
    pub bunkai_signed_holds: bool,
    /// `Delta = lc(P_rm) Theta`.
    pub bunkai_unsigned_holds: bool,
    #[serde(with = "crate::report::rat_vec")]
    pub a0s: Vec<Rational>,
    pub a0s_nonzero: bool,
    #[serde(with = "crate::report::rat")]
    pub c_nnm: Rational,
    /// `Theta (n-1)!^{r^2 m} = prod alpha_i^r prod a_{0,s}^m C_{n,n,m}`.
    pub rn_holds: bool,
    pub exponent_e: Option<i64>,
    pub exponent_statement: Option<ExponentStatement>,
    #[serde(with = "crate::report::rat_vec")]
    pub c_um_chain: Vec<Rational>,
    pub reduction: Vec<ReductionLink>,
    pub final_dets: Vec<FinalDet>,
    pub zero_enters_at: Option<String>,
    pub theory_violation: Option<String>,
    pub verdict: WronskianVerdict,
}

/// Run the chain `Delta -> Theta -> C_{n,n,m} -> reduction -> final determinants`.
pub fn certify_nonvanishing(system: &PadeSystem, full_chain: bool) -> Result<WronskianReport> {
    let spec = &system.spec;
    let (r, m, n) = (system.r(), system.m(), system.n);
    let rm = r * m;
    let hypotheses = spec.hypothesis_flags();
    let hyp_ok = hypotheses.iter().all(|h| h.passed);

    let dpoly = delta_polynomial(system);
    let delta_z_degree = dpoly.degree();
    let delta = dpoly.coeff(0);
    let theta = theta_det(system);
    let lc = system.p[rm].coeff(rm * (n + 1));
    let bunkai_unsigned_holds = delta == &lc * &theta;
    let bunkai_signed_holds = delta == sign_pow(rm) * &lc * &theta;

    let (a0s, a0s_nonzero) = a0s_values(spec, n);
    let c_nnm = c_um(spec, &system.alphas, n, n);
    let prefactor = system
        .alphas
        .iter()
        .fold(Rational::one(), |acc, a| acc * pow_rat(a, r))
        * a0s.iter().fold(Rational::one(), |acc, a| acc * pow_rat(a, m));
    let fact = Rational::from_integer(factorial(n.saturating_sub(1)).pow((r * r * m) as u32));
    let rn_holds = &theta * &fact == &prefactor * &c_nnm;

    let mut zero_enters_at = None;
    let mut theory_violation = None;
    if delta_z_degree.is_some_and(|d| d > 0) {
        theory_violation = Some(format!(
            "Delta(z) has z-degree {}",
            delta_z_degree.unwrap()
        ));
    }
    if delta.is_zero() {
        zero_enters_at = Some(if !a0s_nonzero {
            let s = a0s.iter().position(|a| a.is_zero()).unwrap();
            format!("a_{{0,{s}}} = 0")
        } else if c_nnm.is_zero() {
            "C_{n,n,m} = 0".into()
        } else {
            "Theta".into()
        });
        if hyp_ok && theory_violation.is_none() {
            theory_violation = Some(format!(
                "Delta = 0 although every hypothesis holds (zero enters at {})",
                zero_enters_at.as_deref().unwrap()
            ));
        }
    }

    let mut exponent_e = None;
    let mut exponent_statement = None;
    let mut c_um_chain = Vec::new();
    let mut reduction = Vec::new();
    let mut final_dets = Vec::new();
    if full_chain {
        match reduction_chain(spec, &system.alphas, n, n) {
            Ok(links) => {
                exponent_e = Some(links[0].factor.e);
                exponent_statement = Some(links[0].factor.statement);
                c_um_chain = links.iter().map(|l| l.factor.c.clone()).collect();
                c_um_chain.push(Rational::one());
                final_dets = links
                    .iter()
                    .map(|l| final_det(spec, n, l.u))
                    .collect::<Result<_>>()?;
                if hyp_ok && theory_violation.is_none() {
                    if let Some(l) = links.iter().find(|l| !l.holds) {
                        theory_violation = Some(format!("reduction fails at m = {}", l.m));
                    } else if let Some(f) = final_dets.iter().find(|f| f.det.is_zero()) {
                        theory_violation = Some(format!("final determinant vanishes at u = {}", f.u));
                    }
                }
                reduction = links;
            }
            Err(e) => {
                if hyp_ok && theory_violation.is_none() {
                    theory_violation = Some(e.to_string());
                }
            }
        }
    }

    Ok(WronskianReport {
        r,
        m,
        n,
        hypotheses,
        delta: delta.clone(),
        delta_z_degree,
        theta,
        leading_coeff_prm: lc,
        bunkai_signed_holds,
        bunkai_unsigned_holds,
        a0s,
        a0s_nonzero,
        c_nnm,
        rn_holds,
        exponent_e,
        exponent_statement,
        c_um_chain,
        reduction,
        final_dets,
        zero_enters_at,
        theory_violation,
        verdict: if delta.is_zero() {
            WronskianVerdict::Zero
        } else {
            WronskianVerdict::CertifiedNonzero
        },
    })
}

impl WronskianReport {
    /// Short human-readable summary.
    pub fn summary(&self) -> String {
        format!(
            "Delta = {} ({:?}); Theta = {}; a0s = [{}]",
            fmt_rational(&self.delta),
            self.verdict,
            fmt_rational(&self.theta),
            self.a0s.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
        )
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;
    use crate::pade::build_system;

    fn canonical() -> HypergeometricSpec {
        HypergeometricSpec::from_parameters(&[ratio(1, 3), ratio(1, 4)], &[ratio(1, 2)], None).unwrap()
    }

    #[test]
    fn delta_small() {
        let s = canonical();
        let sys = build_system(&s, &[rat(1)], 1, None).unwrap();
        let d = delta_of_system(&sys).unwrap();
        assert!(!d.is_zero());
        let rep = certify_nonvanishing(&sys, true).unwrap();
        assert!(rep.bunkai_unsigned_holds);
        assert!(rep.rn_holds);
        assert_eq!(rep.verdict, WronskianVerdict::CertifiedNonzero);
        assert!(rep.reduction.iter().all(|l| l.holds));
    }

    #[test]
    fn a0s_examples() {
        let toy = HypergeometricSpec::from_roots(&[rat(2)], &[rat(1)], rat(1)).unwrap();
        assert_eq!(a0s_values(&toy, 1).0, vec![rat(0)]);
        let t2 = HypergeometricSpec::from_roots(&[ratio(5, 2)], &[rat(1)], rat(1)).unwrap();
        assert_eq!(a0s_values(&t2, 1).0, vec![ratio(1, 2)]);
        let s = canonical();
        for n in 1..=4 {
            assert_eq!(a0s_values(&s, n).0, a0s_change_of_basis(&s, n));
        }
    }

    #[test]
    fn c_um_examples() {
        let t = HypergeometricSpec::from_roots(&[rat(2)], &[rat(1)], rat(1)).unwrap();
        // u = 1: psi~(t (t-1)) = 1/3 - 1/2
        assert_eq!(c_um(&t, &[rat(1)], 1, 1), ratio(-1, 6));
        assert_eq!(c_um(&t, &[rat(1)], 1, 0), ratio(-1, 2));
        assert_eq!(final_det(&t, 1, 0).unwrap().det, ratio(-1, 2));
    }

    #[test]
    fn swap_points_sign() {
        let s = canonical();
        let a = c_um(&s, &[rat(1), rat(2)], 1, 0);
        let b = c_um(&s, &[rat(2), rat(1)], 1, 0);
        assert_eq!(a, b); // (-1)^{r^2} with r = 2
    }

    #[test]
    fn partial_fraction_repeated() {
        // 1/((k+1/2)^2 (k+1)) = 4/(k+1/2)^... check by evaluation
        let z = vec![ratio(1, 2), ratio(1, 2), rat(1)];
        let pf = partial_fractions(&z, 2);
        let groups = zeta_groups(&z);
        for k in 0..6 {
            let kk = rat(k);
            let direct = z.iter().fold(Rational::one(), |acc, q| acc / (&kk + q));
            let mut sum = Rational::zero();
            for (j, (v, mult)) in groups.iter().enumerate() {
                for e in 1..=*mult {
                    sum += &pf[j][e - 1] / pow_rat(&(&kk + v), e);
                }
            }
            assert_eq!(direct, sum);
        }
    }
}
