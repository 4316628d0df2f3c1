//! Certified evaluation of `pFq`, of the contiguous family `F_s` and of the
//! remainders `R_{l,i,s}(beta)`, with the remainder identity checked in
//! interval arithmetic.

mod ball;
mod remainder;

pub use ball::{relative_gap_log2, Ball};
pub use remainder::RemainderSeries;

use num_traits::{One, Signed, Zero};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::arith::{is_nonpositive_integer, rat};
use crate::pade::PadeSystem;
use crate::polyops::{HypergeometricSpec, RationalPoly, SpecOrigin};
use crate::{Error, Rational, Result};

/// Guard bits added to every working precision.
pub const GUARD_BITS: u32 = 32;

const MAX_TERMS: usize = 1_000_000;

/// Bound on `sup_{k >= big_k} |x prod (k+u_i) / prod (k+v_j)|` for
/// `|num| <= |den|`, or `None` if `big_k` is too small for the bound.
pub(crate) fn ratio_bound(x: &Rational, num: &[Rational], den: &[Rational], big_k: usize) -> Option<Rational> {
    let k = rat(big_k as i64);
    let mut rho = x.abs();
    for (j, v) in den.iter().enumerate() {
        let lower = &k - v.abs();
        if lower < Rational::one() {
            return None;
        }
        match num.get(j) {
            Some(u) => rho *= (&k + u.abs()) / lower,
            None => rho /= lower,
        }
    }
    Some(rho)
}

/// `sum_{k>=0} t_k` with `t_{k+1} = t_k x prod (k+u_i) / prod (k+v_j)`,
/// certified at `prec` fractional bits.
pub fn sum_ratio_series(
    t0: &Rational,
    x: &Rational,
    num: &[Rational],
    den: &[Rational],
    prec: u32,
) -> Result<Ball> {
    if let Some(v) = den.iter().find(|v| is_nonpositive_integer(v)) {
        return Err(Error::Pole { k: -v.to_integer().to_string().parse::<i64>().unwrap_or(0) });
    }
    if num.len() > den.len() && !x.is_zero() {
        return Err(Error::Divergence("series has zero radius of convergence".into()));
    }
    if num.len() == den.len() && x.abs() >= Rational::one() {
        return Err(Error::Divergence("argument outside the unit disk".into()));
    }
    let mut t = Ball::from_rational(t0, prec);
    let mut sum = t.clone();
    if t0.is_zero() || x.is_zero() {
        return Ok(sum);
    }
    let cap = (Rational::one() + x.abs()) / rat(2);
    for k in 0..MAX_TERMS {
        let kk = rat(k as i64);
        let f = num.iter().fold(x.clone(), |acc, u| acc * (&kk + u))
            / den.iter().fold(Rational::one(), |acc, v| acc * (&kk + v));
        if f.is_zero() {
            return Ok(sum);
        }
        t = t.mul_rational(&f);
        sum = sum.add(&t);
        // t now holds t_{k+1}; bound the tail from k+2 on
        if let Some(rho) = ratio_bound(x, num, den, k + 1) {
            if rho < cap {
                let tail = t.abs_upper() * &rho / (Rational::one() - &rho);
                // rounding noise keeps |t| above one ulp; accept a tail of a few ulps
                let slack = Rational::new(1.into(), num_bigint::BigInt::one() << prec.saturating_sub(GUARD_BITS / 2));
                if tail < slack {
                    return Ok(sum.add_error(&tail));
                }
            }
        }
    }
    Err(Error::Divergence(format!("no convergence within {MAX_TERMS} terms")))
}

/// `pFq(a; b; z)` certified at `bits` fractional bits (plus guard bits).
pub fn eval_pfq(a: &[Rational], b: &[Rational], z: &Rational, bits: u32) -> Result<Ball> {
    if b.iter().any(is_nonpositive_integer) {
        return Err(Error::InvalidInput("lower parameter is a non-positive integer".into()));
    }
    if a.len() > b.len() + 1 && !z.is_zero() {
        return Err(Error::InvalidInput("p > q + 1 diverges".into()));
    }
    if a.len() == b.len() + 1 && z.abs() >= Rational::one() {
        return Err(Error::InvalidInput("need |z| < 1 for p = q + 1".into()));
    }
    let mut den = b.to_vec();
    den.push(Rational::one());
    sum_ratio_series(&Rational::one(), z, a, &den, bits + GUARD_BITS)
}

/// `F_s(x) = sum_k (k+gamma_1)..(k+gamma_s) c_k x^{k+1}` by direct summation.
pub fn eval_f_direct(spec: &HypergeometricSpec, s: usize, x: &Rational, bits: u32) -> Result<Ball> {
    let g = &spec.gamma()[..s];
    let mut num: Vec<Rational> = g.iter().map(|v| v + Rational::one()).collect();
    num.extend(spec.eta().iter().cloned());
    let mut den: Vec<Rational> = g.to_vec();
    den.extend(spec.zeta().iter().map(|v| v + Rational::one()));
    let t0 = spec.gamma_prod(0, s) * spec.c0() * x;
    sum_ratio_series(&t0, x, &num, &den, bits + GUARD_BITS)
}

/// `F_s(x)` through a closed form in `pFq`, when the origin provides one:
/// `F_0 = rF(r-1)(a; b; x) - 1` and, for `s >= 1`,
/// `F_s = prod a / prod_{j<=r-s} b_j x rF(r-1)(a+1; b_1+1..b_{r-s}+1, b_{r-s+1}..b_{r-1}; x)`;
/// for Lerch, `F_s = Phi_{r-s}(x', x) = x/(x'+1)^{r-s} F(1, x'+1..; x'+2..; x)`.
pub fn eval_f_closed(spec: &HypergeometricSpec, s: usize, x: &Rational, bits: u32) -> Result<Option<Ball>> {
    let r = spec.r();
    match spec.origin() {
        SpecOrigin::Hypergeometric { a, .. } => {
            let b = &spec.zeta()[..r - 1];
            let default_c0 = a.iter().fold(Rational::one(), |acc, v| acc * v)
                / b.iter().fold(Rational::one(), |acc, v| acc * v);
            let scale = spec.c0() / &default_c0;
            if s == 0 {
                let f = eval_pfq(a, b, x, bits)?;
                return Ok(Some(f.sub(&Ball::from_rational(&Rational::one(), f.prec())).mul_rational(&scale)));
            }
            let a1: Vec<Rational> = a.iter().map(|v| v + Rational::one()).collect();
            let b1: Vec<Rational> = b
                .iter()
                .enumerate()
                .map(|(j, v)| if j < r - s { v + Rational::one() } else { v.clone() })
                .collect();
            let pre = b[..r - s].iter().fold(default_c0 * &b.iter().fold(Rational::one(), |acc, v| acc * v), |acc, v| acc / v)
                * x
                * &scale;
            Ok(Some(eval_pfq(&a1, &b1, x, bits)?.mul_rational(&pre)))
        }
        SpecOrigin::Lerch { x: xl } => {
            let sigma = r - s;
            let mut a = vec![Rational::one()];
            a.extend(std::iter::repeat(xl + Rational::one()).take(sigma));
            let b: Vec<Rational> = std::iter::repeat(xl + rat(2)).take(sigma).collect();
            let base = (xl + Rational::one()).pow(sigma as i32);
            let scale = spec.c0() * (xl + Rational::one()).pow(r as i32);
            Ok(Some(eval_pfq(&a, &b, x, bits)?.mul_rational(&(x / base * scale))))
        }
        SpecOrigin::Roots => Ok(None),
    }
}

/// `Phi_sigma(x, z) = sum_k z^{k+1} / (k+x+1)^sigma` by direct summation.
pub fn lerch_phi(xl: &Rational, sigma: usize, z: &Rational, bits: u32) -> Result<Ball> {
    let num: Vec<Rational> = std::iter::repeat(xl + Rational::one()).take(sigma).collect();
    let den: Vec<Rational> = std::iter::repeat(xl + rat(2)).take(sigma).collect();
    let t0 = z / (xl + Rational::one()).pow(sigma as i32);
    sum_ratio_series(&t0, z, &num, &den, bits + GUARD_BITS)
}

/// One member of the family with both routes.
#[derive(Clone, Debug)]
pub struct FValue {
    pub s: usize,
    pub direct: Ball,
    pub closed: Option<Ball>,
}

impl FValue {
    /// `log2` of the relative gap between the routes.
    pub fn route_gap_log2(&self) -> Option<f64> {
        self.closed.as_ref().map(|c| relative_gap_log2(&self.direct, c))
    }
}

/// `F_0(x) .. F_{r-1}(x)` by both routes.
pub fn eval_f_family(spec: &HypergeometricSpec, x: &Rational, bits: u32) -> Result<Vec<FValue>> {
    if x.abs() >= Rational::one() {
        return Err(Error::InvalidInput("need |alpha/beta| < 1".into()));
    }
    (0..spec.r())
        .into_par_iter()
        .map(|s| {
            Ok(FValue {
                s,
                direct: eval_f_direct(spec, s, x, bits)?,
                closed: eval_f_closed(spec, s, x, bits)?,
            })
        })
        .collect()
}

/// `R_{l,i,s}(beta) = sum_{k>=n} psi_{i,s}(t^k P_l) beta^{-(k+1)}` with relative
/// accuracy about `2^-rel_bits`, or an exact zero.
pub fn remainder_at(
    spec: &HypergeometricSpec,
    alpha: &Rational,
    s: usize,
    p: &RationalPoly,
    n: usize,
    beta: &Rational,
    rel_bits: u32,
) -> Result<Ball> {
    RemainderSeries::new(spec, alpha, s, p, n).eval_archimedean(beta, rel_bits)
}

/// Result of the remainder identity for one `(l, i, s)`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityEntry {
    pub l: usize,
    pub i: usize,
    pub s: usize,
    /// `log2 |R_{l,i,s}(beta)|`.
    pub log2_abs_r: f64,
    /// `log2` of the certified bound on `|P F - P_is - R| / |R|`.
    pub rel_residual_log2: f64,
    pub holds: bool,
}

/// The remainder identity over a whole system.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    #[serde(with = "crate::report::rat")]
    pub beta: Rational,
    pub rel_bits: u32,
    pub entries: Vec<IdentityEntry>,
    pub all_hold: bool,
}

/// Check `P_l(beta) F_s(alpha_i/beta) - P_{l,i,s}(beta) = R_{l,i,s}(beta)` for
/// one entry with explicit polynomials.
#[allow(clippy::too_many_arguments)]
pub fn identity_entry(
    spec: &HypergeometricSpec,
    alpha: &Rational,
    s: usize,
    n: usize,
    p: &RationalPoly,
    p_is: &RationalPoly,
    remainder_p: &RationalPoly,
    beta: &Rational,
    rel_bits: u32,
) -> Result<(Ball, Ball)> {
    let r = remainder_at(spec, alpha, s, remainder_p, n, beta, rel_bits + 16)?;
    let pb = p.eval(beta);
    let lp = if pb.is_zero() {
        0.0
    } else {
        crate::arith::log_abs_at_place(&pb, crate::arith::Place::Archimedean) / std::f64::consts::LN_2
    };
    let prec = r.prec() + lp.max(0.0).ceil() as u32 + 16;
    let f = eval_f_direct(spec, s, &(alpha / beta), prec)?;
    let lhs = f.with_prec(prec + GUARD_BITS).mul_rational(&pb);
    let residual = lhs
        .sub(&Ball::from_rational(&p_is.eval(beta), prec + GUARD_BITS))
        .sub(&r.with_prec(prec + GUARD_BITS));
    Ok((r, residual))
}

/// Check the remainder identity for every `(l, i, s)` at `beta`, requiring
/// the residual to be certified below `2^-rel_bits |R|`.
pub fn check_remainder_identity(system: &PadeSystem, beta: &Rational, rel_bits: u32) -> Result<IdentityReport> {
    let (r, m) = (system.r(), system.m());
    let idx: Vec<(usize, usize, usize)> = (0..=system.rm())
        .flat_map(|l| (0..m).flat_map(move |i| (0..r).map(move |s| (l, i, s))))
        .collect();
    let entries: Vec<IdentityEntry> = idx
        .par_iter()
        .map(|&(l, i, s)| {
            let (rb, res) = identity_entry(
                &system.spec,
                &system.alphas[i],
                s,
                system.n,
                &system.p[l],
                &system.p_is[l][i][s],
                &system.p[l],
                beta,
                rel_bits,
            )?;
            Ok(entry_from(l, i, s, &rb, &res, rel_bits))
        })
        .collect::<Result<_>>()?;
    let all_hold = entries.iter().all(|e| e.holds);
    Ok(IdentityReport { beta: beta.clone(), rel_bits, entries, all_hold })
}

fn entry_from(l: usize, i: usize, s: usize, rb: &Ball, res: &Ball, rel_bits: u32) -> IdentityEntry {
    let r_lo = rb.abs_lower();
    let res_hi = res.abs_upper();
    let (rel, holds) = if rb.contains_zero() {
        // exact zero remainder: the residual must itself enclose zero tightly
        (res.rad_log2(), res.contains_zero() && res.rad_log2() < -(rel_bits as f64))
    } else {
        let rel = crate::arith::log_abs_at_place(&(&res_hi / &r_lo), crate::arith::Place::Archimedean)
            / std::f64::consts::LN_2;
        (rel, res.contains_zero() && rel <= -(rel_bits as f64))
    };
    IdentityEntry {
        l,
        i,
        s,
        log2_abs_r: rb.mid_log2(),
        rel_residual_log2: rel,
        holds,
    }
}

/// The identity with one coefficient of `P_l` perturbed inside `P_l F_s`;
/// returns whether the residual still encloses zero.
pub fn fault_injected_identity_holds(
    system: &PadeSystem,
    l: usize,
    i: usize,
    s: usize,
    beta: &Rational,
    rel_bits: u32,
) -> Result<bool> {
    let corrupt = crate::pade::corrupt_coefficient(&system.p[l], 0);
    let (_, res) = identity_entry(
        &system.spec,
        &system.alphas[i],
        s,
        system.n,
        &corrupt,
        &system.p_is[l][i][s],
        &system.p[l],
        beta,
        rel_bits,
    )?;
    Ok(res.contains_zero())
}

/// `sum_{i,s} lambda_{i,s} (P_l(beta) F_s(alpha_i/beta) - P_{l,i,s}(beta))`
/// against `sum lambda_{i,s} R_{l,i,s}(beta)`; returns the two enclosures.
pub fn linear_form_shadow(
    system: &PadeSystem,
    l: usize,
    beta: &Rational,
    lambda: &[Vec<Rational>],
    rel_bits: u32,
) -> Result<(Ball, Ball)> {
    let (r, m) = (system.r(), system.m());
    let mut form = Ball::zero(0);
    let mut rem = Ball::zero(0);
    for i in 0..m {
        for s in 0..r {
            let (rb, res) = identity_entry(
                &system.spec,
                &system.alphas[i],
                s,
                system.n,
                &system.p[l],
                &system.p_is[l][i][s],
                &system.p[l],
                beta,
                rel_bits,
            )?;
            let lam = &lambda[i][s];
            // P F - P_is = R + residual
            form = form.add(&rb.add(&res).mul_rational(lam));
            rem = rem.add(&rb.mul_rational(lam));
        }
    }
    Ok((form, rem))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::ratio;

    #[test]
    fn pfq_classics() {
        let one = eval_pfq(&[ratio(1, 3)], &[], &rat(0), 64).unwrap();
        assert!(one.contains(&rat(1)));
        // 2F1(1,1;2;1/2) = 2 log 2
        let v = eval_pfq(&[rat(1), rat(1)], &[rat(2)], &ratio(1, 2), 200).unwrap();
        assert!((v.to_f64() - 2.0 * std::f64::consts::LN_2).abs() < 1e-15, "{v} {}", v.to_f64());
        assert!(v.rad_log2() < -200.0);
        // 1F0(1/2;;1/4) = (3/4)^{-1/2}
        let w = eval_pfq(&[ratio(1, 2)], &[], &ratio(1, 4), 128).unwrap();
        assert!((w.to_f64() - (4.0f64 / 3.0).sqrt()).abs() < 1e-15);
        let sq = w.mul(&w);
        assert!(sq.contains(&ratio(4, 3)));
    }

    #[test]
    fn family_routes_agree() {
        let spec = HypergeometricSpec::from_parameters(&[ratio(1, 3), ratio(1, 4)], &[ratio(1, 2)], None).unwrap();
        let fam = eval_f_family(&spec, &ratio(1, 3), 256).unwrap();
        for f in &fam {
            assert!(f.route_gap_log2().unwrap() < -200.0, "s = {}", f.s);
        }
        let f0 = eval_f_family(&spec, &rat(0), 64).unwrap();
        assert!(f0[0].direct.contains(&rat(0)));
        assert!(f0[0].closed.as_ref().unwrap().contains(&rat(0)));
    }

    #[test]
    fn lerch_routes() {
        let spec = HypergeometricSpec::lerch(&ratio(1, 2), 3).unwrap();
        let z = ratio(-2, 5);
        for f in eval_f_family(&spec, &z, 200).unwrap() {
            let l = lerch_phi(&ratio(1, 2), 3 - f.s, &z, 200).unwrap();
            assert!(relative_gap_log2(&f.direct, &l) < -180.0);
            assert!(relative_gap_log2(f.closed.as_ref().unwrap(), &l) < -180.0);
        }
    }
}
