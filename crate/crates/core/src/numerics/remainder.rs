use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::{ratio_bound, Ball, GUARD_BITS};
use crate::arith::{log_abs_at_place, log_abs_bigint, rat, valuation, Place};
use crate::polyops::{psi_weights, HypergeometricSpec, RationalPoly};
use crate::{Error, Rational, Result};

const MAX_COEFFS: usize = 20_000;

/// `R(z) = sum_{k>=n} r_k z^{-(k+1)}` with `r_k = psi_{alpha,s}(t^k P)`.
///
/// The coefficients do not depend on the evaluation point, so they are
/// computed once and extended on demand.
#[derive(Clone, Debug)]
pub struct RemainderSeries {
    spec: HypergeometricSpec,
    alpha: Rational,
    s: usize,
    p: RationalPoly,
    n: usize,
    weights: Vec<Rational>,
    coeffs: Vec<Rational>,
}

impl RemainderSeries {
    pub fn new(spec: &HypergeometricSpec, alpha: &Rational, s: usize, p: &RationalPoly, n: usize) -> Self {
        RemainderSeries {
            spec: spec.clone(),
            alpha: alpha.clone(),
            s,
            p: p.clone(),
            n,
            weights: Vec::new(),
            coeffs: Vec::new(),
        }
    }

    fn ensure_weights(&mut self, len: usize) {
        if self.weights.len() < len {
            let target = len.max(2 * self.weights.len()).max(32);
            self.weights = psi_weights(&self.spec, &self.alpha, self.s, target);
        }
    }

    /// `r_n .. r_{n+count-1}`.
    pub fn coefficients(&mut self, count: usize) -> Result<&[Rational]> {
        if count > MAX_COEFFS {
            return Err(Error::Divergence(format!("remainder needs more than {MAX_COEFFS} terms")));
        }
        if self.coeffs.len() < count {
            let len = self.p.coeffs().len();
            self.ensure_weights(self.n + count + len);
            for k in self.n + self.coeffs.len()..self.n + count {
                let v = self
                    .p
                    .coeffs()
                    .iter()
                    .enumerate()
                    .filter(|(_, c)| !c.is_zero())
                    .fold(Rational::zero(), |acc, (d, c)| acc + c * &self.weights[k + d]);
                self.coeffs.push(v);
            }
        }
        Ok(&self.coeffs[..count])
    }

    fn ratio_data(&self) -> (Vec<Rational>, Vec<Rational>) {
        let g = &self.spec.gamma()[..self.s];
        let mut num: Vec<Rational> = g.iter().map(|v| v + Rational::one()).collect();
        num.extend(self.spec.eta().iter().cloned());
        let mut den: Vec<Rational> = g.to_vec();
        den.extend(self.spec.zeta().iter().map(|v| v + Rational::one()));
        (num, den)
    }

    /// Archimedean enclosure of `R(beta)` with relative accuracy about `2^-rel_bits`.
    pub fn eval_archimedean(&mut self, beta: &Rational, rel_bits: u32) -> Result<Ball> {
        let x = &self.alpha / beta;
        if x.abs() >= Rational::one() {
            return Err(Error::InvalidInput("need |alpha/beta| < 1".into()));
        }
        let len = self.p.coeffs().len();
        if len == 0 {
            return Ok(Ball::zero(rel_bits));
        }
        let inv = beta.recip();
        let (num, den) = self.ratio_data();
        let cap = (Rational::one() + x.abs()) / rat(2);
        // beta^-(n+j+1) = bq^e / bp^e, kept as unreduced integer powers
        let (bp, bq) = (beta.numer().clone(), beta.denom().clone());
        let mut pows: Vec<(BigInt, BigInt)> = vec![(bp.pow(self.n as u32 + 1), bq.pow(self.n as u32 + 1))];
        let mut count = 0usize;
        let mut prec: Option<u32> = None;
        loop {
            count += 16;
            self.coefficients(count)?;
            while pows.len() < count {
                let (a, b) = pows.last().expect("nonempty");
                let next = (a * &bp, b * &bq);
                pows.push(next);
            }
            if prec.is_none() {
                if let Some((j, lead)) = self.coeffs[..count].iter().enumerate().find(|(_, c)| !c.is_zero()) {
                    let l2 = (log_abs_at_place(lead, Place::Archimedean)
                        + log_abs_bigint(&pows[j].1)
                        - log_abs_bigint(&pows[j].0))
                        / std::f64::consts::LN_2;
                    prec = Some((rel_bits as f64 + GUARD_BITS as f64 - l2).max(GUARD_BITS as f64).ceil() as u32);
                }
            }
            let big_k = self.n + count;
            let Some(rho) = ratio_bound(&x, &num, &den, big_k) else { continue };
            if rho >= cap {
                continue;
            }
            self.ensure_weights(big_k + len);
            // sum_{k >= K} |r_k beta^{-(k+1)}| <= sum_d |p_d| |beta|^d |u_{K+d}| / (1 - rho)
            let mut bound = Rational::zero();
            for (d, c) in self.p.coeffs().iter().enumerate() {
                if !c.is_zero() {
                    let u = &self.weights[big_k + d] * inv.pow((big_k + d + 1) as i32);
                    bound += c.abs() * beta.abs().pow(d as i32) * u.abs();
                }
            }
            bound /= Rational::one() - &rho;
            match prec {
                None if bound.is_zero() => return Ok(Ball::zero(rel_bits)),
                None => continue,
                Some(pr) => {
                    let ulp = Rational::new(1.into(), BigInt::one() << pr);
                    if bound < ulp {
                        let mut acc = Ball::zero(pr);
                        for (j, c) in self.coeffs[..count].iter().enumerate() {
                            if !c.is_zero() {
                                let (a, b) = &pows[j];
                                acc = acc.add(&Ball::from_fraction(&(c.numer() * b), &(c.denom() * a), pr));
                            }
                        }
                        return Ok(acc.add_error(&bound));
                    }
                }
            }
        }
    }

    /// `v_p(R(beta))`, or `None` when `R = 0` identically.
    ///
    /// Exact partial sums are accumulated until a lower bound for the
    /// valuation of every remaining term exceeds that of the partial sum.
    pub fn valuation_at(&mut self, beta: &Rational, p: u64) -> Result<Option<i64>> {
        let x = &self.alpha / beta;
        let vx = valuation(&x, p);
        if self.p.is_zero() {
            return Ok(None);
        }
        let pf = p as f64;
        let vp = |q: &Rational| valuation(q, p);
        let divides = |q: &Rational| vp(q) < 0;
        let g_low: i64 = self.spec.gamma()[..self.s].iter().map(|g| vp(g).min(0)).sum();
        let a_low: i64 = self.spec.eta().iter().map(|e| vp(e).min(0)).sum();
        let z_div: i64 = self.spec.zeta().iter().filter(|z| divides(z)).map(|z| vp(z)).sum();
        // zeta with p not dividing the denominator contribute Legendre-type terms
        let z_rest: Vec<(f64, f64)> = self
            .spec
            .zeta()
            .iter()
            .filter(|z| !divides(z))
            .map(|z| {
                let d = crate::arith::to_f64(&Rational::from_integer(z.denom().clone())).abs();
                let e = crate::arith::to_f64(&Rational::from_integer(z.numer().clone())).abs();
                (d, e + d)
            })
            .collect();
        let kappa = (a_low - z_div + vx) as f64 - z_rest.len() as f64 / (pf - 1.0);
        if kappa <= 0.0 {
            return Err(Error::Divergence(format!(
                "alpha/beta is not p-adically small enough for convergence at p = {p}"
            )));
        }
        let c_base = (g_low + vp(self.spec.c0()) + vx) as f64;
        // smooth lower bound for v_p(u_j), increasing for j >= j_star
        let slb = |j: usize| -> f64 {
            let jf = j as f64;
            c_base + jf * kappa - z_rest.iter().map(|(d, e)| ((jf * d + e).ln() / pf.ln()) + 1.0).sum::<f64>()
        };
        let j_star = (z_rest.len() as f64 / (kappa * pf.ln())).ceil() as usize + 1;
        let vbeta = vp(beta);
        let inv = beta.recip();
        let p_low: Vec<Option<i64>> = self
            .p
            .coeffs()
            .iter()
            .map(|c| if c.is_zero() { None } else { Some(vp(c)) })
            .collect();
        let mut sum = Rational::zero();
        let mut count = 0usize;
        let mut pw = inv.pow(self.n as i32 + 1);
        loop {
            let start = count;
            count += 16;
            self.coefficients(count)?;
            for j in start..count {
                let c = &self.coeffs[j];
                if !c.is_zero() {
                    sum += c * &pw;
                }
                pw *= &inv;
            }
            let big_k = self.n + count;
            if big_k < j_star || sum.is_zero() {
                if count > 4096 && sum.is_zero() {
                    return Ok(None);
                }
                continue;
            }
            let vs = vp(&sum);
            let tail_low = p_low
                .iter()
                .enumerate()
                .filter_map(|(d, v)| v.map(|v| v as f64 + d as f64 * vbeta as f64 + slb(big_k + d)))
                .fold(f64::INFINITY, f64::min);
            if tail_low > vs as f64 + 1e-9 {
                return Ok(Some(vs));
            }
        }
    }
}
