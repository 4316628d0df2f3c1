use std::io::Write;
use std::path::Path;

use serde::Serialize;

use hgpade_core::arith::{fmt_rational, DenominatorProfile};
use hgpade_core::criterion::{MeasureReport, MinBetaReport, RateFit};
use hgpade_core::pade::{PadeSystem, VerificationReport};
use hgpade_core::report::to_canonical_json;
use hgpade_core::suite::SuiteReport;
use hgpade_core::wronskian::WronskianReport;
use hgpade_core::{Error, Result};

use crate::args::Format;
use crate::EvalReport;

/// A report that can be written in every output format.
pub trait Render: Serialize {
    fn text(&self) -> String;
    /// Header followed by data rows.
    fn csv_rows(&self) -> Vec<Vec<String>>;
}

fn io_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::InvalidInput(format!("cannot write {}: {e}", path.display()))
}

pub fn render<R: Render>(report: &R, format: Format) -> Result<String> {
    match format {
        Format::Json => to_canonical_json(report),
        Format::Text => {
            let mut s = report.text();
            if !s.ends_with('\n') {
                s.push('\n');
            }
            Ok(s)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(Vec::new());
            for row in report.csv_rows() {
                w.write_record(&row).map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
            }
            let bytes = w.into_inner().map_err(|e| Error::InvalidInput(format!("csv: {e}")))?;
            String::from_utf8(bytes).map_err(|e| Error::InvalidInput(format!("csv: {e}")))
        }
    }
}

/// Write to `out`, or stdout when absent.
pub fn emit<R: Render>(report: &R, format: Format, out: Option<&Path>) -> Result<()> {
    let s = render(report, format)?;
    match out {
        Some(path) => std::fs::write(path, s).map_err(|e| io_err(path, e)),
        None => {
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(s.as_bytes())
                .map_err(|e| Error::InvalidInput(format!("stdout: {e}")))
        }
    }
}

fn f(x: f64) -> String {
    // shortest round-trip form, as in the JSON output
    serde_json::to_string(&x).unwrap_or_else(|_| x.to_string())
}

fn opt(x: Option<f64>) -> String {
    x.map(f).unwrap_or_default()
}

fn row<const N: usize>(xs: [&str; N]) -> Vec<String> {
    xs.iter().map(|s| s.to_string()).collect()
}

impl Render for PadeSystem {
    fn text(&self) -> String {
        let mut s = format!(
            "system r = {}, m = {}, n = {}, alphas = [{}]\n",
            self.r(),
            self.m(),
            self.n,
            self.alphas.iter().map(fmt_rational).collect::<Vec<_>>().join(", ")
        );
        for (l, p) in self.p.iter().enumerate() {
            s.push_str(&format!("P_{l}: degree {:?}\n", p.degree()));
        }
        s
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![row(["kind", "l", "i", "s", "k", "coefficient"])];
        for (l, p) in self.p.iter().enumerate() {
            for (k, c) in p.coeffs().iter().enumerate() {
                rows.push(vec!["P".into(), l.to_string(), String::new(), String::new(), k.to_string(), fmt_rational(c)]);
            }
            for (i, per_i) in self.p_is[l].iter().enumerate() {
                for (s, q) in per_i.iter().enumerate() {
                    for (k, c) in q.coeffs().iter().enumerate() {
                        rows.push(vec![
                            "P_is".into(),
                            l.to_string(),
                            i.to_string(),
                            s.to_string(),
                            k.to_string(),
                            fmt_rational(c),
                        ]);
                    }
                }
            }
        }
        rows
    }
}

impl Render for VerificationReport {
    fn text(&self) -> String {
        let mut s = format!(
            "verification {}: {} checks, {} failed\n",
            if self.passed { "passed" } else { "FAILED" },
            self.checks_run,
            self.failures.len()
        );
        for c in &self.failures {
            s.push_str(&format!("  [{}] {}: {}\n", c.anchor, c.property, c.detail));
        }
        s
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![row(["property", "anchor", "l", "i", "s", "passed", "detail"])];
        let idx = |x: Option<usize>| x.map(|v| v.to_string()).unwrap_or_default();
        for c in &self.failures {
            rows.push(vec![
                c.property.clone(),
                c.anchor.clone(),
                idx(c.l),
                idx(c.i),
                idx(c.s),
                c.passed.to_string(),
                c.detail.clone(),
            ]);
        }
        rows
    }
}

impl Render for WronskianReport {
    fn text(&self) -> String {
        let mut s = format!("r = {}, m = {}, n = {}\n{}\n", self.r, self.m, self.n, self.summary());
        s.push_str(&format!(
            "Delta = (-1)^rm lc Theta: {}; Delta = lc Theta: {}; Theta/C_nnm identity: {}\n",
            self.bunkai_signed_holds, self.bunkai_unsigned_holds, self.rn_holds
        ));
        for h in self.hypotheses.iter().filter(|h| !h.passed) {
            s.push_str(&format!("hypothesis violated: {} ({})\n", h.name, h.detail));
        }
        if let Some(e) = self.exponent_e {
            s.push_str(&format!("alpha exponent e = {e} ({:?})\n", self.exponent_statement));
        }
        for l in &self.reduction {
            s.push_str(&format!("reduction m = {} (u = {}): {}\n", l.m, l.u, l.holds));
        }
        for d in &self.final_dets {
            s.push_str(&format!("final determinant u = {}: {}\n", d.u, fmt_rational(&d.det)));
        }
        if let Some(z) = &self.zero_enters_at {
            s.push_str(&format!("zero enters at {z}\n"));
        }
        if let Some(v) = &self.theory_violation {
            s.push_str(&format!("THEORY VIOLATION: {v}\n"));
        }
        s
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![row(["quantity", "value"])];
        let mut push = |k: &str, v: String| rows.push(vec![k.into(), v]);
        push("delta", fmt_rational(&self.delta));
        push("theta", fmt_rational(&self.theta));
        push("leading_coeff_prm", fmt_rational(&self.leading_coeff_prm));
        push("c_nnm", fmt_rational(&self.c_nnm));
        for (s, a) in self.a0s.iter().enumerate() {
            push(&format!("a0_{s}"), fmt_rational(a));
        }
        push("bunkai_signed_holds", self.bunkai_signed_holds.to_string());
        push("bunkai_unsigned_holds", self.bunkai_unsigned_holds.to_string());
        push("rn_holds", self.rn_holds.to_string());
        push("verdict", format!("{:?}", self.verdict));
        rows
    }
}

fn fit_rows(rows: &mut Vec<Vec<String>>, name: &str, fit: &RateFit) {
    for (n, y) in fit.ns.iter().zip(&fit.values) {
        rows.push(vec![name.into(), n.to_string(), f(*y), f(fit.rate), f(fit.max_rel_residual)]);
    }
}

impl Render for MeasureReport {
    fn text(&self) -> String {
        format!(
            "place {} beta = {} n = {}..{}\n\
             A_emp = {:.6} (fit residual {:.4})\n\
             U_emp = {:.6} (fit residual {:.4})\n\
             V_emp = {:.6}\n\
             closed form ({}): A = {}, U = {}, V = {}\n\
             epsilon = {} mu = {:.6} log C = {:.6}\n\
             verdict: {}\n",
            self.v0,
            fmt_rational(&self.beta),
            self.n_range.0,
            self.n_range.1,
            self.a_emp,
            self.decay_fit.max_rel_residual,
            self.u_emp,
            self.growth_fit.max_rel_residual,
            self.v_emp,
            self.closed_form_constant,
            opt(self.a_cf),
            opt(self.u_cf),
            opt(self.v_cf),
            self.epsilon,
            self.mu_eps,
            self.log_c_eps,
            if self.verdict { "V_emp > 0" } else { "V_emp <= 0" }
        )
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![row(["series", "n", "value", "rate", "max_rel_residual"])];
        fit_rows(&mut rows, "decay_r", &self.decay_fit);
        fit_rows(&mut rows, "growth_p", &self.growth_fit);
        fit_rows(&mut rows, "nonlocal", &self.nonlocal_fit);
        rows
    }
}

impl Render for MinBetaReport {
    fn text(&self) -> String {
        let mut s = match &self.beta {
            Some(b) => format!("smallest beta = {b} (bound {})\n", self.search_bound),
            None => format!("no beta <= {} with V_emp > 0\n", self.search_bound),
        };
        for p in &self.probes {
            s.push_str(&format!("  beta = {:>16}  V_emp = {:.6}\n", p.beta, p.v_emp));
        }
        s
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![row(["beta", "v_emp"])];
        rows.extend(self.probes.iter().map(|p| vec![p.beta.clone(), f(p.v_emp)]));
        rows
    }
}

impl Render for EvalReport {
    fn text(&self) -> String {
        let mut s = format!("pFq = {} +/- 2^{}\n", self.value, f(self.error_log2));
        for m in &self.family {
            s.push_str(&format!(
                "F_{}(z) = {} +/- 2^{} (route gap 2^{})\n",
                m.s,
                m.value,
                f(m.error_log2),
                opt(m.route_gap_log2)
            ));
        }
        s
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![row(["quantity", "value", "error_log2", "route_gap_log2"])];
        rows.push(vec!["pFq".into(), self.value.clone(), f(self.error_log2), String::new()]);
        for m in &self.family {
            rows.push(vec![format!("F_{}", m.s), m.value.clone(), f(m.error_log2), opt(m.route_gap_log2)]);
        }
        rows
    }
}

impl Render for DenominatorProfile {
    fn text(&self) -> String {
        format!(
            "N = {}, D_N = {}, (1/N) log D_N = {}\n",
            self.n(),
            self.values.last().map(|v| v.to_string()).unwrap_or_default(),
            f(self.log_rate)
        )
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![row(["k", "d_k", "rate"])];
        for (k, d) in self.values.iter().enumerate() {
            rows.push(vec![k.to_string(), d.to_string(), f(self.rate_at(k))]);
        }
        rows
    }
}

impl Render for SuiteReport {
    fn text(&self) -> String {
        let mut s: String = self.outcomes.iter().map(|o| o.line() + "\n").collect();
        s.push_str(&format!(
            "{} of {} criteria passed\n",
            self.outcomes.iter().filter(|o| o.passed).count(),
            self.outcomes.len()
        ));
        s
    }

    fn csv_rows(&self) -> Vec<Vec<String>> {
        let mut rows = vec![row(["id", "title", "anchor", "passed", "elapsed_s", "budget_s", "detail"])];
        for o in &self.outcomes {
            rows.push(vec![
                o.id.to_string(),
                o.title.clone(),
                o.anchor.clone(),
                o.passed.to_string(),
                f(o.elapsed_s),
                f(o.budget_s),
                o.detail.clone(),
            ]);
        }
        rows
    }
}
