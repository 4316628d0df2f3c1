//! `hgpade`: command-line front end.
//!
//! Exit codes: 0 all verdicts pass; 1 parse, I/O or input errors; 2 a
//! hypothesis is violated; 3 theory violation (a certified quantity came out
//! wrong); 4 a negative verdict (criterion not satisfied, suite failure).

mod args;
mod emit;

use std::path::Path;
use std::process::ExitCode;

use clap::Parser;
use serde::Serialize;

use hgpade_core::arith::{d_n_profile, fmt_rational, parse_rational, Place};
use hgpade_core::criterion::{measure, min_beta, parse_bound, SystemFamily};
use hgpade_core::numerics::{eval_f_family, eval_pfq};
use hgpade_core::pade::{build_system, verify_system, PadeSystem};
use hgpade_core::polyops::HypergeometricSpec;
use hgpade_core::suite::{self, Level, SuiteReport};
use hgpade_core::wronskian::{certify_nonvanishing, WronskianVerdict};
use hgpade_core::{Error, Rational, Result};

use args::{list_flag, n_range, parse_flag, rational_flag, Cli, Command, Config, Format, InstanceArgs};
use emit::emit;

const DEFAULT_A: &str = "1/3,1/4";
const DEFAULT_B: &str = "1/2";
const DEFAULT_ALPHAS: &str = "1,2";

/// Output of `eval`.
#[derive(Serialize)]
pub struct EvalReport {
    pub a: Vec<String>,
    pub b: Vec<String>,
    pub z: String,
    pub bits: u32,
    /// Truncated decimal expansion of the enclosure midpoint.
    pub value: String,
    /// `log2` of the certified radius.
    pub error_log2: f64,
    pub family: Vec<FamilyValue>,
}

#[derive(Serialize)]
pub struct FamilyValue {
    pub s: usize,
    pub value: String,
    pub error_log2: f64,
    pub route_gap_log2: Option<f64>,
}

struct Ctx {
    cfg: Config,
    format: Format,
    out: Option<std::path::PathBuf>,
}

impl Ctx {
    fn emit<R: emit::Render>(&self, report: &R) -> Result<()> {
        emit(report, self.format, self.out.as_deref())
    }
}

fn spec_from(cfg: &Config, inst: &InstanceArgs) -> Result<HypergeometricSpec> {
    let a_flag = cfg.get(&inst.a, "a").or_else(|| Some(DEFAULT_A.into()));
    let b_flag = cfg.get(&inst.b, "b").or_else(|| Some(DEFAULT_B.into()));
    let a = list_flag(cfg, &a_flag, "a")?;
    let b = list_flag(cfg, &b_flag, "b")?;
    let c0 = match cfg.get(&inst.c0, "c0") {
        None => None,
        Some(s) if s.trim() == "auto" => None,
        Some(s) => Some(parse_rational(&s).map_err(|e| Error::Parse(format!("--c0: {e}")))?),
    };
    HypergeometricSpec::from_parameters(&a, &b, c0)
}

fn alphas_from(cfg: &Config, inst: &InstanceArgs) -> Result<Vec<Rational>> {
    let flag = cfg.get(&inst.alphas, "alphas").or_else(|| Some(DEFAULT_ALPHAS.into()));
    list_flag(cfg, &flag, "alphas")
}

fn read_system(path: &Path) -> Result<PadeSystem> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::InvalidInput(format!("--system {}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("--system {}: {e}", path.display())))
}

/// Exit code of a finished command whose report has been written.
type Status = i32;

fn run(cli: Cli) -> Result<Status> {
    let cfg = Config::load(cli.config.as_ref())?;
    let format = match cli.format {
        Some(f) => f,
        None => match cfg.get(&None, "format") {
            Some(s) => s.parse()?,
            None => Format::Json,
        },
    };
    let out = cli.out.clone().or_else(|| cfg.get_path(&None, "out"));
    let command = match cli.command {
        Some(c) => c,
        None => match cfg.command().as_deref() {
            Some("build") => Command::Build(Default::default()),
            Some("verify") => Command::Verify(Default::default()),
            Some("wronskian") => Command::Wronskian(Default::default()),
            Some("criterion") => Command::Criterion(Default::default()),
            Some("min-beta") | Some("min_beta") => Command::MinBeta(Default::default()),
            Some("eval") => Command::Eval(Default::default()),
            Some("profile") => Command::Profile(Default::default()),
            Some("suite") => Command::Suite(Default::default()),
            Some(other) => return Err(Error::Parse(format!("--config: unknown command {other:?}"))),
            None => return Err(Error::InvalidInput("no command given (see --help)".into())),
        },
    };
    let ctx = Ctx { cfg, format, out };
    let cfg = &ctx.cfg;
    match command {
        Command::Build(a) => {
            let spec = spec_from(cfg, &a.inst)?;
            let alphas = alphas_from(cfg, &a.inst)?;
            let n: usize = parse_flag(cfg, &a.n, "n", None)?;
            let sys = build_system(&spec, &alphas, n, None)?;
            ctx.emit(&sys)?;
            Ok(0)
        }
        Command::Verify(a) => {
            let path = cfg
                .get_path(&a.system, "system")
                .ok_or_else(|| Error::InvalidInput("missing --system".into()))?;
            let rep = verify_system(&read_system(&path)?);
            ctx.emit(&rep)?;
            Ok(if rep.passed { 0 } else { 4 })
        }
        Command::Wronskian(a) => {
            let sys = match cfg.get_path(&a.system, "system") {
                Some(path) => read_system(&path)?,
                None => {
                    let spec = spec_from(cfg, &a.inst)?;
                    let alphas = alphas_from(cfg, &a.inst)?;
                    let n: usize = parse_flag(cfg, &a.n, "n", None)?;
                    build_system(&spec, &alphas, n, None)?
                }
            };
            let rep = certify_nonvanishing(&sys, cfg.get_bool(a.full_chain, "full_chain"))?;
            ctx.emit(&rep)?;
            if let Some(v) = &rep.theory_violation {
                eprintln!("theory violation: {v}");
                return Ok(3);
            }
            if let Some(h) = rep.hypotheses.iter().find(|h| !h.passed) {
                eprintln!("hypothesis violated: {} ({})", h.name, h.detail);
                return Ok(2);
            }
            Ok(if rep.verdict == WronskianVerdict::CertifiedNonzero { 0 } else { 4 })
        }
        Command::Criterion(a) => {
            let spec = spec_from(cfg, &a.inst)?;
            let alphas = alphas_from(cfg, &a.inst)?;
            let beta = rational_flag(cfg, &a.beta, "beta")?;
            let place: Place = parse_flag(cfg, &a.place, "place", Some(Place::Archimedean))?;
            let eps: f64 = parse_flag(cfg, &a.epsilon, "epsilon", Some(0.1))?;
            let ns = n_range(cfg, &a.n_range)?;
            spec.require_hypotheses()?;
            let family = SystemFamily::build(&spec, &alphas, &ns)?;
            let rep = measure(&family, &beta, place, eps)?;
            ctx.emit(&rep)?;
            Ok(if rep.verdict { 0 } else { 4 })
        }
        Command::MinBeta(a) => {
            let spec = spec_from(cfg, &a.inst)?;
            let alphas = alphas_from(cfg, &a.inst)?;
            let bound = parse_bound(&cfg.get(&a.bound, "bound").unwrap_or_else(|| "1e12".into()))
                .map_err(|e| Error::Parse(format!("--bound: {e}")))?;
            let ns = n_range(cfg, &a.n_range)?;
            spec.require_hypotheses()?;
            let family = SystemFamily::build(&spec, &alphas, &ns)?;
            let rep = min_beta(&family, &bound)?;
            ctx.emit(&rep)?;
            Ok(if rep.beta.is_some() { 0 } else { 4 })
        }
        Command::Eval(a) => {
            let a_list = list_flag(cfg, &a.a, "a")?;
            let b_list = list_flag(cfg, &a.b, "b")?;
            let z = rational_flag(cfg, &a.z, "z")?;
            let bits: u32 = parse_flag(cfg, &a.bits, "bits", Some(256))?;
            let digits = (bits as f64 * std::f64::consts::LOG10_2).floor() as usize;
            let v = eval_pfq(&a_list, &b_list, &z, bits)?;
            let mut family = Vec::new();
            if a_list.len() == b_list.len() + 1 {
                if let Ok(spec) = HypergeometricSpec::from_parameters(&a_list, &b_list, None) {
                    for fv in eval_f_family(&spec, &z, bits)? {
                        family.push(FamilyValue {
                            s: fv.s,
                            value: fv.direct.to_decimal(digits),
                            error_log2: fv.direct.rad_log2(),
                            route_gap_log2: fv.route_gap_log2(),
                        });
                    }
                }
            }
            let rep = EvalReport {
                a: a_list.iter().map(fmt_rational).collect(),
                b: b_list.iter().map(fmt_rational).collect(),
                z: fmt_rational(&z),
                bits,
                value: v.to_decimal(digits),
                error_log2: v.rad_log2(),
                family,
            };
            ctx.emit(&rep)?;
            Ok(0)
        }
        Command::Profile(a) => {
            let x = rational_flag(cfg, &a.a, "a")?;
            let y = rational_flag(cfg, &a.b, "b")?;
            let n: usize = parse_flag(cfg, &a.n, "n", Some(200))?;
            let rep = d_n_profile(&x, &y, n)?;
            ctx.emit(&rep)?;
            Ok(0)
        }
        Command::Suite(a) => {
            let level: Level = parse_flag(cfg, &a.level, "level", Some(Level::Desk))?;
            let seed: u64 = parse_flag(cfg, &a.seed, "seed", Some(20240601))?;
            let rep = match cfg.get(&a.only, "only") {
                None => suite::run(level, seed),
                Some(list) => {
                    let ids: Vec<u8> = list
                        .split(',')
                        .map(|s| s.trim().parse().map_err(|_| Error::Parse(format!("--only: malformed id '{s}'"))))
                        .collect::<Result<_>>()?;
                    let outcomes = ids
                        .iter()
                        .map(|&id| suite::run_one(id, level, seed))
                        .collect::<Result<Vec<_>>>()?;
                    let passed = outcomes.iter().all(|o| o.passed);
                    SuiteReport { level, seed, outcomes, passed }
                }
            };
            ctx.emit(&rep)?;
            Ok(if rep.passed { 0 } else { 4 })
        }
    }
}

fn init_threads() -> Result<()> {
    if let Ok(v) = std::env::var("HGPADE_THREADS") {
        let n: usize = v
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("HGPADE_THREADS: malformed value '{v}'")))?;
        rayon::ThreadPoolBuilder::new()
            .num_threads(n)
            .build_global()
            .map_err(|e| Error::InvalidInput(format!("HGPADE_THREADS: {e}")))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let status = init_threads().and_then(|_| run(cli));
    match status {
        Ok(code) => ExitCode::from(code as u8),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
