use std::collections::BTreeMap;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::Value;

use hgpade_core::arith::{parse_rational, parse_rational_list};
use hgpade_core::{Error, Rational, Result};

#[derive(Parser, Debug)]
#[command(name = "hgpade", version, about = "Padé approximants, Wronskian certificates and independence measures for hypergeometric G-functions")]
pub struct Cli {
    /// JSON file whose keys mirror the command-line flags.
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
    /// Output format.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,
    /// Write the report here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Json,
    Csv,
    Text,
}

impl std::str::FromStr for Format {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        <Format as ValueEnum>::from_str(s, true).map_err(|_| Error::Parse(format!("--format: unknown format {s:?}")))
    }
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Construct the approximant system for one weight n.
    Build(BuildArgs),
    /// Re-check every invariant of a stored system.
    Verify(VerifyArgs),
    /// Certify the generalized Wronskian.
    Wronskian(WronskianArgs),
    /// Empirical criterion and independence measure at one beta.
    Criterion(CriterionArgs),
    /// Smallest integer beta with a positive criterion.
    MinBeta(MinBetaArgs),
    /// Evaluate pFq and the contiguous family at a rational argument.
    Eval(EvalArgs),
    /// Denominator profile of (a)_k/(b)_k.
    Profile(ProfileArgs),
    /// Run the acceptance matrix.
    Suite(SuiteArgs),
}

#[derive(Args, Debug, Default, Clone)]
pub struct InstanceArgs {
    /// Numerator parameters, e.g. 1/3,1/4.
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    /// Denominator parameters, e.g. 1/2.
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Seed c_0: "auto" or a rational.
    #[arg(long)]
    pub c0: Option<String>,
    /// Pairwise distinct nonzero points alpha_1..alpha_m.
    #[arg(long, allow_hyphen_values = true)]
    pub alphas: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct BuildArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    #[arg(long)]
    pub n: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct VerifyArgs {
    /// A system file written by `build`.
    #[arg(long)]
    pub system: Option<PathBuf>,
}

#[derive(Args, Debug, Default)]
pub struct WronskianArgs {
    /// A system file; otherwise the instance flags and --n are used.
    #[arg(long)]
    pub system: Option<PathBuf>,
    #[command(flatten)]
    pub inst: InstanceArgs,
    #[arg(long)]
    pub n: Option<String>,
    /// Also run the reduction to the final determinants.
    #[arg(long)]
    pub full_chain: bool,
}

#[derive(Args, Debug, Default)]
pub struct CriterionArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub beta: Option<String>,
    /// "inf" or a prime.
    #[arg(long)]
    pub place: Option<String>,
    /// Inclusive range such as 4..16.
    #[arg(long)]
    pub n_range: Option<String>,
    #[arg(long)]
    pub epsilon: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct MinBetaArgs {
    #[command(flatten)]
    pub inst: InstanceArgs,
    /// Search bound such as 1e12.
    #[arg(long)]
    pub bound: Option<String>,
    #[arg(long)]
    pub n_range: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct EvalArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub z: Option<String>,
    #[arg(long)]
    pub bits: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct ProfileArgs {
    #[arg(long, allow_hyphen_values = true)]
    pub a: Option<String>,
    #[arg(long, allow_hyphen_values = true)]
    pub b: Option<String>,
    /// Index bound N.
    #[arg(long)]
    pub n: Option<String>,
}

#[derive(Args, Debug, Default)]
pub struct SuiteArgs {
    /// quick | desk.
    #[arg(long)]
    pub level: Option<String>,
    /// Seed of the randomized checks.
    #[arg(long)]
    pub seed: Option<String>,
    /// Comma separated criterion numbers; all when absent.
    #[arg(long)]
    pub only: Option<String>,
}

/// Values from `--config`, looked up when a flag is absent.
#[derive(Debug, Default)]
pub struct Config {
    values: BTreeMap<String, Value>,
}

impl Config {
    pub fn load(path: Option<&PathBuf>) -> Result<Config> {
        let Some(path) = path else { return Ok(Config::default()) };
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidInput(format!("--config {}: {e}", path.display())))?;
        let v: Value = serde_json::from_str(&text)
            .map_err(|e| Error::Parse(format!("--config {}: {e}", path.display())))?;
        let Value::Object(map) = v else {
            return Err(Error::Parse("--config: top level must be an object".into()));
        };
        // accept both `n_range` and `n-range`
        let values = map.into_iter().map(|(k, v)| (k.replace('-', "_"), v)).collect();
        Ok(Config { values })
    }

    fn raw(&self, key: &str) -> Option<String> {
        match self.values.get(key)? {
            Value::Null => None,
            Value::String(s) => Some(s.clone()),
            Value::Array(xs) => Some(
                xs.iter()
                    .map(|x| match x {
                        Value::String(s) => s.clone(),
                        other => other.to_string(),
                    })
                    .collect::<Vec<_>>()
                    .join(","),
            ),
            other => Some(other.to_string()),
        }
    }

    pub fn command(&self) -> Option<String> {
        self.raw("command")
    }

    /// The flag value, falling back to the config entry of the same name.
    pub fn get(&self, flag: &Option<String>, key: &str) -> Option<String> {
        flag.clone().or_else(|| self.raw(key))
    }

    pub fn get_bool(&self, flag: bool, key: &str) -> bool {
        flag || self.raw(key).is_some_and(|v| v == "true")
    }

    pub fn get_path(&self, flag: &Option<PathBuf>, key: &str) -> Option<PathBuf> {
        flag.clone().or_else(|| self.raw(key).map(PathBuf::from))
    }

    pub fn require(&self, flag: &Option<String>, key: &str) -> Result<String> {
        self.get(flag, key)
            .ok_or_else(|| Error::InvalidInput(format!("missing --{}", key.replace('_', "-"))))
    }
}

fn flag_err(key: &str, e: Error) -> Error {
    let flag = key.replace('_', "-");
    match e {
        Error::Parse(m) => Error::Parse(format!("--{flag}: {m}")),
        Error::InvalidInput(m) => Error::InvalidInput(format!("--{flag}: {m}")),
        other => other,
    }
}

pub fn rational_flag(cfg: &Config, flag: &Option<String>, key: &str) -> Result<Rational> {
    parse_rational(&cfg.require(flag, key)?).map_err(|e| flag_err(key, e))
}

pub fn list_flag(cfg: &Config, flag: &Option<String>, key: &str) -> Result<Vec<Rational>> {
    parse_rational_list(&cfg.get(flag, key).unwrap_or_default()).map_err(|e| flag_err(key, e))
}

pub fn parse_flag<T: std::str::FromStr>(cfg: &Config, flag: &Option<String>, key: &str, default: Option<T>) -> Result<T> {
    match cfg.get(flag, key) {
        Some(s) => s
            .trim()
            .parse()
            .map_err(|_| Error::Parse(format!("--{}: malformed value '{s}'", key.replace('_', "-")))),
        None => default.ok_or_else(|| Error::InvalidInput(format!("missing --{}", key.replace('_', "-")))),
    }
}

/// `lo..hi` (inclusive) with `hi - lo + 1 >= 4`.
pub fn n_range(cfg: &Config, flag: &Option<String>) -> Result<Vec<usize>> {
    let s = cfg.get(flag, "n_range").unwrap_or_else(|| "4..16".into());
    let bad = || Error::Parse(format!("--n-range: malformed range '{s}' (expected lo..hi)"));
    let (lo, hi) = s.split_once("..").ok_or_else(bad)?;
    let lo: usize = lo.trim().parse().map_err(|_| bad())?;
    let hi: usize = hi.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if lo == 0 || hi < lo + 3 {
        return Err(Error::InvalidInput(format!("--n-range: need 1 <= lo and at least 4 values, got '{s}'")));
    }
    Ok((lo..=hi).collect())
}
