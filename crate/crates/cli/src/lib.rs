//! Command-line front end for `bsroots-core`: expression parsing, run
//! orchestration and report rendering.

pub mod parse;
pub mod render;

use std::fmt;
use std::time::Instant;

use bsroots_core::{
    bfunction_report, crosscheck_mod_p, default_max_level, detect_roots, nu_set,
    strength, ChainRing, Crosscheck, FrobeniusLift, NuLevelSet, PAdicRational, Poly, ReconBounds,
    ResidueTree, RootReport, StrengthResult,
};
use clap::{Parser, ValueEnum};
use rayon::prelude::*;
use serde::Serialize;

pub use parse::{infer_variables, parse_poly, ParseError, ParseErrorKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    /// ν-invariant windows for every level up to --max-level.
    Nu,
    /// Root detection from the residue tree.
    Roots,
    /// Strength of --alpha per level.
    Strength,
    /// Roots together with their strengths.
    Bfunction,
    /// Compare roots over Z/p^(m+1) with roots of f mod p.
    Crosscheck,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Structured,
}

/// Bernstein-Sato roots over Z/p^(m+1).
#[derive(Clone, Debug, Parser)]
#[command(name = "bsroots", version)]
pub struct RunConfig {
    /// Residue characteristic.
    #[arg(long)]
    pub p: u64,
    /// Coefficients live in Z/p^(m+1).
    #[arg(long, default_value_t = 0)]
    pub m: u32,
    /// Comma-separated variable names; inferred from --poly when omitted.
    #[arg(long, value_delimiter = ',')]
    pub vars: Vec<String>,
    /// The polynomial, e.g. "x^2 + 3*y".
    #[arg(long)]
    pub poly: String,
    /// Lift correction "x:h", meaning F(x) = x^p + p*h. Repeatable.
    #[arg(long = "lift")]
    pub lift: Vec<String>,
    #[arg(long, value_enum, default_value_t = Mode::Roots)]
    pub mode: Mode,
    /// Deepest level of the residue tree (required for --mode nu).
    #[arg(long)]
    pub max_level: Option<u32>,
    /// Largest denominator tried during reconstruction.
    #[arg(long)]
    pub den_bound: Option<u64>,
    /// Largest absolute numerator tried during reconstruction.
    #[arg(long)]
    pub num_bound: Option<u64>,
    /// The root for --mode strength, as "a/b".
    #[arg(long, allow_hyphen_values = true)]
    pub alpha: Option<String>,
    #[arg(long, value_enum, default_value_t = Format::Text)]
    pub format: Format,
    /// Include wall-clock time in the output. Off by default so that
    /// repeated runs print identical bytes.
    #[arg(long)]
    pub timing: bool,
}

#[derive(Debug)]
pub enum CliError {
    Parse { field: String, error: ParseError },
    Config(String),
    Engine(bsroots_core::Error),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse { .. } | CliError::Config(_) => 2,
            CliError::Engine(_) => 1,
        }
    }
}

impl fmt::Display for CliError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            CliError::Parse { field, error } => write!(f, "{field}: {error}"),
            CliError::Config(msg) => write!(f, "{msg}"),
            CliError::Engine(e) => write!(f, "{e}"),
        }
    }
}

impl std::error::Error for CliError {}

impl From<bsroots_core::Error> for CliError {
    fn from(e: bsroots_core::Error) -> Self {
        CliError::Engine(e)
    }
}

/// A validated configuration.
#[derive(Clone, Debug)]
pub struct Job {
    pub mode: Mode,
    pub vars: Vec<String>,
    pub f: Poly,
    pub lift: FrobeniusLift,
    pub max_level: u32,
    pub bounds: ReconBounds,
    pub alpha: Option<PAdicRational>,
}

impl Job {
    pub fn from_config(cfg: &RunConfig) -> Result<Job, CliError> {
        let ring = ChainRing::new(cfg.p, cfg.m).map_err(|e| CliError::Config(e.to_string()))?;
        let vars = if cfg.vars.is_empty() {
            infer_variables(&cfg.poly).map_err(|error| CliError::Parse {
                field: "poly".into(),
                error,
            })?
        } else {
            cfg.vars.iter().map(|v| v.trim().to_string()).collect()
        };
        if vars.is_empty() {
            return Err(CliError::Config("no variables: pass --vars".into()));
        }
        for (i, v) in vars.iter().enumerate() {
            let valid = v.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
                && v.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
            if !valid {
                return Err(CliError::Config(format!("invalid variable name {v:?}")));
            }
            if vars[..i].contains(v) {
                return Err(CliError::Config(format!("variable {v:?} listed twice")));
            }
        }
        let f = parse_poly(&cfg.poly, &vars, ring).map_err(|error| CliError::Parse {
            field: "poly".into(),
            error,
        })?;

        let mut corrections: Vec<Option<Poly>> = vec![None; vars.len()];
        for entry in &cfg.lift {
            let (name, expr) = entry
                .split_once(':')
                .ok_or_else(|| CliError::Config(format!("lift entry {entry:?} is not of the form x:expr")))?;
            let name = name.trim();
            let i = vars
                .iter()
                .position(|v| v == name)
                .ok_or_else(|| CliError::Config(format!("lift entry for unknown variable {name:?}")))?;
            if corrections[i].is_some() {
                return Err(CliError::Config(format!("lift for {name:?} given twice")));
            }
            let h = parse_poly(expr, &vars, ring).map_err(|error| CliError::Parse {
                field: format!("lift {name}"),
                error,
            })?;
            corrections[i] = Some(h);
        }
        let lift = if corrections.iter().all(Option::is_none) {
            FrobeniusLift::standard(ring, vars.len())
        } else {
            let hs = corrections
                .into_iter()
                .map(|h| h.unwrap_or_else(|| Poly::zero(ring, vars.len())))
                .collect();
            FrobeniusLift::with_corrections(ring, hs).map_err(|e| CliError::Config(e.to_string()))?
        };

        let default = ReconBounds::default_for(cfg.p);
        let den_bound = cfg.den_bound.unwrap_or(default.den_bound);
        if den_bound == 0 {
            return Err(CliError::Config("--den-bound must be at least 1".into()));
        }
        let bounds = ReconBounds {
            den_bound,
            num_bound: cfg.num_bound.unwrap_or(2 * den_bound),
        };

        let max_level = match (cfg.max_level, cfg.mode) {
            (Some(e), _) => e,
            (None, Mode::Nu) => return Err(CliError::Config("--mode nu needs --max-level".into())),
            (None, _) => default_max_level(cfg.p, cfg.m, bounds),
        };

        let alpha = cfg
            .alpha
            .as_deref()
            .map(|s| s.parse::<PAdicRational>().map_err(CliError::Config))
            .transpose()?;
        if let Some(a) = &alpha {
            if !a.is_p_integral(cfg.p) {
                return Err(CliError::Config(format!("alpha {a} is not {}-integral", cfg.p)));
            }
        }
        if cfg.mode == Mode::Strength && alpha.is_none() {
            return Err(CliError::Config("--mode strength needs --alpha".into()));
        }

        Ok(Job {
            mode: cfg.mode,
            vars,
            f,
            lift,
            max_level,
            bounds,
            alpha,
        })
    }
}

/// Engine results for one run.
#[derive(Clone, Debug)]
pub enum Outcome {
    Nu(Vec<NuLevelSet>),
    Roots(RootReport),
    Strength(PAdicRational, StrengthResult),
    Bfunction(RootReport),
    Crosscheck(Crosscheck),
}

impl Outcome {
    pub fn tree(&self) -> Option<&ResidueTree> {
        match self {
            Outcome::Roots(r) | Outcome::Bfunction(r) => Some(&r.tree),
            Outcome::Crosscheck(c) => Some(&c.over_v.tree),
            _ => None,
        }
    }
}

pub fn execute(job: &Job) -> Result<Outcome, CliError> {
    let (f, lift, e) = (&job.f, &job.lift, job.max_level);
    Ok(match job.mode {
        Mode::Nu => Outcome::Nu(
            (0..=e)
                .into_par_iter()
                .map(|level| nu_set(f, lift, level))
                .collect::<bsroots_core::Result<Vec<_>>>()?,
        ),
        Mode::Roots => Outcome::Roots(detect_roots(f, lift, e, job.bounds)?),
        Mode::Strength => {
            let alpha = job.alpha.expect("checked in from_config");
            Outcome::Strength(alpha, strength(f, lift, &alpha, 0, e)?)
        }
        Mode::Bfunction => Outcome::Bfunction(bfunction_report(f, lift, e, job.bounds)?),
        Mode::Crosscheck => Outcome::Crosscheck(crosscheck_mod_p(f, lift, e, job.bounds)?),
    })
}

/// What the binary prints and how it exits.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RunOutput {
    pub stdout: String,
    pub stderr: String,
    pub exit_code: u8,
}

/// Validates `cfg`, runs the engine and renders the result.
///
/// Exit codes: 0 on success, 1 for engine errors, 2 for parse or
/// configuration errors, 3 when a crosscheck finds a mismatch.
pub fn run(cfg: &RunConfig) -> RunOutput {
    let start = Instant::now();
    let result = Job::from_config(cfg).and_then(|job| execute(&job).map(|out| (job, out)));
    let elapsed = cfg.timing.then(|| start.elapsed());
    match result {
        Ok((job, outcome)) => {
            let exit_code = match &outcome {
                Outcome::Crosscheck(c) if !c.is_consistent() => 3,
                _ => 0,
            };
            let stdout = match cfg.format {
                Format::Text => render::text(&job, &outcome, elapsed),
                Format::Structured => render::structured(cfg, &job, &outcome, elapsed),
            };
            RunOutput {
                stdout,
                stderr: String::new(),
                exit_code,
            }
        }
        Err(err) => {
            let (stdout, stderr) = match cfg.format {
                Format::Text => (String::new(), format!("error: {err}\n")),
                Format::Structured => (render::error_record(&err), String::new()),
            };
            RunOutput {
                stdout,
                stderr,
                exit_code: err.exit_code(),
            }
        }
    }
}
