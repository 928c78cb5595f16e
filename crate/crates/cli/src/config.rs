//! Run configuration: command-line flags over a key=value file over the
//! problem defaults.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::Args;
use sha2::{Digest, Sha256};
use weno_core::integrate::DtLaw;
use weno_core::problems::{problem_vocabulary, spec, ProblemId, ProblemSpec};
use weno_core::run::RunSettings;
use weno_core::stencil::Scheme;

use crate::CliError;

/// Environment variable naming the default output directory.
pub const OUT_DIR_ENV: &str = "WENO_OUT_DIR";
const DEFAULT_OUT_DIR: &str = "weno-out";

/// Flags shared by `run`, `compare` and `converge`. Every field is optional
/// so that unset flags fall through to the config file.
#[derive(Args, Clone, Debug, Default, PartialEq)]
pub struct Overrides {
    /// Problem name (see `list`).
    #[arg(long)]
    pub problem: Option<String>,
    /// Scheme name, or a comma-separated list for `compare`.
    #[arg(long)]
    pub scheme: Option<String>,
    /// Intervals in x. `converge` also takes `40,80,160` or `40..320` (doubling).
    #[arg(long)]
    pub n: Option<String>,
    /// Intervals in y (2D problems only).
    #[arg(long)]
    pub ny: Option<usize>,
    #[arg(long)]
    pub cfl: Option<f64>,
    /// Use `dt = dx^p` instead of the CFL bound.
    #[arg(long = "dt-power")]
    pub dt_power: Option<f64>,
    #[arg(long = "t-final")]
    pub t_final: Option<f64>,
    #[arg(long = "alpha-r")]
    pub alpha_r: Option<f64>,
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Output directory (default from WENO_OUT_DIR).
    #[arg(long)]
    pub out: Option<PathBuf>,
    #[arg(long)]
    pub threads: Option<usize>,
    /// Use the published grid sizes for 2D problems.
    #[arg(long = "paper-grid", default_missing_value = "true", num_args = 0..=1)]
    pub paper_grid: Option<bool>,
    /// Use `max(sin(pi x), 0)` for the critical-point problem.
    #[arg(long = "flip-critical-sign", default_missing_value = "true", num_args = 0..=1)]
    pub flip_critical_sign: Option<bool>,
    /// Flat `key = value` config file.
    #[arg(long)]
    pub config: Option<PathBuf>,
}

const KEYS: [&str; 13] = [
    "problem",
    "scheme",
    "n",
    "ny",
    "cfl",
    "dt_power",
    "t_final",
    "alpha_r",
    "epsilon",
    "out",
    "threads",
    "paper_grid",
    "flip_critical_sign",
];

fn parse_value<T: std::str::FromStr>(key: &str, v: &str) -> Result<T, CliError> {
    v.parse()
        .map_err(|_| CliError::Config(format!("invalid value for {key}: {v:?}")))
}

impl Overrides {
    /// Parses a config file body. `#` starts a comment; keys accept `-` or `_`.
    pub fn parse_file(text: &str) -> Result<Self, CliError> {
        let mut seen = BTreeMap::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line.split_once('=').ok_or_else(|| {
                CliError::Config(format!("line {}: expected key = value", lineno + 1))
            })?;
            let key = k.trim().replace('-', "_");
            if !KEYS.contains(&key.as_str()) {
                return Err(CliError::Config(format!(
                    "line {}: unknown key {:?} (known: {})",
                    lineno + 1,
                    k.trim(),
                    KEYS.join(", ")
                )));
            }
            if seen.insert(key.clone(), v.trim().to_string()).is_some() {
                return Err(CliError::Config(format!(
                    "line {}: duplicate key {key:?}",
                    lineno + 1
                )));
            }
        }
        let mut o = Overrides::default();
        for (key, v) in &seen {
            match key.as_str() {
                "problem" => o.problem = Some(v.clone()),
                "scheme" => o.scheme = Some(v.clone()),
                "n" => o.n = Some(v.clone()),
                "ny" => o.ny = Some(parse_value(key, v)?),
                "cfl" => o.cfl = Some(parse_value(key, v)?),
                "dt_power" => o.dt_power = Some(parse_value(key, v)?),
                "t_final" => o.t_final = Some(parse_value(key, v)?),
                "alpha_r" => o.alpha_r = Some(parse_value(key, v)?),
                "epsilon" => o.epsilon = Some(parse_value(key, v)?),
                "out" => o.out = Some(PathBuf::from(v)),
                "threads" => o.threads = Some(parse_value(key, v)?),
                "paper_grid" => o.paper_grid = Some(parse_value(key, v)?),
                "flip_critical_sign" => o.flip_critical_sign = Some(parse_value(key, v)?),
                _ => unreachable!("key list checked above"),
            }
        }
        Ok(o)
    }

    pub fn load_file(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| CliError::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::parse_file(&text)
    }

    /// Fields set here win over `lower`.
    pub fn over(self, lower: Overrides) -> Overrides {
        Overrides {
            problem: self.problem.or(lower.problem),
            scheme: self.scheme.or(lower.scheme),
            n: self.n.or(lower.n),
            ny: self.ny.or(lower.ny),
            cfl: self.cfl.or(lower.cfl),
            dt_power: self.dt_power.or(lower.dt_power),
            t_final: self.t_final.or(lower.t_final),
            alpha_r: self.alpha_r.or(lower.alpha_r),
            epsilon: self.epsilon.or(lower.epsilon),
            out: self.out.or(lower.out),
            threads: self.threads.or(lower.threads),
            paper_grid: self.paper_grid.or(lower.paper_grid),
            flip_critical_sign: self.flip_critical_sign.or(lower.flip_critical_sign),
            config: self.config,
        }
    }

    /// Merges the config file named by `--config`, if any.
    pub fn with_file(self) -> Result<Overrides, CliError> {
        match &self.config {
            Some(path) => {
                let file = Self::load_file(path)?;
                Ok(self.over(file))
            }
            None => Ok(self),
        }
    }
}

/// Fully resolved configuration for one command.
#[derive(Clone, Debug, PartialEq)]
pub struct RunConfig {
    pub spec: ProblemSpec,
    pub schemes: Vec<Scheme>,
    /// One entry except for `converge`.
    pub ns: Vec<usize>,
    pub ny: Option<usize>,
    pub cfl: Option<f64>,
    pub dt_power: Option<f64>,
    pub t_final: Option<f64>,
    pub alpha_r: Option<f64>,
    pub epsilon: Option<f64>,
    pub out: PathBuf,
    pub threads: Option<usize>,
    pub paper_grid: bool,
}

/// Parses `80`, `40,80,160` or `40..320` (successive doubling).
pub fn parse_grid_list(s: &str) -> Result<Vec<usize>, CliError> {
    let bad = || CliError::Config(format!("invalid grid list {s:?}"));
    let ns: Vec<usize> = if let Some((a, b)) = s.split_once("..") {
        let (lo, hi): (usize, usize) = (
            a.trim().parse().map_err(|_| bad())?,
            b.trim().parse().map_err(|_| bad())?,
        );
        if lo == 0 || hi < lo {
            return Err(bad());
        }
        std::iter::successors(Some(lo), |&n| n.checked_mul(2))
            .take_while(|&n| n <= hi)
            .collect()
    } else {
        s.split(',')
            .map(|t| t.trim().parse().map_err(|_| bad()))
            .collect::<Result<_, _>>()?
    };
    if ns.is_empty() || ns.contains(&0) {
        return Err(bad());
    }
    Ok(ns)
}

fn parse_schemes(s: &str) -> Result<Vec<Scheme>, CliError> {
    s.split(',')
        .map(|t| {
            t.trim().parse::<Scheme>().map_err(|_| {
                CliError::Config(format!(
                    "unknown scheme {:?} (known: {})",
                    t.trim(),
                    Scheme::ALL.map(Scheme::name).join(", ")
                ))
            })
        })
        .collect()
}

/// Which subcommand the configuration is resolved for.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Run,
    Compare,
    Converge,
}

impl RunConfig {
    pub fn resolve(o: Overrides, mode: Mode) -> Result<Self, CliError> {
        let name = o
            .problem
            .as_deref()
            .ok_or_else(|| CliError::Config(format!("--problem is required ({})", problem_vocabulary())))?;
        let id: ProblemId = name
            .parse()
            .map_err(|e: weno_core::problems::UnknownProblem| CliError::Config(e.to_string()))?;
        let mut spec = spec(id);
        if o.flip_critical_sign.unwrap_or(false) {
            spec = spec.with_flipped_critical_sign();
        }
        let schemes = match (&o.scheme, mode) {
            (Some(s), _) => parse_schemes(s)?,
            (None, Mode::Compare) => Scheme::ALL.to_vec(),
            (None, _) => vec![Scheme::Theta6],
        };
        if mode != Mode::Compare && schemes.len() != 1 {
            return Err(CliError::Config("this command takes a single scheme".into()));
        }
        let paper_grid = o.paper_grid.unwrap_or(false);
        let default_n = if paper_grid { spec.paper_grid.0 } else { spec.grid.0 };
        let ns = match (&o.n, mode) {
            (Some(s), _) => parse_grid_list(s)?,
            (None, Mode::Converge) => vec![40, 80, 160, 320],
            (None, _) => vec![default_n],
        };
        if mode != Mode::Converge && ns.len() != 1 {
            return Err(CliError::Config("--n takes a single value here".into()));
        }
        if o.ny.is_some() && !spec.is_2d() {
            return Err(CliError::Config(format!(
                "--ny given for the 1D problem {}",
                spec.name()
            )));
        }
        let ny = if spec.is_2d() {
            o.ny.or(if paper_grid { spec.paper_grid.1 } else { spec.grid.1 })
        } else {
            None
        };
        let positive = |name: &str, v: Option<f64>| -> Result<(), CliError> {
            match v {
                Some(x) if !(x > 0.0 && x.is_finite()) => Err(CliError::Config(format!(
                    "{name} must be positive, got {x}"
                ))),
                _ => Ok(()),
            }
        };
        positive("cfl", o.cfl)?;
        positive("dt-power", o.dt_power)?;
        positive("epsilon", o.epsilon)?;
        if let Some(t) = o.t_final {
            if !(t >= 0.0 && t.is_finite()) {
                return Err(CliError::Config(format!("t-final must be >= 0, got {t}")));
            }
        }
        if let Some(a) = o.alpha_r {
            if !(a >= 0.0 && a.is_finite()) {
                return Err(CliError::Config(format!("alpha-r must be >= 0, got {a}")));
            }
        }
        if o.threads == Some(0) {
            return Err(CliError::Config("threads must be at least 1".into()));
        }
        let out = o
            .out
            .or_else(|| std::env::var_os(OUT_DIR_ENV).map(PathBuf::from))
            .unwrap_or_else(|| PathBuf::from(DEFAULT_OUT_DIR));
        Ok(Self {
            spec,
            schemes,
            ns,
            ny,
            cfl: o.cfl,
            dt_power: o.dt_power,
            t_final: o.t_final,
            alpha_r: o.alpha_r,
            epsilon: o.epsilon,
            out,
            threads: o.threads,
            paper_grid,
        })
    }

    /// Solver settings for one scheme at `nx` intervals.
    pub fn settings(&self, scheme: Scheme, nx: usize) -> Result<RunSettings<f64>, CliError> {
        let mut s = RunSettings::for_spec(&self.spec, scheme).with_grid(nx, self.ny);
        if let Some(c) = self.cfl {
            s.control.cfl = c;
        }
        if let Some(p) = self.dt_power {
            s.control.dt_law = DtLaw::FixedPower(p);
        }
        if let Some(t) = self.t_final {
            s.control.t_final = t;
        }
        if let Some(a) = self.alpha_r {
            s.scheme.alpha_r = a;
        }
        if let Some(e) = self.epsilon {
            s.scheme.epsilon = e;
        }
        s.scheme
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        s.control
            .validate()
            .map_err(|e| CliError::Config(e.to_string()))?;
        Ok(s)
    }
}

/// Canonical text of everything that determines a run's numbers.
pub fn canonical_settings(spec: &ProblemSpec, s: &RunSettings<f64>) -> String {
    let mut out = String::new();
    let law = match s.control.dt_law {
        DtLaw::CflBound => "cfl".to_string(),
        DtLaw::FixedPower(p) => format!("power:{:016x}", p.to_bits()),
    };
    let _ = write!(
        out,
        "problem={};flip={};scheme={};nx={};ny={:?};cfl={:016x};dt_law={};t_final={:016x};\
         epsilon={:016x};p={};q={};c={:016x};alpha_r={:016x};alpha_mode={:?}",
        spec.name(),
        spec.flip_critical_sign,
        s.scheme.scheme.name(),
        s.nx,
        s.ny,
        s.control.cfl.to_bits(),
        law,
        s.control.t_final.to_bits(),
        s.scheme.epsilon.to_bits(),
        s.scheme.p_js,
        s.scheme.q_z,
        s.scheme.c_cu.to_bits(),
        s.scheme.alpha_r.to_bits(),
        s.alpha_mode,
    );
    out
}

/// SHA-256 of [`canonical_settings`], hex encoded.
pub fn config_hash(spec: &ProblemSpec, s: &RunSettings<f64>) -> String {
    let digest = Sha256::digest(canonical_settings(spec, s).as_bytes());
    digest.iter().fold(String::with_capacity(64), |mut acc, b| {
        let _ = write!(acc, "{b:02x}");
        acc
    })
}
