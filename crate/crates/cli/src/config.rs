//! Run configuration read from TOML and overridden by command-line flags.
//!
//! ```toml
//! command = "solve"
//! format = "csv"
//! output = "runs/deep-well"
//! seed = 0
//!
//! [mesh]
//! n = 300
//! h = 1.0
//!
//! [solve]
//! v0 = 100.0
//! dim = 3
//! ell = 0
//! ```

use std::path::{Path, PathBuf};

use clap::ValueEnum;
use serde::{Deserialize, Serialize};

use crate::error::{CliError, CliResult};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Solve,
    Critical,
    ThresholdFit,
    Ansatz,
    Deuteron,
    Qdot,
    Reproduce,
}

impl Command {
    pub fn name(&self) -> &'static str {
        match self {
            Command::Solve => "solve",
            Command::Critical => "critical",
            Command::ThresholdFit => "threshold-fit",
            Command::Ansatz => "ansatz",
            Command::Deuteron => "deuteron",
            Command::Qdot => "qdot",
            Command::Reproduce => "reproduce",
        }
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Format {
    #[default]
    Csv,
    Json,
}

impl Format {
    pub fn extension(&self) -> &'static str {
        match self {
            Format::Csv => "csv",
            Format::Json => "json",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize, ValueEnum)]
#[serde(rename_all = "lowercase")]
pub enum Target {
    Table1,
    Table2,
    Table3,
    Table4,
    Table5,
    Figure1,
}

impl Target {
    pub const ALL: [Target; 6] =
        [Target::Table1, Target::Table2, Target::Table3, Target::Table4, Target::Table5, Target::Figure1];

    pub fn name(&self) -> &'static str {
        match self {
            Target::Table1 => "table1",
            Target::Table2 => "table2",
            Target::Table3 => "table3",
            Target::Table4 => "table4",
            Target::Table5 => "table5",
            Target::Figure1 => "figure1",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct MeshDefaults {
    pub n: usize,
    pub h: f64,
}

impl Default for MeshDefaults {
    fn default() -> Self {
        MeshDefaults { n: 300, h: 1.0 }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct SolveParams {
    pub v0: Option<f64>,
    pub dim: Option<u32>,
    pub ell: Option<u32>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct CriticalParams {
    pub dim: Option<u32>,
    pub ell: Option<u32>,
    /// Principal label.
    pub n: Option<usize>,
    /// Mesh size for a single-`h` search; defaults to 1000.
    pub nmesh: Option<usize>,
    /// Scale for a single-`h` search; defaults to 1.
    pub h: Option<f64>,
    /// Sweep `h` at N = 1000 and 2000 and extrapolate.
    pub extrapolate: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ThresholdParams {
    pub dim: Option<u32>,
    pub ell: Option<u32>,
    pub n: Option<usize>,
    /// Critical depth; computed when absent.
    pub v0c: Option<f64>,
    pub samples: Option<usize>,
    pub nmesh: Option<usize>,
    pub h: Option<f64>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct AnsatzParams {
    pub v0: Option<f64>,
    pub dim: Option<u32>,
    pub ell: Option<u32>,
    pub terms: Option<usize>,
    pub root: Option<usize>,
    pub restarts: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct DeuteronParams {
    /// Range parameter; both tabulated models are run when absent.
    pub lambda: Option<f64>,
    pub c1: Option<f64>,
    pub c2: Option<f64>,
    pub hbar2_over_mu: Option<f64>,
    /// Largest superposition size.
    pub terms: Option<usize>,
    pub singlet: bool,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct QDotParams {
    pub lambda: Option<f64>,
    pub depth: Option<f64>,
    pub restarts: Option<usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct ReproduceParams {
    pub target: Option<Target>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields, default)]
pub struct RunConfig {
    pub command: Option<Command>,
    pub format: Format,
    pub output: PathBuf,
    pub seed: u64,
    /// Worker threads; the `GWELL_WORKERS` environment variable takes precedence.
    pub workers: Option<usize>,
    pub mesh: MeshDefaults,
    pub solve: SolveParams,
    pub critical: CriticalParams,
    pub threshold: ThresholdParams,
    pub ansatz: AnsatzParams,
    pub deuteron: DeuteronParams,
    pub qdot: QDotParams,
    pub reproduce: ReproduceParams,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            command: None,
            format: Format::Csv,
            output: PathBuf::from("gwell-out"),
            seed: 0,
            workers: None,
            mesh: MeshDefaults::default(),
            solve: SolveParams::default(),
            critical: CriticalParams::default(),
            threshold: ThresholdParams::default(),
            ansatz: AnsatzParams::default(),
            deuteron: DeuteronParams::default(),
            qdot: QDotParams::default(),
            reproduce: ReproduceParams::default(),
        }
    }
}

pub const WORKERS_ENV: &str = "GWELL_WORKERS";

fn require<T: Copy>(value: Option<T>, name: &str) -> CliResult<T> {
    value.ok_or_else(|| CliError::Validation(format!("missing required parameter `{name}`")))
}

fn positive(value: f64, name: &str) -> CliResult<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(CliError::Validation(format!("`{name}` must be positive and finite")))
    }
}

fn dimension(d: u32) -> CliResult<()> {
    if d == 2 || d == 3 {
        Ok(())
    } else {
        Err(CliError::Validation(format!("dimension must be 2 or 3, got {d}")))
    }
}

impl RunConfig {
    pub fn from_toml(text: &str) -> CliResult<Self> {
        toml::from_str(text).map_err(|e| CliError::Validation(e.to_string()))
    }

    pub fn load(path: &Path) -> CliResult<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::from_toml(&text)
    }

    pub fn command(&self) -> CliResult<Command> {
        require(self.command, "command")
    }

    /// Worker count: environment, then configuration, then available cores.
    pub fn worker_count(&self) -> CliResult<usize> {
        let from_env = match std::env::var(WORKERS_ENV) {
            Ok(v) => Some(
                v.trim()
                    .parse::<usize>()
                    .map_err(|_| CliError::Validation(format!("{WORKERS_ENV} must be a positive integer")))?,
            ),
            Err(_) => None,
        };
        let n = from_env
            .or(self.workers)
            .unwrap_or_else(|| std::thread::available_parallelism().map(|n| n.get()).unwrap_or(1));
        if n == 0 {
            return Err(CliError::Validation("worker count must be at least 1".into()));
        }
        Ok(n)
    }

    /// Checks everything the chosen command needs before any computation.
    pub fn validate(&self) -> CliResult<()> {
        if self.mesh.n == 0 {
            return Err(CliError::Validation("mesh size must be positive".into()));
        }
        positive(self.mesh.h, "mesh.h")?;
        if let Some(w) = self.workers {
            if w == 0 {
                return Err(CliError::Validation("worker count must be at least 1".into()));
            }
        }
        match self.command()? {
            Command::Solve => {
                let v0 = require(self.solve.v0, "solve.v0")?;
                if !(v0 >= 0.0 && v0.is_finite()) {
                    return Err(CliError::Validation("`solve.v0` must be finite and non-negative".into()));
                }
                dimension(require(self.solve.dim, "solve.dim")?)?;
            }
            Command::Critical => {
                let c = &self.critical;
                dimension(require(c.dim, "critical.dim")?)?;
                let ell = require(c.ell, "critical.ell")?;
                if require(c.n, "critical.n")? <= ell as usize {
                    return Err(CliError::Validation("`critical.n` must exceed `critical.ell`".into()));
                }
                if let Some(h) = c.h {
                    positive(h, "critical.h")?;
                }
            }
            Command::ThresholdFit => {
                let t = &self.threshold;
                dimension(require(t.dim, "threshold.dim")?)?;
                let ell = require(t.ell, "threshold.ell")?;
                if require(t.n, "threshold.n")? <= ell as usize {
                    return Err(CliError::Validation("`threshold.n` must exceed `threshold.ell`".into()));
                }
                if t.samples.is_some_and(|s| s < 4) {
                    return Err(CliError::Validation("`threshold.samples` must be at least 4".into()));
                }
            }
            Command::Ansatz => {
                let a = &self.ansatz;
                positive(require(a.v0, "ansatz.v0")?, "ansatz.v0")?;
                dimension(require(a.dim, "ansatz.dim")?)?;
                let k = a.terms.unwrap_or(1);
                if k == 0 || a.root.unwrap_or(0) >= k {
                    return Err(CliError::Validation("need terms >= 1 and root < terms".into()));
                }
            }
            Command::Deuteron => {
                let d = &self.deuteron;
                if d.lambda.is_some() || d.c1.is_some() || d.c2.is_some() {
                    positive(require(d.lambda, "deuteron.lambda")?, "deuteron.lambda")?;
                    require(d.c1, "deuteron.c1")?;
                    require(d.c2, "deuteron.c2")?;
                }
                if let Some(u) = d.hbar2_over_mu {
                    positive(u, "deuteron.hbar2_over_mu")?;
                }
                if d.terms == Some(0) {
                    return Err(CliError::Validation("`deuteron.terms` must be at least 1".into()));
                }
            }
            Command::Qdot => {
                let q = &self.qdot;
                if q.lambda.is_some() || q.depth.is_some() {
                    positive(require(q.lambda, "qdot.lambda")?, "qdot.lambda")?;
                    positive(require(q.depth, "qdot.depth")?, "qdot.depth")?;
                }
                if q.restarts == Some(0) {
                    return Err(CliError::Validation("`qdot.restarts` must be at least 1".into()));
                }
            }
            Command::Reproduce => {
                require(self.reproduce.target, "reproduce.target")?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_documented_example() {
        let c = RunConfig::from_toml(
            "command = \"solve\"\nformat = \"json\"\n[mesh]\nn = 300\n[solve]\nv0 = 100.0\ndim = 3\nell = 0\n",
        )
        .unwrap();
        assert_eq!(c.command, Some(Command::Solve));
        assert_eq!(c.format, Format::Json);
        assert_eq!(c.mesh.h, 1.0);
        c.validate().unwrap();
    }

    #[test]
    fn unknown_keys_rejected() {
        assert!(RunConfig::from_toml("comand = \"solve\"").is_err());
        assert!(RunConfig::from_toml("[solve]\nvo = 1.0").is_err());
    }

    #[test]
    fn missing_parameters_rejected() {
        let c = RunConfig::from_toml("command = \"solve\"\n[solve]\ndim = 3").unwrap();
        assert_eq!(c.validate().unwrap_err().exit_code(), 2);
        let c = RunConfig::from_toml("command = \"critical\"\n[critical]\ndim = 3\nell = 1\nn = 1").unwrap();
        assert!(c.validate().is_err());
    }

    #[test]
    fn deuteron_defaults_to_tabulated_models() {
        let c = RunConfig::from_toml("command = \"deuteron\"").unwrap();
        c.validate().unwrap();
        let c = RunConfig::from_toml("command = \"deuteron\"\n[deuteron]\nlambda = 4.0").unwrap();
        assert!(c.validate().is_err());
    }
}
