use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::problems::ProblemSpec;
use crate::smoothers::SmootherSpec;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Mode {
    Analyze,
    Optimize,
    Compare,
    Verify,
    Solve,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Analyze => "analyze",
            Mode::Optimize => "optimize",
            Mode::Compare => "compare",
            Mode::Verify => "verify",
            Mode::Solve => "solve",
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize, clap::ValueEnum)]
#[serde(rename_all = "snake_case")]
pub enum Format {
    #[default]
    Json,
    Csv,
}

/// Where an interpolation operator comes from.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Candidate {
    /// Lowest eigenvectors of `A u = lambda M u`.
    OptimalTg,
    /// Lowest eigenvectors of `A u = lambda X_STG u`.
    OptimalStg,
    /// Eigenvectors of the largest `(1 - lambda~)^2`.
    OptimalNonsym,
    /// Linear interpolation on a 1D grid of odd size.
    Geometric,
    /// Seeded complex Gaussian `n x r`.
    Random,
    /// `n x r` Matrix Market file.
    File(PathBuf),
}

impl Candidate {
    pub fn label(&self) -> String {
        match self {
            Candidate::OptimalTg => "optimal_tg".into(),
            Candidate::OptimalStg => "optimal_stg".into(),
            Candidate::OptimalNonsym => "optimal_nonsym".into(),
            Candidate::Geometric => "geometric".into(),
            Candidate::Random => "random".into(),
            Candidate::File(path) => format!("file:{}", path.display()),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolveSettings {
    #[serde(default = "default_solve_tol")]
    pub tol: f64,
    #[serde(default = "default_max_iter")]
    pub max_iter: usize,
}

fn default_solve_tol() -> f64 {
    1e-10
}

fn default_max_iter() -> usize {
    1000
}

impl Default for SolveSettings {
    fn default() -> Self {
        SolveSettings {
            tol: default_solve_tol(),
            max_iter: default_max_iter(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct OutputSettings {
    #[serde(default)]
    pub path: Option<PathBuf>,
    #[serde(default)]
    pub format: Format,
}

/// One experiment, read from a single JSON document.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ExperimentConfig {
    pub problem: ProblemSpec,
    pub smoother: SmootherSpec,
    pub coarse_rank: usize,
    #[serde(default)]
    pub mode: Option<Mode>,
    /// Interpolation used by `analyze` and `solve`.
    #[serde(default = "default_interpolation")]
    pub interpolation: Candidate,
    /// Interpolations compared by `compare`.
    #[serde(default)]
    pub candidates: Vec<Candidate>,
    /// Random instances checked by `verify`.
    #[serde(default = "default_instances")]
    pub instances: usize,
    /// Random interpolations tried against each optimum in `optimize`.
    #[serde(default = "default_samples")]
    pub samples: usize,
    #[serde(default = "default_tolerance")]
    pub tolerance: f64,
    #[serde(default)]
    pub seed: u64,
    #[serde(default)]
    pub solve: SolveSettings,
    #[serde(default)]
    pub output: OutputSettings,
}

fn default_interpolation() -> Candidate {
    Candidate::OptimalTg
}

fn default_instances() -> usize {
    20
}

fn default_samples() -> usize {
    200
}

fn default_tolerance() -> f64 {
    1e-8
}

impl ExperimentConfig {
    /// Parses JSON; deserialization errors name the offending field path.
    pub fn from_json(text: &str) -> Result<Self> {
        let de = &mut serde_json::Deserializer::from_str(text);
        let config: ExperimentConfig = serde_path_to_error::deserialize(de).map_err(|e| {
            let path = e.path().to_string();
            Error::config(path, e.into_inner().to_string())
        })?;
        config.validate()?;
        Ok(config)
    }

    /// Reads a config file. Relative file paths inside it are resolved
    /// against the file's directory.
    pub fn load(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = fs::read_to_string(path).map_err(|source| Error::Io {
            path: path.to_path_buf(),
            source,
        })?;
        let mut config = Self::from_json(&text)?;
        if let Some(dir) = path.parent() {
            config.rebase(dir);
        }
        Ok(config)
    }

    fn rebase(&mut self, dir: &Path) {
        let fix = |p: &mut PathBuf| {
            if p.is_relative() {
                *p = dir.join(&*p);
            }
        };
        if let ProblemSpec::FromFile { path } = &mut self.problem {
            fix(path);
        }
        if let Candidate::File(path) = &mut self.interpolation {
            fix(path);
        }
        for c in &mut self.candidates {
            if let Candidate::File(path) = c {
                fix(path);
            }
        }
    }

    /// Checks that do not need the assembled problem.
    pub fn validate(&self) -> Result<()> {
        if self.coarse_rank == 0 {
            return Err(Error::config("coarse_rank", "must be at least 1"));
        }
        if !(self.tolerance > 0.0 && self.tolerance.is_finite()) {
            return Err(Error::config("tolerance", "must be positive"));
        }
        if !(self.solve.tol > 0.0 && self.solve.tol.is_finite()) {
            return Err(Error::config("solve.tol", "must be positive"));
        }
        if self.solve.max_iter == 0 {
            return Err(Error::config("solve.max_iter", "must be at least 1"));
        }
        if self.instances == 0 {
            return Err(Error::config("instances", "must be at least 1"));
        }
        Ok(())
    }
}
