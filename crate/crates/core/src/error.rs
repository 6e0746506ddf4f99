use std::path::PathBuf;

use crate::twogrid::SolveOutcome;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("{what}: matrix is not Hermitian (relative asymmetry {asymmetry:e})")]
    NotHermitian { what: &'static str, asymmetry: f64 },

    #[error("{what}: matrix is not positive definite (margin {margin:e})")]
    NotPositiveDefinite { what: &'static str, margin: f64 },

    #[error("dimension mismatch in {op}: {detail}")]
    DimensionMismatch { op: &'static str, detail: String },

    #[error("{what}: matrix does not have full column rank (sigma_min/sigma_max = {ratio:e})")]
    RankDeficient { what: &'static str, ratio: f64 },

    #[error("orthogonal complement is empty: {k} columns already span C^{k}")]
    NoComplement { k: usize },

    #[error("{what} is singular (1-norm condition estimate {condition:e})")]
    Singular { what: &'static str, condition: f64 },

    #[error("matrix entry ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },

    #[error("{0}: eigenvalue iteration did not converge")]
    NoConvergence(&'static str),

    #[error("invalid dimension: {0}")]
    InvalidDimension(String),

    #[error("invalid target condition number {0} (must be >= 1)")]
    InvalidCondition(f64),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("I/O error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("zero diagonal entry at row {0}")]
    ZeroDiagonal(usize),

    #[error("smoother matrix is singular")]
    SingularSmoother,

    #[error("M + M^H - A is not positive definite (margin {margin:e})")]
    NotAConvergent { margin: f64 },

    #[error("composed smoother has 1 in the spectrum of its iteration matrix; X is singular")]
    SingularX,

    #[error("coarse grid matrix R A P is singular")]
    SingularCoarseMatrix,

    #[error("R X P is singular")]
    SingularRxp,

    #[error("complement Gram matrix P~^H A^-1 R~ is singular")]
    SingularComplementGram,

    #[error("coarse rank r = {r} must satisfy 1 <= r < n = {n}")]
    InvalidRank { r: usize, n: usize },

    #[error("variant requires the Galerkin restriction R = P^H")]
    NotGalerkin,

    #[error("variant {variant} cannot be assembled from this configuration: {detail}")]
    IncompatibleVariant { variant: &'static str, detail: String },

    #[error("system matrix A is singular")]
    SingularA,

    #[error("no convergence after {} iterations (relative residual {:e})", .0.iterations, .0.relative_residual)]
    MaxIterExceeded(Box<SolveOutcome>),

    #[error("iteration diverged after {} iterations (residual grew by {:e})", .0.iterations, .0.relative_residual)]
    Diverged(Box<SolveOutcome>),

    #[error("hypothesis violated: {0}")]
    HypothesisViolated(String),

    #[error("M - A is not positive definite (margin {margin:e})")]
    SmootherNotDominating { margin: f64 },

    #[error("smoother is not convergent: rho(I - M^-1 A) = {rho}")]
    NotConvergent { rho: f64 },

    #[error("interpolation has shape {rows}x{cols}, expected {expected_rows}x{expected_cols}")]
    IncompatibleShape {
        rows: usize,
        cols: usize,
        expected_rows: usize,
        expected_cols: usize,
    },

    #[error("config error at `{path}`: {message}")]
    Config { path: String, message: String },
}

impl Error {
    pub(crate) fn config(path: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Config {
            path: path.into(),
            message: message.into(),
        }
    }

    /// Process exit status for the command-line runner: 3 for a violated
    /// hypothesis, 2 for everything else (bad config, I/O, malformed input).
    pub fn exit_code(&self) -> i32 {
        if self.is_hypothesis_violation() {
            3
        } else {
            2
        }
    }

    /// True for errors that signal a violated hypothesis of one of the
    /// optimality or identity results (as opposed to malformed input).
    pub fn is_hypothesis_violation(&self) -> bool {
        matches!(
            self,
            Error::NotPositiveDefinite { .. }
                | Error::NotAConvergent { .. }
                | Error::SingularX
                | Error::SingularCoarseMatrix
                | Error::SingularRxp
                | Error::SingularComplementGram
                | Error::SingularA
                | Error::Singular { .. }
                | Error::HypothesisViolated(_)
                | Error::SmootherNotDominating { .. }
                | Error::NotConvergent { .. }
                | Error::MaxIterExceeded(_)
                | Error::Diverged(_)
                | Error::SingularSmoother
                | Error::NoConvergence(_)
        )
    }
}
