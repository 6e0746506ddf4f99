//! Deterministic HPD model problems and baseline interpolation operators.

use std::path::PathBuf;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::Matrix;
use crate::mm;
use crate::random;

/// Description of a model problem, as it appears in experiment configs.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum ProblemSpec {
    #[serde(rename = "laplacian_1d", alias = "laplacian1d")]
    Laplacian1d { n: usize },
    #[serde(rename = "laplacian_2d", alias = "laplacian2d")]
    Laplacian2d { nx: usize, ny: usize },
    RandomHpd {
        n: usize,
        target_condition: f64,
        seed: u64,
    },
    FromFile { path: PathBuf },
}

impl ProblemSpec {
    pub fn build(&self) -> Result<Matrix> {
        match self {
            ProblemSpec::Laplacian1d { n } => laplacian_1d(*n),
            ProblemSpec::Laplacian2d { nx, ny } => laplacian_2d(*nx, *ny),
            ProblemSpec::RandomHpd {
                n,
                target_condition,
                seed,
            } => random_hpd(*n, *target_condition, *seed),
            ProblemSpec::FromFile { path } => mm::load_matrix_market(path),
        }
    }
}

fn tridiag(n: usize) -> Matrix {
    Matrix::from_real_fn(n, n, |i, j| match i.abs_diff(j) {
        0 => 2.0,
        1 => -1.0,
        _ => 0.0,
    })
}

/// Tridiagonal `(-1, 2, -1)`; eigenvalues `4 sin^2(k pi / (2(n+1)))`.
pub fn laplacian_1d(n: usize) -> Result<Matrix> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("laplacian_1d needs n >= 2, got {n}")));
    }
    Ok(tridiag(n))
}

/// Five-point stencil on an `nx x ny` grid (unknown `i + nx * j`), i.e. the
/// Kronecker sum `I_ny (x) T_nx + T_ny (x) I_nx`.
pub fn laplacian_2d(nx: usize, ny: usize) -> Result<Matrix> {
    if nx < 2 || ny < 2 {
        return Err(Error::InvalidDimension(format!(
            "laplacian_2d needs nx, ny >= 2, got {nx}x{ny}"
        )));
    }
    let n = nx * ny;
    Ok(Matrix::from_real_fn(n, n, |p, q| {
        let (ip, jp) = (p % nx, p / nx);
        let (iq, jq) = (q % nx, q / nx);
        if p == q {
            4.0
        } else if (jp == jq && ip.abs_diff(iq) == 1) || (ip == iq && jp.abs_diff(jq) == 1) {
            -1.0
        } else {
            0.0
        }
    }))
}

/// `Q diag(d) Q^H` with a seeded Haar unitary `Q` and `d` logarithmically
/// spaced on `[1, target_condition]`.
pub fn random_hpd(n: usize, target_condition: f64, seed: u64) -> Result<Matrix> {
    if n < 2 {
        return Err(Error::InvalidDimension(format!("random_hpd needs n >= 2, got {n}")));
    }
    if !target_condition.is_finite() || target_condition < 1.0 {
        return Err(Error::InvalidCondition(target_condition));
    }
    let log_c = target_condition.ln();
    let d: Vec<f64> = (0..n)
        .map(|k| (log_c * k as f64 / (n - 1) as f64).exp())
        .collect();
    let q = random::random_unitary(n, &mut random::rng(seed));
    Ok((&q * Matrix::from_real_diagonal(&d) * q.adjoint()).hermitian_part())
}

/// Linear interpolation from `r = (n_fine - 1) / 2` coarse points: column
/// `j` carries `1/2, 1, 1/2` on fine rows `2j, 2j + 1, 2j + 2` (0-based).
pub fn geometric_interp_1d(n_fine: usize) -> Result<Matrix> {
    if n_fine < 3 || n_fine.is_multiple_of(2) {
        return Err(Error::InvalidDimension(format!(
            "geometric_interp_1d needs an odd n_fine >= 3, got {n_fine}"
        )));
    }
    let r = (n_fine - 1) / 2;
    Ok(Matrix::from_real_fn(n_fine, r, |i, j| {
        if i == 2 * j + 1 {
            1.0
        } else if i == 2 * j || i == 2 * j + 2 {
            0.5
        } else {
            0.0
        }
    }))
}
