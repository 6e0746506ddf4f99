//! Optimal interpolation operators.
//!
//! Every construction takes eigenvectors of a generalized Hermitian problem
//! `A u = lambda X u` for the appropriate `X`, keeps the `r` modes on which
//! smoothing is least effective, and predicts the optimal objective value
//! from the first discarded eigenvalue.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    eig_generalized, hpd_margin, max_principal_angle, operator_a_norm, orthonormal_basis,
    real_parts, spectral_radius, spectrum_general, Matrix, PD_MARGIN,
};
use crate::random::{self, random_interpolation};
use crate::smoothers::{
    require_hpd, scale_smoother, symmetrized_x, SmootherOperator, XOperator,
};
use crate::twogrid::{
    condition_number, preconditioner, symmetric_two_grid_error, two_grid_error, TwoGridConfig,
};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OptimalVariant {
    /// `rho(E)` for a general `X` with `lambda_max(B A) <= 1`.
    GeneralRho,
    /// `||E_STG||_A = ||E_TG||_A^2`.
    StgANorm,
    /// `rho(E_TG)` with `M - A` HPD.
    TgRho,
    /// Upper bound on `rho(E_TG)` for Hermitian `M` that is merely convergent.
    NonSymBound,
    /// `kappa(B_STG A)`.
    StgKappa,
    /// `kappa(B_TG A)`, measured with the scale-normalized smoother.
    TgKappa,
}

impl OptimalVariant {
    pub const ALL: [OptimalVariant; 6] = [
        OptimalVariant::GeneralRho,
        OptimalVariant::StgANorm,
        OptimalVariant::TgRho,
        OptimalVariant::NonSymBound,
        OptimalVariant::StgKappa,
        OptimalVariant::TgKappa,
    ];

    pub fn name(self) -> &'static str {
        match self {
            OptimalVariant::GeneralRho => "general_rho",
            OptimalVariant::StgANorm => "stg_a_norm",
            OptimalVariant::TgRho => "tg_rho",
            OptimalVariant::NonSymBound => "nonsym_bound",
            OptimalVariant::StgKappa => "stg_kappa",
            OptimalVariant::TgKappa => "tg_kappa",
        }
    }

    pub fn is_kappa(self) -> bool {
        matches!(self, OptimalVariant::StgKappa | OptimalVariant::TgKappa)
    }
}

#[derive(Clone, Debug)]
pub struct OptimalInterp {
    /// `n x r`, unit Euclidean norm columns.
    pub p_opt: Matrix,
    pub predicted_value: f64,
    pub variant: OptimalVariant,
    /// Ascending eigenvalues the prediction is read from.
    pub spectrum_used: Vec<f64>,
    /// The eigenvalues on either side of the cut coincide, so other optimal
    /// coarse spaces exist.
    pub non_unique_boundary: bool,
}

/// Relative gap below which two eigenvalues count as equal.
const TIE_TOL: f64 = 1e-9;

fn tied(a: f64, b: f64) -> bool {
    (a - b).abs() <= TIE_TOL * a.abs().max(b.abs()).max(1.0)
}

fn require_rank(r: usize, n: usize) -> Result<()> {
    if r == 0 || r >= n {
        Err(Error::InvalidRank { r, n })
    } else {
        Ok(())
    }
}

fn normalize_columns(p: &Matrix) -> Matrix {
    let norms: Vec<f64> = (0..p.cols()).map(|j| p.column(j).norm()).collect();
    Matrix::from_fn(p.rows(), p.cols(), |i, j| p[(i, j)] / norms[j])
}

fn require_hermitian_smoother(m: &SmootherOperator) -> Result<()> {
    if m.m.is_hermitian() {
        Ok(())
    } else {
        Err(Error::NotHermitian {
            what: "smoother",
            asymmetry: m.m.hermitian_asymmetry(),
        })
    }
}

fn require_dominating(m: &SmootherOperator, a: &Matrix, slack: f64) -> Result<()> {
    require_hermitian_smoother(m)?;
    let margin = hpd_margin(&(&m.m - a).hermitian_part())?;
    if margin > slack {
        Ok(())
    } else {
        Err(Error::SmootherNotDominating { margin })
    }
}

fn require_rho_convergent(m: &SmootherOperator, a: &Matrix) -> Result<()> {
    let rho = spectral_radius(&m.iteration_matrix(a))?;
    if rho < 1.0 - PD_MARGIN {
        Ok(())
    } else {
        Err(Error::NotConvergent { rho })
    }
}

#[derive(Clone, Debug)]
pub struct MaxMin {
    pub mu_r_plus_1: f64,
    /// Orthonormal basis of `span{X u_{r+1}, ..., X u_n}`.
    pub w_tilde: Matrix,
}

/// `max over (n-r)-dimensional W of lambda_min(W^H X^-1 W (W^H A^-1 W)^-1)`,
/// attained at `W~`; the value is the `(r+1)`-th eigenvalue of `X^-1 A`.
pub fn lemma_max_min(a: &Matrix, x_op: &XOperator, r: usize) -> Result<MaxMin> {
    let n = a.rows();
    require_rank(r, n)?;
    require_hpd("lemma_max_min(a)", a)?;
    require_hpd("lemma_max_min(x)", &x_op.x)?;
    let eig = eig_generalized(a, &x_op.x)?;
    let w = &x_op.x * eig.vectors.columns(r, n - r);
    Ok(MaxMin {
        mu_r_plus_1: eig.values[r],
        w_tilde: orthonormal_basis(&w)?,
    })
}

/// `lambda_min(W^H X^-1 W (W^H A^-1 W)^-1)` for a trial subspace `W`.
pub fn rayleigh_min(a: &Matrix, x_op: &XOperator, w: &Matrix) -> Result<f64> {
    let a_inv = crate::linalg::inverse("A", a).map_err(|_| Error::SingularA)?;
    let wh = w.adjoint();
    let num = (&wh * &x_op.x_inv * w).hermitian_part();
    let den = (&wh * a_inv * w).hermitian_part();
    Ok(eig_generalized(&num, &den)?.values[0])
}

/// `(I - P A_C^-1 P^H A)(I - X^-1 A)`.
fn general_error(a: &Matrix, x_op: &XOperator, p: &Matrix) -> Result<Matrix> {
    let correction = TwoGridConfig::galerkin(a.clone(), p.clone())?.coarse_correction()?;
    Ok(correction * (&x_op.x_inv * a).identity_minus())
}

/// `rho(E)` for the smoother defined by `X` and Galerkin `P`.
pub fn general_rho(a: &Matrix, x_op: &XOperator, p: &Matrix) -> Result<f64> {
    spectral_radius(&general_error(a, x_op, p)?)
}

/// `P_opt = [u_1, ..., u_r]` from `A u = lambda X u`; `min rho(E) = 1 - lambda_{r+1}`.
pub fn optimal_interpolation(a: &Matrix, x_op: &XOperator, r: usize) -> Result<OptimalInterp> {
    let n = a.rows();
    require_rank(r, n)?;
    require_hpd("optimal_interpolation(a)", a)?;
    require_hpd("optimal_interpolation(x)", &x_op.x)?;
    let eig = eig_generalized(a, &x_op.x)?;
    let p_opt = normalize_columns(&eig.vectors.columns(0, r));
    let predicted_value = 1.0 - eig.values[r];

    let e = general_error(a, x_op, &p_opt)?;
    let ba_max = *real_parts(&spectrum_general(&e.identity_minus())?)
        .last()
        .expect("non-empty spectrum");
    if ba_max > 1.0 + 1e-10 {
        return Err(Error::HypothesisViolated(format!(
            "lambda_max(B A) = {ba_max} exceeds 1; the optimal-rate characterization does not apply"
        )));
    }
    let achieved = spectral_radius(&e)?;
    if (achieved - predicted_value).abs() > 1e-8 {
        return Err(Error::HypothesisViolated(format!(
            "rho(E) = {achieved} with P_opt differs from the prediction {predicted_value}"
        )));
    }
    Ok(OptimalInterp {
        p_opt,
        predicted_value,
        variant: OptimalVariant::GeneralRho,
        non_unique_boundary: tied(eig.values[r - 1], eig.values[r]),
        spectrum_used: eig.values,
    })
}

/// Optimal `P` for `||E_STG||_A` and `kappa(B_STG A)`; both share `P_opt`
/// built from `X_STG^-1 A`.
pub fn optimize_stg(
    a: &Matrix,
    m: &SmootherOperator,
    r: usize,
) -> Result<(OptimalInterp, OptimalInterp)> {
    require_rank(r, a.rows())?;
    let x = symmetrized_x(m, a)?;
    let eig = eig_generalized(a, &x.x)?;
    let p_opt = normalize_columns(&eig.vectors.columns(0, r));
    let lambda = eig.values[r];
    let non_unique_boundary = tied(eig.values[r - 1], lambda);
    let norm = OptimalInterp {
        p_opt: p_opt.clone(),
        predicted_value: 1.0 - lambda,
        variant: OptimalVariant::StgANorm,
        spectrum_used: eig.values.clone(),
        non_unique_boundary,
    };
    let kappa = OptimalInterp {
        p_opt,
        predicted_value: 1.0 / lambda,
        variant: OptimalVariant::StgKappa,
        spectrum_used: eig.values,
        non_unique_boundary,
    };
    Ok((norm, kappa))
}

fn tg_eigen(a: &Matrix, m: &SmootherOperator, r: usize) -> Result<(Matrix, Vec<f64>, bool)> {
    require_rank(r, a.rows())?;
    require_hpd("system matrix", a)?;
    require_hermitian_smoother(m)?;
    let eig = eig_generalized(a, &m.m)?;
    let p_opt = normalize_columns(&eig.vectors.columns(0, r));
    let tie = tied(eig.values[r - 1], eig.values[r]);
    Ok((p_opt, eig.values, tie))
}

/// Slack for `M - A` positive semidefinite; the scale-normalized smoother
/// sits exactly on the boundary.
const DOMINATION_SLACK: f64 = -1e-10;

/// `min rho(E_TG) = 1 - lambda~_{r+1}` over `A u = lambda~ M u`; needs
/// `M - A` positive (semi)definite.
pub fn optimize_tg_rho(a: &Matrix, m: &SmootherOperator, r: usize) -> Result<OptimalInterp> {
    require_dominating(m, a, DOMINATION_SLACK)?;
    let (p_opt, values, tie) = tg_eigen(a, m, r)?;
    Ok(OptimalInterp {
        p_opt,
        predicted_value: 1.0 - values[r],
        variant: OptimalVariant::TgRho,
        spectrum_used: values,
        non_unique_boundary: tie,
    })
}

/// `min kappa(B_TG A) = lambda~_n / lambda~_{r+1}`; needs `M` HPD and
/// `rho(I - M^-1 A) < 1`. The value refers to `B_TG` built from the
/// scale-normalized smoother (see [`evaluate`]).
pub fn optimize_tg_kappa(a: &Matrix, m: &SmootherOperator, r: usize) -> Result<OptimalInterp> {
    let (p_opt, values, tie) = tg_eigen(a, m, r)?;
    require_rho_convergent(m, a)?;
    Ok(OptimalInterp {
        p_opt,
        predicted_value: values[values.len() - 1] / values[r],
        variant: OptimalVariant::TgKappa,
        spectrum_used: values,
        non_unique_boundary: tie,
    })
}

/// Both TG optima; the coarse space is the same for the two objectives.
pub fn optimize_tg(
    a: &Matrix,
    m: &SmootherOperator,
    r: usize,
) -> Result<(OptimalInterp, OptimalInterp)> {
    Ok((optimize_tg_rho(a, m, r)?, optimize_tg_kappa(a, m, r)?))
}

/// Bound for Hermitian, convergent `M` without `M - A` HPD: eigenvectors of
/// `(I - M^-1 A)^2` for the `r` largest `lambda^ = (1 - lambda~)^2` give
/// `rho(E_TG) <= sqrt(lambda^_{n-r})`.
pub fn optimize_nonsym(a: &Matrix, m: &SmootherOperator, r: usize) -> Result<OptimalInterp> {
    let n = a.rows();
    require_rank(r, n)?;
    require_hpd("system matrix", a)?;
    require_hermitian_smoother(m)?;
    require_rho_convergent(m, a)?;
    let eig = eig_generalized(a, &m.m)?;
    let hat: Vec<f64> = eig.values.iter().map(|t| (1.0 - t) * (1.0 - t)).collect();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| hat[i].total_cmp(&hat[j]));
    let spectrum_used: Vec<f64> = order.iter().map(|&i| hat[i]).collect();
    let kept = &order[n - r..];
    let p_opt = normalize_columns(&eig.vectors.select_columns(kept));
    let predicted_value = spectrum_used[n - r - 1].sqrt();

    let achieved = spectral_radius(&two_grid_error(a, m, &p_opt)?.e)?;
    if achieved > predicted_value + 1e-8 {
        return Err(Error::HypothesisViolated(format!(
            "rho(E_TG) = {achieved} with P^ exceeds the bound {predicted_value}"
        )));
    }
    Ok(OptimalInterp {
        p_opt,
        predicted_value,
        variant: OptimalVariant::NonSymBound,
        non_unique_boundary: tied(spectrum_used[n - r - 1], spectrum_used[n - r]),
        spectrum_used,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct EquivalenceReport {
    pub holds: bool,
    /// Largest principal angle (radians) over all cuts `r`.
    pub max_principal_angle: f64,
    /// `max |lambda_i(X_STG^-1 A) - p(lambda~_i)|` with `p(t) = 2t - t^2`.
    pub max_polynomial_residual: f64,
}

pub const ANGLE_TOL: f64 = 1e-8;
pub const POLYNOMIAL_TOL: f64 = 1e-9;

/// Checks that the STG and TG optimal coarse spaces coincide for every `r`
/// and that `sigma(X_STG^-1 A) = p(sigma(M^-1 A))`. Cuts inside a cluster of
/// equal eigenvalues are moved to the end of the cluster.
pub fn eigenvector_equivalence_check(a: &Matrix, m: &SmootherOperator) -> Result<EquivalenceReport> {
    require_hpd("system matrix", a)?;
    require_dominating(m, a, DOMINATION_SLACK)?;
    let n = a.rows();
    let x = symmetrized_x(m, a)?;
    let stg = eig_generalized(a, &x.x)?;
    let tg = eig_generalized(a, &m.m)?;
    let max_polynomial_residual = stg
        .values
        .iter()
        .zip(&tg.values)
        .map(|(l, t)| (l - (2.0 * t - t * t)).abs())
        .fold(0.0, f64::max);

    let mut max_angle = 0.0f64;
    let mut r = 1;
    while r < n {
        let mut cut = r;
        while cut < n && tied(tg.values[cut - 1], tg.values[cut]) {
            cut += 1;
        }
        if cut < n {
            let angle = max_principal_angle(&stg.vectors.columns(0, cut), &tg.vectors.columns(0, cut))?;
            max_angle = max_angle.max(angle);
        }
        r = cut + 1;
    }
    Ok(EquivalenceReport {
        holds: max_angle < ANGLE_TOL && max_polynomial_residual < POLYNOMIAL_TOL,
        max_principal_angle: max_angle,
        max_polynomial_residual,
    })
}

/// Objective value of `variant` for smoother `m` and Galerkin interpolation `p`.
/// `GeneralRho` is evaluated with `X = X_STG` (use [`general_rho`] for other `X`).
pub fn evaluate(variant: OptimalVariant, a: &Matrix, m: &SmootherOperator, p: &Matrix) -> Result<f64> {
    match variant {
        OptimalVariant::GeneralRho => general_rho(a, &symmetrized_x(m, a)?, p),
        OptimalVariant::StgANorm => operator_a_norm(&symmetric_two_grid_error(a, m, p)?.e, a),
        OptimalVariant::TgRho | OptimalVariant::NonSymBound => {
            spectral_radius(&two_grid_error(a, m, p)?.e)
        }
        OptimalVariant::StgKappa => {
            condition_number(&preconditioner(&symmetric_two_grid_error(a, m, p)?)?)
        }
        OptimalVariant::TgKappa => {
            let scaled = scale_smoother(m, a)?;
            condition_number(&preconditioner(&two_grid_error(a, &scaled, p)?)?)
        }
    }
}

/// Smallest objective over `samples` seeded random full-rank `n x r` candidates.
pub fn sample_minimum(
    variant: OptimalVariant,
    a: &Matrix,
    m: &SmootherOperator,
    r: usize,
    samples: usize,
    seed: u64,
) -> Result<f64> {
    require_rank(r, a.rows())?;
    let mut rng = random::rng(seed);
    let mut best = f64::INFINITY;
    for _ in 0..samples {
        let p = random_interpolation(a.rows(), r, &mut rng);
        best = best.min(evaluate(variant, a, m, &p)?);
    }
    Ok(best)
}
