//! Coarse matrices, error propagation operators, the induced preconditioner
//! `B` with `E = I - B A`, the coarse-space quantity `K(V_c)`, and a
//! stationary cycle solver.

use nalgebra::DVector;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    eig_generalized, inverse, real_parts, require_full_column_rank, spectrum_general, Matrix, C64,
};
use crate::smoothers::{symmetrized_x, SmootherOperator};

/// One smoothing stage: `nu` sweeps with `M`.
#[derive(Clone, Debug)]
pub struct SmoothingStep {
    pub smoother: SmootherOperator,
    pub sweeps: u32,
}

/// `(A, P, R, pre-smoother, post-smoother)`; `range(P)` is the coarse space.
#[derive(Clone, Debug)]
pub struct TwoGridConfig {
    pub a: Matrix,
    pub p: Matrix,
    pub r_op: Matrix,
    pub pre: Option<SmoothingStep>,
    pub post: Option<SmoothingStep>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Variant {
    /// `(I - M2^-1 A)^nu2 (I - P A_C^-1 R A) (I - M1^-1 A)^nu1`.
    General,
    /// `(I - M^-H A)(I - P A_C^-1 P^H A)`.
    Tg,
    /// `(I - M^-H A)(I - P A_C^-1 P^H A)(I - M^-1 A)`.
    Stg,
}

impl Variant {
    pub fn name(self) -> &'static str {
        match self {
            Variant::General => "general",
            Variant::Tg => "tg",
            Variant::Stg => "stg",
        }
    }
}

/// `A_C = R A P`.
pub fn coarse_matrix(a: &Matrix, p: &Matrix, r_op: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    if !a.is_square() || p.rows() != n || r_op.cols() != n || r_op.rows() != p.cols() {
        return Err(Error::DimensionMismatch {
            op: "coarse_matrix",
            detail: format!(
                "A {}x{}, P {}x{}, R {}x{}",
                a.rows(),
                a.cols(),
                p.rows(),
                p.cols(),
                r_op.rows(),
                r_op.cols()
            ),
        });
    }
    let ac = r_op * a * p;
    inverse("coarse matrix", &ac).map_err(|_| Error::SingularCoarseMatrix)?;
    Ok(ac)
}

impl TwoGridConfig {
    pub fn new(
        a: Matrix,
        p: Matrix,
        r_op: Matrix,
        pre: Option<SmoothingStep>,
        post: Option<SmoothingStep>,
    ) -> Result<Self> {
        let n = a.rows();
        let r = p.cols();
        if !a.is_square() || p.rows() != n {
            return Err(Error::DimensionMismatch {
                op: "TwoGridConfig",
                detail: format!("A {}x{}, P {}x{}", a.rows(), a.cols(), p.rows(), p.cols()),
            });
        }
        if r == 0 || r >= n {
            return Err(Error::InvalidRank { r, n });
        }
        require_full_column_rank("interpolation P", &p)?;
        for step in pre.iter().chain(post.iter()) {
            if step.smoother.m.rows() != n || !step.smoother.m.is_square() {
                return Err(Error::DimensionMismatch {
                    op: "TwoGridConfig",
                    detail: format!("smoother of size {} for n = {n}", step.smoother.m.rows()),
                });
            }
        }
        coarse_matrix(&a, &p, &r_op)?;
        Ok(TwoGridConfig { a, p, r_op, pre, post })
    }

    /// Galerkin configuration (`R = P^H`) without smoothing.
    pub fn galerkin(a: Matrix, p: Matrix) -> Result<Self> {
        let r_op = p.adjoint();
        Self::new(a, p, r_op, None, None)
    }

    /// Post-smoothing only, the `Tg` layout.
    pub fn two_grid(a: &Matrix, p: &Matrix, m: &SmootherOperator) -> Result<Self> {
        Self::new(a.clone(), p.clone(), p.adjoint(), None, Some(step(m, 1)))
    }

    /// Same smoother before and after, the `Stg` layout.
    pub fn symmetric(a: &Matrix, p: &Matrix, m: &SmootherOperator) -> Result<Self> {
        Self::new(a.clone(), p.clone(), p.adjoint(), Some(step(m, 1)), Some(step(m, 1)))
    }

    pub fn n(&self) -> usize {
        self.a.rows()
    }

    pub fn rank(&self) -> usize {
        self.p.cols()
    }

    pub fn is_galerkin(&self) -> bool {
        self.r_op.max_abs_diff(&self.p.adjoint()) == 0.0
    }

    /// `I - P A_C^-1 R A`.
    pub fn coarse_correction(&self) -> Result<Matrix> {
        let ac = coarse_matrix(&self.a, &self.p, &self.r_op)?;
        let ac_inv = inverse("coarse matrix", &ac).map_err(|_| Error::SingularCoarseMatrix)?;
        Ok((&self.p * ac_inv * &self.r_op * &self.a).identity_minus())
    }
}

fn step(m: &SmootherOperator, sweeps: u32) -> SmoothingStep {
    SmoothingStep {
        smoother: m.clone(),
        sweeps,
    }
}

/// An assembled error propagation matrix.
#[derive(Clone, Debug)]
pub struct ErrorPropagation {
    pub e: Matrix,
    pub variant: Variant,
    pub config: TwoGridConfig,
}

fn sweep_power(step: &Option<SmoothingStep>, a: &Matrix) -> Matrix {
    match step {
        Some(s) => s.smoother.iteration_matrix(a).pow(s.sweeps),
        None => Matrix::identity(a.rows()),
    }
}

fn incompatible(variant: Variant, detail: &str) -> Error {
    Error::IncompatibleVariant {
        variant: variant.name(),
        detail: detail.into(),
    }
}

pub fn assemble_error_propagation(config: &TwoGridConfig, variant: Variant) -> Result<ErrorPropagation> {
    let a = &config.a;
    let correction = config.coarse_correction()?;
    let e = match variant {
        Variant::General => sweep_power(&config.post, a) * correction * sweep_power(&config.pre, a),
        Variant::Tg | Variant::Stg => {
            if !config.is_galerkin() {
                return Err(Error::NotGalerkin);
            }
            let post = config
                .post
                .as_ref()
                .filter(|s| s.sweeps == 1)
                .ok_or_else(|| incompatible(variant, "needs exactly one post-smoothing sweep"))?;
            let tg = post.smoother.adjoint_iteration_matrix(a) * correction;
            if variant == Variant::Tg {
                if config.pre.as_ref().is_some_and(|s| s.sweeps > 0) {
                    return Err(incompatible(variant, "pre-smoothing is not part of E_TG"));
                }
                tg
            } else {
                let pre = config
                    .pre
                    .as_ref()
                    .filter(|s| s.sweeps == 1 && s.smoother.m == post.smoother.m)
                    .ok_or_else(|| {
                        incompatible(variant, "needs one pre-sweep with the post-smoother's M")
                    })?;
                tg * pre.smoother.iteration_matrix(a)
            }
        }
    };
    Ok(ErrorPropagation {
        e,
        variant,
        config: config.clone(),
    })
}

/// `E_TG` for Galerkin `P` and post-smoother `M`.
pub fn two_grid_error(a: &Matrix, m: &SmootherOperator, p: &Matrix) -> Result<ErrorPropagation> {
    assemble_error_propagation(&TwoGridConfig::two_grid(a, p, m)?, Variant::Tg)
}

/// `E_STG` for Galerkin `P` and smoother `M`.
pub fn symmetric_two_grid_error(
    a: &Matrix,
    m: &SmootherOperator,
    p: &Matrix,
) -> Result<ErrorPropagation> {
    assemble_error_propagation(&TwoGridConfig::symmetric(a, p, m)?, Variant::Stg)
}

/// `B` and `B A` with `E = I - B A`.
#[derive(Clone, Debug)]
pub struct PreconditionedSystem {
    pub b: Matrix,
    pub ba: Matrix,
}

pub fn preconditioner(e: &ErrorPropagation) -> Result<PreconditionedSystem> {
    let a_inv = inverse("A", &e.config.a).map_err(|_| Error::SingularA)?;
    let ba = e.e.identity_minus();
    let b = &ba * a_inv;
    Ok(PreconditionedSystem { b, ba })
}

/// `lambda_max(B A) / lambda_min(B A)` over the real parts of `sigma(B A)`.
pub fn condition_number(system: &PreconditionedSystem) -> Result<f64> {
    let re = real_parts(&spectrum_general(&system.ba)?);
    let (lo, hi) = (re[0], re[re.len() - 1]);
    if lo <= 0.0 {
        return Err(Error::HypothesisViolated(format!(
            "B A has a non-positive eigenvalue {lo:e}; its condition number is undefined"
        )));
    }
    Ok(hi / lo)
}

/// `K(V_c) = sup ||(I - Q) v||^2_{M~} / ||v||^2_A`, with `M~` the
/// symmetrized smoother and `Q = P (P^H M~ P)^-1 P^H M~`.
pub fn kvc(a: &Matrix, m: &SmootherOperator, p: &Matrix) -> Result<f64> {
    let n = a.rows();
    if p.rows() != n {
        return Err(Error::DimensionMismatch {
            op: "kvc",
            detail: format!("P has {} rows, A is {n}x{n}", p.rows()),
        });
    }
    if p.cols() == 0 || p.cols() >= n {
        return Err(Error::InvalidRank { r: p.cols(), n });
    }
    require_full_column_rank("kvc(P)", p)?;
    let m_tilde = symmetrized_x(m, a)?.x;
    let ph = p.adjoint();
    let gram = &ph * &m_tilde * p;
    let q = p * inverse("P^H M~ P", &gram)? * &ph * &m_tilde;
    let complement = q.identity_minus();
    let h = (complement.adjoint() * &m_tilde * &complement).hermitian_part();
    let eig = eig_generalized(&h, a)?;
    Ok(*eig.values.last().expect("non-empty spectrum"))
}

/// Result of [`run_cycle_solver`].
#[derive(Clone, Debug, Serialize)]
pub struct SolveOutcome {
    #[serde(skip)]
    pub solution: DVector<C64>,
    pub iterations: usize,
    pub observed_factor: f64,
    pub relative_residual: f64,
    pub residual_history: Vec<f64>,
}

/// Geometric mean of the trailing `min(10, len - 1)` reduction ratios
/// (the single ratio when only one exists).
fn trailing_factor(ratios: &[f64]) -> f64 {
    let take = match ratios.len() {
        0 => return 0.0,
        1 => 1,
        len => (len - 1).min(10),
    };
    let tail = &ratios[ratios.len() - take..];
    if tail.contains(&0.0) {
        return 0.0;
    }
    (tail.iter().map(|r| r.ln()).sum::<f64>() / take as f64).exp()
}

const DIVERGENCE_GROWTH: f64 = 1e6;

/// Iterates `x <- x + B (rhs - A x)` from `x = 0` until the relative
/// residual drops to `tol`.
pub fn run_cycle_solver(
    a: &Matrix,
    rhs: &DVector<C64>,
    config: &TwoGridConfig,
    variant: Variant,
    tol: f64,
    max_iter: usize,
) -> Result<SolveOutcome> {
    if rhs.len() != a.rows() || config.a != *a {
        return Err(Error::DimensionMismatch {
            op: "run_cycle_solver",
            detail: "rhs and config must match A".into(),
        });
    }
    if tol.is_nan() || tol <= 0.0 || max_iter == 0 {
        return Err(Error::InvalidParameter("tol > 0 and max_iter >= 1 required".into()));
    }
    let b = preconditioner(&assemble_error_propagation(config, variant)?)?.b;
    let rhs_norm = rhs.norm();
    let mut x = DVector::<C64>::zeros(a.rows());
    let mut outcome = SolveOutcome {
        solution: x.clone(),
        iterations: 0,
        observed_factor: 0.0,
        relative_residual: 0.0,
        residual_history: vec![rhs_norm],
    };
    if rhs_norm == 0.0 {
        return Ok(outcome);
    }
    outcome.relative_residual = 1.0;
    let mut residual = rhs.clone();
    let mut best = (rhs_norm, x.clone());
    let mut ratios = Vec::new();
    for k in 1..=max_iter {
        x += b.mul_vec(&residual);
        residual = rhs - a.mul_vec(&x);
        let norm = residual.norm();
        let prev = outcome.residual_history[k - 1];
        ratios.push(if prev == 0.0 { 0.0 } else { norm / prev });
        outcome.residual_history.push(norm);
        outcome.iterations = k;
        outcome.relative_residual = norm / rhs_norm;
        outcome.observed_factor = trailing_factor(&ratios);
        if norm < best.0 {
            best = (norm, x.clone());
        }
        if norm <= tol * rhs_norm {
            outcome.solution = x;
            return Ok(outcome);
        }
        if !norm.is_finite() || norm > DIVERGENCE_GROWTH * rhs_norm {
            outcome.solution = best.1;
            return Err(Error::Diverged(Box::new(outcome)));
        }
    }
    outcome.solution = best.1;
    outcome.relative_residual = best.0 / rhs_norm;
    Err(Error::MaxIterExceeded(Box::new(outcome)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::{eig_hermitian, operator_a_norm, spectral_radius};
    use crate::problems::{geometric_interp_1d, laplacian_1d, random_hpd};
    use crate::random;
    use crate::smoothers::{build_smoother, SmootherSpec};
    use approx::assert_abs_diff_eq;

    fn lap3() -> Matrix {
        laplacian_1d(3).unwrap()
    }

    fn wj(a: &Matrix) -> SmootherOperator {
        build_smoother(&SmootherSpec::WeightedJacobi { omega: 0.5 }, a).unwrap()
    }

    /// Eigenvectors of A for its `r` smallest eigenvalues.
    fn low_modes(a: &Matrix, r: usize) -> Matrix {
        eig_hermitian(a).unwrap().vectors.columns(0, r)
    }

    #[test]
    fn coarse_matrix_examples() {
        let a = Matrix::identity(4);
        let p = Matrix::identity(4).columns(0, 2);
        let ac = coarse_matrix(&a, &p, &p.adjoint()).unwrap();
        assert_eq!(ac, Matrix::identity(2));

        let a = lap3();
        let e = eig_hermitian(&a).unwrap();
        let u = e.vectors.columns(1, 1);
        let ac = coarse_matrix(&a, &u, &u.adjoint()).unwrap();
        assert_abs_diff_eq!(ac[(0, 0)].re, e.values[1], epsilon = 1e-12);

        let a = laplacian_1d(7).unwrap();
        let p = geometric_interp_1d(7).unwrap();
        let ac = coarse_matrix(&a, &p, &p.adjoint()).unwrap();
        let expect = Matrix::from_real_fn(3, 3, |i, j| match i.abs_diff(j) {
            0 => 1.0,
            1 => -0.5,
            _ => 0.0,
        });
        assert!(ac.max_abs_diff(&expect) < 1e-14);
    }

    #[test]
    fn coarse_matrix_singular() {
        let a = Matrix::from_real_diagonal(&[1.0, 2.0, 3.0]);
        let p = Matrix::from_real_rows(&[&[1.0], &[0.0], &[0.0]]);
        let r = Matrix::from_real_rows(&[&[0.0, 1.0, 0.0]]);
        assert!(matches!(coarse_matrix(&a, &p, &r), Err(Error::SingularCoarseMatrix)));
    }

    #[test]
    fn exact_smoother_gives_zero_error() {
        let a = lap3();
        let m = SmootherOperator::from_matrix(a.clone()).unwrap();
        let p = random::random_interpolation(3, 1, &mut random::rng(1));
        let e = two_grid_error(&a, &m, &p).unwrap();
        assert!(e.e.max_abs() < 1e-12);
    }

    #[test]
    fn full_rank_coarse_space_is_rejected() {
        let a = lap3();
        let p = Matrix::identity(3);
        assert!(matches!(
            TwoGridConfig::two_grid(&a, &p, &wj(&a)),
            Err(Error::InvalidRank { r: 3, n: 3 })
        ));
    }

    #[test]
    fn decoupled_tg_spectrum() {
        let a = lap3();
        let e = two_grid_error(&a, &wj(&a), &low_modes(&a, 1)).unwrap();
        let s = real_parts(&spectrum_general(&e.e).unwrap());
        for (v, w) in s.iter().zip([0.0, 0.146447, 0.5]) {
            assert_abs_diff_eq!(*v, w, epsilon = 1e-6);
        }
        assert_abs_diff_eq!(spectral_radius(&e.e).unwrap(), 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(operator_a_norm(&e.e, &a).unwrap(), 0.5, epsilon = 1e-12);
        let stg = symmetric_two_grid_error(&a, &wj(&a), &low_modes(&a, 1)).unwrap();
        assert_abs_diff_eq!(operator_a_norm(&stg.e, &a).unwrap().sqrt(), 0.5, epsilon = 1e-12);
    }

    #[test]
    fn variant_requirements() {
        let a = lap3();
        let p = low_modes(&a, 1);
        let m = wj(&a);
        let bare = TwoGridConfig::galerkin(a.clone(), p.clone()).unwrap();
        assert!(matches!(
            assemble_error_propagation(&bare, Variant::Tg),
            Err(Error::IncompatibleVariant { .. })
        ));
        let sym = TwoGridConfig::symmetric(&a, &p, &m).unwrap();
        assert!(assemble_error_propagation(&sym, Variant::Tg).is_err());
        let tg = TwoGridConfig::two_grid(&a, &p, &m).unwrap();
        assert!(assemble_error_propagation(&tg, Variant::Stg).is_err());
        let r = Matrix::from_real_rows(&[&[1.0, 0.0, 0.0]]);
        let non_galerkin = TwoGridConfig::new(a.clone(), p.clone(), r, None, tg.post.clone()).unwrap();
        assert!(matches!(
            assemble_error_propagation(&non_galerkin, Variant::Tg),
            Err(Error::NotGalerkin)
        ));
        assemble_error_propagation(&non_galerkin, Variant::General).unwrap();
    }

    #[test]
    fn stg_is_tg_times_presmoothing() {
        let a = random_hpd(6, 30.0, 2).unwrap();
        let m = build_smoother(&SmootherSpec::GaussSeidel, &a).unwrap();
        let p = random::random_interpolation(6, 2, &mut random::rng(3));
        let tg = two_grid_error(&a, &m, &p).unwrap();
        let stg = symmetric_two_grid_error(&a, &m, &p).unwrap();
        let rebuilt = &tg.e * m.iteration_matrix(&a);
        assert!(stg.e.max_abs_diff(&rebuilt) < 1e-12);
    }

    #[test]
    fn general_variant_matches_literal_product() {
        let a = random_hpd(5, 10.0, 8).unwrap();
        let m1 = build_smoother(&SmootherSpec::Sor { omega: 1.2 }, &a).unwrap();
        let m2 = build_smoother(&SmootherSpec::Jacobi, &a).unwrap();
        let p = random::random_interpolation(5, 2, &mut random::rng(4));
        let r = random::complex_gaussian(2, 5, &mut random::rng(5));
        let cfg = TwoGridConfig::new(
            a.clone(),
            p.clone(),
            r.clone(),
            Some(SmoothingStep { smoother: m1.clone(), sweeps: 2 }),
            Some(SmoothingStep { smoother: m2.clone(), sweeps: 1 }),
        )
        .unwrap();
        let e = assemble_error_propagation(&cfg, Variant::General).unwrap();
        let ac_inv = inverse("ac", &(&r * &a * &p)).unwrap();
        let c = (&p * ac_inv * &r * &a).identity_minus();
        let expect = m2.iteration_matrix(&a) * c * m1.iteration_matrix(&a).pow(2);
        assert!(e.e.max_abs_diff(&expect) < 1e-12);
    }

    #[test]
    fn preconditioner_examples() {
        let a = lap3();
        let m = SmootherOperator::from_matrix(a.clone()).unwrap();
        let e = two_grid_error(&a, &m, &low_modes(&a, 1)).unwrap();
        let pc = preconditioner(&e).unwrap();
        assert!(pc.b.max_abs_diff(&inverse("a", &a).unwrap()) < 1e-12);
        assert!(pc.ba.max_abs_diff(&Matrix::identity(3)) < 1e-12);

        let e = two_grid_error(&a, &wj(&a), &low_modes(&a, 1)).unwrap();
        let pc = preconditioner(&e).unwrap();
        let s = real_parts(&spectrum_general(&pc.ba).unwrap());
        for (v, w) in s.iter().zip([0.5, 0.853553, 1.0]) {
            assert_abs_diff_eq!(*v, w, epsilon = 1e-6);
        }
        assert!(pc.ba.max_abs_diff(&e.e.identity_minus()) <= 1e-12);
        assert!((&pc.b * &a).max_abs_diff(&pc.ba) < 1e-12);
    }

    #[test]
    fn preconditioner_is_nonsingular_on_random_configs() {
        let mut rng = random::rng(77);
        for seed in 0..5 {
            let a = random_hpd(8, 100.0, seed).unwrap();
            let m = build_smoother(&SmootherSpec::GaussSeidel, &a).unwrap();
            let p = random::random_interpolation(8, 3, &mut rng);
            let e = two_grid_error(&a, &m, &p).unwrap();
            let b = preconditioner(&e).unwrap().b;
            inverse("B", &b).unwrap();
        }
    }

    #[test]
    fn unscaled_tg_condition_number_includes_coarse_unit_eigenvalues() {
        // sigma(B_TG A) = {1, 0.5, 0.853553}: the ratio is 2, not 0.853553 / 0.5.
        let a = lap3();
        let e = two_grid_error(&a, &wj(&a), &low_modes(&a, 1)).unwrap();
        let kappa = condition_number(&preconditioner(&e).unwrap()).unwrap();
        assert_abs_diff_eq!(kappa, 2.0, epsilon = 1e-10);
    }

    #[test]
    fn kvc_examples() {
        let a = lap3();
        let m = wj(&a);
        assert_abs_diff_eq!(kvc(&a, &m, &low_modes(&a, 1)).unwrap(), 4.0 / 3.0, epsilon = 1e-10);
        assert_abs_diff_eq!(
            kvc(&a, &m, &low_modes(&a, 2)).unwrap(),
            1.0 / (1.0 - 0.021446609406726),
            epsilon = 1e-9
        );
        assert_abs_diff_eq!(kvc(&a, &m, &low_modes(&a, 2)).unwrap(), 1.021917, epsilon = 1e-6);

        let p = random::random_interpolation(3, 1, &mut random::rng(12));
        let k = kvc(&a, &m, &p).unwrap();
        let e = two_grid_error(&a, &m, &p).unwrap();
        let norm = operator_a_norm(&e.e, &a).unwrap();
        assert_abs_diff_eq!(1.0 - 1.0 / k, norm * norm, epsilon = 1e-8);
    }

    #[test]
    fn kvc_errors() {
        let a = lap3();
        let id = SmootherOperator::from_matrix(Matrix::identity(3)).unwrap();
        assert!(matches!(
            kvc(&a, &id, &low_modes(&a, 1)),
            Err(Error::NotAConvergent { .. })
        ));
        let flat = Matrix::from_real_rows(&[&[1.0, 2.0], &[1.0, 2.0], &[1.0, 2.0]]);
        assert!(matches!(kvc(&a, &wj(&a), &flat), Err(Error::RankDeficient { .. })));
    }

    #[test]
    fn solver_zero_rhs_and_exact_smoother() {
        let a = lap3();
        let cfg = TwoGridConfig::two_grid(&a, &low_modes(&a, 1), &wj(&a)).unwrap();
        let out = run_cycle_solver(&a, &DVector::zeros(3), &cfg, Variant::Tg, 1e-10, 10).unwrap();
        assert_eq!(out.iterations, 0);
        assert_eq!(out.solution.norm(), 0.0);

        let exact = SmootherOperator::from_matrix(a.clone()).unwrap();
        let cfg = TwoGridConfig::two_grid(&a, &low_modes(&a, 1), &exact).unwrap();
        let rhs = DVector::from_fn(3, |i, _| C64::new(i as f64 + 1.0, 0.0));
        let out = run_cycle_solver(&a, &rhs, &cfg, Variant::Tg, 1e-10, 10).unwrap();
        assert_eq!(out.iterations, 1);
        assert!((a.mul_vec(&out.solution) - &rhs).norm() < 1e-10 * rhs.norm());
    }

    #[test]
    fn solver_reports_max_iter_and_divergence() {
        let a = laplacian_1d(15).unwrap();
        let m = wj(&a);
        let cfg = TwoGridConfig::two_grid(&a, &low_modes(&a, 2), &m).unwrap();
        let rhs = DVector::from_element(15, C64::new(1.0, 0.0));
        match run_cycle_solver(&a, &rhs, &cfg, Variant::Tg, 1e-12, 3) {
            Err(Error::MaxIterExceeded(out)) => {
                assert_eq!(out.iterations, 3);
                assert!(out.relative_residual < 1.0);
                assert!(out.observed_factor > 0.0 && out.observed_factor < 1.0);
            }
            other => panic!("expected MaxIterExceeded, got {other:?}"),
        }

        let rich = build_smoother(&SmootherSpec::Richardson { omega: 1.0 }, &a).unwrap();
        let cfg = TwoGridConfig::two_grid(&a, &low_modes(&a, 2), &rich).unwrap();
        assert!(matches!(
            run_cycle_solver(&a, &rhs, &cfg, Variant::Tg, 1e-12, 500),
            Err(Error::Diverged(_))
        ));
    }

    #[test]
    fn trailing_factor_window() {
        assert_eq!(trailing_factor(&[]), 0.0);
        assert_eq!(trailing_factor(&[0.5]), 0.5);
        // The first ratio is excluded once more than one exists.
        assert_abs_diff_eq!(trailing_factor(&[0.9, 0.25, 0.25]), 0.25, epsilon = 1e-15);
        let many: Vec<f64> = (0..30).map(|i| if i < 20 { 0.9 } else { 0.5 }).collect();
        assert_abs_diff_eq!(trailing_factor(&many), 0.5, epsilon = 1e-15);
    }
}
