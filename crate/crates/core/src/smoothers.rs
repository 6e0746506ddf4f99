//! Smoothers `M` and the derived operators `X` of the two-grid theory.
//!
//! A smoother is stored with an explicit dense inverse; `X` operators carry
//! both `X^-1` and `X` so that either side of `I - X^-1 A` is available.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::linalg::{
    self, eig_generalized, hpd_margin, inverse, require_same_square, spectral_radius, Matrix,
    PD_MARGIN,
};

/// Smoother catalog. `omega` is the damping (Richardson, weighted Jacobi)
/// or relaxation (SOR) parameter.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SmootherSpec {
    Richardson { omega: f64 },
    Jacobi,
    WeightedJacobi { omega: f64 },
    GaussSeidel,
    Sor { omega: f64 },
    #[serde(skip)]
    ExplicitMatrix(Matrix),
}

impl SmootherSpec {
    fn validate(&self) -> Result<()> {
        match *self {
            SmootherSpec::Richardson { omega } | SmootherSpec::WeightedJacobi { omega }
                if !(omega > 0.0 && omega.is_finite()) =>
            {
                Err(Error::InvalidParameter(format!("omega must be > 0, got {omega}")))
            }
            SmootherSpec::Sor { omega } if !(omega > 0.0 && omega < 2.0) => Err(
                Error::InvalidParameter(format!("SOR needs 0 < omega < 2, got {omega}")),
            ),
            _ => Ok(()),
        }
    }
}

/// A smoother `M` together with `M^-1`.
#[derive(Clone, Debug)]
pub struct SmootherOperator {
    pub m: Matrix,
    pub m_inv: Matrix,
    pub hermitian: bool,
}

impl SmootherOperator {
    pub fn from_matrix(m: Matrix) -> Result<Self> {
        let m_inv = inverse("smoother", &m).map_err(|e| match e {
            Error::Singular { .. } => Error::SingularSmoother,
            other => other,
        })?;
        let hermitian = m.is_hermitian();
        Ok(SmootherOperator { m, m_inv, hermitian })
    }

    /// `I - M^-1 A`.
    pub fn iteration_matrix(&self, a: &Matrix) -> Matrix {
        (&self.m_inv * a).identity_minus()
    }

    /// `I - M^-H A`.
    pub fn adjoint_iteration_matrix(&self, a: &Matrix) -> Matrix {
        (self.m_inv.adjoint() * a).identity_minus()
    }
}

fn diagonal(a: &Matrix) -> Result<Vec<f64>> {
    a.diagonal()
        .iter()
        .enumerate()
        .map(|(i, d)| {
            if d.norm() == 0.0 {
                Err(Error::ZeroDiagonal(i))
            } else {
                Ok(*d)
            }
        })
        .collect::<Result<Vec<_>>>()
        .map(|d| d.iter().map(|z| z.re).collect())
}

fn diag_part(a: &Matrix, scale: f64) -> Result<Matrix> {
    diagonal(a)?;
    let n = a.rows();
    Ok(Matrix::from_fn(n, n, |i, j| if i == j { a[(i, i)] * scale } else { 0.0.into() }))
}

fn strict_lower(a: &Matrix) -> Matrix {
    let n = a.rows();
    Matrix::from_fn(n, n, |i, j| if i > j { a[(i, j)] } else { 0.0.into() })
}

/// Builds `M` for the given smoother kind:
/// Richardson `I/omega`, Jacobi `D`, weighted Jacobi `D/omega`,
/// Gauss-Seidel `D + L`, SOR `D/omega + L` (`L` strictly lower part of `a`).
pub fn build_smoother(spec: &SmootherSpec, a: &Matrix) -> Result<SmootherOperator> {
    if !a.is_square() {
        return Err(Error::DimensionMismatch {
            op: "build_smoother",
            detail: format!("{}x{} system matrix", a.rows(), a.cols()),
        });
    }
    spec.validate()?;
    let n = a.rows();
    let m = match spec {
        SmootherSpec::Richardson { omega } => Matrix::identity(n).scale(1.0 / omega),
        SmootherSpec::Jacobi => diag_part(a, 1.0)?,
        SmootherSpec::WeightedJacobi { omega } => diag_part(a, 1.0 / omega)?,
        SmootherSpec::GaussSeidel => diag_part(a, 1.0)? + strict_lower(a),
        SmootherSpec::Sor { omega } => diag_part(a, 1.0 / omega)? + strict_lower(a),
        SmootherSpec::ExplicitMatrix(m) => {
            require_same_square("build_smoother", m, a)?;
            m.clone()
        }
    };
    SmootherOperator::from_matrix(m)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum XProvenance {
    /// `X^-1 = M^-H`, post-smoothing only.
    Tg,
    /// `X^-1 = M^-1 + M^-H - M^-1 A M^-H`.
    Stg,
    /// Product of smoothing sweeps.
    Composed,
}

/// The `X` with `I - X^-1 A` equal to the full smoothing product.
#[derive(Clone, Debug)]
pub struct XOperator {
    pub x_inv: Matrix,
    pub x: Matrix,
    pub provenance: XProvenance,
}

impl XOperator {
    pub fn from_inverse(x_inv: Matrix, provenance: XProvenance) -> Result<Self> {
        let x_inv = if provenance == XProvenance::Stg {
            x_inv.hermitian_part()
        } else {
            x_inv
        };
        let x = inverse("X", &x_inv).map_err(|_| Error::SingularX)?;
        let x = if provenance == XProvenance::Stg {
            x.hermitian_part()
        } else {
            x
        };
        Ok(XOperator { x_inv, x, provenance })
    }

    /// `X_TG^-1 = M^-H`.
    pub fn two_grid(m: &SmootherOperator) -> Self {
        XOperator {
            x_inv: m.m_inv.adjoint(),
            x: m.m.adjoint(),
            provenance: XProvenance::Tg,
        }
    }

    /// Uses an arbitrary nonsingular matrix as `X` itself.
    pub fn from_x(x: Matrix) -> Result<Self> {
        let x_inv = inverse("X", &x).map_err(|_| Error::SingularX)?;
        Ok(XOperator {
            x_inv,
            x,
            provenance: XProvenance::Composed,
        })
    }
}

fn a_norm_margin(m: &SmootherOperator, a: &Matrix) -> Result<f64> {
    hpd_margin(&(&m.m + m.m.adjoint() - a).hermitian_part())
}

pub(crate) fn require_hpd(what: &'static str, a: &Matrix) -> Result<()> {
    let h = linalg::require_hermitian(what, a)?;
    let margin = hpd_margin(&h)?;
    if margin > PD_MARGIN {
        Ok(())
    } else {
        Err(Error::NotPositiveDefinite { what, margin })
    }
}

/// `X_STG^-1 = M^-1 + M^-H - M^-1 A M^-H`; requires `M + M^H - A` HPD.
pub fn symmetrized_x(m: &SmootherOperator, a: &Matrix) -> Result<XOperator> {
    require_same_square("symmetrized_x", &m.m, a)?;
    require_hpd("symmetrized_x(a)", a)?;
    let margin = a_norm_margin(m, a)?;
    if margin <= PD_MARGIN {
        return Err(Error::NotAConvergent { margin });
    }
    let mh = m.m_inv.adjoint();
    let x_inv = &m.m_inv + &mh - &m.m_inv * a * &mh;
    XOperator::from_inverse(x_inv, XProvenance::Stg)
}

/// `X` with `I - X^-1 A = (I - M1^-1 A)^nu1 (I - M2^-1 A)^nu2`, i.e.
/// `X^-1 = (I - S) A^-1` for the sweep product `S`.
pub fn composed_x(
    m1: &SmootherOperator,
    nu1: u32,
    m2: &SmootherOperator,
    nu2: u32,
    a: &Matrix,
) -> Result<XOperator> {
    require_same_square("composed_x", &m1.m, a)?;
    require_same_square("composed_x", &m2.m, a)?;
    if nu1 + nu2 == 0 {
        return Err(Error::InvalidParameter("composed_x needs nu1 + nu2 >= 1".into()));
    }
    let a_inv = inverse("A", a).map_err(|_| Error::SingularA)?;
    let s = m1.iteration_matrix(a).pow(nu1) * m2.iteration_matrix(a).pow(nu2);
    XOperator::from_inverse(s.identity_minus() * a_inv, XProvenance::Composed)
}

/// Smoother convergence diagnostics with the measured margins.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ConvergenceFlags {
    /// `M + M^H - A` HPD, equivalently `||I - M^-1 A||_A < 1`.
    pub a_norm_convergent: bool,
    /// `M - A` Hermitian positive definite.
    pub m_minus_a_hpd: bool,
    /// `rho(I - M^-1 A) < 1`.
    pub rho_convergent: bool,
    pub a_norm_margin: f64,
    pub m_minus_a_margin: f64,
    pub rho: f64,
}

pub fn check_convergence_conditions(m: &SmootherOperator, a: &Matrix) -> Result<ConvergenceFlags> {
    require_same_square("check_convergence_conditions", &m.m, a)?;
    require_hpd("check_convergence_conditions(a)", a)?;
    let a_norm_margin = a_norm_margin(m, a)?;
    let diff = &m.m - a;
    let m_minus_a_margin = hpd_margin(&diff.hermitian_part())?;
    let rho = spectral_radius(&m.iteration_matrix(a))?;
    Ok(ConvergenceFlags {
        a_norm_convergent: a_norm_margin > PD_MARGIN,
        m_minus_a_hpd: diff.is_hermitian() && m_minus_a_margin > PD_MARGIN,
        rho_convergent: rho < 1.0 - PD_MARGIN,
        a_norm_margin,
        m_minus_a_margin,
        rho,
    })
}

/// `lambda_max(M^-1 A)` for Hermitian positive definite `M` and `A`.
pub fn lambda_max_smoothed(m: &SmootherOperator, a: &Matrix) -> Result<f64> {
    require_hpd("smoother", &m.m)?;
    require_hpd("system matrix", a)?;
    let eig = eig_generalized(a, &m.m)?;
    Ok(*eig.values.last().expect("non-empty spectrum"))
}

/// Rescales a Hermitian positive definite smoother so that
/// `lambda_max(M^-1 A) = 1`, which makes `M - A` positive semidefinite.
pub fn scale_smoother(m: &SmootherOperator, a: &Matrix) -> Result<SmootherOperator> {
    require_same_square("scale_smoother", &m.m, a)?;
    let lambda = lambda_max_smoothed(m, a)?;
    Ok(SmootherOperator {
        m: m.m.scale(lambda).hermitian_part(),
        m_inv: m.m_inv.scale(1.0 / lambda).hermitian_part(),
        hermitian: true,
    })
}
