//! Spectrum of the two-grid preconditioned operator through orthogonal
//! complements: `sigma(B A) = {1} U sigma(Z)` with
//! `Z = P~^H X^-1 R~ (P~^H A^-1 R~)^-1`, where `P~` and `R~` are orthonormal
//! bases of `range(P)^perp` and `range(R^H)^perp`.
//!
//! The identity holds for any nonsingular `A` (Hermitian or not) provided
//! `R A P`, `X` and `R X P` are nonsingular. [`verify_identity`] compares it
//! against a direct Schur eigensolve of the assembled `B A`.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::linalg::{inverse, orthonormal_complement, spectrum_general, Matrix, C64};
use crate::matching::matching_distance;
use crate::smoothers::{composed_x, XOperator};
use crate::twogrid::{
    assemble_error_propagation, coarse_matrix, preconditioner, SmoothingStep, TwoGridConfig,
    Variant,
};

/// Absolute matching tolerance, scaled by `max(1, ||B A||_2)`.
pub const DEFAULT_TOLERANCE: f64 = 1e-8;

#[derive(Clone, Debug)]
pub struct ComplementBasis {
    pub p_tilde: Matrix,
    pub r_tilde: Matrix,
}

impl ComplementBasis {
    pub fn new(p: &Matrix, r_op: &Matrix) -> Result<Self> {
        Ok(ComplementBasis {
            p_tilde: orthonormal_complement(p)?,
            r_tilde: orthonormal_complement(&r_op.adjoint())?,
        })
    }
}

fn check_hypotheses(a: &Matrix, x_op: &XOperator, p: &Matrix, r_op: &Matrix) -> Result<Matrix> {
    let n = a.rows();
    if x_op.x.rows() != n || !x_op.x.is_square() {
        return Err(Error::DimensionMismatch {
            op: "complement_rayleigh",
            detail: format!("X is {}x{}, A is {n}x{n}", x_op.x.rows(), x_op.x.cols()),
        });
    }
    if p.cols() == 0 || p.cols() >= n {
        return Err(Error::InvalidRank { r: p.cols(), n });
    }
    coarse_matrix(a, p, r_op)?;
    inverse("R X P", &(r_op * &x_op.x * p)).map_err(|_| Error::SingularRxp)?;
    inverse("A", a).map_err(|_| Error::SingularA)
}

/// `Z` for a caller-chosen pair of complement bases.
pub fn complement_rayleigh_with_basis(
    a: &Matrix,
    x_op: &XOperator,
    p: &Matrix,
    r_op: &Matrix,
    basis: &ComplementBasis,
) -> Result<Matrix> {
    let a_inv = check_hypotheses(a, x_op, p, r_op)?;
    let ph = basis.p_tilde.adjoint();
    let gram = &ph * a_inv * &basis.r_tilde;
    let gram_inv = inverse("P~^H A^-1 R~", &gram).map_err(|_| Error::SingularComplementGram)?;
    Ok(ph * &x_op.x_inv * &basis.r_tilde * gram_inv)
}

/// `Z = P~^H X^-1 R~ (P~^H A^-1 R~)^-1`, an `(n - r) x (n - r)` matrix.
pub fn complement_rayleigh(a: &Matrix, x_op: &XOperator, p: &Matrix, r_op: &Matrix) -> Result<Matrix> {
    let basis = ComplementBasis::new(p, r_op)?;
    complement_rayleigh_with_basis(a, x_op, p, r_op, &basis)
}

/// `{1}` with multiplicity `r`, followed by `sigma(Z)`.
pub fn spectrum_via_identity(
    a: &Matrix,
    x_op: &XOperator,
    p: &Matrix,
    r_op: &Matrix,
) -> Result<Vec<C64>> {
    let z = complement_rayleigh(a, x_op, p, r_op)?;
    let mut out = vec![C64::new(1.0, 0.0); p.cols()];
    out.extend(spectrum_general(&z)?);
    Ok(out)
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityReport {
    #[serde(serialize_with = "serialize_complex")]
    pub direct_spectrum: Vec<C64>,
    #[serde(serialize_with = "serialize_complex")]
    pub identity_spectrum: Vec<C64>,
    pub max_matching_distance: f64,
    /// Tolerance actually applied (already scaled).
    pub tolerance: f64,
    pub passed: bool,
}

fn serialize_complex<S: serde::Serializer>(v: &[C64], s: S) -> Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(|z| [z.re, z.im]))
}

fn compare(direct: Vec<C64>, identity: Vec<C64>, ba: &Matrix, tolerance: f64) -> IdentityReport {
    let tolerance = tolerance * ba.norm2().max(1.0);
    let max_matching_distance = matching_distance(&direct, &identity);
    IdentityReport {
        passed: max_matching_distance <= tolerance,
        direct_spectrum: direct,
        identity_spectrum: identity,
        max_matching_distance,
        tolerance,
    }
}

/// Compares `sigma(B A)` computed directly, with
/// `E = (I - P A_C^-1 R A)(I - X^-1 A)`, against the complement identity.
pub fn verify_identity(
    a: &Matrix,
    x_op: &XOperator,
    p: &Matrix,
    r_op: &Matrix,
    tolerance: f64,
) -> Result<IdentityReport> {
    let identity = spectrum_via_identity(a, x_op, p, r_op)?;
    let correction = TwoGridConfig::new(a.clone(), p.clone(), r_op.clone(), None, None)?
        .coarse_correction()?;
    let e = correction * (&x_op.x_inv * a).identity_minus();
    let ba = e.identity_minus();
    let direct = spectrum_general(&ba)?;
    Ok(compare(direct, identity, &ba, tolerance))
}

fn sweeps(step: &Option<SmoothingStep>) -> u32 {
    step.as_ref().map_or(0, |s| s.sweeps)
}

/// Runs the identity check for a full configuration: the direct side is the
/// literal `E_M` with its pre- and post-smoothers, and `X` comes from
/// [`composed_x`] applied to the same sweeps.
pub fn verify_config(config: &TwoGridConfig, tolerance: f64) -> Result<IdentityReport> {
    let (m1, m2) = match (&config.pre, &config.post) {
        (Some(pre), Some(post)) => (&pre.smoother, &post.smoother),
        (Some(only), None) | (None, Some(only)) => (&only.smoother, &only.smoother),
        (None, None) => return Err(Error::SingularX),
    };
    let x_op = composed_x(m1, sweeps(&config.pre), m2, sweeps(&config.post), &config.a)?;
    let identity = spectrum_via_identity(&config.a, &x_op, &config.p, &config.r_op)?;
    let e = assemble_error_propagation(config, Variant::General)?;
    let ba = preconditioner(&e)?.ba;
    let direct = spectrum_general(&ba)?;
    Ok(compare(direct, identity, &ba, tolerance))
}
