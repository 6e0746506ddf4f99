//! Dense complex linear algebra used by every other module.
//!
//! All matrices are [`Matrix`], a thin newtype over a complex
//! [`nalgebra::DMatrix`] that rejects non-finite entries at construction.
//! Real symmetric inputs are simply complex matrices with zero imaginary
//! parts.

use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type C64 = Complex64;

/// Relative max-entry tolerance below which a matrix counts as Hermitian.
pub const HERMITIAN_TOL: f64 = 1e-12;
/// Relative margin a smallest eigenvalue must exceed to count as positive.
pub const PD_MARGIN: f64 = 1e-12;
/// Relative column-rank threshold on sigma_min / sigma_max.
pub const RANK_TOL: f64 = 1e-10;
/// 1-norm condition estimate above which a matrix is treated as singular.
pub const SINGULAR_CONDITION: f64 = 1e14;

/// Dense complex matrix with finite entries.
#[derive(Clone, PartialEq)]
pub struct Matrix(DMatrix<C64>);

impl Matrix {
    /// Builds a matrix from row-major entries.
    pub fn new(rows: usize, cols: usize, entries: Vec<C64>) -> Result<Self> {
        if rows == 0 || cols == 0 || entries.len() != rows * cols {
            return Err(Error::DimensionMismatch {
                op: "Matrix::new",
                detail: format!("{} entries for a {rows}x{cols} matrix", entries.len()),
            });
        }
        Self::from_dmatrix(DMatrix::from_row_iterator(rows, cols, entries))
    }

    pub fn from_dmatrix(m: DMatrix<C64>) -> Result<Self> {
        for j in 0..m.ncols() {
            for i in 0..m.nrows() {
                let z = m[(i, j)];
                if !(z.re.is_finite() && z.im.is_finite()) {
                    return Err(Error::NonFinite { row: i, col: j });
                }
            }
        }
        Ok(Matrix(m))
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Self {
        Matrix(DMatrix::from_fn(rows, cols, f))
    }

    pub fn from_real_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> f64) -> Self {
        Matrix(DMatrix::from_fn(rows, cols, |i, j| C64::new(f(i, j), 0.0)))
    }

    /// Real matrix from nested rows. Panics on ragged input.
    pub fn from_real_rows(rows: &[&[f64]]) -> Self {
        let n = rows.len();
        let m = rows.first().map_or(0, |r| r.len());
        assert!(rows.iter().all(|r| r.len() == m), "ragged rows");
        Self::from_real_fn(n, m, |i, j| rows[i][j])
    }

    pub fn from_real_diagonal(d: &[f64]) -> Self {
        let n = d.len();
        Self::from_real_fn(n, n, |i, j| if i == j { d[i] } else { 0.0 })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix(DMatrix::zeros(rows, cols))
    }

    pub fn identity(n: usize) -> Self {
        Matrix(DMatrix::identity(n, n))
    }

    pub fn from_columns(cols: &[DVector<C64>]) -> Self {
        Matrix(DMatrix::from_columns(cols))
    }

    pub fn rows(&self) -> usize {
        self.0.nrows()
    }

    pub fn cols(&self) -> usize {
        self.0.ncols()
    }

    pub fn is_square(&self) -> bool {
        self.rows() == self.cols()
    }

    pub fn get(&self, i: usize, j: usize) -> Option<C64> {
        self.0.get((i, j)).copied()
    }

    pub fn as_dmatrix(&self) -> &DMatrix<C64> {
        &self.0
    }

    pub fn into_dmatrix(self) -> DMatrix<C64> {
        self.0
    }

    /// Row-major copy of the entries.
    pub fn to_row_major(&self) -> Vec<C64> {
        self.0.transpose().iter().copied().collect()
    }

    pub fn adjoint(&self) -> Matrix {
        Matrix(self.0.adjoint())
    }

    pub fn scale(&self, s: f64) -> Matrix {
        Matrix(self.0.map(|z| z * s))
    }

    pub fn scale_complex(&self, s: C64) -> Matrix {
        Matrix(self.0.map(|z| z * s))
    }

    /// Max-entry norm.
    pub fn max_abs(&self) -> f64 {
        self.0.iter().fold(0.0, |acc, z| acc.max(z.norm()))
    }

    pub fn max_abs_diff(&self, other: &Matrix) -> f64 {
        (self - other).max_abs()
    }

    /// Largest singular value.
    pub fn norm2(&self) -> f64 {
        singular_values(self).first().copied().unwrap_or(0.0)
    }

    pub fn column(&self, j: usize) -> DVector<C64> {
        self.0.column(j).into_owned()
    }

    /// Columns `start..start + count`.
    pub fn columns(&self, start: usize, count: usize) -> Matrix {
        Matrix(self.0.columns(start, count).into_owned())
    }

    pub fn select_columns(&self, idx: &[usize]) -> Matrix {
        Matrix::from_columns(&idx.iter().map(|&j| self.column(j)).collect::<Vec<_>>())
    }

    /// Relative Hermitian asymmetry `max|h - h^H| / max|h|`.
    pub fn hermitian_asymmetry(&self) -> f64 {
        if !self.is_square() {
            return f64::INFINITY;
        }
        let scale = self.max_abs();
        if scale == 0.0 {
            return 0.0;
        }
        (&self.0 - self.0.adjoint()).iter().fold(0.0f64, |a, z| a.max(z.norm())) / scale
    }

    pub fn is_hermitian(&self) -> bool {
        self.hermitian_asymmetry() <= HERMITIAN_TOL
    }

    /// `(h + h^H) / 2`.
    pub fn hermitian_part(&self) -> Matrix {
        Matrix((&self.0 + self.0.adjoint()) * C64::new(0.5, 0.0))
    }

    pub fn diagonal(&self) -> Vec<C64> {
        self.0.diagonal().iter().copied().collect()
    }

    pub fn mul_vec(&self, v: &DVector<C64>) -> DVector<C64> {
        &self.0 * v
    }

    pub fn pow(&self, k: u32) -> Matrix {
        let mut out = Matrix::identity(self.rows());
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `I - self`.
    pub fn identity_minus(&self) -> Matrix {
        &Matrix::identity(self.rows()) - self
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Matrix {}x{} ", self.rows(), self.cols())?;
        if self.0.iter().all(|z| z.im == 0.0) {
            write!(f, "{}", self.0.map(|z| z.re))
        } else {
            write!(f, "{}", self.0)
        }
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = C64;

    fn index(&self, idx: (usize, usize)) -> &C64 {
        &self.0[idx]
    }
}

macro_rules! binop {
    ($trait:ident, $method:ident, $op:tt) => {
        impl $trait<&Matrix> for &Matrix {
            type Output = Matrix;
            fn $method(self, rhs: &Matrix) -> Matrix {
                Matrix(&self.0 $op &rhs.0)
            }
        }
        impl $trait<Matrix> for Matrix {
            type Output = Matrix;
            fn $method(self, rhs: Matrix) -> Matrix {
                Matrix(self.0 $op rhs.0)
            }
        }
        impl $trait<&Matrix> for Matrix {
            type Output = Matrix;
            fn $method(self, rhs: &Matrix) -> Matrix {
                Matrix(self.0 $op &rhs.0)
            }
        }
        impl $trait<Matrix> for &Matrix {
            type Output = Matrix;
            fn $method(self, rhs: Matrix) -> Matrix {
                Matrix(&self.0 $op rhs.0)
            }
        }
    };
}

binop!(Add, add, +);
binop!(Sub, sub, -);
binop!(Mul, mul, *);

impl Neg for &Matrix {
    type Output = Matrix;
    fn neg(self) -> Matrix {
        Matrix(-&self.0)
    }
}

fn require_square(op: &'static str, m: &Matrix) -> Result<()> {
    if m.is_square() {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            op,
            detail: format!("expected a square matrix, got {}x{}", m.rows(), m.cols()),
        })
    }
}

pub(crate) fn require_same_square(op: &'static str, a: &Matrix, b: &Matrix) -> Result<()> {
    require_square(op, a)?;
    require_square(op, b)?;
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            op,
            detail: format!("{}x{} vs {}x{}", a.rows(), a.cols(), b.rows(), b.cols()),
        });
    }
    Ok(())
}

/// Checks Hermiticity within [`HERMITIAN_TOL`] and returns the symmetrized copy.
pub fn require_hermitian(what: &'static str, h: &Matrix) -> Result<Matrix> {
    require_square(what, h)?;
    let asymmetry = h.hermitian_asymmetry();
    if asymmetry > HERMITIAN_TOL {
        return Err(Error::NotHermitian { what, asymmetry });
    }
    Ok(h.hermitian_part())
}

/// Lower-triangular factor `l` with `l l^H = h`.
#[derive(Clone, Debug)]
pub struct CholeskyFactor {
    pub l: Matrix,
    pub source_dim: usize,
}

impl CholeskyFactor {
    /// Solves `l y = b`.
    pub fn solve_lower(&self, b: &Matrix) -> Matrix {
        let l = &self.l.0;
        let n = l.nrows();
        let mut y = b.0.clone();
        for c in 0..y.ncols() {
            for i in 0..n {
                let mut s = y[(i, c)];
                for k in 0..i {
                    s -= l[(i, k)] * y[(k, c)];
                }
                y[(i, c)] = s / l[(i, i)];
            }
        }
        Matrix(y)
    }

    /// Solves `l^H x = b`.
    pub fn solve_upper_adjoint(&self, b: &Matrix) -> Matrix {
        let l = &self.l.0;
        let n = l.nrows();
        let mut x = b.0.clone();
        for c in 0..x.ncols() {
            for i in (0..n).rev() {
                let mut s = x[(i, c)];
                for k in i + 1..n {
                    s -= l[(k, i)].conj() * x[(k, c)];
                }
                x[(i, c)] = s / l[(i, i)].conj();
            }
        }
        Matrix(x)
    }
}

pub fn cholesky(h: &Matrix) -> Result<CholeskyFactor> {
    let h = require_hermitian("cholesky", h)?;
    let n = h.rows();
    let scale = h.max_abs().max(f64::MIN_POSITIVE);
    let mut l = DMatrix::<C64>::zeros(n, n);
    for j in 0..n {
        let mut d = h[(j, j)].re;
        for k in 0..j {
            d -= l[(j, k)].norm_sqr();
        }
        if d <= 0.0 || !d.is_finite() {
            return Err(Error::NotPositiveDefinite {
                what: "cholesky",
                margin: d / scale,
            });
        }
        let ljj = d.sqrt();
        l[(j, j)] = C64::new(ljj, 0.0);
        for i in j + 1..n {
            let mut s = h[(i, j)];
            for k in 0..j {
                s -= l[(i, k)] * l[(j, k)].conj();
            }
            l[(i, j)] = s / ljj;
        }
    }
    Ok(CholeskyFactor {
        l: Matrix(l),
        source_dim: n,
    })
}

/// Eigen-decomposition of a Hermitian matrix, eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
}

pub fn eig_hermitian(h: &Matrix) -> Result<HermitianEigen> {
    let h = require_hermitian("eig_hermitian", h)?;
    let eig = nalgebra::linalg::SymmetricEigen::new(h.0);
    let mut order: Vec<usize> = (0..eig.eigenvalues.len()).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let vectors = Matrix(eig.eigenvectors).select_columns(&order);
    Ok(HermitianEigen { values, vectors })
}

/// Solution of `A u = lambda X u` with `X` HPD; `vectors` are X-orthonormal.
#[derive(Clone, Debug)]
pub struct GeneralizedEigen {
    pub values: Vec<f64>,
    pub vectors: Matrix,
    pub metric: Matrix,
}

pub fn eig_generalized(a: &Matrix, x: &Matrix) -> Result<GeneralizedEigen> {
    require_same_square("eig_generalized", a, x)?;
    let a = require_hermitian("eig_generalized(a)", a)?;
    let chol = cholesky(x).map_err(|e| match e {
        Error::NotPositiveDefinite { margin, .. } => Error::NotPositiveDefinite {
            what: "eig_generalized(x)",
            margin,
        },
        Error::NotHermitian { asymmetry, .. } => Error::NotHermitian {
            what: "eig_generalized(x)",
            asymmetry,
        },
        other => other,
    })?;
    // L^-1 a L^-H = L^-1 (L^-1 a)^H since a is Hermitian.
    let reduced = chol.solve_lower(&chol.solve_lower(&a).adjoint());
    let eig = eig_hermitian(&reduced.hermitian_part())?;
    let vectors = chol.solve_upper_adjoint(&eig.vectors);
    Ok(GeneralizedEigen {
        values: eig.values,
        vectors,
        metric: x.clone(),
    })
}

fn schur_diagonal(s: &DMatrix<C64>) -> Option<Vec<C64>> {
    let max_iter = 100 * s.nrows().max(1);
    // machine epsilon first; a few ulps looser deflates clusters of equal eigenvalues
    [f64::EPSILON, 16.0 * f64::EPSILON].into_iter().find_map(|eps| {
        nalgebra::linalg::Schur::try_new(s.clone(), eps, max_iter)
            .map(|schur| schur.unpack().1.diagonal().iter().copied().collect())
    })
}

/// All eigenvalues of a square matrix (with multiplicity), sorted by real
/// then imaginary part. Hermitian input goes through [`eig_hermitian`];
/// otherwise a complex Schur form is used. The unshifted Schur iteration can
/// stall on symmetric sign patterns (e.g. the Jacobi iteration matrix of a
/// Laplacian), so a stalled run is retried on seeded unitary similarities.
pub fn spectrum_general(s: &Matrix) -> Result<Vec<C64>> {
    require_square("spectrum_general", s)?;
    let mut values = if s.is_hermitian() {
        eig_hermitian(s)?
            .values
            .into_iter()
            .map(|v| C64::new(v, 0.0))
            .collect()
    } else {
        let mut found = schur_diagonal(&s.0);
        let mut rng = crate::random::rng(0x5eed);
        for _ in 0..8 {
            if found.is_some() {
                break;
            }
            let q = crate::random::random_unitary(s.rows(), &mut rng).0;
            found = schur_diagonal(&(q.adjoint() * &s.0 * &q));
        }
        found.ok_or(Error::NoConvergence("spectrum_general"))?
    };
    values.sort_by(|a, b| a.re.total_cmp(&b.re).then(a.im.total_cmp(&b.im)));
    Ok(values)
}

pub fn spectral_radius(s: &Matrix) -> Result<f64> {
    Ok(spectrum_general(s)?
        .iter()
        .fold(0.0, |acc, z| acc.max(z.norm())))
}

/// Singular values, descending.
pub fn singular_values(m: &Matrix) -> Vec<f64> {
    let mut sv: Vec<f64> = nalgebra::linalg::SVD::new(m.0.clone(), false, false)
        .singular_values
        .iter()
        .copied()
        .collect();
    sv.sort_by(|a, b| b.total_cmp(a));
    sv
}

/// `sigma_min / sigma_max` over the columns of `m` (0 for a zero matrix).
pub fn column_rank_ratio(m: &Matrix) -> f64 {
    let sv = singular_values(m);
    match (sv.first(), sv.last()) {
        (Some(&hi), Some(&lo)) if hi > 0.0 && m.cols() <= m.rows() => lo / hi,
        _ => 0.0,
    }
}

pub fn require_full_column_rank(what: &'static str, m: &Matrix) -> Result<()> {
    let ratio = column_rank_ratio(m);
    if ratio > RANK_TOL {
        Ok(())
    } else {
        Err(Error::RankDeficient { what, ratio })
    }
}

/// Householder QR returning the full unitary `q` (n x n) and `r` (n x k).
pub fn full_qr(u: &Matrix) -> (Matrix, Matrix) {
    let n = u.rows();
    let k = u.cols();
    let mut r = u.0.clone();
    let mut q = DMatrix::<C64>::identity(n, n);
    for j in 0..k.min(n) {
        let x = r.view((j, j), (n - j, 1)).into_owned();
        let xnorm = x.norm();
        if xnorm == 0.0 {
            continue;
        }
        let x0 = x[0];
        let phase = if x0.norm() == 0.0 {
            C64::new(1.0, 0.0)
        } else {
            x0 / x0.norm()
        };
        let alpha = -phase * xnorm;
        let mut v = x;
        v[0] -= alpha;
        let vnorm2 = v.norm_squared();
        if vnorm2 == 0.0 {
            continue;
        }
        let beta = C64::new(2.0 / vnorm2, 0.0);
        let mut sub = r.view_mut((j, j), (n - j, k - j));
        let w = v.adjoint() * &sub;
        sub -= &v * w * beta;
        let mut qs = q.view_mut((0, j), (n, n - j));
        let qv = &qs * &v;
        qs -= qv * v.adjoint() * beta;
    }
    (Matrix(q), Matrix(r))
}

/// Orthonormal basis (Euclidean) of the column span of a full-rank `u`.
pub fn orthonormal_basis(u: &Matrix) -> Result<Matrix> {
    require_full_column_rank("orthonormal_basis", u)?;
    let (q, _) = full_qr(u);
    Ok(q.columns(0, u.cols()))
}

/// Orthonormal basis of the Euclidean orthogonal complement of `range(u)`.
pub fn orthonormal_complement(u: &Matrix) -> Result<Matrix> {
    let n = u.rows();
    let k = u.cols();
    if k >= n {
        return Err(Error::NoComplement { k });
    }
    require_full_column_rank("orthonormal_complement", u)?;
    let (q, _) = full_qr(u);
    Ok(q.columns(k, n - k))
}

/// Largest principal angle (radians) between the column spans of `u` and `v`.
pub fn max_principal_angle(u: &Matrix, v: &Matrix) -> Result<f64> {
    if u.rows() != v.rows() || u.cols() != v.cols() {
        return Err(Error::DimensionMismatch {
            op: "max_principal_angle",
            detail: format!("{}x{} vs {}x{}", u.rows(), u.cols(), v.rows(), v.cols()),
        });
    }
    let qu = orthonormal_basis(u)?;
    let qv = orthonormal_basis(v)?;
    let residual = &qv - &qu * (qu.adjoint() * &qv);
    Ok(residual.norm2().min(1.0).asin())
}

/// Smallest eigenvalue of a Hermitian matrix relative to its spectral norm.
/// The matrix counts as positive definite when this exceeds [`PD_MARGIN`].
pub fn hpd_margin(h: &Matrix) -> Result<f64> {
    let eig = eig_hermitian(h)?;
    let norm = eig.values.iter().fold(0.0f64, |a, v| a.max(v.abs()));
    if norm == 0.0 {
        return Ok(0.0);
    }
    Ok(eig.values[0] / norm)
}

pub fn is_hpd(h: &Matrix) -> bool {
    h.is_square() && h.is_hermitian() && hpd_margin(h).is_ok_and(|m| m > PD_MARGIN)
}

fn require_hpd_eigen(what: &'static str, a: &Matrix) -> Result<HermitianEigen> {
    let eig = eig_hermitian(a).map_err(|e| match e {
        Error::NotHermitian { asymmetry, .. } => Error::NotHermitian { what, asymmetry },
        other => other,
    })?;
    let top = eig.values.iter().fold(0.0f64, |m, v| m.max(v.abs()));
    let margin = if top == 0.0 { 0.0 } else { eig.values[0] / top };
    if margin <= PD_MARGIN {
        return Err(Error::NotPositiveDefinite { what, margin });
    }
    Ok(eig)
}

fn spectral_function(eig: &HermitianEigen, f: impl Fn(f64) -> f64) -> Matrix {
    let v = &eig.vectors;
    let d = Matrix::from_real_diagonal(&eig.values.iter().map(|&x| f(x)).collect::<Vec<_>>());
    (v * d * v.adjoint()).hermitian_part()
}

/// Hermitian positive definite square root.
pub fn hpd_sqrt(a: &Matrix) -> Result<Matrix> {
    let eig = require_hpd_eigen("hpd_sqrt", a)?;
    Ok(spectral_function(&eig, f64::sqrt))
}

/// `||S||_A = ||A^{1/2} S A^{-1/2}||_2`.
pub fn operator_a_norm(s: &Matrix, a: &Matrix) -> Result<f64> {
    require_same_square("operator_a_norm", s, a)?;
    let eig = require_hpd_eigen("operator_a_norm", a)?;
    let half = spectral_function(&eig, f64::sqrt);
    let inv_half = spectral_function(&eig, |x| 1.0 / x.sqrt());
    Ok((half * s * inv_half).norm2())
}

fn one_norm(m: &DMatrix<C64>) -> f64 {
    m.column_iter()
        .map(|c| c.iter().map(|z| z.norm()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// Dense inverse; fails with [`Error::Singular`] when the 1-norm condition
/// estimate exceeds [`SINGULAR_CONDITION`].
pub fn inverse(what: &'static str, m: &Matrix) -> Result<Matrix> {
    require_square(what, m)?;
    let inv = m.0.clone().try_inverse();
    let Some(inv) = inv else {
        return Err(Error::Singular {
            what,
            condition: f64::INFINITY,
        });
    };
    let condition = one_norm(&m.0) * one_norm(&inv);
    if !condition.is_finite() || condition > SINGULAR_CONDITION {
        return Err(Error::Singular { what, condition });
    }
    Ok(Matrix(inv))
}

/// Solves `a x = b` for a matrix right-hand side.
pub fn solve(what: &'static str, a: &Matrix, b: &Matrix) -> Result<Matrix> {
    if a.rows() != b.rows() {
        return Err(Error::DimensionMismatch {
            op: what,
            detail: format!("{}x{} system with {} rhs rows", a.rows(), a.cols(), b.rows()),
        });
    }
    Ok(inverse(what, a)? * b)
}

/// Real parts of a spectrum, ascending.
pub fn real_parts(spectrum: &[C64]) -> Vec<f64> {
    let mut re: Vec<f64> = spectrum.iter().map(|z| z.re).collect();
    re.sort_by(f64::total_cmp);
    re
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn lap(n: usize) -> Matrix {
        Matrix::from_real_fn(n, n, |i, j| match i.abs_diff(j) {
            0 => 2.0,
            1 => -1.0,
            _ => 0.0,
        })
    }

    #[test]
    fn constructor_rejects_bad_input() {
        assert!(Matrix::new(2, 2, vec![C64::new(1.0, 0.0); 3]).is_err());
        let err = Matrix::new(1, 2, vec![C64::new(f64::NAN, 0.0), C64::new(0.0, 0.0)]);
        assert!(matches!(err, Err(Error::NonFinite { row: 0, col: 0 })));
        let m = Matrix::new(2, 2, (1..=4).map(|x| C64::new(x as f64, 0.0)).collect()).unwrap();
        assert_eq!(m[(0, 1)], C64::new(2.0, 0.0));
        assert_eq!(m.to_row_major()[2], C64::new(3.0, 0.0));
    }

    #[test]
    fn cholesky_examples() {
        let l = cholesky(&Matrix::identity(3)).unwrap().l;
        assert_eq!(l.max_abs_diff(&Matrix::identity(3)), 0.0);

        let l = cholesky(&Matrix::from_real_diagonal(&[4.0, 9.0])).unwrap().l;
        assert!(l.max_abs_diff(&Matrix::from_real_diagonal(&[2.0, 3.0])) < 1e-15);

        let a = lap(2);
        let l = cholesky(&a).unwrap().l;
        assert_abs_diff_eq!(l[(0, 0)].re, 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(l[(1, 0)].re, -1.0 / 2f64.sqrt(), epsilon = 1e-12);
        assert_abs_diff_eq!(l[(1, 1)].re, 1.5f64.sqrt(), epsilon = 1e-12);
        assert_eq!(l[(0, 1)], C64::new(0.0, 0.0));
        assert!((&l * l.adjoint()).max_abs_diff(&a) <= 1e-12 * a.max_abs());
    }

    #[test]
    fn cholesky_errors() {
        let nh = Matrix::from_real_rows(&[&[2.0, 1.0], &[0.0, 2.0]]);
        assert!(matches!(cholesky(&nh), Err(Error::NotHermitian { .. })));
        let indef = Matrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 1.0]]);
        assert!(matches!(cholesky(&indef), Err(Error::NotPositiveDefinite { .. })));
        assert!(matches!(cholesky(&Matrix::zeros(2, 2)), Err(Error::NotPositiveDefinite { .. })));
    }

    #[test]
    fn eig_hermitian_examples() {
        let e = eig_hermitian(&Matrix::from_real_diagonal(&[3.0, 1.0, 2.0])).unwrap();
        assert_eq!(e.values, vec![1.0, 2.0, 3.0]);
        let e = eig_hermitian(&Matrix::identity(4)).unwrap();
        assert_eq!(e.values, vec![1.0; 4]);
        let e = eig_hermitian(&lap(3)).unwrap();
        for (k, v) in e.values.iter().enumerate() {
            let exact = 4.0 * ((k + 1) as f64 * std::f64::consts::PI / 8.0).sin().powi(2);
            assert_abs_diff_eq!(*v, exact, epsilon = 1e-12);
        }
        assert_abs_diff_eq!(e.values[0], 0.585786, epsilon = 1e-6);
        assert_abs_diff_eq!(e.values[2], 3.414214, epsilon = 1e-6);
        let gram = e.vectors.adjoint() * &e.vectors;
        assert!(gram.max_abs_diff(&Matrix::identity(3)) < 1e-10);
    }

    #[test]
    fn eig_hermitian_rejects_nonhermitian() {
        let m = Matrix::from_real_rows(&[&[1.0, 1.0], &[0.0, 1.0]]);
        assert!(matches!(eig_hermitian(&m), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn eig_generalized_examples() {
        let a = Matrix::from_real_diagonal(&[1.0, 2.0]);
        let e = eig_generalized(&a, &Matrix::identity(2)).unwrap();
        assert_abs_diff_eq!(e.values[0], 1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[1], 2.0, epsilon = 1e-14);
        let e = eig_generalized(&a, &Matrix::from_real_diagonal(&[2.0, 2.0])).unwrap();
        assert_abs_diff_eq!(e.values[0], 0.5, epsilon = 1e-14);
        assert_abs_diff_eq!(e.values[1], 1.0, epsilon = 1e-14);

        let a = lap(3);
        let x = Matrix::identity(3).scale(4.0);
        let e = eig_generalized(&a, &x).unwrap();
        let expect = [0.146447, 0.5, 0.853553];
        for (v, w) in e.values.iter().zip(expect) {
            assert_abs_diff_eq!(*v, w, epsilon = 1e-6);
        }
        let gram = e.vectors.adjoint() * &x * &e.vectors;
        assert!(gram.max_abs_diff(&Matrix::identity(3)) < 1e-10);
        for (i, lam) in e.values.iter().enumerate() {
            let u = e.vectors.columns(i, 1);
            let res = &a * &u - (&x * &u).scale(*lam);
            assert!(res.max_abs() < 1e-10 * a.max_abs());
        }
    }

    #[test]
    fn eig_generalized_errors() {
        let a = lap(2);
        let bad_x = Matrix::from_real_diagonal(&[1.0, -1.0]);
        assert!(matches!(
            eig_generalized(&a, &bad_x),
            Err(Error::NotPositiveDefinite { .. })
        ));
        let bad_a = Matrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        assert!(matches!(
            eig_generalized(&bad_a, &Matrix::identity(2)),
            Err(Error::NotHermitian { .. })
        ));
    }

    #[test]
    fn spectrum_general_examples() {
        let t = Matrix::from_real_rows(&[&[1.0, 3.0, 4.0], &[0.0, 2.0, 7.0], &[0.0, 0.0, 5.0]]);
        let s = spectrum_general(&t).unwrap();
        for (z, w) in s.iter().zip([1.0, 2.0, 5.0]) {
            assert_abs_diff_eq!(z.re, w, epsilon = 1e-12);
            assert_abs_diff_eq!(z.im, 0.0, epsilon = 1e-12);
        }
        let nil = Matrix::from_real_rows(&[&[0.0, 1.0], &[0.0, 0.0]]);
        assert!(spectrum_general(&nil).unwrap().iter().all(|z| z.norm() < 1e-12));
        assert!(spectrum_general(&Matrix::zeros(2, 3)).is_err());
    }

    #[test]
    fn spectral_radius_examples() {
        assert_eq!(spectral_radius(&Matrix::from_real_diagonal(&[-3.0, 2.0])).unwrap(), 3.0);
        let jordan = Matrix::from_real_fn(4, 4, |i, j| if j == i + 1 { 1.0 } else { 0.0 });
        assert!(spectral_radius(&jordan).unwrap() < 1e-12);
    }

    #[test]
    fn complement_examples() {
        let e1 = Matrix::from_real_fn(3, 1, |i, _| if i == 0 { 1.0 } else { 0.0 });
        let c = orthonormal_complement(&e1).unwrap();
        assert_eq!(c.cols(), 2);
        assert!((c.adjoint() * &c).max_abs_diff(&Matrix::identity(2)) < 1e-10);
        assert!((e1.adjoint() * &c).max_abs() < 1e-10);

        let u = Matrix::from_real_fn(2, 1, |_, _| 1.0 / 2f64.sqrt());
        let c = orthonormal_complement(&u).unwrap();
        assert_abs_diff_eq!((c[(0, 0)] + c[(1, 0)]).norm(), 0.0, epsilon = 1e-12);
        assert_abs_diff_eq!(c[(0, 0)].norm(), 1.0 / 2f64.sqrt(), epsilon = 1e-12);
    }

    #[test]
    fn complement_errors() {
        assert!(matches!(
            orthonormal_complement(&Matrix::identity(3)),
            Err(Error::NoComplement { k: 3 })
        ));
        let dup = Matrix::from_real_fn(4, 2, |i, _| i as f64 + 1.0);
        assert!(matches!(
            orthonormal_complement(&dup),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn a_norm_examples() {
        let a = lap(3);
        assert_eq!(operator_a_norm(&Matrix::zeros(3, 3), &a).unwrap(), 0.0);
        let s = Matrix::from_real_rows(&[&[1.0, 2.0], &[0.0, 1.0]]);
        let two_norm = 1.0 + 2f64.sqrt();
        assert_abs_diff_eq!(
            operator_a_norm(&s, &Matrix::identity(2)).unwrap(),
            two_norm,
            epsilon = 1e-12
        );
        assert!(matches!(
            operator_a_norm(&Matrix::identity(2), &Matrix::from_real_diagonal(&[1.0, 0.0])),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(operator_a_norm(&Matrix::identity(2), &a).is_err());
    }

    #[test]
    fn hpd_sqrt_examples() {
        let r = hpd_sqrt(&Matrix::from_real_diagonal(&[4.0, 9.0])).unwrap();
        assert!(r.max_abs_diff(&Matrix::from_real_diagonal(&[2.0, 3.0])) < 1e-14);
        let r = hpd_sqrt(&Matrix::identity(3)).unwrap();
        assert!(r.max_abs_diff(&Matrix::identity(3)) < 1e-14);
        let a = lap(3);
        let r = hpd_sqrt(&a).unwrap();
        assert!((&r * &r).max_abs_diff(&a) < 1e-10 * a.max_abs());
        assert!(r.is_hermitian());
    }

    #[test]
    fn inverse_detects_singularity() {
        let s = Matrix::from_real_rows(&[&[1.0, 2.0], &[2.0, 4.0]]);
        assert!(matches!(inverse("s", &s), Err(Error::Singular { .. })));
        let a = lap(4);
        let inv = inverse("a", &a).unwrap();
        assert!((&a * &inv).max_abs_diff(&Matrix::identity(4)) < 1e-12);
    }

    #[test]
    fn principal_angle_of_identical_and_orthogonal_spans() {
        let u = Matrix::from_real_rows(&[&[1.0], &[1.0], &[0.0]]);
        let v = Matrix::from_real_rows(&[&[-2.0], &[-2.0], &[0.0]]);
        assert!(max_principal_angle(&u, &v).unwrap() < 1e-12);
        let w = Matrix::from_real_rows(&[&[0.0], &[0.0], &[1.0]]);
        assert_abs_diff_eq!(
            max_principal_angle(&u, &w).unwrap(),
            std::f64::consts::FRAC_PI_2,
            epsilon = 1e-12
        );
    }
}
