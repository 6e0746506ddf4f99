//! Seeded random matrices.
//!
//! Every generator draws from `ChaCha8Rng` seeded with a `u64`, and normals
//! come from `rand_distr::StandardNormal`; both are platform independent, so
//! a seed pins the output bit for bit.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::linalg::{full_qr, Matrix, C64};

pub type SeededRng = ChaCha8Rng;

pub fn rng(seed: u64) -> SeededRng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn complex_normal(rng: &mut impl Rng) -> C64 {
    C64::new(rng.sample(StandardNormal), rng.sample(StandardNormal))
}

/// Matrix of i.i.d. standard complex Gaussian entries.
pub fn complex_gaussian(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_fn(rows, cols, |_, _| complex_normal(rng))
}

/// Matrix of i.i.d. standard real Gaussian entries.
pub fn real_gaussian(rows: usize, cols: usize, rng: &mut impl Rng) -> Matrix {
    Matrix::from_real_fn(rows, cols, |_, _| rng.sample(StandardNormal))
}

/// Haar-distributed unitary matrix: QR of a complex Gaussian with the
/// phases of `diag(R)` folded back into `Q`.
pub fn random_unitary(n: usize, rng: &mut impl Rng) -> Matrix {
    let g = complex_gaussian(n, n, rng);
    let (q, r) = full_qr(&g);
    let phases: Vec<C64> = (0..n)
        .map(|i| {
            let d = r[(i, i)];
            if d.norm() == 0.0 {
                C64::new(1.0, 0.0)
            } else {
                d / d.norm()
            }
        })
        .collect();
    Matrix::from_fn(n, n, |i, j| q[(i, j)] * phases[j])
}

/// Random full-rank `n x r` interpolation candidate.
pub fn random_interpolation(n: usize, r: usize, rng: &mut impl Rng) -> Matrix {
    complex_gaussian(n, r, rng)
}

/// Random nonsingular `r x r` matrix with a bounded condition number
/// (`G = U diag(s) V^H`, `s` in `[1, 10]`).
pub fn random_nonsingular(r: usize, rng: &mut impl Rng) -> Matrix {
    let u = random_unitary(r, rng);
    let v = random_unitary(r, rng);
    let s: Vec<f64> = (0..r).map(|_| rng.random_range(1.0..10.0)).collect();
    u * Matrix::from_real_diagonal(&s) * v.adjoint()
}
