// Spectrum of the two-grid preconditioned operator `B A`, computed directly
// and through the orthogonal complements of the coarse spaces.

use tgopt::linalg::Matrix;
use tgopt::random::{self, complex_gaussian};
use tgopt::smoothers::{build_smoother, SmootherSpec, XOperator, XProvenance};
use tgopt::spectral::{verify_config, verify_identity, DEFAULT_TOLERANCE};
use tgopt::twogrid::{SmoothingStep, TwoGridConfig};

pub fn run_example() -> tgopt::Result<()> {
    let mut rng = random::rng(7);
    let n = 12;

    // Non-Hermitian A, unrelated P and R, and an arbitrary X.
    let a = Matrix::identity(n).scale(4.0) + complex_gaussian(n, n, &mut rng).scale(0.5);
    let x = XOperator::from_inverse(
        Matrix::identity(n).scale(0.2) + complex_gaussian(n, n, &mut rng).scale(0.02),
        XProvenance::Composed,
    )?;
    let p = complex_gaussian(n, 4, &mut rng);
    let r = complex_gaussian(4, n, &mut rng);
    let report = verify_identity(&a, &x, &p, &r, DEFAULT_TOLERANCE)?;
    println!(
        "random instance: max matching distance {:.2e} (tolerance {:.2e})",
        report.max_matching_distance, report.tolerance
    );
    assert!(report.passed);

    // Two SOR pre-sweeps and one Jacobi post-sweep on a Hermitian problem.
    let a = tgopt::problems::random_hpd(n, 200.0, 3)?;
    let sor = build_smoother(&SmootherSpec::Sor { omega: 1.3 }, &a)?;
    let jacobi = build_smoother(&SmootherSpec::WeightedJacobi { omega: 0.7 }, &a)?;
    let config = TwoGridConfig::new(
        a.clone(),
        p.clone(),
        p.adjoint(),
        Some(SmoothingStep { smoother: sor, sweeps: 2 }),
        Some(SmoothingStep { smoother: jacobi, sweeps: 1 }),
    )?;
    let report = verify_config(&config, DEFAULT_TOLERANCE)?;
    println!("sigma(B A) for the composed cycle:");
    for z in &report.direct_spectrum {
        println!("  {:>10.6} {:+.2e}i", z.re, z.im);
    }
    println!("max matching distance {:.2e}", report.max_matching_distance);
    assert!(report.passed);

    // The exact smoother collapses sigma(B A) to {1}.
    let exact = XOperator::from_x(a.clone())?;
    let report = verify_identity(&a, &exact, &p, &p.adjoint(), DEFAULT_TOLERANCE)?;
    let worst = report
        .identity_spectrum
        .iter()
        .map(|z| (z - 1.0).norm())
        .fold(0.0, f64::max);
    println!("exact X: every eigenvalue within {worst:.2e} of 1");
    Ok(())
}

fn main() -> tgopt::Result<()> {
    run_example()
}
