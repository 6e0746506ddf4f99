// Convergence conditions of the smoother catalog on the 2D Laplacian and
// the effect of rescaling a Hermitian smoother.

use tgopt::problems::laplacian_2d;
use tgopt::smoothers::{build_smoother, check_convergence_conditions, scale_smoother, SmootherSpec};

pub fn run_example() -> tgopt::Result<()> {
    let a = laplacian_2d(5, 5)?;
    let specs = [
        SmootherSpec::Richardson { omega: 0.1 },
        SmootherSpec::Jacobi,
        SmootherSpec::WeightedJacobi { omega: 0.5 },
        SmootherSpec::GaussSeidel,
        SmootherSpec::Sor { omega: 1.5 },
    ];
    println!("{:<40} {:>8} {:>7} {:>7}", "smoother", "rho", "A-conv", "M-A>0");
    for spec in &specs {
        let m = build_smoother(spec, &a)?;
        let f = check_convergence_conditions(&m, &a)?;
        println!(
            "{:<40} {:>8.5} {:>7} {:>7}",
            format!("{spec:?}"),
            f.rho,
            f.a_norm_convergent,
            f.m_minus_a_hpd
        );
    }
    let jacobi = build_smoother(&SmootherSpec::Jacobi, &a)?;
    let hat = scale_smoother(&jacobi, &a)?;
    let f = check_convergence_conditions(&hat, &a)?;
    println!(
        "scaled Jacobi: diagonal {:.6}, min eig of (M - A) relative {:.2e}",
        hat.m[(0, 0)].re,
        f.m_minus_a_margin
    );
    Ok(())
}

fn main() -> tgopt::Result<()> {
    run_example()
}
