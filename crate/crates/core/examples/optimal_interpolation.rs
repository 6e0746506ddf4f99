// Optimal interpolation operators for the 3-point Laplacian with damped
// Jacobi, one coarse variable: predicted optima, the value each `P_opt`
// attains, and the best of 200 random interpolations.

use tgopt::optimal::{evaluate, optimize_stg, optimize_tg, sample_minimum};
use tgopt::problems::laplacian_1d;
use tgopt::smoothers::{build_smoother, SmootherSpec};

pub fn run_example() -> tgopt::Result<()> {
    let a = laplacian_1d(3)?;
    let m = build_smoother(&SmootherSpec::WeightedJacobi { omega: 0.5 }, &a)?;
    for r in 1..=2 {
        let (rho, kappa) = optimize_tg(&a, &m, r)?;
        let (norm, skappa) = optimize_stg(&a, &m, r)?;
        println!("r = {r}");
        println!("  {:<12} {:>10} {:>10} {:>12}", "objective", "predicted", "attained", "random best");
        for opt in [rho, norm, kappa, skappa] {
            let attained = evaluate(opt.variant, &a, &m, &opt.p_opt)?;
            let best = sample_minimum(opt.variant, &a, &m, r, 200, r as u64)?;
            println!(
                "  {:<12} {:>10.6} {:>10.6} {:>12.6}",
                opt.variant.name(),
                opt.predicted_value,
                attained,
                best
            );
            assert!((attained - opt.predicted_value).abs() < 1e-8);
            assert!(best >= opt.predicted_value - 1e-9);
        }
    }
    Ok(())
}

fn main() -> tgopt::Result<()> {
    run_example()
}
