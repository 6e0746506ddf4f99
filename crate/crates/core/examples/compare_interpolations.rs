// Optimal coarse spaces against linear interpolation and a random operator
// on the 7-point Laplacian.

use tgopt::problems::ProblemSpec;
use tgopt::runner::{compare_interpolations, Candidate};
use tgopt::smoothers::SmootherSpec;

pub fn run_example() -> tgopt::Result<()> {
    let report = compare_interpolations(
        &ProblemSpec::Laplacian1d { n: 7 },
        &SmootherSpec::WeightedJacobi { omega: 0.5 },
        3,
        &[
            Candidate::OptimalTg,
            Candidate::OptimalStg,
            Candidate::Geometric,
            Candidate::Random,
        ],
    )?;
    print!("{}", report.to_csv()?);
    for (name, check) in &report.checks {
        println!("{name}: {} (residual {:.1e})", if check.passed { "ok" } else { "FAILED" }, check.residual);
    }
    assert!(report.all_passed());
    Ok(())
}

fn main() -> tgopt::Result<()> {
    run_example()
}
