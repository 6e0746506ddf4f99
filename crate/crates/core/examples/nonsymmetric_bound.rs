// Undamped Jacobi on the 3-point Laplacian: `M - A` is indefinite, so only
// the bound through `(I - M^-1 A)^2` applies.

use tgopt::optimal::{evaluate, optimize_nonsym, optimize_tg_rho, OptimalVariant};
use tgopt::problems::laplacian_1d;
use tgopt::smoothers::{build_smoother, check_convergence_conditions, SmootherSpec};

pub fn run_example() -> tgopt::Result<()> {
    let a = laplacian_1d(3)?;
    let m = build_smoother(&SmootherSpec::Jacobi, &a)?;
    let flags = check_convergence_conditions(&m, &a)?;
    println!(
        "rho(I - M^-1 A) = {:.6}, M - A positive definite: {}",
        flags.rho, flags.m_minus_a_hpd
    );
    if let Err(e) = optimize_tg_rho(&a, &m, 1) {
        println!("exact optimum unavailable: {e}");
    }
    let opt = optimize_nonsym(&a, &m, 1)?;
    let achieved = evaluate(OptimalVariant::NonSymBound, &a, &m, &opt.p_opt)?;
    println!("lambda^ = {:?}", opt.spectrum_used);
    println!("bound {:.6}, attained rho(E_TG) {:.6}", opt.predicted_value, achieved);
    if opt.non_unique_boundary {
        println!("the cut falls inside a tie, so other optimal coarse spaces exist");
    }
    assert!(achieved <= opt.predicted_value + 1e-8);
    Ok(())
}

fn main() -> tgopt::Result<()> {
    run_example()
}
