// Round trip of a problem matrix and an interpolation operator through
// Matrix Market files, then an analysis of the loaded pair.

use tgopt::mm::{load_matrix_market, save_matrix_market};
use tgopt::optimal::{evaluate, optimize_tg_rho, OptimalVariant};
use tgopt::problems::laplacian_2d;
use tgopt::smoothers::{build_smoother, SmootherSpec};

pub fn run_example() -> tgopt::Result<()> {
    let dir = tempfile::tempdir().map_err(|source| tgopt::Error::Io {
        path: std::env::temp_dir(),
        source,
    })?;
    let a = laplacian_2d(4, 4)?;
    let m = build_smoother(&SmootherSpec::WeightedJacobi { omega: 0.5 }, &a)?;
    let opt = optimize_tg_rho(&a, &m, 4)?;

    let a_path = dir.path().join("a.mtx");
    let p_path = dir.path().join("p.mtx");
    save_matrix_market(&a, &a_path)?;
    save_matrix_market(&opt.p_opt, &p_path)?;
    let a2 = load_matrix_market(&a_path)?;
    let p2 = load_matrix_market(&p_path)?;
    assert_eq!(a2, a);
    assert_eq!(p2, opt.p_opt);

    let rho = evaluate(OptimalVariant::TgRho, &a2, &m, &p2)?;
    println!("{}x{} problem, {}x{} interpolation", a2.rows(), a2.cols(), p2.rows(), p2.cols());
    println!("rho(E_TG) from files {rho:.6}, predicted {:.6}", opt.predicted_value);
    Ok(())
}

fn main() -> tgopt::Result<()> {
    run_example()
}
