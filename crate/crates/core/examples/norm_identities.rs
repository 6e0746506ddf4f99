// `||E_STG||_A = ||E_TG||_A^2 = 1 - 1/K(V_c)` for a Gauss-Seidel smoother
// and random coarse spaces.

use tgopt::linalg::operator_a_norm;
use tgopt::problems::random_hpd;
use tgopt::random::{self, random_interpolation};
use tgopt::smoothers::{build_smoother, SmootherSpec};
use tgopt::twogrid::{kvc, symmetric_two_grid_error, two_grid_error};

pub fn run_example() -> tgopt::Result<()> {
    println!("{:>4} {:>12} {:>12} {:>12}", "seed", "||E_TG||^2", "||E_STG||", "1 - 1/K");
    for seed in 0..5 {
        let a = random_hpd(16, 1e3, seed)?;
        let m = build_smoother(&SmootherSpec::GaussSeidel, &a)?;
        let p = random_interpolation(16, 5, &mut random::rng(seed));
        let tg = operator_a_norm(&two_grid_error(&a, &m, &p)?.e, &a)?;
        let stg = operator_a_norm(&symmetric_two_grid_error(&a, &m, &p)?.e, &a)?;
        let k = kvc(&a, &m, &p)?;
        println!("{seed:>4} {:>12.9} {:>12.9} {:>12.9}", tg * tg, stg, 1.0 - 1.0 / k);
        assert!((tg * tg - stg).abs() <= 1e-8 * stg);
        assert!((tg * tg - (1.0 - 1.0 / k)).abs() <= 1e-8 * stg);
    }
    Ok(())
}

fn main() -> tgopt::Result<()> {
    run_example()
}
