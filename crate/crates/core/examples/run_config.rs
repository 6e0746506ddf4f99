// Drives the experiment runner from an in-memory JSON config, as the
// `tgopt` binary does from a file.

use tgopt::runner::{run_experiment, ExperimentConfig, Mode};

const CONFIG: &str = r#"{
    "problem": {"kind": "random_hpd", "n": 20, "target_condition": 500.0, "seed": 1},
    "smoother": {"kind": "gauss_seidel"},
    "coarse_rank": 6,
    "instances": 8,
    "seed": 11
}"#;

pub fn run_example() -> tgopt::Result<()> {
    let mut config = ExperimentConfig::from_json(CONFIG)?;
    config.mode = Some(Mode::Verify);
    let report = run_experiment(&config)?;
    for (name, check) in &report.checks {
        println!("{name:<20} passed={} residual={:.2e}", check.passed, check.residual);
    }
    assert!(report.all_passed());
    Ok(())
}

fn main() -> tgopt::Result<()> {
    run_example()
}
