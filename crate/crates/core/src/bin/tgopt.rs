use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::Parser;
use tgopt::runner::{run_experiment, ExperimentConfig, Format, Mode};

/// Two-grid experiments driven by a JSON config.
///
/// Exit status: 0 all checks passed, 1 a check failed, 2 bad config or
/// input, 3 a numerical hypothesis was violated.
#[derive(Parser)]
#[command(version)]
struct Cli {
    mode: Mode,
    #[arg(long)]
    config: PathBuf,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    seed: Option<u64>,
    /// Overrides the config's identity tolerance.
    #[arg(long)]
    tol: Option<f64>,
}

fn run(cli: Cli) -> tgopt::Result<bool> {
    let mut config = ExperimentConfig::load(&cli.config)?;
    config.mode = Some(cli.mode);
    if let Some(out) = cli.out {
        config.output.path = Some(out);
    }
    if let Some(format) = cli.format {
        config.output.format = format;
    }
    if let Some(seed) = cli.seed {
        config.seed = seed;
    }
    if let Some(tol) = cli.tol {
        config.tolerance = tol;
    }
    let report = run_experiment(&config)?;
    if config.output.path.is_none() {
        let mut text = report.render(config.output.format)?;
        if !text.ends_with('\n') {
            text.push('\n');
        }
        // A closed pipe (e.g. `| head`) is not an error worth reporting.
        let _ = std::io::stdout().write_all(text.as_bytes());
    }
    for (name, check) in report.checks.iter().filter(|(_, c)| !c.passed) {
        eprintln!(
            "check failed: {name} (residual {:e}, tolerance {:e})",
            check.residual, check.tolerance
        );
    }
    Ok(report.all_passed())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
