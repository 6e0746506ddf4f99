#[allow(dead_code)]
mod spectral_identity_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/spectral_identity.rs"));
}

#[test]
fn spectral_identity_example_runs() {
    spectral_identity_example::run_example().expect("spectral_identity example should run");
}

#[allow(dead_code)]
mod optimal_interpolation_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/optimal_interpolation.rs"));
}

#[test]
fn optimal_interpolation_example_runs() {
    optimal_interpolation_example::run_example().expect("optimal_interpolation example should run");
}

#[allow(dead_code)]
mod norm_identities_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/norm_identities.rs"));
}

#[test]
fn norm_identities_example_runs() {
    norm_identities_example::run_example().expect("norm_identities example should run");
}

#[allow(dead_code)]
mod nonsymmetric_bound_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/nonsymmetric_bound.rs"));
}

#[test]
fn nonsymmetric_bound_example_runs() {
    nonsymmetric_bound_example::run_example().expect("nonsymmetric_bound example should run");
}

#[allow(dead_code)]
mod cycle_solver_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/cycle_solver.rs"));
}

#[test]
fn cycle_solver_example_runs() {
    cycle_solver_example::run_example().expect("cycle_solver example should run");
}

#[allow(dead_code)]
mod compare_interpolations_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/compare_interpolations.rs"));
}

#[test]
fn compare_interpolations_example_runs() {
    compare_interpolations_example::run_example().expect("compare_interpolations example should run");
}

#[allow(dead_code)]
mod matrix_market_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/matrix_market.rs"));
}

#[test]
fn matrix_market_example_runs() {
    matrix_market_example::run_example().expect("matrix_market example should run");
}

#[allow(dead_code)]
mod smoother_diagnostics_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/smoother_diagnostics.rs"));
}

#[test]
fn smoother_diagnostics_example_runs() {
    smoother_diagnostics_example::run_example().expect("smoother_diagnostics example should run");
}

#[allow(dead_code)]
mod run_config_example {
    include!(concat!(env!("CARGO_MANIFEST_DIR"), "/examples/run_config.rs"));
}

#[test]
fn run_config_example_runs() {
    run_config_example::run_example().expect("run_config example should run");
}
