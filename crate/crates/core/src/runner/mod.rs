//! Batch experiments: a JSON config in, a [`Report`] out.

mod config;
mod report;

use std::time::Instant;

use serde_json::json;

pub use config::{Candidate, ExperimentConfig, Format, Mode, OutputSettings, SolveSettings};
pub use report::{Check, Report, Row, Spectrum};

use crate::error::{Error, Result};
use crate::linalg::{
    eig_hermitian, operator_a_norm, spectral_radius, spectrum_general, Matrix,
};
use crate::mm::load_matrix_market;
use crate::optimal::{
    eigenvector_equivalence_check, evaluate, optimize_nonsym, optimize_stg, optimize_tg_kappa,
    optimize_tg_rho, optimal_interpolation, sample_minimum, OptimalInterp, OptimalVariant,
};
use crate::problems::{geometric_interp_1d, ProblemSpec};
use crate::random::{self, complex_gaussian, random_interpolation};
use crate::smoothers::{
    build_smoother, check_convergence_conditions, symmetrized_x, SmootherOperator, SmootherSpec,
};
use crate::spectral::verify_config;
use crate::twogrid::{
    condition_number, kvc, preconditioner, run_cycle_solver, symmetric_two_grid_error,
    two_grid_error, SmoothingStep, TwoGridConfig, Variant,
};

/// Slack allowed when asserting that an optimum is not beaten.
pub const MINIMALITY_SLACK: f64 = 1e-9;

/// Relative mismatch allowed between the observed solver factor and `rho(E_TG)`.
pub const FACTOR_TOLERANCE: f64 = 0.1;

/// Floor for the denominator of relative errors, so that two values at
/// round-off level do not register as a large relative discrepancy.
const RELATIVE_FLOOR: f64 = 1e-12;

fn relative_error(x: f64, y: f64) -> f64 {
    (x - y).abs() / x.abs().max(y.abs()).max(RELATIVE_FLOOR)
}

struct Setup {
    a: Matrix,
    m: SmootherOperator,
    r: usize,
}

fn setup(config: &ExperimentConfig, problem: &ProblemSpec) -> Result<Setup> {
    let a = problem.build()?;
    let n = a.rows();
    if config.coarse_rank >= n {
        return Err(Error::config(
            "coarse_rank",
            format!("must be below the problem size {n}, got {}", config.coarse_rank),
        ));
    }
    let m = build_smoother(&config.smoother, &a)?;
    Ok(Setup {
        a,
        m,
        r: config.coarse_rank,
    })
}

fn require_shape(p: &Matrix, n: usize, r: usize) -> Result<()> {
    if p.rows() == n && p.cols() == r {
        Ok(())
    } else {
        Err(Error::IncompatibleShape {
            rows: p.rows(),
            cols: p.cols(),
            expected_rows: n,
            expected_cols: r,
        })
    }
}

fn resolve(candidate: &Candidate, s: &Setup, seed: u64) -> Result<Matrix> {
    let n = s.a.rows();
    let p = match candidate {
        Candidate::OptimalTg => optimize_tg_kappa(&s.a, &s.m, s.r)?.p_opt,
        Candidate::OptimalStg => optimize_stg(&s.a, &s.m, s.r)?.0.p_opt,
        Candidate::OptimalNonsym => optimize_nonsym(&s.a, &s.m, s.r)?.p_opt,
        Candidate::Geometric => geometric_interp_1d(n)?,
        Candidate::Random => random_interpolation(n, s.r, &mut random::rng(seed)),
        Candidate::File(path) => load_matrix_market(path)?,
    };
    require_shape(&p, n, s.r)?;
    Ok(p)
}

/// The per-interpolation columns shared by `analyze` and `compare`.
const METRICS: [&str; 6] = [
    "rho_e_tg",
    "a_norm_e_tg",
    "a_norm_e_stg",
    "kappa_b_stg_a",
    "kappa_b_tg_a",
    "kvc",
];

fn metric(name: &str, s: &Setup, p: &Matrix) -> Result<f64> {
    let (a, m) = (&s.a, &s.m);
    match name {
        "rho_e_tg" => evaluate(OptimalVariant::TgRho, a, m, p),
        "a_norm_e_tg" => operator_a_norm(&two_grid_error(a, m, p)?.e, a),
        "a_norm_e_stg" => evaluate(OptimalVariant::StgANorm, a, m, p),
        "kappa_b_stg_a" => evaluate(OptimalVariant::StgKappa, a, m, p),
        "kappa_b_tg_a" => evaluate(OptimalVariant::TgKappa, a, m, p),
        "kvc" => kvc(a, m, p),
        _ => unreachable!("unknown metric {name}"),
    }
}

fn inputs(config: &ExperimentConfig, mode: Mode) -> serde_json::Value {
    let mut echo = config.clone();
    echo.mode = Some(mode);
    serde_json::to_value(echo).expect("config serializes")
}

/// Runs the experiment described by `config` and writes the report to
/// `config.output.path` when one is set.
pub fn run_experiment(config: &ExperimentConfig) -> Result<Report> {
    config.validate()?;
    let mode = config
        .mode
        .ok_or_else(|| Error::config("mode", "no mode given in the config or on the command line"))?;
    let start = Instant::now();
    let mut report = match mode {
        Mode::Analyze => analyze(config)?,
        Mode::Optimize => optimize(config)?,
        Mode::Compare => compare(config)?,
        Mode::Verify => verify(config)?,
        Mode::Solve => solve(config)?,
    };
    report.wall_time = start.elapsed().as_secs_f64();
    if let Some(path) = &config.output.path {
        report.write(path, config.output.format)?;
    }
    Ok(report)
}

/// Objectives, spectra and identity checks for one interpolation operator.
fn analyze(config: &ExperimentConfig) -> Result<Report> {
    let s = setup(config, &config.problem)?;
    let p = resolve(&config.interpolation, &s, config.seed)?;
    let mut report = Report::new(Mode::Analyze, inputs(config, Mode::Analyze));
    let tol = config.tolerance;

    let sigma_a = if s.a.is_hermitian() {
        eig_hermitian(&s.a).map(|e| Spectrum::Real(e.values))
    } else {
        spectrum_general(&s.a).map(|v| Spectrum::from_complex(&v))
    };
    match sigma_a {
        Ok(v) => report.spectrum("sigma_a", v),
        Err(e) => report.skip("sigma_a", &e),
    }
    let smoothing = s.m.iteration_matrix(&s.a);
    report.try_objective("rho_smoother", spectral_radius(&smoothing));
    if let Ok(v) = spectrum_general(&smoothing) {
        report.spectrum("sigma_smoother", Spectrum::from_complex(&v));
    }
    match check_convergence_conditions(&s.m, &s.a) {
        Ok(f) => {
            report.objective("a_norm_margin", f.a_norm_margin);
            report.objective("m_minus_a_margin", f.m_minus_a_margin);
        }
        Err(e) => report.skip("convergence_flags", &e),
    }

    let values: Vec<(&str, Result<f64>)> = METRICS.iter().map(|&n| (n, metric(n, &s, &p))).collect();
    for (name, v) in &values {
        match v {
            Ok(v) => report.objective(name, *v),
            Err(e) => report.skip(name, e),
        }
    }
    let tg = two_grid_error(&s.a, &s.m, &p)?;
    let system = preconditioner(&tg)?;
    report.try_objective("kappa_b_tg_a_unscaled", condition_number(&system));
    if let Ok(v) = spectrum_general(&tg.e) {
        report.spectrum("sigma_e_tg", Spectrum::from_complex(&v));
    }
    if let Ok(v) = spectrum_general(&system.ba) {
        report.spectrum("sigma_b_tg_a", Spectrum::from_complex(&v));
    }

    let get = |name: &str| values.iter().find(|(n, _)| *n == name).and_then(|(_, v)| v.as_ref().ok().copied());
    if let (Some(tg_norm), Some(stg_norm)) = (get("a_norm_e_tg"), get("a_norm_e_stg")) {
        report.check("fv_equality", Check::at_most(relative_error(stg_norm, tg_norm * tg_norm), tol));
        if let Some(k) = get("kvc") {
            report.check(
                "zikatanov_identity",
                Check::at_most(relative_error(tg_norm * tg_norm, 1.0 - 1.0 / k), tol),
            );
        }
    }
    let cfg = TwoGridConfig::two_grid(&s.a, &p, &s.m)?;
    match verify_config(&cfg, tol) {
        Ok(id) => report.check(
            "spectral_identity",
            Check {
                passed: id.passed,
                residual: id.max_matching_distance,
                tolerance: id.tolerance,
            },
        ),
        Err(e) => report.skip("spectral_identity", &e),
    }
    Ok(report)
}

fn construct(variant: OptimalVariant, s: &Setup) -> Result<OptimalInterp> {
    match variant {
        OptimalVariant::GeneralRho => optimal_interpolation(&s.a, &symmetrized_x(&s.m, &s.a)?, s.r),
        OptimalVariant::StgANorm => optimize_stg(&s.a, &s.m, s.r).map(|p| p.0),
        OptimalVariant::StgKappa => optimize_stg(&s.a, &s.m, s.r).map(|p| p.1),
        OptimalVariant::TgRho => optimize_tg_rho(&s.a, &s.m, s.r),
        OptimalVariant::TgKappa => optimize_tg_kappa(&s.a, &s.m, s.r),
        OptimalVariant::NonSymBound => optimize_nonsym(&s.a, &s.m, s.r),
    }
}

/// Builds every applicable optimum, evaluates it and tries to beat it with
/// seeded random interpolations.
fn optimize(config: &ExperimentConfig) -> Result<Report> {
    let s = setup(config, &config.problem)?;
    let mut report = Report::new(Mode::Optimize, inputs(config, Mode::Optimize));
    let mut first_error = None;
    for (k, variant) in OptimalVariant::ALL.into_iter().enumerate() {
        let name = variant.name();
        let opt = match construct(variant, &s) {
            Ok(opt) => opt,
            Err(e) => {
                report.skip(name, &e);
                first_error.get_or_insert(e);
                continue;
            }
        };
        report.objective(&format!("{name}_predicted"), opt.predicted_value);
        report.spectrum(&format!("{name}_spectrum"), Spectrum::Real(opt.spectrum_used.clone()));
        let mut row = Row::new();
        row.insert("name".into(), name.into());
        row.insert("predicted".into(), json!(opt.predicted_value));
        row.insert("non_unique_boundary".into(), json!(opt.non_unique_boundary));

        match evaluate(variant, &s.a, &s.m, &opt.p_opt) {
            Ok(achieved) => {
                report.objective(&format!("{name}_achieved"), achieved);
                row.insert("achieved".into(), json!(achieved));
                let residual = if variant == OptimalVariant::NonSymBound {
                    (achieved - opt.predicted_value).max(0.0)
                } else {
                    (achieved - opt.predicted_value).abs()
                };
                report.check(&format!("{name}_attained"), Check::at_most(residual, config.tolerance));
            }
            Err(e) => report.skip(&format!("{name}_achieved"), &e),
        }
        if variant != OptimalVariant::NonSymBound && config.samples > 0 {
            let seed = config.seed.wrapping_add(k as u64);
            match sample_minimum(variant, &s.a, &s.m, s.r, config.samples, seed) {
                Ok(best) => {
                    report.objective(&format!("{name}_sample_min"), best);
                    row.insert("sample_min".into(), json!(best));
                    report.check(
                        &format!("{name}_unbeaten"),
                        Check::at_most((opt.predicted_value - best).max(0.0), MINIMALITY_SLACK),
                    );
                }
                Err(e) => report.skip(&format!("{name}_sample_min"), &e),
            }
        }
        report.rows.push(row);
    }
    if report.rows.is_empty() {
        return Err(first_error.expect("at least one variant was attempted"));
    }
    match eigenvector_equivalence_check(&s.a, &s.m) {
        Ok(eq) => {
            report.check(
                "equivalence_angle",
                Check::at_most(eq.max_principal_angle, crate::optimal::ANGLE_TOL),
            );
            report.check(
                "equivalence_polynomial",
                Check::at_most(eq.max_polynomial_residual, crate::optimal::POLYNOMIAL_TOL),
            );
        }
        Err(e) => report.skip("eigenvector_equivalence", &e),
    }
    Ok(report)
}

fn compare(config: &ExperimentConfig) -> Result<Report> {
    if config.candidates.is_empty() {
        return Err(Error::config("candidates", "compare needs at least one candidate"));
    }
    let s = setup(config, &config.problem)?;
    let mut report = Report::new(Mode::Compare, inputs(config, Mode::Compare));
    let mut table: Vec<(String, Vec<Option<f64>>)> = Vec::new();
    for (k, candidate) in config.candidates.iter().enumerate() {
        let label = candidate.label();
        let p = resolve(candidate, &s, config.seed.wrapping_add(k as u64))?;
        let mut row = Row::new();
        row.insert("name".into(), label.clone().into());
        let mut values = Vec::new();
        for name in METRICS {
            let v = metric(name, &s, &p);
            if let Err(e) = &v {
                report.skip(&format!("{label}.{name}"), e);
            }
            let v = v.ok().filter(|x| x.is_finite());
            row.insert(name.into(), json!(v));
            values.push(v);
        }
        report.rows.push(row);
        table.push((label, values));
    }

    let column = |name: &str| METRICS.iter().position(|m| *m == name).expect("known metric");
    let minimal = |report: &mut Report, own: &str, metric: &str| {
        let j = column(metric);
        let Some(mine) = table.iter().find(|(l, _)| l == own).and_then(|(_, v)| v[j]) else {
            return;
        };
        let best = table.iter().filter_map(|(_, v)| v[j]).fold(f64::INFINITY, f64::min);
        report.check(
            &format!("{own}_minimal_{metric}"),
            Check::at_most((mine - best).max(0.0), MINIMALITY_SLACK),
        );
    };
    let has = |c: &Candidate| config.candidates.contains(c);
    if has(&Candidate::OptimalTg) {
        match optimize_tg_rho(&s.a, &s.m, s.r) {
            Ok(opt) => {
                report.objective("optimal_tg_predicted_rho", opt.predicted_value);
                minimal(&mut report, "optimal_tg", "rho_e_tg");
                attained(&mut report, &table, "optimal_tg", "rho_e_tg", opt.predicted_value, config.tolerance);
            }
            Err(e) => report.skip("optimal_tg_minimal_rho_e_tg", &e),
        }
    }
    if has(&Candidate::OptimalStg) {
        let (norm, kappa) = optimize_stg(&s.a, &s.m, s.r)?;
        report.objective("optimal_stg_predicted_a_norm", norm.predicted_value);
        report.objective("optimal_stg_predicted_kappa", kappa.predicted_value);
        minimal(&mut report, "optimal_stg", "a_norm_e_stg");
        minimal(&mut report, "optimal_stg", "kappa_b_stg_a");
        attained(&mut report, &table, "optimal_stg", "a_norm_e_stg", norm.predicted_value, config.tolerance);
    }
    if has(&Candidate::OptimalNonsym) {
        let opt = optimize_nonsym(&s.a, &s.m, s.r)?;
        report.objective("optimal_nonsym_bound", opt.predicted_value);
        if let Some(rho) = table
            .iter()
            .find(|(l, _)| l == "optimal_nonsym")
            .and_then(|(_, v)| v[column("rho_e_tg")])
        {
            report.check(
                "optimal_nonsym_within_bound",
                Check::at_most((rho - opt.predicted_value).max(0.0), config.tolerance),
            );
        }
    }
    Ok(report)
}

fn attained(
    report: &mut Report,
    table: &[(String, Vec<Option<f64>>)],
    own: &str,
    metric: &str,
    predicted: f64,
    tolerance: f64,
) {
    let j = METRICS.iter().position(|m| *m == metric).expect("known metric");
    if let Some(v) = table.iter().find(|(l, _)| l == own).and_then(|(_, v)| v[j]) {
        report.check(
            &format!("{own}_attains_prediction"),
            Check::at_most((v - predicted).abs(), tolerance),
        );
    }
}

/// Compares interpolation candidates for one problem and smoother.
pub fn compare_interpolations(
    problem: &ProblemSpec,
    smoother: &SmootherSpec,
    r: usize,
    candidates: &[Candidate],
) -> Result<Report> {
    let config = ExperimentConfig {
        problem: problem.clone(),
        smoother: smoother.clone(),
        coarse_rank: r,
        mode: Some(Mode::Compare),
        interpolation: Candidate::OptimalTg,
        candidates: candidates.to_vec(),
        instances: 1,
        samples: 0,
        tolerance: 1e-8,
        seed: 0,
        solve: SolveSettings::default(),
        output: OutputSettings::default(),
    };
    run_experiment(&config)
}

struct InstanceOutcome {
    identity: Option<(f64, f64, bool)>,
    fv: Option<f64>,
    zikatanov: Option<f64>,
}

fn verify_instance(config: &ExperimentConfig, i: usize, row: &mut Row) -> Result<InstanceOutcome> {
    let seed = config.seed.wrapping_add(i as u64);
    let problem = match &config.problem {
        ProblemSpec::RandomHpd { n, target_condition, .. } => ProblemSpec::RandomHpd {
            n: *n,
            target_condition: *target_condition,
            seed,
        },
        other => other.clone(),
    };
    let s = setup(config, &problem)?;
    let n = s.a.rows();
    let mut rng = random::rng(seed);
    let p = random_interpolation(n, s.r, &mut rng);
    let galerkin = i.is_multiple_of(2);
    let r_op = if galerkin { p.adjoint() } else { complex_gaussian(s.r, n, &mut rng) };
    row.insert("n".into(), json!(n));
    row.insert("galerkin".into(), json!(galerkin));

    let post = SmootherOperator::from_matrix(s.m.m.adjoint())?;
    let step = |m: &SmootherOperator| Some(SmoothingStep { smoother: m.clone(), sweeps: 1 });
    let cfg = TwoGridConfig::new(s.a.clone(), p.clone(), r_op, step(&s.m), step(&post))?;
    let id = verify_config(&cfg, config.tolerance)?;
    row.insert("identity_distance".into(), json!(id.max_matching_distance));
    row.insert("identity_tolerance".into(), json!(id.tolerance));
    let mut out = InstanceOutcome {
        identity: Some((id.max_matching_distance, id.tolerance, id.passed)),
        fv: None,
        zikatanov: None,
    };
    if galerkin {
        let tg = operator_a_norm(&two_grid_error(&s.a, &s.m, &p)?.e, &s.a)?;
        let stg = operator_a_norm(&symmetric_two_grid_error(&s.a, &s.m, &p)?.e, &s.a)?;
        let fv = relative_error(stg, tg * tg);
        let k = kvc(&s.a, &s.m, &p)?;
        let zik = relative_error(tg * tg, 1.0 - 1.0 / k);
        row.insert("fv_rel_err".into(), json!(fv));
        row.insert("zikatanov_rel_err".into(), json!(zik));
        out.fv = Some(fv);
        out.zikatanov = Some(zik);
    }
    Ok(out)
}

/// Checks the spectral identity (and, for Galerkin instances, the energy
/// norm identities) on seeded random interpolations.
fn verify(config: &ExperimentConfig) -> Result<Report> {
    // Surface configuration problems before the sweep.
    setup(config, &config.problem)?;
    let mut report = Report::new(Mode::Verify, inputs(config, Mode::Verify));
    let (mut id_all, mut id_max) = (true, 0.0f64);
    let (mut fv_max, mut zik_max) = (0.0f64, 0.0f64);
    let mut failures = 0usize;
    for i in 0..config.instances {
        let mut row = Row::new();
        row.insert("name".into(), json!(format!("instance_{i}")));
        match verify_instance(config, i, &mut row) {
            Ok(out) => {
                if let Some((d, _, passed)) = out.identity {
                    id_all &= passed;
                    id_max = id_max.max(d);
                }
                fv_max = fv_max.max(out.fv.unwrap_or(0.0));
                zik_max = zik_max.max(out.zikatanov.unwrap_or(0.0));
            }
            Err(e) => {
                failures += 1;
                row.insert("error".into(), json!(e.to_string()));
            }
        }
        report.rows.push(row);
    }
    report.check(
        "spectral_identity",
        Check {
            passed: id_all && failures == 0,
            residual: id_max,
            tolerance: config.tolerance,
        },
    );
    report.check("fv_equality", Check::at_most(fv_max, config.tolerance));
    report.check("zikatanov_identity", Check::at_most(zik_max, config.tolerance));
    report.objective("failed_instances", failures as f64);
    Ok(report)
}

fn solve(config: &ExperimentConfig) -> Result<Report> {
    let s = setup(config, &config.problem)?;
    let p = resolve(&config.interpolation, &s, config.seed)?;
    let mut report = Report::new(Mode::Solve, inputs(config, Mode::Solve));
    let n = s.a.rows();
    let mut rng = random::rng(config.seed);
    let rhs = random::real_gaussian(n, 1, &mut rng).column(0);
    let cfg = TwoGridConfig::two_grid(&s.a, &p, &s.m)?;
    let rho = spectral_radius(&two_grid_error(&s.a, &s.m, &p)?.e)?;
    let settings = config.solve;
    let outcome = match run_cycle_solver(&s.a, &rhs, &cfg, Variant::Tg, settings.tol, settings.max_iter) {
        Ok(out) => out,
        Err(Error::MaxIterExceeded(out)) | Err(Error::Diverged(out)) => *out,
        Err(e) => return Err(e),
    };
    report.objective("rho_e_tg", rho);
    report.objective("iterations", outcome.iterations as f64);
    report.objective("observed_factor", outcome.observed_factor);
    report.objective("relative_residual", outcome.relative_residual);
    report.spectrum("residual_history", Spectrum::Real(outcome.residual_history.clone()));
    report.check("converged", Check::at_most(outcome.relative_residual, settings.tol));
    if rho > 0.0 && outcome.iterations > 1 {
        report.check(
            "factor_matches_rho",
            Check::at_most((outcome.observed_factor - rho).abs() / rho, FACTOR_TOLERANCE),
        );
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn base(mode: Mode) -> ExperimentConfig {
        let mut c = ExperimentConfig::from_json(
            r#"{
                "problem": {"kind": "laplacian_1d", "n": 3},
                "smoother": {"kind": "weighted_jacobi", "omega": 0.5},
                "coarse_rank": 1,
                "samples": 50
            }"#,
        )
        .unwrap();
        c.mode = Some(mode);
        c
    }

    #[test]
    fn analyze_example() {
        let r = run_experiment(&base(Mode::Analyze)).unwrap();
        assert_abs_diff_eq!(r.objectives["rho_e_tg"], 0.5, epsilon = 1e-10);
        assert_abs_diff_eq!(r.objectives["kappa_b_tg_a"], 1.707107, epsilon = 1e-6);
        assert_abs_diff_eq!(r.objectives["kappa_b_tg_a_unscaled"], 2.0, epsilon = 1e-10);
        assert!(r.all_passed(), "{:?}", r.checks);
        assert!(r.checks.contains_key("fv_equality"));
        assert!(r.checks.contains_key("zikatanov_identity"));
        assert!(r.checks.contains_key("spectral_identity"));
    }

    #[test]
    fn coarse_rank_must_be_below_n() {
        let mut c = base(Mode::Analyze);
        c.coarse_rank = 3;
        match run_experiment(&c) {
            Err(Error::Config { path, .. }) => assert_eq!(path, "coarse_rank"),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn optimize_checks_pass() {
        let r = run_experiment(&base(Mode::Optimize)).unwrap();
        assert!(r.all_passed(), "{:?}", r.checks);
        assert_abs_diff_eq!(r.objectives["tg_rho_predicted"], 0.5, epsilon = 1e-12);
        assert_abs_diff_eq!(r.objectives["stg_a_norm_predicted"], 0.25, epsilon = 1e-12);
        assert!(r.checks.contains_key("equivalence_angle"));
    }

    #[test]
    fn compare_examples() {
        let r = compare_interpolations(
            &ProblemSpec::Laplacian1d { n: 7 },
            &SmootherSpec::WeightedJacobi { omega: 0.5 },
            3,
            &[Candidate::OptimalTg, Candidate::Geometric],
        )
        .unwrap();
        assert!(r.all_passed(), "{:?}", r.checks);
        let lambda4 = (4.0 * std::f64::consts::PI / 16.0).sin().powi(2);
        let rho = r.rows[0]["rho_e_tg"].as_f64().unwrap();
        assert_abs_diff_eq!(rho, 1.0 - lambda4, epsilon = 1e-10);
        assert!(rho <= r.rows[1]["rho_e_tg"].as_f64().unwrap());

        let r = compare_interpolations(
            &ProblemSpec::Laplacian1d { n: 3 },
            &SmootherSpec::WeightedJacobi { omega: 0.5 },
            1,
            &[Candidate::OptimalStg],
        )
        .unwrap();
        assert!(r.checks["optimal_stg_attains_prediction"].passed);

        assert!(matches!(
            compare_interpolations(
                &ProblemSpec::Laplacian1d { n: 3 },
                &SmootherSpec::Jacobi,
                1,
                &[]
            ),
            Err(Error::Config { .. })
        ));
    }

    #[test]
    fn file_candidate_shape_is_checked() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("p.mtx");
        crate::mm::save_matrix_market(&Matrix::identity(3).columns(0, 2), &path).unwrap();
        let err = compare_interpolations(
            &ProblemSpec::Laplacian1d { n: 3 },
            &SmootherSpec::WeightedJacobi { omega: 0.5 },
            1,
            &[Candidate::File(path)],
        )
        .unwrap_err();
        assert!(matches!(err, Error::IncompatibleShape { cols: 2, expected_cols: 1, .. }));
    }

    #[test]
    fn verify_sweep_passes() {
        let mut c = base(Mode::Verify);
        c.problem = ProblemSpec::RandomHpd {
            n: 10,
            target_condition: 100.0,
            seed: 0,
        };
        c.smoother = SmootherSpec::GaussSeidel;
        c.coarse_rank = 3;
        c.instances = 6;
        let r = run_experiment(&c).unwrap();
        assert!(r.all_passed(), "{:?} {:?}", r.checks, r.rows);
        assert!(r.checks["spectral_identity"].residual < 1e-8);
    }

    #[test]
    fn solve_reports_factor() {
        let mut c = base(Mode::Solve);
        c.problem = ProblemSpec::Laplacian1d { n: 15 };
        c.coarse_rank = 4;
        let r = run_experiment(&c).unwrap();
        assert!(r.all_passed(), "{:?} {:?}", r.checks, r.objectives);
    }

    #[test]
    fn reports_are_deterministic() {
        let c = base(Mode::Optimize);
        let mut a = run_experiment(&c).unwrap();
        let mut b = run_experiment(&c).unwrap();
        a.wall_time = 0.0;
        b.wall_time = 0.0;
        assert_eq!(a.to_json(), b.to_json());
    }
}
