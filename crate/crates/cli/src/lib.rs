//! Experiment harness behind the `boltzmann-ga` binary: resolves options
//! into GA experiments, runs them, and writes the CSV and report files.

pub mod config;

use std::fmt::Write as _;
use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use boltzmann_core::ga::{multi_run, AggregateSeries, GENERATOR_NAME};
use boltzmann_core::theory::{run_all, SuiteReport, VerifyConfig};
use boltzmann_core::{AnnealingSchedule, SelectionScheme};
use thiserror::Error;

pub use config::{default_alpha, Experiment, RunOptions, DEFAULT_GAMMA_TARGET};

pub const EXIT_OK: i32 = 0;
pub const EXIT_FAILURE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Column header of every per-experiment CSV.
pub const RUN_COLUMNS: &str =
    "generation,gamma_n,best_raw_mean,best_raw_std,mean_raw_mean,mean_raw_std,strength_mean";

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("invalid configuration: {0}")]
    Config(#[from] boltzmann_core::Error),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("run failed: {0}")]
    Run(boltzmann_core::Error),
    #[error("verification failed: {0}")]
    Verification(String),
}

impl CliError {
    pub fn io(path: &Path, source: io::Error) -> Self {
        Self::Io { path: path.to_path_buf(), source }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            Self::Usage(_) | Self::Config(_) => EXIT_USAGE,
            Self::Io { .. } | Self::Run(_) | Self::Verification(_) => EXIT_FAILURE,
        }
    }
}

/// 17 significant digits, `.` as decimal separator.
pub fn fmt_float(x: f64) -> String {
    format!("{x:.16e}")
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(|| "none".to_string(), |v| v.to_string())
}

/// Result of one (function, scheme) experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentResult {
    pub experiment: Experiment,
    pub aggregate: AggregateSeries,
}

impl ExperimentResult {
    /// Final-generation mean of the best-so-far raw objective.
    pub fn final_best_mean(&self) -> f64 {
        self.aggregate.records.last().map_or(f64::NAN, |r| r.best_raw.mean)
    }
}

/// Runs every experiment in order. Runs inside one experiment execute in
/// parallel.
pub fn run_matrix(experiments: &[Experiment]) -> Result<Vec<ExperimentResult>, CliError> {
    experiments
        .iter()
        .map(|e| {
            Ok(ExperimentResult {
                experiment: e.clone(),
                aggregate: multi_run(&e.config).map_err(CliError::Run)?,
            })
        })
        .collect()
}

/// Metadata lines shared by every experiment file.
fn metadata(e: &Experiment) -> String {
    let c = &e.config;
    let (lo, hi) = c.objective.analytic_bounds();
    let mut s = String::new();
    let mut line = |k: &str, v: String| {
        let _ = writeln!(s, "# {k} = {v}");
    };
    line("function", e.objective.name().into());
    line("selection", e.scheme.name().into());
    line("dims", c.objective.dims.to_string());
    line("domain", format!("[{}, {}]", c.objective.lower, c.objective.upper));
    line("raw_bounds", format!("[{lo}, {hi}]"));
    line("bits_per_var", c.bits_per_var.to_string());
    line("pop_size", c.pop_size.to_string());
    line("generations", c.generations.to_string());
    line("runs", c.runs.to_string());
    line("crossover_prob", c.crossover_prob.to_string());
    line("mutation_prob", c.mutation_prob_per_bit.to_string());
    line("elitism", c.elitism.to_string());
    line("alpha", opt(e.alpha));
    line("g0", opt(e.g0));
    line("gamma_target", opt(e.gamma_target));
    line("gamma", opt(e.gamma));
    line("seed", c.master_seed.to_string());
    line("generator", GENERATOR_NAME.into());
    s
}

/// Metadata lines followed by one row per generation.
pub fn experiment_csv(result: &ExperimentResult) -> String {
    let mut s = metadata(&result.experiment);
    s.push_str(RUN_COLUMNS);
    s.push('\n');
    for r in &result.aggregate.records {
        let _ = writeln!(
            s,
            "{},{},{},{},{},{},{}",
            r.generation,
            fmt_float(r.gamma),
            fmt_float(r.best_raw.mean),
            fmt_float(r.best_raw.std),
            fmt_float(r.mean_raw.mean),
            fmt_float(r.mean_raw.std),
            fmt_float(r.strength.mean),
        );
    }
    s
}

/// Joins all schemes of each function on generation. Schemes that were not
/// run for a function leave their cells empty.
pub fn combined_csv(results: &[ExperimentResult]) -> String {
    const FIELDS: [&str; 5] = ["gamma_n", "best_raw_mean", "best_raw_std", "mean_raw_mean", "generation_best_raw_mean"];
    let mut s = String::new();
    if let Some(first) = results.first() {
        let _ = writeln!(s, "# seed = {}", first.experiment.config.master_seed);
        let _ = writeln!(s, "# generator = {GENERATOR_NAME}");
    }
    s.push_str("function,generation");
    for scheme in SelectionScheme::ALL {
        for f in FIELDS {
            let _ = write!(s, ",{}_{f}", scheme.name());
        }
    }
    s.push('\n');
    let mut functions: Vec<_> = results.iter().map(|r| r.experiment.objective).collect();
    functions.dedup();
    for objective in functions {
        let per_scheme: Vec<Option<&ExperimentResult>> = SelectionScheme::ALL
            .iter()
            .map(|&sch| {
                results
                    .iter()
                    .find(|r| r.experiment.objective == objective && r.experiment.scheme == sch)
            })
            .collect();
        let generations = per_scheme
            .iter()
            .flatten()
            .map(|r| r.aggregate.records.len())
            .max()
            .unwrap_or(0);
        for g in 0..generations {
            let _ = write!(s, "{},{}", objective.name(), g + 1);
            for r in &per_scheme {
                match r.and_then(|r| r.aggregate.records.get(g)) {
                    Some(rec) => {
                        let _ = write!(
                            s,
                            ",{},{},{},{},{}",
                            fmt_float(rec.gamma),
                            fmt_float(rec.best_raw.mean),
                            fmt_float(rec.best_raw.std),
                            fmt_float(rec.mean_raw.mean),
                            fmt_float(rec.generation_best_raw.mean),
                        );
                    }
                    None => s.push_str(&",".repeat(FIELDS.len())),
                }
            }
            s.push('\n');
        }
    }
    s
}

fn write_file(path: &Path, contents: &str) -> Result<(), CliError> {
    fs::write(path, contents).map_err(|e| CliError::io(path, e))
}

fn ensure_dir(dir: &Path) -> Result<(), CliError> {
    fs::create_dir_all(dir).map_err(|e| CliError::io(dir, e))
}

/// Files written by [`run_experiment`].
#[derive(Debug, Clone)]
pub struct RunOutput {
    pub results: Vec<ExperimentResult>,
    pub files: Vec<PathBuf>,
}

/// Resolves `opts`, runs every experiment, and writes one CSV per
/// experiment plus `combined.csv` into the output directory.
pub fn run_experiment(opts: &RunOptions) -> Result<RunOutput, CliError> {
    let experiments = opts.experiments()?;
    let results = run_matrix(&experiments)?;
    let dir = opts.output_dir();
    ensure_dir(&dir)?;
    let mut files = Vec::with_capacity(results.len() + 1);
    for r in &results {
        let path = dir.join(r.experiment.file_name());
        write_file(&path, &experiment_csv(r))?;
        files.push(path);
    }
    let path = dir.join("combined.csv");
    write_file(&path, &combined_csv(&results))?;
    files.push(path);
    Ok(RunOutput { results, files })
}

/// Outcome of the verification suites.
#[derive(Debug, Clone)]
pub struct VerifyOutcome {
    pub reports: Vec<SuiteReport>,
    pub report: String,
    pub cases_csv: String,
}

impl VerifyOutcome {
    pub fn passed(&self) -> bool {
        self.reports.iter().all(SuiteReport::passed)
    }

    /// `suite: case ...` for the first failing case, if any.
    pub fn first_failure(&self) -> Option<String> {
        self.reports.iter().find_map(|r| {
            r.first_failure().map(|c| {
                format!("{}: case {} lhs={} rhs={}", r.name, c.case_id, fmt_float(c.lhs), fmt_float(c.rhs))
            })
        })
    }
}

/// Runs the theory suites. `tolerance` replaces every slack and tolerance
/// when given.
pub fn run_verify(seed: u64, cases: usize, tolerance: Option<f64>) -> Result<VerifyOutcome, CliError> {
    if cases == 0 {
        return Err(CliError::Usage("case count must be at least 1".into()));
    }
    let mut cfg = VerifyConfig::new(seed, cases);
    if let Some(t) = tolerance {
        cfg.lemma_slack = t;
        cfg.metric_slack = t;
        cfg.operator_tolerance = t;
    }
    let reports = run_all(&cfg);

    let mut csv = String::from("suite,case_id,lhs,rhs,holds\n");
    let mut report = format!("verify seed={seed} cases={cases}\n");
    for r in &reports {
        for c in &r.rows {
            let _ = writeln!(csv, "{},{},{},{},{}", r.name, c.case_id, fmt_float(c.lhs), fmt_float(c.rhs), c.holds);
        }
        let status = if r.passed() { "PASS" } else { "FAIL" };
        let _ = write!(report, "{:<20} {status} {}/{}", r.name, r.rows.len() - r.failures(), r.rows.len());
        if let Some(c) = r.first_failure() {
            let _ = write!(report, "  first failure: case {} lhs={} rhs={}", c.case_id, fmt_float(c.lhs), fmt_float(c.rhs));
        }
        report.push('\n');
    }
    let overall = if reports.iter().all(SuiteReport::passed) { "PASS" } else { "FAIL" };
    let _ = writeln!(report, "overall {overall}");
    Ok(VerifyOutcome { reports, report, cases_csv: csv })
}

/// Writes `verify_cases.csv` and `verify_report.txt` into `dir`.
pub fn write_verify(outcome: &VerifyOutcome, dir: &Path) -> Result<Vec<PathBuf>, CliError> {
    ensure_dir(dir)?;
    let cases = dir.join("verify_cases.csv");
    let report = dir.join("verify_report.txt");
    write_file(&cases, &outcome.cases_csv)?;
    write_file(&report, &outcome.report)?;
    Ok(vec![cases, report])
}

/// `(n, gamma_n)` for `n = 1..=horizon`. Calibrated to `gamma_target` at
/// `horizon` unless `g0` is given.
pub fn emit_schedule(
    alpha: f64,
    g0: Option<f64>,
    gamma_target: Option<f64>,
    horizon: usize,
) -> Result<Vec<(usize, f64)>, CliError> {
    if horizon == 0 {
        return Err(CliError::Usage("horizon must be at least 1".into()));
    }
    let schedule = match (g0, gamma_target) {
        (Some(_), Some(_)) => {
            return Err(CliError::Usage("--g0 and --gamma-target are mutually exclusive".into()))
        }
        (Some(g0), None) => AnnealingSchedule::cauchy_with_prefix(g0, alpha, 0)?,
        (None, target) => {
            AnnealingSchedule::calibrated(alpha, horizon, target.unwrap_or(DEFAULT_GAMMA_TARGET))?
        }
    };
    Ok(schedule.series(horizon))
}

pub fn schedule_csv(alpha: f64, g0: Option<f64>, gamma_target: Option<f64>, horizon: usize) -> Result<String, CliError> {
    let rows = emit_schedule(alpha, g0, gamma_target, horizon)?;
    let mut s = format!("# alpha = {alpha}\n");
    match g0 {
        Some(g) => {
            let _ = writeln!(s, "# g0 = {g}");
        }
        None => {
            let _ = writeln!(s, "# gamma_target = {}", gamma_target.unwrap_or(DEFAULT_GAMMA_TARGET));
        }
    }
    s.push_str("n,gamma_n\n");
    for (n, g) in rows {
        let _ = writeln!(s, "{n},{}", fmt_float(g));
    }
    Ok(s)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn float_format_round_trips() {
        for x in [0.1, 1.0 / 3.0, 300.0, 1e-300, -418.9829] {
            let s = fmt_float(x);
            assert_eq!(s.parse::<f64>().unwrap(), x);
            assert!(!s.contains(','));
        }
    }

    #[test]
    fn schedule_partial_sums() {
        let rows = emit_schedule(2.0, Some(1.0), None, 3).unwrap();
        assert_eq!(rows[0], (1, 1.0));
        assert_eq!(rows[1], (2, 1.25));
        assert!((rows[2].1 - (1.25 + 1.0 / 9.0)).abs() < 1e-15);
    }

    #[test]
    fn schedule_errors_are_usage_errors() {
        let e = emit_schedule(1.0, None, None, 10).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
        let e = emit_schedule(2.0, Some(1.0), Some(3.0), 10).unwrap_err();
        assert_eq!(e.exit_code(), EXIT_USAGE);
    }

    #[test]
    fn verify_single_case() {
        let out = run_verify(3, 1, None).unwrap();
        assert!(out.passed());
        assert!(out.reports.iter().all(|r| r.rows.len() == 1));
        assert!(run_verify(3, 0, None).is_err());
    }
}
