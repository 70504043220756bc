//! Experiment options: command-line flags layered over an optional flat
//! `key = value` file.

use std::path::{Path, PathBuf};
use std::str::FromStr;

use boltzmann_core::annealing::DEFAULT_PREFIX_LEN;
use boltzmann_core::ga::{
    DEFAULT_BITS_PER_VAR, DEFAULT_CROSSOVER_PROB, DEFAULT_DIMS, DEFAULT_GAMMA,
    DEFAULT_GENERATIONS, DEFAULT_MUTATION_PROB, DEFAULT_POP_SIZE, DEFAULT_RUNS, DEFAULT_SEED,
};
use boltzmann_core::{AnnealingSchedule, GaConfig, Objective, ObjectiveSpec, SelectionScheme};
use clap::Args;

use crate::CliError;

/// Default calibration target for the final inverse temperature.
pub const DEFAULT_GAMMA_TARGET: f64 = 300.0;
pub const DEFAULT_OUTPUT: &str = "results";

/// Schedule exponent used when `--alpha` is not given.
pub fn default_alpha(objective: Objective) -> f64 {
    match objective {
        Objective::Rastrigin => 2.0,
        Objective::Ackley | Objective::Griewangk => 1.1,
        Objective::Schwefel => 1.5,
    }
}

/// Every option of `run`. Unset fields fall back to the config file, then
/// to the defaults.
#[derive(Debug, Clone, Default, PartialEq, Args)]
pub struct RunOptions {
    /// Benchmark function; all four when omitted.
    #[arg(long)]
    pub function: Option<Objective>,
    /// Selection scheme; all three when omitted.
    #[arg(long)]
    pub selection: Option<SelectionScheme>,
    /// Cauchy schedule exponent (> 1).
    #[arg(long)]
    pub alpha: Option<f64>,
    /// Cauchy schedule scale. Calibrated from --gamma-target when absent.
    #[arg(long, conflicts_with = "gamma_target")]
    pub g0: Option<f64>,
    /// Inverse temperature of constant Boltzmann selection.
    #[arg(long)]
    pub gamma: Option<f64>,
    /// Value the Cauchy schedule reaches at the last generation.
    #[arg(long)]
    pub gamma_target: Option<f64>,
    #[arg(long)]
    pub generations: Option<usize>,
    #[arg(long)]
    pub pop_size: Option<usize>,
    #[arg(long)]
    pub runs: Option<usize>,
    /// Master seed.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub bits_per_var: Option<usize>,
    #[arg(long)]
    pub dims: Option<usize>,
    #[arg(long)]
    pub crossover_prob: Option<f64>,
    /// Per-bit mutation probability.
    #[arg(long)]
    pub mutation_prob: Option<f64>,
    /// Carry the best individual into the next generation.
    #[arg(long, num_args = 0..=1, default_missing_value = "true")]
    pub elitism: Option<bool>,
    /// Output directory.
    #[arg(long)]
    pub output: Option<PathBuf>,
}

fn parse_value<T: FromStr>(key: &str, value: &str, line: usize) -> Result<T, CliError> {
    value
        .parse()
        .map_err(|_| CliError::Usage(format!("config line {line}: bad value '{value}' for {key}")))
}

impl RunOptions {
    /// Parses a flat `key = value` file. Keys are the flag names, with
    /// either `-` or `_`; `#` starts a comment.
    pub fn parse_config(text: &str) -> Result<Self, CliError> {
        let mut opts = Self::default();
        for (i, raw) in text.lines().enumerate() {
            let line_no = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let Some((key, value)) = line.split_once('=') else {
                return Err(CliError::Usage(format!("config line {line_no}: expected key = value")));
            };
            let key = key.trim().replace('-', "_");
            let value = value.trim();
            match key.as_str() {
                "function" => opts.function = Some(parse_value(&key, value, line_no)?),
                "selection" => opts.selection = Some(parse_value(&key, value, line_no)?),
                "alpha" => opts.alpha = Some(parse_value(&key, value, line_no)?),
                "g0" => opts.g0 = Some(parse_value(&key, value, line_no)?),
                "gamma" => opts.gamma = Some(parse_value(&key, value, line_no)?),
                "gamma_target" => opts.gamma_target = Some(parse_value(&key, value, line_no)?),
                "generations" => opts.generations = Some(parse_value(&key, value, line_no)?),
                "pop_size" => opts.pop_size = Some(parse_value(&key, value, line_no)?),
                "runs" => opts.runs = Some(parse_value(&key, value, line_no)?),
                "seed" => opts.seed = Some(parse_value(&key, value, line_no)?),
                "bits_per_var" => opts.bits_per_var = Some(parse_value(&key, value, line_no)?),
                "dims" => opts.dims = Some(parse_value(&key, value, line_no)?),
                "crossover_prob" => opts.crossover_prob = Some(parse_value(&key, value, line_no)?),
                "mutation_prob" => opts.mutation_prob = Some(parse_value(&key, value, line_no)?),
                "elitism" => opts.elitism = Some(parse_value(&key, value, line_no)?),
                "output" => opts.output = Some(PathBuf::from(value)),
                _ => return Err(CliError::Usage(format!("config line {line_no}: unknown key '{key}'"))),
            }
        }
        if opts.g0.is_some() && opts.gamma_target.is_some() {
            return Err(CliError::Usage("config sets both g0 and gamma_target".into()));
        }
        Ok(opts)
    }

    pub fn load_config(path: &Path) -> Result<Self, CliError> {
        let text = std::fs::read_to_string(path).map_err(|e| CliError::io(path, e))?;
        Self::parse_config(&text)
    }

    /// Fields set here win over `file`. Giving either `g0` or
    /// `gamma_target` here discards both from the file.
    pub fn over(self, file: Self) -> Self {
        let calibration_from_flags = self.g0.is_some() || self.gamma_target.is_some();
        let (file_g0, file_target) = if calibration_from_flags {
            (None, None)
        } else {
            (file.g0, file.gamma_target)
        };
        Self {
            function: self.function.or(file.function),
            selection: self.selection.or(file.selection),
            alpha: self.alpha.or(file.alpha),
            g0: self.g0.or(file_g0),
            gamma: self.gamma.or(file.gamma),
            gamma_target: self.gamma_target.or(file_target),
            generations: self.generations.or(file.generations),
            pop_size: self.pop_size.or(file.pop_size),
            runs: self.runs.or(file.runs),
            seed: self.seed.or(file.seed),
            bits_per_var: self.bits_per_var.or(file.bits_per_var),
            dims: self.dims.or(file.dims),
            crossover_prob: self.crossover_prob.or(file.crossover_prob),
            mutation_prob: self.mutation_prob.or(file.mutation_prob),
            elitism: self.elitism.or(file.elitism),
            output: self.output.or(file.output),
        }
    }

    pub fn output_dir(&self) -> PathBuf {
        self.output.clone().unwrap_or_else(|| PathBuf::from(DEFAULT_OUTPUT))
    }

    /// One experiment per selected (function, scheme), functions outermost.
    pub fn experiments(&self) -> Result<Vec<Experiment>, CliError> {
        if self.g0.is_some() && self.gamma_target.is_some() {
            return Err(CliError::Usage("--g0 and --gamma-target are mutually exclusive".into()));
        }
        let functions: Vec<Objective> = match self.function {
            Some(f) => vec![f],
            None => Objective::ALL.to_vec(),
        };
        let schemes: Vec<SelectionScheme> = match self.selection {
            Some(s) => vec![s],
            None => SelectionScheme::ALL.to_vec(),
        };
        let mut out = Vec::with_capacity(functions.len() * schemes.len());
        for &objective in &functions {
            for &scheme in &schemes {
                out.push(self.experiment(objective, scheme)?);
            }
        }
        Ok(out)
    }

    fn experiment(&self, objective: Objective, scheme: SelectionScheme) -> Result<Experiment, CliError> {
        let generations = self.generations.unwrap_or(DEFAULT_GENERATIONS);
        let dims = self.dims.unwrap_or(DEFAULT_DIMS);
        let mut exp = Experiment {
            objective,
            scheme,
            alpha: None,
            g0: None,
            gamma_target: None,
            gamma: None,
            config: GaConfig {
                objective: ObjectiveSpec::new(objective, dims)?,
                bits_per_var: self.bits_per_var.unwrap_or(DEFAULT_BITS_PER_VAR),
                pop_size: self.pop_size.unwrap_or(DEFAULT_POP_SIZE),
                generations,
                selection: scheme,
                schedule: AnnealingSchedule::constant(0.0)?,
                crossover_prob: self.crossover_prob.unwrap_or(DEFAULT_CROSSOVER_PROB),
                mutation_prob_per_bit: self.mutation_prob.unwrap_or(DEFAULT_MUTATION_PROB),
                runs: self.runs.unwrap_or(DEFAULT_RUNS),
                master_seed: self.seed.unwrap_or(DEFAULT_SEED),
                elitism: self.elitism.unwrap_or(false),
            },
        };
        match scheme {
            SelectionScheme::Proportionate => {}
            SelectionScheme::BoltzmannConst => {
                let gamma = self.gamma.unwrap_or(DEFAULT_GAMMA);
                exp.gamma = Some(gamma);
                exp.config.schedule = AnnealingSchedule::constant(gamma)?;
            }
            SelectionScheme::CauchyBoltzmann => {
                let alpha = self.alpha.unwrap_or_else(|| default_alpha(objective));
                exp.alpha = Some(alpha);
                exp.config.schedule = match self.g0 {
                    Some(g0) => {
                        exp.g0 = Some(g0);
                        AnnealingSchedule::cauchy_with_prefix(
                            g0,
                            alpha,
                            generations.max(DEFAULT_PREFIX_LEN),
                        )?
                    }
                    None => {
                        let target = self.gamma_target.unwrap_or(DEFAULT_GAMMA_TARGET);
                        exp.gamma_target = Some(target);
                        let s = AnnealingSchedule::calibrated(alpha, generations.max(1), target)?;
                        if let AnnealingSchedule::Cauchy { g0, .. } = s {
                            exp.g0 = Some(g0);
                        }
                        s
                    }
                };
            }
        }
        exp.config.validate()?;
        Ok(exp)
    }
}

/// A fully resolved (function, scheme) experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct Experiment {
    pub objective: Objective,
    pub scheme: SelectionScheme,
    pub alpha: Option<f64>,
    pub g0: Option<f64>,
    pub gamma_target: Option<f64>,
    pub gamma: Option<f64>,
    pub config: GaConfig,
}

impl Experiment {
    pub fn file_name(&self) -> String {
        format!("{}_{}.csv", self.objective.name(), self.scheme.name())
    }
}
