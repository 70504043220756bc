//! Binary-encoded generational GA with proportionate, constant-temperature
//! Boltzmann and Cauchy-annealed Boltzmann selection.
//!
//! One generation runs selection (multinomial roulette with replacement),
//! random pairing, uniform crossover, bitwise mutation and evaluation, in
//! that order. Generation `n` (starting at 1) selects with `gamma_n` from the
//! configured schedule. Every random decision of a run comes from a single
//! generator seeded from `(master_seed, run_index)`.

use rand::distr::weighted::WeightedIndex;
use rand::distr::Distribution;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;

use std::fmt;
use std::str::FromStr;

use crate::annealing::AnnealingSchedule;
use crate::benchmark::{Objective, ObjectiveSpec};
use crate::error::{Error, Result};
use crate::nfd::{distance, FitnessDistribution, Nfd};

/// Per-run random generator.
pub type RunRng = ChaCha8Rng;

/// Generator identification written into experiment output headers.
pub const GENERATOR_NAME: &str = "ChaCha8Rng (rand_chacha 0.9, SeedableRng::seed_from_u64)";

const SEED_MIX: u64 = 0x9E37_79B9_7F4A_7C15;

/// `master_seed XOR (run_index * 0x9E3779B97F4A7C15)`, wrapping.
pub fn run_seed(master_seed: u64, run_index: u64) -> u64 {
    master_seed ^ run_index.wrapping_mul(SEED_MIX)
}

pub fn run_rng(master_seed: u64, run_index: u64) -> RunRng {
    RunRng::seed_from_u64(run_seed(master_seed, run_index))
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Genome {
    bits: Vec<bool>,
}

impl Genome {
    pub fn new(bits: Vec<bool>) -> Self {
        Self { bits }
    }

    pub fn zeros(len: usize) -> Self {
        Self { bits: vec![false; len] }
    }

    pub fn ones(len: usize) -> Self {
        Self { bits: vec![true; len] }
    }

    pub fn random<R: Rng + ?Sized>(len: usize, rng: &mut R) -> Self {
        Self {
            bits: (0..len).map(|_| rng.random_bool(0.5)).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.bits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_empty()
    }

    pub fn bits(&self) -> &[bool] {
        &self.bits
    }

    pub fn hamming(&self, other: &Genome) -> usize {
        self.bits.iter().zip(&other.bits).filter(|(a, b)| a != b).count()
    }
}

/// Decodes each `bits_per_var` slice as a big-endian unsigned integer `v`
/// and maps it linearly onto the box: `lower + v / (2^bits - 1) * (upper - lower)`.
pub fn decode(genome: &Genome, spec: &ObjectiveSpec<f64>, bits_per_var: usize) -> Vec<f64> {
    let levels = ((1u64 << bits_per_var) - 1) as f64;
    let width = spec.upper - spec.lower;
    genome
        .bits
        .chunks(bits_per_var)
        .take(spec.dims)
        .map(|slice| {
            let v = slice.iter().fold(0u64, |acc, &b| (acc << 1) | b as u64);
            if v == 0 {
                spec.lower
            } else if v as f64 == levels {
                spec.upper
            } else {
                spec.lower + v as f64 / levels * width
            }
        })
        .collect()
}

/// A genome with its decoded point, raw objective and fitness.
#[derive(Debug, Clone, PartialEq)]
pub struct Individual {
    pub genome: Genome,
    pub x: Vec<f64>,
    pub raw: f64,
    pub fitness: f64,
}

impl Individual {
    pub fn evaluate(genome: Genome, spec: &ObjectiveSpec<f64>, bits_per_var: usize) -> Result<Self> {
        let expected = spec.dims * bits_per_var;
        if genome.len() != expected {
            return Err(Error::LengthMismatch(genome.len(), expected));
        }
        let x = decode(&genome, spec, bits_per_var);
        let raw = spec.evaluate_raw(&x)?;
        let fitness = spec.to_fitness(raw)?;
        Ok(Self { genome, x, raw, fitness })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SelectionScheme {
    Proportionate,
    BoltzmannConst,
    CauchyBoltzmann,
}

impl SelectionScheme {
    pub const ALL: [SelectionScheme; 3] = [
        SelectionScheme::Proportionate,
        SelectionScheme::BoltzmannConst,
        SelectionScheme::CauchyBoltzmann,
    ];

    pub fn name(self) -> &'static str {
        match self {
            SelectionScheme::Proportionate => "proportionate",
            SelectionScheme::BoltzmannConst => "boltzmann",
            SelectionScheme::CauchyBoltzmann => "cauchy-boltzmann",
        }
    }
}

impl fmt::Display for SelectionScheme {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for SelectionScheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().replace('_', "-").as_str() {
            "proportionate" => Ok(SelectionScheme::Proportionate),
            "boltzmann" | "boltzmann-const" => Ok(SelectionScheme::BoltzmannConst),
            "cauchy-boltzmann" | "cauchy" => Ok(SelectionScheme::CauchyBoltzmann),
            other => Err(Error::InvalidConfig(format!("unknown selection scheme '{other}'"))),
        }
    }
}

/// Selection probabilities for a population with the given fitness values.
///
/// Boltzmann weights are `e^{gamma (f_i - f_max)}`; `gamma` is ignored by
/// proportionate selection.
pub fn selection_probabilities(
    fitness: &[f64],
    scheme: SelectionScheme,
    gamma: f64,
) -> Result<Vec<f64>> {
    if fitness.is_empty() {
        return Err(Error::EmptyPopulation);
    }
    let weights: Vec<f64> = match scheme {
        SelectionScheme::Proportionate => fitness.to_vec(),
        SelectionScheme::BoltzmannConst | SelectionScheme::CauchyBoltzmann => {
            if !(gamma >= 0.0 && gamma.is_finite()) {
                return Err(Error::NegativeInverseTemperature(gamma));
            }
            let top = fitness.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            fitness.iter().map(|&f| (gamma * (f - top)).exp()).collect()
        }
    };
    let total: f64 = weights.iter().sum();
    if !(total > 0.0) {
        return Err(Error::DegeneratePopulation);
    }
    Ok(weights.into_iter().map(|w| w / total).collect())
}

/// Draws `population.len()` parents i.i.d. with replacement.
pub fn select_parents<R: Rng + ?Sized>(
    population: &[Individual],
    scheme: SelectionScheme,
    gamma: f64,
    rng: &mut R,
) -> Result<Vec<Individual>> {
    let fitness: Vec<f64> = population.iter().map(|i| i.fitness).collect();
    let probs = selection_probabilities(&fitness, scheme, gamma)?;
    let wheel = WeightedIndex::new(&probs).map_err(|_| Error::DegeneratePopulation)?;
    Ok((0..population.len())
        .map(|_| population[wheel.sample(rng)].clone())
        .collect())
}

/// With probability `crossover_prob`, swaps every bit position between the
/// two parents independently with probability 1/2.
pub fn uniform_crossover<R: Rng + ?Sized>(
    a: &Genome,
    b: &Genome,
    crossover_prob: f64,
    rng: &mut R,
) -> Result<(Genome, Genome)> {
    if a.len() != b.len() {
        return Err(Error::LengthMismatch(a.len(), b.len()));
    }
    let (mut left, mut right) = (a.clone(), b.clone());
    if rng.random_bool(crossover_prob) {
        for (l, r) in left.bits.iter_mut().zip(right.bits.iter_mut()) {
            if rng.random_bool(0.5) {
                std::mem::swap(l, r);
            }
        }
    }
    Ok((left, right))
}

/// Flips each bit independently with probability `mutation_prob_per_bit`.
pub fn mutate<R: Rng + ?Sized>(genome: &Genome, mutation_prob_per_bit: f64, rng: &mut R) -> Genome {
    Genome {
        bits: genome
            .bits
            .iter()
            .map(|&b| b ^ rng.random_bool(mutation_prob_per_bit))
            .collect(),
    }
}

/// Full parameterization of one experiment.
#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub objective: ObjectiveSpec<f64>,
    pub bits_per_var: usize,
    pub pop_size: usize,
    pub generations: usize,
    pub selection: SelectionScheme,
    pub schedule: AnnealingSchedule<f64>,
    pub crossover_prob: f64,
    pub mutation_prob_per_bit: f64,
    pub runs: usize,
    pub master_seed: u64,
    pub elitism: bool,
}

pub const DEFAULT_DIMS: usize = 15;
pub const DEFAULT_BITS_PER_VAR: usize = 5;
pub const DEFAULT_POP_SIZE: usize = 150;
pub const DEFAULT_GENERATIONS: usize = 100;
pub const DEFAULT_CROSSOVER_PROB: f64 = 0.8;
pub const DEFAULT_MUTATION_PROB: f64 = 0.01;
pub const DEFAULT_RUNS: usize = 17;
pub const DEFAULT_GAMMA: f64 = 300.0;
pub const DEFAULT_SEED: u64 = 42;

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            objective: ObjectiveSpec::new(Objective::Rastrigin, DEFAULT_DIMS).expect("valid dims"),
            bits_per_var: DEFAULT_BITS_PER_VAR,
            pop_size: DEFAULT_POP_SIZE,
            generations: DEFAULT_GENERATIONS,
            selection: SelectionScheme::CauchyBoltzmann,
            schedule: AnnealingSchedule::calibrated(2.0, DEFAULT_GENERATIONS, DEFAULT_GAMMA)
                .expect("valid schedule"),
            crossover_prob: DEFAULT_CROSSOVER_PROB,
            mutation_prob_per_bit: DEFAULT_MUTATION_PROB,
            runs: DEFAULT_RUNS,
            master_seed: DEFAULT_SEED,
            elitism: false,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<()> {
        let bad = |msg: &str| Err(Error::InvalidConfig(msg.to_string()));
        if self.pop_size == 0 {
            return bad("population size must be positive");
        }
        if self.generations == 0 {
            return bad("generation count must be positive");
        }
        if self.runs == 0 {
            return bad("run count must be positive");
        }
        if !(1..=32).contains(&self.bits_per_var) {
            return bad("bits per variable must be in 1..=32");
        }
        if !(0.0..=1.0).contains(&self.crossover_prob) {
            return bad("crossover probability must lie in [0, 1]");
        }
        if !(0.0..=1.0).contains(&self.mutation_prob_per_bit) {
            return bad("mutation probability must lie in [0, 1]");
        }
        match (self.selection, &self.schedule) {
            (SelectionScheme::BoltzmannConst, AnnealingSchedule::Cauchy { .. }) => {
                bad("constant Boltzmann selection needs a constant schedule")
            }
            (SelectionScheme::CauchyBoltzmann, AnnealingSchedule::Constant { .. }) => {
                bad("Cauchy-Boltzmann selection needs a cauchy schedule")
            }
            _ => Ok(()),
        }
    }

    pub fn genome_len(&self) -> usize {
        self.objective.dims * self.bits_per_var
    }

    /// Inverse temperature used at generation `n`; zero for proportionate.
    pub fn gamma_at(&self, n: usize) -> Result<f64> {
        match self.selection {
            SelectionScheme::Proportionate => Ok(0.0),
            _ => self.schedule.gamma_at(n),
        }
    }
}

/// Statistics of one generation, taken after its offspring are evaluated.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GenerationRecord {
    pub generation: usize,
    pub gamma: f64,
    /// Lowest raw objective seen in this run so far.
    pub best_raw: f64,
    /// Lowest raw objective in this generation's population.
    pub generation_best_raw: f64,
    pub mean_raw: f64,
    /// Distance between the population NFD and the NFD of the selected pool.
    pub strength: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct Population {
    pub individuals: Vec<Individual>,
    pub best_raw: f64,
}

impl Population {
    pub fn new(individuals: Vec<Individual>) -> Result<Self> {
        if individuals.is_empty() {
            return Err(Error::EmptyPopulation);
        }
        let best_raw = individuals.iter().map(|i| i.raw).fold(f64::INFINITY, f64::min);
        Ok(Self { individuals, best_raw })
    }

    pub fn random<R: Rng + ?Sized>(config: &GaConfig, rng: &mut R) -> Result<Self> {
        let individuals = (0..config.pop_size)
            .map(|_| {
                Individual::evaluate(
                    Genome::random(config.genome_len(), rng),
                    &config.objective,
                    config.bits_per_var,
                )
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(individuals)
    }

    pub fn len(&self) -> usize {
        self.individuals.len()
    }

    pub fn is_empty(&self) -> bool {
        self.individuals.is_empty()
    }

    pub fn nfd(&self) -> Result<Nfd<f64>> {
        fitness_nfd(&self.individuals)
    }
}

pub fn fitness_nfd(individuals: &[Individual]) -> Result<Nfd<f64>> {
    let values: Vec<f64> = individuals.iter().map(|i| i.fitness).collect();
    FitnessDistribution::from_values(&values)?.normalize()
}

/// Advances the population by one generation.
pub fn step_generation<R: Rng + ?Sized>(
    population: &Population,
    config: &GaConfig,
    generation: usize,
    rng: &mut R,
) -> Result<(Population, GenerationRecord)> {
    let gamma = config.gamma_at(generation)?;
    let mut pool = select_parents(&population.individuals, config.selection, gamma, rng)?;
    let strength = distance(&population.nfd()?, &fitness_nfd(&pool)?);

    pool.shuffle(rng);
    let n = pool.len();
    let mut genomes: Vec<Genome> = Vec::with_capacity(n);
    for pair in pool.chunks(2) {
        match pair {
            [a, b] => {
                let (c, d) = uniform_crossover(&a.genome, &b.genome, config.crossover_prob, rng)?;
                genomes.push(c);
                genomes.push(d);
            }
            [a] => {
                let partner = if n > 1 { &pool[rng.random_range(0..n - 1)] } else { a };
                let (c, _) = uniform_crossover(&a.genome, &partner.genome, config.crossover_prob, rng)?;
                genomes.push(c);
            }
            _ => unreachable!(),
        }
    }

    let mut offspring = genomes
        .iter()
        .map(|g| {
            Individual::evaluate(
                mutate(g, config.mutation_prob_per_bit, rng),
                &config.objective,
                config.bits_per_var,
            )
        })
        .collect::<Result<Vec<_>>>()?;

    if config.elitism {
        let elite = population
            .individuals
            .iter()
            .min_by(|a, b| a.raw.total_cmp(&b.raw))
            .expect("nonempty");
        let worst = offspring
            .iter()
            .enumerate()
            .max_by(|a, b| a.1.raw.total_cmp(&b.1.raw))
            .map(|(i, _)| i)
            .expect("nonempty");
        offspring[worst] = elite.clone();
    }

    let generation_best_raw = offspring.iter().map(|i| i.raw).fold(f64::INFINITY, f64::min);
    let mean_raw = offspring.iter().map(|i| i.raw).sum::<f64>() / offspring.len() as f64;
    let best_raw = population.best_raw.min(generation_best_raw);
    let record = GenerationRecord {
        generation,
        gamma,
        best_raw,
        generation_best_raw,
        mean_raw,
        strength,
    };
    Ok((
        Population {
            individuals: offspring,
            best_raw,
        },
        record,
    ))
}

/// Per-generation records of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct RunSeries {
    pub run_index: u64,
    pub seed: u64,
    pub records: Vec<GenerationRecord>,
}

/// Executes a single run. Deterministic in `(master_seed, run_index)`.
pub fn run(config: &GaConfig, run_index: u64) -> Result<RunSeries> {
    config.validate()?;
    let mut rng = run_rng(config.master_seed, run_index);
    let mut population = Population::random(config, &mut rng)?;
    let mut records = Vec::with_capacity(config.generations);
    for generation in 1..=config.generations {
        let (next, record) = step_generation(&population, config, generation, &mut rng)?;
        population = next;
        records.push(record);
    }
    Ok(RunSeries {
        run_index,
        seed: run_seed(config.master_seed, run_index),
        records,
    })
}

/// Mean and population standard deviation.
#[derive(Debug, Clone, Copy, PartialEq, Default)]
pub struct Summary {
    pub mean: f64,
    pub std: f64,
}

impl Summary {
    /// Deviations are taken from the first sample, so identical samples give
    /// a standard deviation of exactly zero.
    pub fn of(values: &[f64]) -> Self {
        let Some(&pivot) = values.first() else {
            return Self { mean: f64::NAN, std: f64::NAN };
        };
        let n = values.len() as f64;
        let shift = values.iter().map(|v| v - pivot).sum::<f64>() / n;
        let var = values.iter().map(|v| (v - pivot - shift).powi(2)).sum::<f64>() / n;
        Self {
            mean: pivot + shift,
            std: var.sqrt(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AggregateRecord {
    pub generation: usize,
    pub gamma: f64,
    pub best_raw: Summary,
    pub generation_best_raw: Summary,
    pub mean_raw: Summary,
    pub strength: Summary,
}

#[derive(Debug, Clone, PartialEq)]
pub struct AggregateSeries {
    pub runs: usize,
    pub records: Vec<AggregateRecord>,
}

impl AggregateSeries {
    /// Aggregates runs generation by generation. Runs are ordered by
    /// `run_index` first, so the result does not depend on input order.
    pub fn from_runs(runs: &[RunSeries]) -> Result<Self> {
        let Some(first) = runs.first() else {
            return Err(Error::InvalidConfig("no runs to aggregate".into()));
        };
        let generations = first.records.len();
        if runs.iter().any(|r| r.records.len() != generations) {
            return Err(Error::InvalidConfig("runs differ in length".into()));
        }
        let mut ordered: Vec<&RunSeries> = runs.iter().collect();
        ordered.sort_by_key(|r| r.run_index);
        let column = |g: usize, pick: fn(&GenerationRecord) -> f64| -> Vec<f64> {
            ordered.iter().map(|r| pick(&r.records[g])).collect()
        };
        let records = (0..generations)
            .map(|g| AggregateRecord {
                generation: first.records[g].generation,
                gamma: first.records[g].gamma,
                best_raw: Summary::of(&column(g, |r| r.best_raw)),
                generation_best_raw: Summary::of(&column(g, |r| r.generation_best_raw)),
                mean_raw: Summary::of(&column(g, |r| r.mean_raw)),
                strength: Summary::of(&column(g, |r| r.strength)),
            })
            .collect();
        Ok(Self {
            runs: runs.len(),
            records,
        })
    }
}

/// Runs `config.runs` independent runs (in parallel) and aggregates them.
pub fn multi_run(config: &GaConfig) -> Result<AggregateSeries> {
    config.validate()?;
    let runs = (0..config.runs as u64)
        .into_par_iter()
        .map(|i| run(config, i))
        .collect::<Result<Vec<_>>>()?;
    AggregateSeries::from_runs(&runs)
}
