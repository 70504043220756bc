//! Normalized fitness distributions, Boltzmann and proportionate selection
//! operators, Cauchy annealing schedules for the inverse temperature, and a
//! binary GA harness that compares the selection schemes on standard
//! benchmark functions.
//!
//! The distribution, operator, schedule and benchmark code is generic over
//! [`Scalar`] (`f32` or `f64`); the aliases below fix the precision. The GA
//! engine works in `f64`.

pub mod annealing;
pub mod benchmark;
pub mod error;
pub mod ga;
pub mod nfd;
pub mod scalar;
pub mod selection;
pub mod theory;

pub use annealing::{calibrate_g0, AnnealingSchedule};
pub use benchmark::{Objective, ObjectiveSpec};
pub use error::{Error, Result};
pub use ga::{GaConfig, SelectionScheme};
pub use nfd::{distance, support, FitnessDistribution, Nfd};
pub use scalar::Scalar;
pub use selection::{
    boltzmann_apply, proportionate_apply, proportionate_strength_closed_form, selection_strength,
};

pub type Nfd64 = Nfd<f64>;
pub type Nfd32 = Nfd<f32>;
pub type FitnessDistribution64 = FitnessDistribution<f64>;
pub type FitnessDistribution32 = FitnessDistribution<f32>;
pub type Schedule64 = AnnealingSchedule<f64>;
pub type Schedule32 = AnnealingSchedule<f32>;
pub type ObjectiveSpec64 = ObjectiveSpec<f64>;
pub type ObjectiveSpec32 = ObjectiveSpec<f32>;
