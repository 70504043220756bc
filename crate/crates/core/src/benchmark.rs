//! Benchmark objectives (all minimized) and the affine map that turns a raw
//! objective value into a fitness in `[0, 1]`.

use std::f64::consts::{E, TAU};
use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Rastrigin amplitude.
pub const RASTRIGIN_A: f64 = 10.0;
/// Magnitude of the per-dimension Schwefel extremum, rounded outward.
pub const SCHWEFEL_PER_DIM: f64 = 418.9829;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Objective {
    /// Also known as f6.
    Rastrigin,
    /// Also known as f8.
    Griewangk,
    /// Also known as f9.
    Ackley,
    /// Also known as f7.
    Schwefel,
}

impl Objective {
    pub const ALL: [Objective; 4] = [
        Objective::Rastrigin,
        Objective::Griewangk,
        Objective::Ackley,
        Objective::Schwefel,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Objective::Rastrigin => "rastrigin",
            Objective::Griewangk => "griewangk",
            Objective::Ackley => "ackley",
            Objective::Schwefel => "schwefel",
        }
    }

    /// Symmetric box half-width per dimension.
    pub fn half_width(self) -> f64 {
        match self {
            Objective::Rastrigin => 5.12,
            Objective::Griewangk => 600.0,
            Objective::Ackley => 30.0,
            Objective::Schwefel => 500.0,
        }
    }
}

impl fmt::Display for Objective {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Objective {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "rastrigin" | "f6" => Ok(Objective::Rastrigin),
            "griewangk" | "griewank" | "f8" => Ok(Objective::Griewangk),
            "ackley" | "f9" => Ok(Objective::Ackley),
            "schwefel" | "f7" => Ok(Objective::Schwefel),
            other => Err(Error::InvalidConfig(format!("unknown function '{other}'"))),
        }
    }
}

/// An objective together with its dimension and search box.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ObjectiveSpec<F> {
    pub objective: Objective,
    pub dims: usize,
    pub lower: F,
    pub upper: F,
}

impl<F: Scalar> ObjectiveSpec<F> {
    pub fn new(objective: Objective, dims: usize) -> Result<Self> {
        if dims == 0 {
            return Err(Error::InvalidConfig("dimension must be positive".into()));
        }
        let w = F::lit(objective.half_width());
        Ok(Self {
            objective,
            dims,
            lower: -w,
            upper: w,
        })
    }

    /// Raw objective value at `x`.
    pub fn evaluate_raw(&self, x: &[F]) -> Result<F> {
        if x.len() != self.dims {
            return Err(Error::WrongLength {
                expected: self.dims,
                actual: x.len(),
            });
        }
        if let Some((index, &value)) = x
            .iter()
            .enumerate()
            .find(|(_, &v)| !(v >= self.lower && v <= self.upper))
        {
            return Err(Error::OutOfBounds {
                index,
                value: value.as_f64(),
                lower: self.lower.as_f64(),
                upper: self.upper.as_f64(),
            });
        }
        Ok(self.evaluate_unchecked(x))
    }

    /// Raw objective value without the bounds check.
    ///
    /// Each formula is grouped so that every summand is nonnegative whenever
    /// its mathematical value is, so the zero minima come out exactly zero.
    pub fn evaluate_unchecked(&self, x: &[F]) -> F {
        let one = F::one();
        let tau = F::lit(TAU);
        match self.objective {
            Objective::Rastrigin => {
                let a = F::lit(RASTRIGIN_A);
                x.iter()
                    .fold(F::zero(), |acc, &xi| acc + (xi * xi + a * (one - (tau * xi).cos())))
            }
            Objective::Griewangk => {
                let quad = x.iter().fold(F::zero(), |acc, &xi| acc + xi * xi) / F::lit(4000.0);
                let prod = x.iter().enumerate().fold(one, |acc, (i, &xi)| {
                    acc * (xi / F::from_usize(i + 1).expect("index fits").sqrt()).cos()
                });
                quad + (one - prod)
            }
            Objective::Ackley => {
                let n = F::from_usize(x.len()).expect("length fits");
                let twenty = F::lit(20.0);
                let e = F::lit(E);
                let sq = x.iter().fold(F::zero(), |acc, &xi| acc + xi * xi) / n;
                let cs = x.iter().fold(F::zero(), |acc, &xi| acc + (tau * xi).cos()) / n;
                // -20 exp(-0.2 sqrt(sq)) - exp(cs) + 20 + e
                (twenty - twenty * (F::lit(-0.2) * sq.sqrt()).exp()) + (e - cs.exp())
            }
            Objective::Schwefel => x
                .iter()
                .fold(F::zero(), |acc, &xi| acc - xi * xi.abs().sqrt().sin()),
        }
    }

    /// Conservative `(L, U)` with `L <= f(x) <= U` over the whole box.
    pub fn analytic_bounds(&self) -> (F, F) {
        let l = F::from_usize(self.dims).expect("dims fits");
        match self.objective {
            Objective::Rastrigin => {
                let w = F::lit(5.12);
                (F::zero(), l * (w * w + F::lit(2.0 * RASTRIGIN_A)))
            }
            Objective::Griewangk => (F::zero(), l * F::lit(600.0 * 600.0 / 4000.0) + F::lit(2.0)),
            Objective::Ackley => (F::zero(), F::lit(20.0 + E)),
            Objective::Schwefel => {
                let s = F::lit(SCHWEFEL_PER_DIM);
                (-(l * s), l * s)
            }
        }
    }

    /// Affine map `(U - raw) / (U - L)`: the best possible raw value maps to
    /// one and the worst to zero. Values within `1e-12 (U - L)` outside the
    /// bounds are clamped; anything further out is an error.
    pub fn to_fitness(&self, raw: F) -> Result<F> {
        let (lo, hi) = self.analytic_bounds();
        let span = hi - lo;
        let slack = span * F::lit(1e-12);
        if !(raw >= lo - slack && raw <= hi + slack) {
            return Err(Error::BoundViolation {
                raw: raw.as_f64(),
                lower: lo.as_f64(),
                upper: hi.as_f64(),
            });
        }
        Ok(((hi - raw) / span).max(F::zero()).min(F::one()))
    }
}
