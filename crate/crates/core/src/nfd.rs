//! Fitness distributions of finite populations and their normalized form.
//!
//! A [`FitnessDistribution`] counts how many individuals carry each fitness
//! value; an [`Nfd`] divides those counts by the population size. Both keep
//! their support sorted in ascending fitness order, so every sum over the
//! support is evaluated in the same order regardless of how the value was
//! built. Fitness keys aggregate only when they are bit-identical (with
//! `-0.0` folded into `0.0`).

use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::scalar::Scalar;

fn check_key<F: Scalar>(x: F) -> Result<F> {
    if !x.is_finite() {
        return Err(Error::NonFiniteFitness);
    }
    if x < F::zero() {
        return Err(Error::NegativeFitness(x.as_f64()));
    }
    // folds -0.0 into +0.0
    Ok(x + F::zero())
}

fn by_key<F: Scalar, V>(a: &(F, V), b: &(F, V)) -> Ordering {
    a.0.partial_cmp(&b.0).expect("keys are finite")
}

/// Multiset of fitness values: fitness value to number of individuals.
#[derive(Debug, Clone, PartialEq)]
pub struct FitnessDistribution<F> {
    entries: Vec<(F, u64)>,
}

impl<F: Scalar> FitnessDistribution<F> {
    /// Counts the multiplicity of every fitness value in `values`.
    pub fn from_values(values: &[F]) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::EmptyPopulation);
        }
        let mut keys = values
            .iter()
            .map(|&x| check_key(x))
            .collect::<Result<Vec<_>>>()?;
        keys.sort_by(|a, b| a.partial_cmp(b).expect("keys are finite"));
        let mut entries: Vec<(F, u64)> = Vec::new();
        for x in keys {
            match entries.last_mut() {
                Some((last, count)) if *last == x => *count += 1,
                _ => entries.push((x, 1)),
            }
        }
        Ok(Self { entries })
    }

    /// Builds a distribution from explicit `(value, count)` pairs. Zero
    /// counts are dropped; repeated values are merged.
    pub fn from_counts(pairs: impl IntoIterator<Item = (F, u64)>) -> Result<Self> {
        let mut raw = pairs
            .into_iter()
            .filter(|&(_, c)| c > 0)
            .map(|(x, c)| check_key(x).map(|x| (x, c)))
            .collect::<Result<Vec<_>>>()?;
        raw.sort_by(by_key);
        let mut entries: Vec<(F, u64)> = Vec::with_capacity(raw.len());
        for (x, c) in raw {
            match entries.last_mut() {
                Some((last, count)) if *last == x => *count += c,
                _ => entries.push((x, c)),
            }
        }
        Ok(Self { entries })
    }

    /// Population size `n_P`: the sum of all counts.
    pub fn total(&self) -> u64 {
        self.entries.iter().map(|&(_, c)| c).sum()
    }

    pub fn count(&self, x: F) -> u64 {
        self.entries
            .binary_search_by(|(k, _)| k.partial_cmp(&x).unwrap_or(Ordering::Less))
            .map(|i| self.entries[i].1)
            .unwrap_or(0)
    }

    pub fn support(&self) -> Vec<F> {
        self.entries.iter().map(|&(x, _)| x).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (F, u64)> + '_ {
        self.entries.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Divides every count by the population size.
    pub fn normalize(&self) -> Result<Nfd<F>> {
        let total = self.total();
        if total == 0 {
            return Err(Error::ZeroTotalCount);
        }
        let n = F::from_u64(total).ok_or(Error::ZeroTotalCount)?;
        Ok(Nfd {
            entries: self
                .entries
                .iter()
                .map(|&(x, c)| (x, F::from_u64(c).expect("count fits scalar") / n))
                .collect(),
        })
    }
}

/// Normalized fitness distribution: a finite-support probability mass
/// function over fitness values.
#[derive(Debug, Clone, PartialEq)]
pub struct Nfd<F> {
    entries: Vec<(F, F)>,
}

impl<F: Scalar> Nfd<F> {
    /// Validates explicit `(value, mass)` pairs. Values must be distinct,
    /// finite and nonnegative; masses must be positive and sum to one.
    pub fn new(pairs: impl IntoIterator<Item = (F, F)>) -> Result<Self> {
        let mut entries = pairs
            .into_iter()
            .map(|(x, m)| check_key(x).map(|x| (x, m)))
            .collect::<Result<Vec<_>>>()?;
        if entries.is_empty() {
            return Err(Error::InvalidNfd("empty support".into()));
        }
        entries.sort_by(by_key);
        if entries.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(Error::InvalidNfd("repeated support value".into()));
        }
        if let Some(&(x, m)) = entries.iter().find(|(_, m)| !(m.is_finite() && *m > F::zero())) {
            return Err(Error::InvalidNfd(format!("mass {m} at {x} is not positive")));
        }
        let total = entries.iter().fold(F::zero(), |acc, &(_, m)| acc + m);
        if (total - F::one()).abs() > F::mass_tolerance() {
            return Err(Error::InvalidNfd(format!("total mass {total} differs from 1")));
        }
        Ok(Self { entries })
    }

    /// Normalizes nonnegative weights into an NFD. Zero weights are dropped
    /// from the support and repeated values are merged.
    pub fn from_weights(pairs: impl IntoIterator<Item = (F, F)>) -> Result<Self> {
        let mut raw = Vec::new();
        for (x, w) in pairs {
            let x = check_key(x)?;
            if !(w.is_finite() && w >= F::zero()) {
                return Err(Error::InvalidNfd(format!("weight {w} at {x} is invalid")));
            }
            if w > F::zero() {
                raw.push((x, w));
            }
        }
        raw.sort_by(by_key);
        let mut merged: Vec<(F, F)> = Vec::with_capacity(raw.len());
        for (x, w) in raw {
            match merged.last_mut() {
                Some((last, acc)) if *last == x => *acc = *acc + w,
                _ => merged.push((x, w)),
            }
        }
        let total = merged.iter().fold(F::zero(), |acc, &(_, w)| acc + w);
        if !(total > F::zero() && total.is_finite()) {
            return Err(Error::InvalidNfd("weights have no positive finite total".into()));
        }
        for entry in &mut merged {
            entry.1 = entry.1 / total;
        }
        merged.retain(|&(_, m)| m > F::zero());
        Ok(Self { entries: merged })
    }

    pub fn point_mass(x: F) -> Result<Self> {
        Ok(Self {
            entries: vec![(check_key(x)?, F::one())],
        })
    }

    /// Probability mass at `x`; zero outside the support.
    pub fn mass(&self, x: F) -> F {
        self.entries
            .binary_search_by(|(k, _)| k.partial_cmp(&x).unwrap_or(Ordering::Less))
            .map(|i| self.entries[i].1)
            .unwrap_or_else(|_| F::zero())
    }

    /// Support values in ascending order.
    pub fn support(&self) -> Vec<F> {
        self.entries.iter().map(|&(x, _)| x).collect()
    }

    pub fn iter(&self) -> impl Iterator<Item = (F, F)> + '_ {
        self.entries.iter().copied()
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn total_mass(&self) -> F {
        self.entries.iter().fold(F::zero(), |acc, &(_, m)| acc + m)
    }

    /// Mean fitness `Σ x φ(x)`.
    pub fn mean(&self) -> F {
        self.entries.iter().fold(F::zero(), |acc, &(x, m)| acc + x * m)
    }

    pub fn min_support(&self) -> F {
        self.entries[0].0
    }

    pub fn max_support(&self) -> F {
        self.entries[self.entries.len() - 1].0
    }

    /// Moves every support point by `offset`; masses are unchanged.
    pub fn shifted(&self, offset: F) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|&(x, m)| check_key(x + offset).map(|x| (x, m)))
            .collect::<Result<Vec<_>>>()?;
        if entries.windows(2).any(|w| w[0].0 >= w[1].0) {
            return Err(Error::InvalidNfd("shift merged support values".into()));
        }
        Ok(Self { entries })
    }
}

/// Support of an NFD: the fitness values carrying positive mass.
pub fn support<F: Scalar>(phi: &Nfd<F>) -> Vec<F> {
    phi.support()
}

/// L1 distance between two NFDs, summed over the union of their supports.
/// Always lies in `[0, 2]`.
pub fn distance<F: Scalar>(a: &Nfd<F>, b: &Nfd<F>) -> F {
    let (mut i, mut j) = (0, 0);
    let mut acc = F::zero();
    let (ea, eb) = (&a.entries, &b.entries);
    while i < ea.len() || j < eb.len() {
        let step = match (ea.get(i), eb.get(j)) {
            (Some(&(xa, ma)), Some(&(xb, mb))) => match xa.partial_cmp(&xb) {
                Some(Ordering::Less) => {
                    i += 1;
                    ma
                }
                Some(Ordering::Greater) => {
                    j += 1;
                    mb
                }
                _ => {
                    i += 1;
                    j += 1;
                    (ma - mb).abs()
                }
            },
            (Some(&(_, ma)), None) => {
                i += 1;
                ma
            }
            (None, Some(&(_, mb))) => {
                j += 1;
                mb
            }
            (None, None) => unreachable!(),
        };
        acc = acc + step;
    }
    acc
}
