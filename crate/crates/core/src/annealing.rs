//! Inverse-temperature schedules.
//!
//! The Cauchy schedule accumulates increments `g_k = g0 / k^alpha`, so that
//! `gamma_n = g0 * sum_{k=1}^{n} k^{-alpha}`. For `alpha > 1` the partial sums
//! converge, which makes `{gamma_n}` a nondecreasing Cauchy sequence.
//! `gamma_0` is taken to be zero.

use crate::error::{Error, Result};
use crate::scalar::Scalar;

/// Number of partial sums cached when a Cauchy schedule is built.
pub const DEFAULT_PREFIX_LEN: usize = 1024;

#[derive(Debug, Clone, PartialEq)]
pub enum AnnealingSchedule<F> {
    Constant {
        gamma: F,
    },
    Cauchy {
        g0: F,
        alpha: F,
        /// `prefix[n]` holds `gamma_n`; `prefix[0] = 0`.
        prefix: Vec<F>,
    },
}

fn increment<F: Scalar>(g0: F, alpha: F, k: usize) -> F {
    g0 / F::from_usize(k).expect("index fits scalar").powf(alpha)
}

fn check_alpha<F: Scalar>(alpha: F) -> Result<()> {
    if alpha > F::one() && alpha.is_finite() {
        Ok(())
    } else {
        Err(Error::AlphaNotAboveOne(alpha.as_f64()))
    }
}

/// `sum_{k=1}^{n} k^{-alpha}` in ascending order.
pub fn partial_zeta<F: Scalar>(alpha: F, n: usize) -> F {
    (1..=n).fold(F::zero(), |acc, k| acc + increment(F::one(), alpha, k))
}

/// Chooses `g0` so that the Cauchy schedule reaches `gamma_target` at
/// generation `horizon`.
pub fn calibrate_g0<F: Scalar>(alpha: F, horizon: usize, gamma_target: F) -> Result<F> {
    check_alpha(alpha)?;
    if horizon == 0 {
        return Err(Error::ZeroGenerationIndex);
    }
    if !(gamma_target > F::zero() && gamma_target.is_finite()) {
        return Err(Error::InvalidConfig(format!(
            "gamma target must be positive (got {gamma_target})"
        )));
    }
    Ok(gamma_target / partial_zeta(alpha, horizon))
}

impl<F: Scalar> AnnealingSchedule<F> {
    pub fn constant(gamma: F) -> Result<Self> {
        if !(gamma >= F::zero() && gamma.is_finite()) {
            return Err(Error::NegativeInverseTemperature(gamma.as_f64()));
        }
        Ok(Self::Constant { gamma })
    }

    pub fn cauchy(g0: F, alpha: F) -> Result<Self> {
        Self::cauchy_with_prefix(g0, alpha, DEFAULT_PREFIX_LEN)
    }

    /// Cauchy schedule with the first `cached` partial sums precomputed.
    /// Later generations are summed on demand, continuing in ascending order.
    pub fn cauchy_with_prefix(g0: F, alpha: F, cached: usize) -> Result<Self> {
        check_alpha(alpha)?;
        if !(g0 >= F::zero() && g0.is_finite()) {
            return Err(Error::InvalidG0(g0.as_f64()));
        }
        let mut prefix = Vec::with_capacity(cached + 1);
        prefix.push(F::zero());
        let mut acc = F::zero();
        for k in 1..=cached {
            acc = acc + increment(g0, alpha, k);
            prefix.push(acc);
        }
        Ok(Self::Cauchy { g0, alpha, prefix })
    }

    /// Cauchy schedule whose `g0` is calibrated to hit `gamma_target` at
    /// `horizon`.
    pub fn calibrated(alpha: F, horizon: usize, gamma_target: F) -> Result<Self> {
        let g0 = calibrate_g0(alpha, horizon, gamma_target)?;
        Self::cauchy_with_prefix(g0, alpha, horizon.max(DEFAULT_PREFIX_LEN))
    }

    pub fn is_cauchy(&self) -> bool {
        matches!(self, Self::Cauchy { .. })
    }

    /// Increment `g_k`; zero for constant schedules.
    pub fn increment(&self, k: usize) -> F {
        match self {
            Self::Constant { .. } => F::zero(),
            Self::Cauchy { g0, alpha, .. } => increment(*g0, *alpha, k),
        }
    }

    /// Inverse temperature used at generation `n` (`n >= 1`).
    pub fn gamma_at(&self, n: usize) -> Result<F> {
        if n == 0 {
            return Err(Error::ZeroGenerationIndex);
        }
        Ok(match self {
            Self::Constant { gamma } => *gamma,
            Self::Cauchy { g0, alpha, prefix } => match prefix.get(n) {
                Some(&g) => g,
                None => {
                    let last = prefix.len() - 1;
                    ((last + 1)..=n).fold(prefix[last], |acc, k| acc + increment(*g0, *alpha, k))
                }
            },
        })
    }

    /// `gamma_n - gamma_m`, summed directly over `k = m+1..=n`.
    pub fn tail_sum(&self, m: usize, n: usize) -> Result<F> {
        if n <= m {
            return Err(Error::InvalidRange { lower: m, upper: n });
        }
        match self {
            Self::Constant { .. } => Err(Error::TailSumOnConstant),
            Self::Cauchy { g0, alpha, .. } => {
                Ok(((m + 1)..=n).fold(F::zero(), |acc, k| acc + increment(*g0, *alpha, k)))
            }
        }
    }

    /// Upper bound on `tail_sum(m, n)` from the integral of the decreasing
    /// increment: `g0 (m^{1-alpha} - n^{1-alpha}) / (alpha - 1)`. Valid for
    /// `m >= 1`, and cheap for indices far beyond any direct summation.
    pub fn tail_integral_bound(&self, m: F, n: F) -> Result<F> {
        match self {
            Self::Constant { .. } => Err(Error::TailSumOnConstant),
            Self::Cauchy { g0, alpha, .. } => {
                if !(m >= F::one() && n > m) {
                    return Err(Error::InvalidConfig(format!("need 1 <= m < n, got m={m}, n={n}")));
                }
                let e = F::one() - *alpha;
                Ok(*g0 * (m.powf(e) - n.powf(e)) / (*alpha - F::one()))
            }
        }
    }

    /// Smallest doubling index `N = 2^j` whose window tail
    /// `sum_{k=N+1}^{4N} g_k` lies below `eps`.
    ///
    /// Windows are summed directly while `4N <= direct_limit`; past that the
    /// integral bound is used, which can only overestimate the tail. Returns
    /// `None` if no `N <= 2^max_doublings` qualifies.
    pub fn cauchy_window_index(&self, eps: F, direct_limit: usize, max_doublings: u32) -> Result<Option<F>> {
        if !self.is_cauchy() {
            return Err(Error::TailSumOnConstant);
        }
        let two = F::lit(2.0);
        let four = F::lit(4.0);
        let mut window = F::one();
        for j in 0..=max_doublings {
            let tail = if j < usize::BITS - 2 && (4usize << j) <= direct_limit {
                let n = 1usize << j;
                self.tail_sum(n, 4 * n)?
            } else {
                self.tail_integral_bound(window, four * window)?
            };
            if tail < eps {
                return Ok(Some(window));
            }
            window = window * two;
        }
        Ok(None)
    }

    /// `(n, gamma_n)` for `n = 1..=horizon`.
    pub fn series(&self, horizon: usize) -> Vec<(usize, F)> {
        match self {
            Self::Constant { gamma } => (1..=horizon).map(|n| (n, *gamma)).collect(),
            Self::Cauchy { g0, alpha, prefix } => {
                let mut acc = F::zero();
                (1..=horizon)
                    .map(|n| {
                        acc = match prefix.get(n) {
                            Some(&g) => g,
                            None => acc + increment(*g0, *alpha, n),
                        };
                        (n, acc)
                    })
                    .collect()
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gamma_at_examples() {
        let s = AnnealingSchedule::<f64>::cauchy(1.0, 2.0).unwrap();
        assert_eq!(s.gamma_at(1).unwrap(), 1.0);
        assert!((s.gamma_at(3).unwrap() - (1.0 + 0.25 + 1.0 / 9.0)).abs() < 1e-15);

        let c = AnnealingSchedule::constant(300.0).unwrap();
        for n in [1, 2, 100, 100_000] {
            assert_eq!(c.gamma_at(n).unwrap(), 300.0);
        }
        assert_eq!(s.gamma_at(0), Err(Error::ZeroGenerationIndex));
    }

    #[test]
    fn construction_rejects_bad_parameters() {
        assert!(matches!(
            AnnealingSchedule::cauchy(1.0, 1.0),
            Err(Error::AlphaNotAboveOne(_))
        ));
        assert!(AnnealingSchedule::cauchy(-1.0, 2.0).is_err());
        assert!(AnnealingSchedule::constant(-1.0).is_err());
        assert!(matches!(calibrate_g0(0.5, 100, 300.0), Err(Error::AlphaNotAboveOne(_))));
        assert!(calibrate_g0(2.0, 0, 300.0).is_err());
    }

    #[test]
    fn beyond_cache_continues_ascending_sum() {
        let short = AnnealingSchedule::cauchy_with_prefix(1.0, 1.5, 4).unwrap();
        let long = AnnealingSchedule::cauchy_with_prefix(1.0, 1.5, 50).unwrap();
        for n in 1..=50 {
            assert_eq!(short.gamma_at(n).unwrap(), long.gamma_at(n).unwrap());
        }
    }

    #[test]
    fn calibration_examples() {
        // 1 + 1/4 + ... + 1/100^2
        let oracle: f64 = (1..=100).map(|k| 1.0 / (k as f64 * k as f64)).sum();
        assert!((oracle - 1.634_983_900_184_892).abs() < 1e-14);
        let g0 = calibrate_g0(2.0, 100, 300.0).unwrap();
        assert!((g0 - 300.0 / oracle).abs() < 1e-10);
        assert!((g0 - 183.488).abs() < 1e-3);

        assert_eq!(calibrate_g0(2.0, 1, 300.0).unwrap(), 300.0);

        for alpha in [1.0001, 1.1, 1.5, 2.0] {
            let s = AnnealingSchedule::<f64>::calibrated(alpha, 100, 300.0).unwrap();
            let end = s.gamma_at(100).unwrap();
            assert!(((end - 300.0) / 300.0).abs() < 1e-9, "alpha {alpha}: {end}");
        }
    }

    #[test]
    fn tail_sum_examples() {
        let s = AnnealingSchedule::<f64>::cauchy(1.0, 2.0).unwrap();
        assert!((s.tail_sum(1, 3).unwrap() - (0.25 + 1.0 / 9.0)).abs() < 1e-15);
        assert!((s.tail_sum(5, 6).unwrap() - 1.0 / 36.0).abs() < 1e-15);
        assert!((s.tail_sum(0, 3).unwrap() - s.gamma_at(3).unwrap()).abs() < 1e-15);
        assert!(matches!(s.tail_sum(4, 4), Err(Error::InvalidRange { .. })));
        assert_eq!(
            AnnealingSchedule::constant(1.0).unwrap().tail_sum(1, 2),
            Err(Error::TailSumOnConstant)
        );
    }

    #[test]
    fn nondecreasing_up_to_1e5() {
        let s = AnnealingSchedule::cauchy_with_prefix(3.0, 1.0001, 100_000).unwrap();
        let mut prev = 0.0;
        for n in 1..=100_000 {
            let g = s.gamma_at(n).unwrap();
            assert!(g >= prev);
            prev = g;
        }
    }

    #[test]
    fn integral_bound_dominates_direct_tail() {
        for alpha in [1.0001, 1.1, 1.5, 2.0] {
            let s = AnnealingSchedule::<f64>::cauchy(1.0, alpha).unwrap();
            for (m, n) in [(1, 4), (3, 10), (64, 256), (500, 2000)] {
                let direct = s.tail_sum(m, n).unwrap();
                let bound = s.tail_integral_bound(m as f64, n as f64).unwrap();
                assert!(direct <= bound, "alpha {alpha} ({m},{n}): {direct} > {bound}");
            }
        }
    }

    #[test]
    fn window_index_search() {
        // 0.75 / N for alpha = 2, so the first power of two past 750 is 1024
        let s = AnnealingSchedule::<f64>::cauchy(1.0, 2.0).unwrap();
        assert_eq!(s.cauchy_window_index(1e-3, 1 << 20, 64).unwrap(), Some(1024.0));
        let s = AnnealingSchedule::<f64>::cauchy(1.0, 1.1).unwrap();
        let n = s.cauchy_window_index(1e-3, 1 << 20, 200).unwrap().unwrap();
        assert!(n > 1e30);
        assert!(s.tail_integral_bound(n, 4.0 * n).unwrap() < 1e-3);
        assert!(AnnealingSchedule::constant(1.0).unwrap().cauchy_window_index(1e-3, 8, 4).is_err());
    }

    #[test]
    fn single_precision_schedule() {
        let s = AnnealingSchedule::<f32>::calibrated(1.5, 100, 300.0).unwrap();
        assert!((s.gamma_at(100).unwrap() - 300.0).abs() < 1e-3);
    }
}
