//! Numerical checks of the convergence results for annealed Boltzmann
//! selection, plus seeded randomized suites that exercise them.
//!
//! The cumulative operator applies the accumulated exponent `gamma_n` to the
//! original distribution. For pure selection this is the same as applying
//! the per-generation increments one after another.

use std::collections::hash_map::{Entry, HashMap};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::Exp1;

use crate::annealing::AnnealingSchedule;
use crate::error::{Error, Result};
use crate::nfd::{distance, Nfd};
use crate::scalar::Scalar;
use crate::selection::{boltzmann_apply, selection_strength};

/// Default slack for the two lemma inequalities.
pub const LEMMA_SLACK: f64 = 1e-9;
/// Default slack for the metric axioms and tail monotonicity.
pub const METRIC_SLACK: f64 = 1e-12;
/// Default distance tolerance for operator identities.
pub const OPERATOR_TOLERANCE: f64 = 1e-10;

/// Outcome of one inequality check: `holds` iff `lhs <= rhs + slack`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundCheck<F> {
    pub lhs: F,
    pub rhs: F,
    pub holds: bool,
}

impl<F: Scalar> BoundCheck<F> {
    fn new(lhs: F, rhs: F, slack: F) -> Self {
        // an overflowed rhs counts as +inf, which always bounds lhs
        let holds = rhs == F::infinity() || lhs <= rhs + slack;
        Self { lhs, rhs, holds }
    }
}

/// Boltzmann operator with the accumulated exponent `gamma_n`, applied to
/// the original `phi`.
pub fn cumulative_operator<F: Scalar>(
    phi: &Nfd<F>,
    schedule: &AnnealingSchedule<F>,
    n: usize,
) -> Result<Nfd<F>> {
    if !schedule.is_cauchy() {
        return Err(Error::RequiresCauchySchedule);
    }
    boltzmann_apply(phi, schedule.gamma_at(n)?)
}

/// Applies the increments `g_1, ..., g_n` one generation at a time.
pub fn sequential_operator<F: Scalar>(
    phi: &Nfd<F>,
    schedule: &AnnealingSchedule<F>,
    n: usize,
) -> Result<Nfd<F>> {
    if n == 0 {
        return Err(Error::ZeroGenerationIndex);
    }
    (1..=n).try_fold(phi.clone(), |acc, k| boltzmann_apply(&acc, schedule.increment(k)))
}

/// Distance between the cumulative operators at `m` and `n`, against the
/// bound `sum_{x in supp} (e^{x * tail_sum(m, n)} - 1)`.
pub fn lemma2_bound_check<F: Scalar>(
    phi: &Nfd<F>,
    schedule: &AnnealingSchedule<F>,
    m: usize,
    n: usize,
) -> Result<BoundCheck<F>> {
    lemma2_bound_check_with_slack(phi, schedule, m, n, F::lit(LEMMA_SLACK))
}

pub fn lemma2_bound_check_with_slack<F: Scalar>(
    phi: &Nfd<F>,
    schedule: &AnnealingSchedule<F>,
    m: usize,
    n: usize,
    slack: F,
) -> Result<BoundCheck<F>> {
    if m == 0 {
        return Err(Error::ZeroGenerationIndex);
    }
    if n <= m {
        return Err(Error::InvalidRange { lower: m, upper: n });
    }
    if let Some(x) = phi.support().into_iter().find(|&x| x < F::zero()) {
        return Err(Error::NegativeSupport(x.as_f64()));
    }
    let lhs = distance(
        &cumulative_operator(phi, schedule, n)?,
        &cumulative_operator(phi, schedule, m)?,
    );
    let rhs = lemma2_envelope(phi, schedule.tail_sum(m, n)?);
    Ok(BoundCheck::new(lhs, rhs, slack))
}

/// Difference of the selection strengths at two inverse temperatures,
/// against the distance between the two selected distributions.
pub fn lemma1_check<F: Scalar>(phi: &Nfd<F>, gamma1: F, gamma2: F) -> Result<BoundCheck<F>> {
    lemma1_check_with_slack(phi, gamma1, gamma2, F::lit(LEMMA_SLACK))
}

pub fn lemma1_check_with_slack<F: Scalar>(
    phi: &Nfd<F>,
    gamma1: F,
    gamma2: F,
    slack: F,
) -> Result<BoundCheck<F>> {
    let first = boltzmann_apply(phi, gamma1)?;
    let second = boltzmann_apply(phi, gamma2)?;
    let lhs = (selection_strength(phi, &first) - selection_strength(phi, &second)).abs();
    let rhs = distance(&first, &second);
    Ok(BoundCheck::new(lhs, rhs, slack))
}

/// Pairs `(m, n)` with `window <= m < n <= 4 * window` examined for one
/// checkpoint.
///
/// Pairs are enumerated lexicographically. When the window holds at most
/// `count` pairs all of them are returned; otherwise the pairs at the
/// evenly strided indices `floor(i * (T - 1) / (count - 1))`,
/// `i = 0..count`, are taken, where `T` is the number of pairs. The
/// full-window pair `(window, 4 * window)` is always included.
pub fn sampled_pairs(window: usize, count: usize) -> Vec<(usize, usize)> {
    let lo = window;
    let hi = 4 * window;
    let span = hi - lo;
    let total = span * (span + 1) / 2;
    let mut indices: Vec<usize> = if count == 0 {
        Vec::new()
    } else if total <= count {
        (0..total).collect()
    } else if count == 1 {
        vec![0]
    } else {
        (0..count).map(|i| i * (total - 1) / (count - 1)).collect()
    };
    // lexicographic index of (lo, hi): the last pair in the first row
    indices.push(span - 1);
    indices.sort_unstable();
    indices.dedup();

    let mut pairs = Vec::with_capacity(indices.len());
    let mut row_start = 0;
    let mut m = lo;
    for idx in indices {
        loop {
            let row_len = hi - m;
            if idx < row_start + row_len {
                pairs.push((m, m + 1 + (idx - row_start)));
                break;
            }
            row_start += row_len;
            m += 1;
        }
    }
    pairs
}

/// For each checkpoint `N`, the largest sampled distance between cumulative
/// operators at generations `N <= m < n <= 4N` (see [`sampled_pairs`]).
pub fn cauchy_tail_profile<F: Scalar>(
    phi: &Nfd<F>,
    schedule: &AnnealingSchedule<F>,
    checkpoints: &[usize],
    pairs_per_checkpoint: usize,
) -> Result<Vec<(usize, F)>> {
    if !schedule.is_cauchy() {
        return Err(Error::RequiresCauchySchedule);
    }
    if checkpoints.is_empty() {
        return Err(Error::EmptyCheckpoints);
    }
    if checkpoints[0] == 0 || checkpoints.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::UnorderedCheckpoints);
    }
    let mut cache: HashMap<usize, Nfd<F>> = HashMap::new();
    let mut profile = Vec::with_capacity(checkpoints.len());
    for &window in checkpoints {
        let mut worst = F::zero();
        for (m, n) in sampled_pairs(window, pairs_per_checkpoint) {
            for k in [m, n] {
                if let Entry::Vacant(slot) = cache.entry(k) {
                    slot.insert(cumulative_operator(phi, schedule, k)?);
                }
            }
            worst = worst.max(distance(&cache[&n], &cache[&m]));
        }
        profile.push((window, worst));
    }
    Ok(profile)
}

/// Random NFD with `1..=max_support` distinct support points drawn
/// uniformly from `[lo, hi)` and Dirichlet(1, ..., 1) masses.
pub fn random_nfd<R: Rng + ?Sized>(rng: &mut R, max_support: usize, lo: f64, hi: f64) -> Nfd<f64> {
    let size = rng.random_range(1..=max_support.max(1));
    let mut points: Vec<f64> = Vec::with_capacity(size);
    while points.len() < size {
        let x = rng.random_range(lo..hi);
        if !points.contains(&x) {
            points.push(x);
        }
    }
    let weights: Vec<f64> = (0..size).map(|_| rng.sample::<f64, _>(Exp1) + f64::MIN_POSITIVE).collect();
    Nfd::from_weights(points.into_iter().zip(weights)).expect("positive weights")
}

/// One row of a suite report.
#[derive(Debug, Clone, PartialEq)]
pub struct CaseRow {
    pub case_id: usize,
    pub lhs: f64,
    pub rhs: f64,
    pub holds: bool,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteReport {
    pub name: &'static str,
    pub rows: Vec<CaseRow>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.rows.iter().all(|r| r.holds)
    }

    pub fn failures(&self) -> usize {
        self.rows.iter().filter(|r| !r.holds).count()
    }

    pub fn first_failure(&self) -> Option<&CaseRow> {
        self.rows.iter().find(|r| !r.holds)
    }
}

/// Parameters of a verification run.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct VerifyConfig {
    pub seed: u64,
    pub cases: usize,
    pub lemma_slack: f64,
    pub metric_slack: f64,
    pub operator_tolerance: f64,
}

impl VerifyConfig {
    pub fn new(seed: u64, cases: usize) -> Self {
        Self {
            seed,
            cases,
            lemma_slack: LEMMA_SLACK,
            metric_slack: METRIC_SLACK,
            operator_tolerance: OPERATOR_TOLERANCE,
        }
    }

    fn rng(&self, suite: u64) -> ChaCha8Rng {
        ChaCha8Rng::seed_from_u64(self.seed ^ suite.wrapping_mul(0x9E37_79B9_7F4A_7C15))
    }
}

const ALPHAS: [f64; 3] = [1.1, 1.5, 2.0];
const G0S: [f64; 3] = [0.1, 1.0, 10.0];
/// Support size bound used by every randomized suite.
pub const MAX_SUPPORT: usize = 20;
/// Checkpoints used by the tail-profile suite.
pub const TAIL_CHECKPOINTS: [usize; 7] = [1, 2, 4, 8, 16, 32, 64];
pub const TAIL_PAIRS: usize = 64;

fn same_nfd(a: &Nfd<f64>, b: &Nfd<f64>, tol: f64) -> bool {
    a.len() == b.len()
        && a.iter()
            .zip(b.iter())
            .all(|((xa, ma), (xb, mb))| xa == xb && (ma - mb).abs() <= tol)
}

/// Nonnegativity, symmetry, identity, boundedness and the triangle
/// inequality on random triples. `lhs = d(a, c)`, `rhs = d(a, b) + d(b, c)`.
pub fn metric_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut rng = cfg.rng(1);
    let slack = cfg.metric_slack;
    let rows = (0..cfg.cases)
        .map(|case_id| {
            let a = random_nfd(&mut rng, MAX_SUPPORT, 0.0, 1.0);
            let b = random_nfd(&mut rng, MAX_SUPPORT, 0.0, 1.0);
            let c = random_nfd(&mut rng, MAX_SUPPORT, 0.0, 1.0);
            let (ab, ba, bc, ac) = (distance(&a, &b), distance(&b, &a), distance(&b, &c), distance(&a, &c));
            let nonneg = ab >= 0.0 && bc >= 0.0 && ac >= 0.0;
            let bounded = ab <= 2.0 + slack && bc <= 2.0 + slack && ac <= 2.0 + slack;
            let symmetric = ab == ba;
            let identity = distance(&a, &a) == 0.0
                && distance(&a, &a.clone()) == 0.0
                && (ab <= slack) == same_nfd(&a, &b, slack);
            let triangle = ac <= ab + bc + slack;
            CaseRow {
                case_id,
                lhs: ac,
                rhs: ab + bc,
                holds: nonneg && bounded && symmetric && identity && triangle,
            }
        })
        .collect();
    SuiteReport { name: "metric-axioms", rows }
}

fn operator_suite(
    cfg: &VerifyConfig,
    name: &'static str,
    tag: u64,
    check: impl Fn(&Nfd<f64>, f64, f64, f64) -> Result<(f64, bool)>,
) -> SuiteReport {
    let mut rng = cfg.rng(tag);
    let rows = (0..cfg.cases)
        .map(|case_id| {
            let phi = random_nfd(&mut rng, MAX_SUPPORT, 0.0, 1.0);
            let g1 = rng.random_range(0.0..=50.0);
            let g2 = rng.random_range(0.0..=50.0);
            let shift = rng.random_range(0.0..10.0) + 1e-3;
            let (err, ok) = check(&phi, g1, g2, shift).unwrap_or((f64::INFINITY, false));
            CaseRow {
                case_id,
                lhs: err,
                rhs: cfg.operator_tolerance,
                holds: ok && err <= cfg.operator_tolerance,
            }
        })
        .collect();
    SuiteReport { name, rows }
}

/// `boltzmann_apply(phi, 0) == phi`.
pub fn gamma_zero_suite(cfg: &VerifyConfig) -> SuiteReport {
    operator_suite(cfg, "gamma-zero-identity", 2, |phi, _, _, _| {
        Ok((distance(&boltzmann_apply(phi, 0.0)?, phi), true))
    })
}

/// Applying `g1` then `g2` equals applying `g1 + g2`.
pub fn semigroup_suite(cfg: &VerifyConfig) -> SuiteReport {
    operator_suite(cfg, "semigroup", 3, |phi, g1, g2, _| {
        let composed = boltzmann_apply(&boltzmann_apply(phi, g1)?, g2)?;
        Ok((distance(&composed, &boltzmann_apply(phi, g1 + g2)?), true))
    })
}

/// Boltzmann selection keeps the support unchanged.
pub fn support_preservation_suite(cfg: &VerifyConfig) -> SuiteReport {
    operator_suite(cfg, "support-preservation", 4, |phi, g1, g2, _| {
        let out = boltzmann_apply(phi, g1 + g2)?;
        Ok((0.0, out.support() == phi.support()))
    })
}

/// Shifting the support commutes with Boltzmann selection.
pub fn shift_equivariance_suite(cfg: &VerifyConfig) -> SuiteReport {
    operator_suite(cfg, "shift-equivariance", 5, |phi, g1, _, c| {
        let lhs = boltzmann_apply(&phi.shifted(c)?, g1)?;
        let rhs = boltzmann_apply(phi, g1)?.shifted(c)?;
        Ok((distance(&lhs, &rhs), true))
    })
}

/// Cumulative exponent against generation-by-generation application.
pub fn cumulative_consistency_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut rng = cfg.rng(6);
    let rows = (0..cfg.cases)
        .map(|case_id| {
            let phi = random_nfd(&mut rng, MAX_SUPPORT, 0.0, 1.0);
            let alpha = ALPHAS[rng.random_range(0..ALPHAS.len())];
            let g0 = G0S[rng.random_range(0..G0S.len())];
            let n = rng.random_range(1..=50);
            let err = AnnealingSchedule::cauchy(g0, alpha)
                .and_then(|s| {
                    Ok(distance(
                        &cumulative_operator(&phi, &s, n)?,
                        &sequential_operator(&phi, &s, n)?,
                    ))
                })
                .unwrap_or(f64::INFINITY);
            CaseRow {
                case_id,
                lhs: err,
                rhs: cfg.operator_tolerance,
                holds: err <= cfg.operator_tolerance,
            }
        })
        .collect();
    SuiteReport { name: "cumulative-consistency", rows }
}

pub fn lemma1_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut rng = cfg.rng(7);
    let rows = (0..cfg.cases)
        .map(|case_id| {
            let phi = random_nfd(&mut rng, MAX_SUPPORT, 0.0, 1.0);
            let g1 = rng.random_range(0.0..=20.0);
            let g2 = rng.random_range(0.0..=20.0);
            match lemma1_check_with_slack(&phi, g1, g2, cfg.lemma_slack) {
                Ok(c) => CaseRow { case_id, lhs: c.lhs, rhs: c.rhs, holds: c.holds },
                Err(_) => CaseRow { case_id, lhs: f64::NAN, rhs: f64::NAN, holds: false },
            }
        })
        .collect();
    SuiteReport { name: "lemma1", rows }
}

pub fn lemma2_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut rng = cfg.rng(8);
    let rows = (0..cfg.cases)
        .map(|case_id| {
            let phi = random_nfd(&mut rng, MAX_SUPPORT, 0.0, 1.0);
            let alpha = ALPHAS[rng.random_range(0..ALPHAS.len())];
            let g0 = G0S[rng.random_range(0..G0S.len())];
            let m = rng.random_range(1..50);
            let n = rng.random_range(m + 1..=50);
            let check = AnnealingSchedule::cauchy(g0, alpha)
                .and_then(|s| lemma2_bound_check_with_slack(&phi, &s, m, n, cfg.lemma_slack));
            match check {
                Ok(c) => CaseRow { case_id, lhs: c.lhs, rhs: c.rhs, holds: c.holds },
                Err(_) => CaseRow { case_id, lhs: f64::NAN, rhs: f64::NAN, holds: false },
            }
        })
        .collect();
    SuiteReport { name: "lemma2", rows }
}

/// `sum_{x in supp} (e^{x * tail} - 1)`: the bound on the distance between
/// two cumulative operators whose exponents differ by `tail`.
pub fn lemma2_envelope<F: Scalar>(phi: &Nfd<F>, tail: F) -> F {
    phi.iter()
        .fold(F::zero(), |acc, (x, _)| acc + ((x * tail).exp() - F::one()))
}

/// Tail profiles over [`TAIL_CHECKPOINTS`], each checkpoint compared with
/// the envelope of its full window `(N, 4N)`. `lhs` is the largest excess
/// of a profile value over its envelope and `rhs` the lemma slack.
///
/// Windowed profiles need not be monotone at small `N` (for `alpha = 1.1`
/// the window tail `sum_{k=N+1}^{4N} g_k` itself rises from `N = 1` to
/// `N = 4`), so monotonicity is reported by [`tail_profile_is_monotone`] but
/// is not part of the pass condition.
pub fn cauchy_tail_suite(cfg: &VerifyConfig) -> SuiteReport {
    let mut rng = cfg.rng(9);
    let rows = (0..cfg.cases)
        .map(|case_id| {
            let phi = random_nfd(&mut rng, MAX_SUPPORT, 0.0, 1.0);
            let alpha = ALPHAS[rng.random_range(0..ALPHAS.len())];
            let g0 = G0S[rng.random_range(0..G0S.len())];
            let excess = AnnealingSchedule::cauchy(g0, alpha).and_then(|s| {
                let profile = cauchy_tail_profile(&phi, &s, &TAIL_CHECKPOINTS, TAIL_PAIRS)?;
                profile.iter().try_fold(f64::NEG_INFINITY, |worst, &(n, d)| {
                    let bound = lemma2_envelope(&phi, s.tail_sum(n, 4 * n)?);
                    Ok(worst.max(d - bound))
                })
            });
            match excess {
                Ok(e) => CaseRow { case_id, lhs: e, rhs: cfg.lemma_slack, holds: e <= cfg.lemma_slack },
                Err(_) => CaseRow { case_id, lhs: f64::NAN, rhs: f64::NAN, holds: false },
            }
        })
        .collect();
    SuiteReport { name: "cauchy-tail", rows }
}

/// True when consecutive profile values never rise by more than `slack`.
pub fn tail_profile_is_monotone<F: Scalar>(profile: &[(usize, F)], slack: F) -> bool {
    profile.windows(2).all(|w| w[1].1 <= w[0].1 + slack)
}

/// Every suite, in a fixed order.
pub fn run_all(cfg: &VerifyConfig) -> Vec<SuiteReport> {
    vec![
        metric_suite(cfg),
        gamma_zero_suite(cfg),
        semigroup_suite(cfg),
        support_preservation_suite(cfg),
        shift_equivariance_suite(cfg),
        cumulative_consistency_suite(cfg),
        lemma1_suite(cfg),
        lemma2_suite(cfg),
        cauchy_tail_suite(cfg),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn two_point() -> Nfd<f64> {
        Nfd::new([(0.0, 0.5), (1.0, 0.5)]).unwrap()
    }

    #[test]
    fn cumulative_operator_examples() {
        let idle = AnnealingSchedule::cauchy(0.0, 2.0).unwrap();
        let phi = two_point();
        for n in [1, 5, 50] {
            assert_eq!(cumulative_operator(&phi, &idle, n).unwrap(), phi);
        }
        let point = Nfd::point_mass(0.3).unwrap();
        let s = AnnealingSchedule::cauchy(1.0, 2.0).unwrap();
        assert_eq!(cumulative_operator(&point, &s, 10).unwrap(), point);

        // g0 = ln 3 gives gamma_1 = ln 3
        let s = AnnealingSchedule::cauchy(3f64.ln(), 2.0).unwrap();
        let out = cumulative_operator(&phi, &s, 1).unwrap();
        assert!((out.mass(1.0) - 0.75).abs() < 1e-15);

        let constant = AnnealingSchedule::constant(1.0).unwrap();
        assert_eq!(
            cumulative_operator(&phi, &constant, 1),
            Err(Error::RequiresCauchySchedule)
        );
    }

    #[test]
    fn lemma2_examples() {
        let s = AnnealingSchedule::cauchy(1.0, 2.0).unwrap();
        let c = lemma2_bound_check(&Nfd::point_mass(0.4).unwrap(), &s, 1, 5).unwrap();
        assert_eq!(c.lhs, 0.0);
        assert!(c.holds && c.rhs > 0.0);

        let c = lemma2_bound_check(&Nfd::point_mass(0.0).unwrap(), &s, 1, 5).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (0.0, 0.0, true));

        let phi = Nfd::new([(0.1, 0.1), (0.3, 0.2), (0.5, 0.3), (0.7, 0.25), (0.9, 0.15)]).unwrap();
        let c = lemma2_bound_check(&phi, &s, 2, 7).unwrap();
        assert!(c.holds);
        assert!(c.lhs > 0.0);

        assert!(matches!(
            lemma2_bound_check(&phi, &s, 3, 3),
            Err(Error::InvalidRange { .. })
        ));
        assert!(lemma2_bound_check(&phi, &s, 0, 3).is_err());
    }

    #[test]
    fn lemma2_treats_overflow_as_infinite_bound() {
        let s = AnnealingSchedule::<f64>::cauchy(1e6, 2.0).unwrap();
        let phi = Nfd::new([(0.5, 0.5), (900.0, 0.5)]).unwrap();
        let c = lemma2_bound_check(&phi, &s, 1, 2).unwrap();
        assert!(c.rhs.is_infinite());
        assert!(c.holds);
    }

    #[test]
    fn lemma1_examples() {
        let phi = two_point();
        let c = lemma1_check(&phi, 1.5, 1.5).unwrap();
        assert_eq!((c.lhs, c.rhs, c.holds), (0.0, 0.0, true));

        let c = lemma1_check(&Nfd::point_mass(0.2).unwrap(), 0.0, 7.0).unwrap();
        assert_eq!((c.lhs, c.rhs), (0.0, 0.0));

        let phi = Nfd::new([(0.2, 0.3), (0.6, 0.5), (0.95, 0.2)]).unwrap();
        let c = lemma1_check(&phi, 0.5, 2.0).unwrap();
        assert!(c.holds && c.lhs > 0.0);
    }

    #[test]
    fn stride_rule() {
        // window 1: m in 1..4, n in m+1..=4 -> 6 pairs, all taken
        assert_eq!(
            sampled_pairs(1, 64),
            vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
        );
        let pairs = sampled_pairs(64, 64);
        assert!(pairs.contains(&(64, 256)));
        assert!(pairs.contains(&(64, 65)));
        assert!(pairs.contains(&(255, 256)));
        assert!(pairs.len() <= 65);
        assert!(pairs.iter().all(|&(m, n)| 64 <= m && m < n && n <= 256));
        assert!(pairs.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn tail_profile_examples() {
        let checkpoints = [1, 2, 4, 8, 16, 32];
        let s = AnnealingSchedule::cauchy(1.0, 2.0).unwrap();
        let point = Nfd::point_mass(0.5).unwrap();
        let profile = cauchy_tail_profile(&point, &s, &checkpoints, 32).unwrap();
        assert!(profile.iter().all(|&(_, d)| d == 0.0));

        let profile = cauchy_tail_profile(&two_point(), &s, &checkpoints, 32).unwrap();
        // oracle: masses 1/(1+e^gamma) at zero, the distance is twice the gap
        let mass0 = |gamma: f64| 1.0 / (1.0 + gamma.exp());
        let gamma = |n: usize| (1..=n).map(|k| 1.0 / (k * k) as f64).sum::<f64>();
        for &(window, d) in &profile {
            let expected = 2.0 * (mass0(gamma(window)) - mass0(gamma(4 * window)));
            assert!((d - expected).abs() < 1e-12, "window {window}: {d} vs {expected}");
        }
        assert!(tail_profile_is_monotone(&profile, 0.0));

        let idle = AnnealingSchedule::cauchy(0.0, 2.0).unwrap();
        let profile = cauchy_tail_profile(&two_point(), &idle, &checkpoints, 8).unwrap();
        assert!(profile.iter().all(|&(_, d)| d == 0.0));
    }

    #[test]
    fn tail_profile_errors() {
        let s = AnnealingSchedule::cauchy(1.0, 2.0).unwrap();
        assert_eq!(
            cauchy_tail_profile(&two_point(), &s, &[], 8),
            Err(Error::EmptyCheckpoints)
        );
        assert_eq!(
            cauchy_tail_profile(&two_point(), &s, &[4, 2], 8),
            Err(Error::UnorderedCheckpoints)
        );
    }

    #[test]
    fn random_nfd_is_valid() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..200 {
            let phi = random_nfd(&mut rng, 20, 0.0, 1.0);
            assert!((1..=20).contains(&phi.len()));
            assert!((phi.total_mass() - 1.0).abs() < 1e-12);
            assert!(phi.iter().all(|(x, m)| (0.0..1.0).contains(&x) && m > 0.0));
        }
    }

    #[test]
    fn suites_pass_on_small_run() {
        let cfg = VerifyConfig::new(11, 50);
        for report in run_all(&cfg) {
            assert_eq!(report.rows.len(), 50);
            assert!(report.passed(), "{} failed: {:?}", report.name, report.first_failure());
        }
    }

    #[test]
    fn negative_slack_breaks_lemmas() {
        let mut cfg = VerifyConfig::new(11, 5);
        cfg.lemma_slack = -1.0;
        assert!(!lemma1_suite(&cfg).passed());
        assert!(!lemma2_suite(&cfg).passed());
    }
}
