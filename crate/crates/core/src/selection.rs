//! Selection operators acting on NFDs, and the selection strength they induce.

use crate::error::{Error, Result};
use crate::nfd::{distance, Nfd};
use crate::scalar::Scalar;

/// Boltzmann selection at inverse temperature `gamma`: mass at `x` is
/// reweighted by `e^{gamma x}` and renormalized.
///
/// Weights are evaluated as `e^{gamma (x - x_max)}`; the common factor
/// cancels in the normalization and the largest weight is exactly one, so
/// large `gamma` cannot overflow. A support point whose weight underflows to
/// zero drops out of the result.
pub fn boltzmann_apply<F: Scalar>(phi: &Nfd<F>, gamma: F) -> Result<Nfd<F>> {
    if !(gamma >= F::zero()) || !gamma.is_finite() {
        return Err(Error::NegativeInverseTemperature(gamma.as_f64()));
    }
    let top = phi.max_support();
    Nfd::from_weights(phi.iter().map(|(x, m)| (x, m * (gamma * (x - top)).exp())))
}

/// Proportionate selection: mass at `x` is reweighted by `x` itself. Mass
/// at fitness zero is annihilated.
pub fn proportionate_apply<F: Scalar>(phi: &Nfd<F>) -> Result<Nfd<F>> {
    if !(phi.mean() > F::zero()) {
        return Err(Error::DegenerateProportionate);
    }
    Nfd::from_weights(phi.iter().map(|(x, m)| (x, x * m)))
}

/// Selection strength of a scheme on `phi`: the distance between the
/// distribution before and after selection.
pub fn selection_strength<F: Scalar>(phi: &Nfd<F>, selected: &Nfd<F>) -> F {
    distance(phi, selected)
}

/// Strength of proportionate selection from the mean absolute deviation of
/// `phi`, without building the selected distribution.
pub fn proportionate_strength_closed_form<F: Scalar>(phi: &Nfd<F>) -> Result<F> {
    let mu = phi.mean();
    if !(mu > F::zero()) {
        return Err(Error::DegenerateProportionate);
    }
    let mad = phi
        .iter()
        .fold(F::zero(), |acc, (x, m)| acc + m * (mu - x).abs());
    Ok(mad / mu)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn nfd(pairs: &[(f64, f64)]) -> Nfd<f64> {
        Nfd::new(pairs.iter().copied()).unwrap()
    }

    #[test]
    fn boltzmann_examples() {
        let phi = nfd(&[(0.0, 0.5), (1.0, 0.5)]);
        assert_eq!(boltzmann_apply(&phi, 0.0).unwrap(), phi);

        let out = boltzmann_apply(&phi, 3f64.ln()).unwrap();
        assert!((out.mass(0.0) - 0.25).abs() < 1e-15);
        assert!((out.mass(1.0) - 0.75).abs() < 1e-15);

        let point = Nfd::point_mass(0.7).unwrap();
        for gamma in [0.0, 1.0, 300.0, 1e6] {
            assert_eq!(boltzmann_apply(&point, gamma).unwrap(), point);
        }
    }

    #[test]
    fn boltzmann_rejects_negative_gamma() {
        let phi = nfd(&[(0.0, 1.0)]);
        assert!(matches!(
            boltzmann_apply(&phi, -0.1),
            Err(Error::NegativeInverseTemperature(_))
        ));
        assert!(boltzmann_apply(&phi, f64::NAN).is_err());
    }

    #[test]
    fn boltzmann_survives_large_fitness_and_gamma() {
        let phi = nfd(&[(1000.0, 0.5), (1000.5, 0.5)]);
        let out = boltzmann_apply(&phi, 300.0).unwrap();
        let expected_low = 1.0 / (1.0 + (150.0f64).exp());
        assert!((out.mass(1000.0) - expected_low).abs() < 1e-70);
        assert_eq!(out.support(), phi.support());
    }

    #[test]
    fn proportionate_examples() {
        let out = proportionate_apply(&nfd(&[(1.0, 0.5), (3.0, 0.5)])).unwrap();
        assert_eq!(out, nfd(&[(1.0, 0.25), (3.0, 0.75)]));

        let point = Nfd::point_mass(4.0).unwrap();
        assert_eq!(proportionate_apply(&point).unwrap(), point);

        let out = proportionate_apply(&nfd(&[(0.0, 0.5), (2.0, 0.5)])).unwrap();
        assert_eq!(out, Nfd::point_mass(2.0).unwrap());
    }

    #[test]
    fn proportionate_rejects_zero_mean() {
        assert_eq!(
            proportionate_apply(&Nfd::point_mass(0.0).unwrap()),
            Err(Error::DegenerateProportionate)
        );
        assert_eq!(
            proportionate_strength_closed_form(&Nfd::point_mass(0.0).unwrap()),
            Err(Error::DegenerateProportionate)
        );
    }

    #[test]
    fn strength_examples() {
        let phi = nfd(&[(1.0, 0.5), (3.0, 0.5)]);
        let s0 = selection_strength(&phi, &boltzmann_apply(&phi, 0.0).unwrap());
        assert_eq!(s0, 0.0);

        let sp = selection_strength(&phi, &proportionate_apply(&phi).unwrap());
        assert!((sp - 0.5).abs() < 1e-15);

        let point = Nfd::point_mass(2.0).unwrap();
        assert_eq!(selection_strength(&point, &proportionate_apply(&point).unwrap()), 0.0);
        assert_eq!(selection_strength(&point, &boltzmann_apply(&point, 9.0).unwrap()), 0.0);
    }

    #[test]
    fn closed_form_examples() {
        let phi = nfd(&[(1.0, 0.5), (3.0, 0.5)]);
        assert!((proportionate_strength_closed_form(&phi).unwrap() - 0.5).abs() < 1e-15);
        assert_eq!(
            proportionate_strength_closed_form(&Nfd::point_mass(3.0).unwrap()).unwrap(),
            0.0
        );
        let phi = nfd(&[(1.0, 0.25), (2.0, 0.5), (3.0, 0.25)]);
        assert!((proportionate_strength_closed_form(&phi).unwrap() - 0.25).abs() < 1e-15);
    }

    #[test]
    fn closed_form_matches_with_zero_in_support() {
        let phi = nfd(&[(0.0, 0.5), (2.0, 0.5)]);
        let direct = selection_strength(&phi, &proportionate_apply(&phi).unwrap());
        assert!((proportionate_strength_closed_form(&phi).unwrap() - direct).abs() < 1e-15);
        assert!((direct - 1.0).abs() < 1e-15);
    }
}
