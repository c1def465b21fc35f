//! Weight entropy (nats) and the complexity budget on satellite breadth.
//!
//! A sleeve of weight `alpha` spread equally over `K` names adds roughly
//! `-alpha ln(alpha / K)` to portfolio entropy. The exact increment also
//! carries core-rescaling terms:
//!
//! ```text
//! H(total) - H(core) = -alpha ln(alpha/K) - alpha H(core) - (1 - alpha) ln(1 - alpha)
//! ```
//!
//! The breadth bound inverts the approximate form.

use crate::error::{Error, Result};
use crate::model::{Breadth, EntropyParams, ENTROPY_NORMALIZATION_TOLERANCE, MAX_FINITE_BREADTH};

/// `-sum w ln w` with `0 ln 0 = 0`.
pub fn weight_entropy(weights: &[f64]) -> Result<f64> {
    let mut total = 0.0;
    for &w in weights {
        if !(w.is_finite() && w >= 0.0) {
            return Err(Error::invalid("weights", "must be finite and >= 0"));
        }
        total += w;
    }
    if (total - 1.0).abs() > ENTROPY_NORMALIZATION_TOLERANCE {
        return Err(Error::WeightsNotNormalized(total));
    }
    Ok(entropy_terms(weights))
}

fn entropy_terms(weights: &[f64]) -> f64 {
    -weights.iter().filter(|&&w| w > 0.0).map(|&w| w * w.ln()).sum::<f64>()
}

fn approx_increment(alpha: f64, k: u64) -> f64 {
    -alpha * (alpha / k as f64).ln()
}

/// `-alpha ln(alpha / K)`.
pub fn entropy_increment_approx(alpha: f64, k: u64) -> Result<f64> {
    if alpha == 0.0 {
        return Err(Error::EmptySleeveHasNoIncrement);
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::invalid("alpha", "must lie in (0,1]"));
    }
    if k == 0 {
        return Err(Error::invalid("k", "must be >= 1"));
    }
    Ok(approx_increment(alpha, k))
}

/// `H(total) - H(core)` where the total assigns `(1 - alpha) c_j` to each
/// core name and `alpha / K` to each of `K` satellite names.
pub fn entropy_increment_exact(core_weights: &[f64], alpha: f64, k: u64) -> Result<f64> {
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::invalid("alpha", "must lie in [0,1)"));
    }
    if alpha == 0.0 {
        weight_entropy(core_weights)?;
        return Ok(0.0);
    }
    if k == 0 {
        return Err(Error::invalid("k", "must be >= 1"));
    }
    let satellite = vec![alpha / k as f64; k as usize];
    entropy_increment_mixture(core_weights, &satellite)
}

/// `H(total) - H(core)` for an arbitrary sleeve: the core composition is
/// scaled to `1 - sum(satellite)` and the satellite weights are taken as is.
pub fn entropy_increment_mixture(core_weights: &[f64], satellite_weights: &[f64]) -> Result<f64> {
    let h_core = weight_entropy(core_weights)?;
    let alpha: f64 = satellite_weights.iter().sum();
    if !(0.0..=1.0).contains(&alpha) {
        return Err(Error::invalid("alpha", "satellite weights must sum into [0,1]"));
    }
    let total: Vec<f64> = core_weights
        .iter()
        .map(|c| (1.0 - alpha) * c)
        .chain(satellite_weights.iter().copied())
        .collect();
    Ok(weight_entropy(&total)? - h_core)
}

/// Largest `K` with `-alpha ln(alpha/K) <= dh_max`, i.e.
/// `floor(alpha exp(dh_max / alpha))`.
///
/// The closed form seeds the answer and a local search against the
/// approximate increment makes it the exact integer inverse under floating
/// point. An empty sleeve admits no names.
pub fn breadth_bound_entropy(alpha: f64, entropy: &EntropyParams) -> Breadth {
    if alpha.is_nan() || alpha <= 0.0 {
        return Breadth::Finite(0);
    }
    let alpha = alpha.min(1.0);
    let fits = |k: u64| approx_increment(alpha, k) <= entropy.delta_h_max;

    let estimate = alpha * (entropy.delta_h_max / alpha).exp();
    let mut k = if estimate.is_finite() && estimate < MAX_FINITE_BREADTH as f64 {
        estimate.floor() as u64
    } else {
        MAX_FINITE_BREADTH
    };
    while k >= 1 && !fits(k) {
        k -= 1;
    }
    while k < MAX_FINITE_BREADTH && fits(k + 1) {
        k += 1;
    }
    Breadth::from_count(k)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn budget(dh: f64) -> EntropyParams {
        EntropyParams::new(dh).unwrap()
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(weight_entropy(&[1.0]).unwrap(), 0.0);
        let uniform = weight_entropy(&[0.25; 4]).unwrap();
        assert!((uniform - 1.3862943611198906).abs() < 1e-12);
        let mixed = weight_entropy(&[0.5, 0.25, 0.25]).unwrap();
        assert!((mixed - 1.0397207708399179).abs() < 1e-12);
    }

    #[test]
    fn entropy_zero_weight_convention() {
        let with_zero = weight_entropy(&[0.5, 0.5, 0.0]).unwrap();
        let without = weight_entropy(&[0.5, 0.5]).unwrap();
        assert_eq!(with_zero, without);
    }

    #[test]
    fn entropy_rejects_unnormalized() {
        let err = weight_entropy(&[0.5, 0.4]).unwrap_err();
        assert_eq!(err.code(), "weights_not_normalized");
        assert!(weight_entropy(&[1.2, -0.2]).is_err());
    }

    #[test]
    fn approx_increment_examples() {
        assert!((entropy_increment_approx(0.1, 2).unwrap() - 0.2995732273553991).abs() < 1e-12);
        assert_eq!(entropy_increment_approx(1.0, 1).unwrap(), 0.0);
        assert!((entropy_increment_approx(0.12, 4).unwrap() - 0.4207869476783978).abs() < 1e-12);
    }

    #[test]
    fn approx_increment_errors() {
        assert_eq!(
            entropy_increment_approx(0.0, 3).unwrap_err().code(),
            "empty_sleeve_has_no_increment"
        );
        assert!(entropy_increment_approx(0.1, 0).is_err());
        assert!(entropy_increment_approx(1.5, 2).is_err());
    }

    #[test]
    fn exact_increment_examples() {
        assert_eq!(entropy_increment_exact(&[0.3, 0.7], 0.0, 5).unwrap(), 0.0);
        // Direct evaluation of H({0.9, 0.05, 0.05}).
        let single = entropy_increment_exact(&[1.0], 0.1, 2).unwrap();
        assert!((single - 0.39439769144744274).abs() < 1e-12);
        // H({0.09 x 10, 0.05, 0.05}) - ln 10.
        let uniform = entropy_increment_exact(&[0.1; 10], 0.1, 2).unwrap();
        assert!((uniform - 0.16413918214803758).abs() < 1e-12);
    }

    #[test]
    fn exact_increment_rejects_unnormalized_core() {
        let err = entropy_increment_exact(&[0.3, 0.3], 0.1, 2).unwrap_err();
        assert_eq!(err.code(), "weights_not_normalized");
    }

    #[test]
    fn breadth_examples() {
        assert_eq!(breadth_bound_entropy(0.1, &budget(0.3)), Breadth::Finite(2));
        assert_eq!(breadth_bound_entropy(0.5, &budget(0.0)), Breadth::Finite(0));
        assert_eq!(breadth_bound_entropy(0.12, &budget(0.5)), Breadth::Finite(7));
        assert_eq!(breadth_bound_entropy(0.1, &budget(0.5)), Breadth::Finite(14));
        assert_eq!(breadth_bound_entropy(0.0, &budget(0.5)), Breadth::Finite(0));
    }

    #[test]
    fn breadth_bound_brackets_the_budget() {
        // K = 2 fits, K = 3 does not.
        assert!(entropy_increment_approx(0.1, 2).unwrap() <= 0.3);
        assert!(entropy_increment_approx(0.1, 3).unwrap() > 0.3);
    }

    #[test]
    fn breadth_saturates() {
        assert_eq!(breadth_bound_entropy(0.01, &budget(2.0)), Breadth::Unbounded);
        // A whole-portfolio sleeve in one name adds nothing.
        assert_eq!(breadth_bound_entropy(1.0, &budget(0.0)), Breadth::Finite(1));
    }
}
