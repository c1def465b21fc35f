//! Impact law `I = c (Q/V)^delta` with `0 < delta < 1`.
//!
//! Traded notional is approximated by the turnover envelope `Q = A w tau`
//! when sizing caps, so the cap on a weight is the inverse of the impact law
//! at the impact tolerance.

use crate::error::{Error, Result};
use crate::model::{Asset, FeasibilityParams, ImpactParams};

/// Fractional-return impact of trading `traded_notional_usd` against
/// `adv_usd` of daily volume.
pub fn impact_cost(traded_notional_usd: f64, adv_usd: f64, params: &ImpactParams) -> Result<f64> {
    if !(adv_usd.is_finite() && adv_usd > 0.0) {
        return Err(Error::AdvMustBePositive(adv_usd));
    }
    if !(traded_notional_usd.is_finite() && traded_notional_usd >= 0.0) {
        return Err(Error::invalid("traded_notional_usd", "must be a finite number >= 0"));
    }
    if traded_notional_usd == 0.0 {
        return Ok(0.0);
    }
    Ok(params.c * (traded_notional_usd / adv_usd).powf(params.delta))
}

/// Asset-level turnover when present, else the sleeve-level envelope.
pub fn effective_turnover(asset: &Asset, params: &FeasibilityParams) -> f64 {
    asset.turnover_fraction.unwrap_or(params.turnover_fraction)
}

/// `V / (A tau) * (I_cap / c)^(1/delta)` before clamping.
pub fn max_weight_impact_unclamped(asset: &Asset, params: &FeasibilityParams) -> f64 {
    let impact = &params.impact;
    let scale = asset.adv_usd / (params.aum_usd * effective_turnover(asset, params));
    scale * (impact.impact_cap / impact.c).powf(1.0 / impact.delta)
}

/// Largest weight whose rebalance trade stays within the impact tolerance,
/// clamped to `[0, 1]`.
pub fn max_weight_impact(asset: &Asset, params: &FeasibilityParams) -> f64 {
    max_weight_impact_unclamped(asset, params).clamp(0.0, 1.0)
}

/// `phi V / (A tau)`, clamped to `[0, 1]`.
pub fn max_weight_participation(asset: &Asset, params: &FeasibilityParams) -> Result<f64> {
    let phi = params
        .impact
        .participation_cap
        .ok_or(Error::ParticipationCapNotConfigured)?;
    let cap = phi * asset.adv_usd / (params.aum_usd * effective_turnover(asset, params));
    Ok(cap.clamp(0.0, 1.0))
}
