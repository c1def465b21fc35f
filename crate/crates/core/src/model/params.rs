use serde::{Deserialize, Serialize};

use super::{ensure, ensure_finite};
use crate::error::Result;

/// Concave market-impact law `I = c (Q/V)^delta` and its tolerances.
///
/// `c` and `impact_cap` are fractional returns (0.01 = 100 bps).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ImpactParams {
    pub c: f64,
    pub delta: f64,
    pub impact_cap: f64,
    /// Maximum traded fraction of ADV.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub participation_cap: Option<f64>,
}

impl ImpactParams {
    pub fn new(c: f64, delta: f64, impact_cap: f64, participation_cap: Option<f64>) -> Result<Self> {
        let p = ImpactParams {
            c,
            delta,
            impact_cap,
            participation_cap,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite(self.c, "impact.c")?;
        ensure(self.c > 0.0, "impact.c", "must be > 0")?;
        ensure_finite(self.delta, "impact.delta")?;
        ensure(
            self.delta > 0.0 && self.delta < 1.0,
            "impact.delta",
            "must lie in (0,1)",
        )?;
        ensure_finite(self.impact_cap, "impact.impact_cap")?;
        ensure(self.impact_cap > 0.0, "impact.impact_cap", "must be > 0")?;
        if let Some(phi) = self.participation_cap {
            ensure_finite(phi, "impact.participation_cap")?;
            ensure(phi > 0.0 && phi <= 1.0, "impact.participation_cap", "must lie in (0,1]")?;
        }
        Ok(())
    }
}

/// Cost-dominance inputs, both in basis points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EconParams {
    pub round_trip_cost_bps: f64,
    pub min_effect_bps: f64,
}

impl EconParams {
    pub fn new(round_trip_cost_bps: f64, min_effect_bps: f64) -> Result<Self> {
        let p = EconParams {
            round_trip_cost_bps,
            min_effect_bps,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite(self.round_trip_cost_bps, "econ.round_trip_cost_bps")?;
        ensure(
            self.round_trip_cost_bps > 0.0,
            "econ.round_trip_cost_bps",
            "must be > 0",
        )?;
        ensure_finite(self.min_effect_bps, "econ.min_effect_bps")?;
        ensure(self.min_effect_bps >= 0.0, "econ.min_effect_bps", "must be >= 0")?;
        Ok(())
    }

    /// Same threshold, different friction (asset-level override).
    pub fn with_cost(&self, round_trip_cost_bps: Option<f64>) -> EconParams {
        EconParams {
            round_trip_cost_bps: round_trip_cost_bps.unwrap_or(self.round_trip_cost_bps),
            min_effect_bps: self.min_effect_bps,
        }
    }
}

/// Loss budget and policy range for the sleeve size.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StructuralParams {
    /// Tolerable total-portfolio loss attributable to the satellite.
    pub loss_tolerance: f64,
    /// Drawdown of the sleeve under thesis failure.
    pub max_drawdown: f64,
    #[serde(default = "StructuralParams::default_alpha_min")]
    pub alpha_policy_min: f64,
    #[serde(default = "StructuralParams::default_alpha_max")]
    pub alpha_policy_max: f64,
}

impl StructuralParams {
    pub const DEFAULT_ALPHA_POLICY_MIN: f64 = 0.10;
    pub const DEFAULT_ALPHA_POLICY_MAX: f64 = 0.15;

    fn default_alpha_min() -> f64 {
        Self::DEFAULT_ALPHA_POLICY_MIN
    }

    fn default_alpha_max() -> f64 {
        Self::DEFAULT_ALPHA_POLICY_MAX
    }

    pub fn new(loss_tolerance: f64, max_drawdown: f64, alpha_policy_min: f64, alpha_policy_max: f64) -> Result<Self> {
        let p = StructuralParams {
            loss_tolerance,
            max_drawdown,
            alpha_policy_min,
            alpha_policy_max,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite(self.loss_tolerance, "structural.loss_tolerance")?;
        ensure(
            (0.0..=1.0).contains(&self.loss_tolerance),
            "structural.loss_tolerance",
            "must lie in [0,1]",
        )?;
        ensure_finite(self.max_drawdown, "structural.max_drawdown")?;
        ensure(
            self.max_drawdown > 0.0 && self.max_drawdown <= 1.0,
            "structural.max_drawdown",
            "must lie in (0,1]",
        )?;
        ensure_finite(self.alpha_policy_min, "structural.alpha_policy_min")?;
        ensure(
            self.alpha_policy_min >= 0.0,
            "structural.alpha_policy_min",
            "must be >= 0",
        )?;
        ensure_finite(self.alpha_policy_max, "structural.alpha_policy_max")?;
        ensure(
            self.alpha_policy_max <= 1.0,
            "structural.alpha_policy_max",
            "must be <= 1",
        )?;
        ensure(
            self.alpha_policy_min <= self.alpha_policy_max,
            "structural.alpha_policy_min",
            "must not exceed structural.alpha_policy_max",
        )?;
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EntropyParams {
    /// Entropy increment budget, nats.
    pub delta_h_max: f64,
}

impl EntropyParams {
    pub fn new(delta_h_max: f64) -> Result<Self> {
        let p = EntropyParams { delta_h_max };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite(self.delta_h_max, "entropy.delta_h_max")?;
        ensure(self.delta_h_max >= 0.0, "entropy.delta_h_max", "must be >= 0")
    }
}

/// Every policy input of the four feasibility layers.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct FeasibilityParams {
    /// Total portfolio value, USD.
    pub aum_usd: f64,
    /// Per-rebalance turnover envelope, used when an asset carries no override.
    pub turnover_fraction: f64,
    pub impact: ImpactParams,
    pub econ: EconParams,
    pub structural: StructuralParams,
    pub entropy: EntropyParams,
}

impl FeasibilityParams {
    pub fn validate(&self) -> Result<()> {
        ensure_finite(self.aum_usd, "aum_usd")?;
        ensure(self.aum_usd > 0.0, "aum_usd", "must be > 0")?;
        ensure_finite(self.turnover_fraction, "turnover_fraction")?;
        ensure(
            self.turnover_fraction > 0.0 && self.turnover_fraction <= 1.0,
            "turnover_fraction",
            "must lie in (0,1]",
        )?;
        self.impact.validate()?;
        self.econ.validate()?;
        self.structural.validate()?;
        self.entropy.validate()
    }
}
