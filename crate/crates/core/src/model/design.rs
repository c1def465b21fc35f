use serde::{Deserialize, Serialize};

use super::{ensure, ensure_finite, ensure_unique_ids, WEIGHT_TOLERANCE};
use crate::error::{Error, Result};

/// Id of the implicit core bucket created when a portfolio has no explicit
/// core holdings but needs somewhere to park funding.
pub const CASH_ID: &str = "CASH";

/// One position: an id and its weight as a fraction of total portfolio value.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Holding {
    pub id: String,
    pub weight: f64,
}

impl Holding {
    pub fn new(id: impl Into<String>, weight: f64) -> Self {
        Holding { id: id.into(), weight }
    }
}

/// A concrete satellite sleeve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SatelliteDesign {
    #[serde(default)]
    pub theme: String,
    pub alpha: f64,
    pub constituents: Vec<Holding>,
    pub kappa_a: f64,
    pub kappa_c: f64,
}

impl SatelliteDesign {
    pub fn new(
        theme: impl Into<String>,
        alpha: f64,
        constituents: Vec<Holding>,
        kappa_a: f64,
        kappa_c: f64,
    ) -> Result<Self> {
        let design = SatelliteDesign {
            theme: theme.into(),
            alpha,
            constituents,
            kappa_a,
            kappa_c,
        };
        design.validate()?;
        Ok(design)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_finite(self.alpha, "design.alpha")?;
        ensure((0.0..=1.0).contains(&self.alpha), "design.alpha", "must lie in [0,1]")?;
        validate_tilts(self.kappa_a, self.kappa_c, "design.")?;
        ensure_unique_ids(self.constituents.iter().map(|h| h.id.as_str()))?;
        for h in &self.constituents {
            ensure(!h.id.trim().is_empty(), "design.constituents.id", "must be non-empty")?;
            ensure_finite(h.weight, "design.constituents.weight")?;
            ensure(h.weight >= 0.0, "design.constituents.weight", "must be >= 0")?;
        }
        let total = self.total_weight();
        ensure(
            (total - self.alpha).abs() <= WEIGHT_TOLERANCE,
            "design.constituents",
            &format!("weights must sum to alpha = {} (got {total})", self.alpha),
        )
    }

    pub fn breadth(&self) -> usize {
        self.constituents.len()
    }

    pub fn total_weight(&self) -> f64 {
        self.constituents.iter().map(|h| h.weight).sum()
    }

    pub fn weight_of(&self, id: &str) -> Option<f64> {
        self.constituents.iter().find(|h| h.id == id).map(|h| h.weight)
    }
}

pub(crate) fn validate_tilts(kappa_a: f64, kappa_c: f64, prefix: &str) -> Result<()> {
    let ka = format!("{prefix}kappa_a");
    let kc = format!("{prefix}kappa_c");
    ensure_finite(kappa_a, &ka)?;
    ensure(kappa_a >= 1.0, &ka, "must be >= 1")?;
    ensure_finite(kappa_c, &kc)?;
    ensure(kappa_c > 0.0 && kappa_c <= 1.0, &kc, "must lie in (0,1]")
}

/// Core holdings plus one satellite sleeve; weights sum to one.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Portfolio {
    pub core_weights: Vec<Holding>,
    pub satellite: SatelliteDesign,
}

impl Portfolio {
    pub fn new(core_weights: Vec<Holding>, satellite: SatelliteDesign) -> Result<Self> {
        let p = Portfolio {
            core_weights,
            satellite,
        };
        p.validate()?;
        Ok(p)
    }

    /// Scale a normalized core composition to `1 - alpha` around `satellite`.
    /// An empty composition becomes a single [`CASH_ID`] bucket.
    pub fn from_core_composition(composition: &[Holding], satellite: SatelliteDesign) -> Result<Self> {
        let core_scale = 1.0 - satellite.alpha;
        let core_weights = if composition.is_empty() {
            if core_scale > 0.0 {
                vec![Holding::new(CASH_ID, core_scale)]
            } else {
                Vec::new()
            }
        } else {
            let total: f64 = composition.iter().map(|h| h.weight).sum();
            if (total - 1.0).abs() > super::ENTROPY_NORMALIZATION_TOLERANCE {
                return Err(Error::WeightsNotNormalized(total));
            }
            composition
                .iter()
                .map(|h| Holding::new(h.id.clone(), h.weight / total * core_scale))
                .collect()
        };
        Portfolio::new(core_weights, satellite)
    }

    pub fn validate(&self) -> Result<()> {
        self.satellite.validate()?;
        ensure_unique_ids(
            self.core_weights
                .iter()
                .chain(&self.satellite.constituents)
                .map(|h| h.id.as_str()),
        )?;
        for h in &self.core_weights {
            ensure_finite(h.weight, "core_weights.weight")?;
            ensure(h.weight >= 0.0, "core_weights.weight", "must be >= 0")?;
        }
        let total = self.total_weight();
        ensure(
            (total - 1.0).abs() <= WEIGHT_TOLERANCE,
            "portfolio",
            &format!("weights must sum to 1 (got {total})"),
        )
    }

    pub fn core_total(&self) -> f64 {
        self.core_weights.iter().map(|h| h.weight).sum()
    }

    pub fn total_weight(&self) -> f64 {
        self.core_total() + self.satellite.total_weight()
    }

    /// Core composition normalized to one, or `None` when the core is empty.
    pub fn core_composition(&self) -> Option<Vec<f64>> {
        let total = self.core_total();
        (total > 0.0).then(|| self.core_weights.iter().map(|h| h.weight / total).collect())
    }

    /// Every weight in the portfolio, core first.
    pub fn weights(&self) -> impl Iterator<Item = f64> + '_ {
        self.core_weights
            .iter()
            .chain(&self.satellite.constituents)
            .map(|h| h.weight)
    }

    /// Apply a satellite trade and fund it pro rata from the core, which acts
    /// as a single funding bucket. New ids join the sleeve.
    ///
    /// Callers are expected to have checked feasibility; this clamps tiny
    /// negative residues from rounding to zero.
    pub fn apply_trade(&mut self, id: &str, delta_w: f64) {
        match self.satellite.constituents.iter_mut().find(|h| h.id == id) {
            Some(h) => h.weight = (h.weight + delta_w).max(0.0),
            None => self.satellite.constituents.push(Holding::new(id, delta_w.max(0.0))),
        }
        self.satellite.alpha = self.satellite.total_weight();

        let target_core = (1.0 - self.satellite.alpha).max(0.0);
        let core_total = self.core_total();
        if core_total > 0.0 {
            let scale = target_core / core_total;
            for h in &mut self.core_weights {
                h.weight *= scale;
            }
        } else if target_core > 0.0 {
            self.core_weights.push(Holding::new(CASH_ID, target_core));
        }
    }
}

/// A signed weight change on one asset.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Trade {
    pub id: String,
    pub delta_w: f64,
}

impl Trade {
    pub fn new(id: impl Into<String>, delta_w: f64) -> Self {
        Trade { id: id.into(), delta_w }
    }
}

/// Proposed trades plus the governance context they are submitted under.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RebalanceProposal {
    pub trades: Vec<Trade>,
    /// Annual or semi-annual window is open.
    pub schedule_due: bool,
    /// Operator-declared structural break.
    pub structural_break: bool,
}

impl RebalanceProposal {
    pub fn new(trades: Vec<Trade>, schedule_due: bool, structural_break: bool) -> Result<Self> {
        let p = RebalanceProposal {
            trades,
            schedule_due,
            structural_break,
        };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        ensure_unique_ids(self.trades.iter().map(|t| t.id.as_str()))?;
        for t in &self.trades {
            ensure(!t.id.trim().is_empty(), "trades.id", "must be non-empty")?;
            ensure_finite(t.delta_w, "trades.delta_w")?;
        }
        Ok(())
    }

    pub fn governance_open(&self) -> bool {
        self.schedule_due || self.structural_break
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn design(weights: &[(&str, f64)]) -> Result<SatelliteDesign> {
        let alpha = weights.iter().map(|(_, w)| w).sum();
        SatelliteDesign::new(
            "t",
            alpha,
            weights.iter().map(|(id, w)| Holding::new(*id, *w)).collect(),
            1.5,
            0.5,
        )
    }

    #[test]
    fn design_weights_must_match_alpha() {
        let mut d = design(&[("a", 0.05), ("b", 0.05)]).unwrap();
        d.alpha = 0.11;
        assert!(matches!(d.validate(), Err(Error::Invalid { field, .. }) if field == "design.constituents"));
    }

    #[test]
    fn design_rejects_duplicates_and_bad_tilts() {
        assert!(matches!(design(&[("a", 0.05), ("a", 0.05)]), Err(Error::DuplicateId(id)) if id == "a"));
        let err = SatelliteDesign::new("t", 0.0, vec![], 0.9, 0.5).unwrap_err();
        assert_eq!(err.to_string(), "design.kappa_a must be >= 1");
        let err = SatelliteDesign::new("t", 0.0, vec![], 1.0, 1.5).unwrap_err();
        assert_eq!(err.to_string(), "design.kappa_c must lie in (0,1]");
    }

    #[test]
    fn portfolio_from_composition_scales_core() {
        let sat = design(&[("s1", 0.06), ("s2", 0.04)]).unwrap();
        let core = vec![Holding::new("x", 0.5), Holding::new("y", 0.5)];
        let p = Portfolio::from_core_composition(&core, sat.clone()).unwrap();
        assert!((p.core_weights[0].weight - 0.45).abs() < 1e-15);
        assert!((p.total_weight() - 1.0).abs() < 1e-15);

        let cash = Portfolio::from_core_composition(&[], sat).unwrap();
        assert_eq!(cash.core_weights, vec![Holding::new(CASH_ID, 0.9)]);
    }

    #[test]
    fn apply_trade_conserves_total() {
        let sat = design(&[("s1", 0.06), ("s2", 0.04)]).unwrap();
        let mut p = Portfolio::from_core_composition(&[Holding::new("x", 1.0)], sat).unwrap();
        p.apply_trade("s1", 0.02);
        p.apply_trade("s3", 0.05);
        p.apply_trade("s2", -0.04);
        assert!((p.satellite.alpha - 0.13).abs() < 1e-15);
        assert!((p.total_weight() - 1.0).abs() < 1e-15);
        assert_eq!(p.satellite.weight_of("s2"), Some(0.0));
        p.validate().unwrap();
    }

    #[test]
    fn proposal_rejects_duplicate_trades() {
        let err = RebalanceProposal::new(vec![Trade::new("a", 0.1), Trade::new("a", -0.1)], true, false).unwrap_err();
        assert_eq!(err.code(), "duplicate_id");
    }
}
