use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::{ensure, ensure_finite};
use crate::error::{Error, Result};

/// Economic role of a constituent along the thematic value chain.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TierClass {
    /// Hard constraints and bottlenecks.
    #[serde(rename = "A")]
    TierA,
    /// Platforms and rent extractors.
    #[serde(rename = "B")]
    TierB,
    /// Embedded adopters.
    #[serde(rename = "C")]
    TierC,
}

impl TierClass {
    pub fn label(self) -> &'static str {
        match self {
            TierClass::TierA => "A",
            TierClass::TierB => "B",
            TierClass::TierC => "C",
        }
    }
}

impl FromStr for TierClass {
    type Err = Error;

    /// Case-insensitive `A`, `B` or `C`.
    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_uppercase().as_str() {
            "A" => Ok(TierClass::TierA),
            "B" => Ok(TierClass::TierB),
            "C" => Ok(TierClass::TierC),
            _ => Err(Error::invalid("tier", format!("must be one of A, B, C (got `{s}`)"))),
        }
    }
}

impl fmt::Display for TierClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.label())
    }
}

/// Asset categories excluded from satellite eligibility regardless of
/// thematic relevance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionCategory {
    PurePlayEarlyStage,
    SmallCapSpecialist,
    RegimeOpaqueJurisdiction,
    ThematicEtf,
    #[default]
    None,
}

impl ExclusionCategory {
    pub const ALL: [ExclusionCategory; 5] = [
        ExclusionCategory::PurePlayEarlyStage,
        ExclusionCategory::SmallCapSpecialist,
        ExclusionCategory::RegimeOpaqueJurisdiction,
        ExclusionCategory::ThematicEtf,
        ExclusionCategory::None,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            ExclusionCategory::PurePlayEarlyStage => "pure_play_early_stage",
            ExclusionCategory::SmallCapSpecialist => "small_cap_specialist",
            ExclusionCategory::RegimeOpaqueJurisdiction => "regime_opaque_jurisdiction",
            ExclusionCategory::ThematicEtf => "thematic_etf",
            ExclusionCategory::None => "none",
        }
    }

    pub fn is_excluded(self) -> bool {
        self != ExclusionCategory::None
    }
}

impl FromStr for ExclusionCategory {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let needle = s.trim().to_ascii_lowercase();
        ExclusionCategory::ALL
            .into_iter()
            .find(|c| c.as_str() == needle)
            .ok_or_else(|| {
                Error::invalid(
                    "exclusion",
                    format!(
                        "must be one of pure_play_early_stage, small_cap_specialist, \
                         regime_opaque_jurisdiction, thematic_etf, none (got `{s}`)"
                    ),
                )
            })
    }
}

impl fmt::Display for ExclusionCategory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

/// A candidate satellite constituent.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Asset {
    pub id: String,
    pub tier: TierClass,
    /// Average daily dollar volume, USD/day.
    pub adv_usd: f64,
    /// Asset-level round-trip cost; `None` falls back to the sleeve-level value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub round_trip_cost_bps: Option<f64>,
    /// Asset-level turnover fraction; `None` falls back to the sleeve-level value.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub turnover_fraction: Option<f64>,
    pub gaer_admissible: bool,
    #[serde(default)]
    pub exclusion: ExclusionCategory,
}

impl Asset {
    /// A plain admissible asset with no overrides and no exclusion.
    pub fn new(id: impl Into<String>, tier: TierClass, adv_usd: f64) -> Result<Self> {
        let asset = Asset {
            id: id.into(),
            tier,
            adv_usd,
            round_trip_cost_bps: None,
            turnover_fraction: None,
            gaer_admissible: true,
            exclusion: ExclusionCategory::None,
        };
        asset.validate()?;
        Ok(asset)
    }

    pub fn with_round_trip_cost_bps(mut self, bps: f64) -> Result<Self> {
        self.round_trip_cost_bps = Some(bps);
        self.validate()?;
        Ok(self)
    }

    pub fn with_turnover_fraction(mut self, tau: f64) -> Result<Self> {
        self.turnover_fraction = Some(tau);
        self.validate()?;
        Ok(self)
    }

    pub fn with_gaer_admissible(mut self, admissible: bool) -> Self {
        self.gaer_admissible = admissible;
        self
    }

    pub fn with_exclusion(mut self, exclusion: ExclusionCategory) -> Self {
        self.exclusion = exclusion;
        self
    }

    pub fn validate(&self) -> Result<()> {
        ensure(!self.id.trim().is_empty(), "id", "must be non-empty")?;
        if !(self.adv_usd.is_finite() && self.adv_usd > 0.0) {
            return Err(Error::AdvMustBePositive(self.adv_usd));
        }
        if let Some(bps) = self.round_trip_cost_bps {
            ensure_finite(bps, "round_trip_cost_bps")?;
            ensure(bps > 0.0, "round_trip_cost_bps", "must be > 0 when present")?;
        }
        if let Some(tau) = self.turnover_fraction {
            ensure_finite(tau, "turnover_fraction")?;
            ensure(tau > 0.0 && tau <= 1.0, "turnover_fraction", "must lie in (0,1]")?;
        }
        Ok(())
    }
}
