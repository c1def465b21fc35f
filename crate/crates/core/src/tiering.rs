//! Eligibility filtering and the tiered internal weighting rule.
//!
//! Thematic relevance is upstream curation: anything in the candidate list
//! is presumed relevant. The filter only enforces domain admissibility and
//! the category exclusions.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{ensure_unique_ids, validate_tilts, Asset, Holding, Rejection, TierClass};

pub const REASON_GAER_INADMISSIBLE: &str = "gaer_inadmissible";

/// Number of constituents per tier.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct TierCounts {
    pub k_a: usize,
    pub k_b: usize,
    pub k_c: usize,
}

impl TierCounts {
    pub fn of(assets: &[Asset]) -> Self {
        assets.iter().fold(TierCounts::default(), |mut acc, a| {
            match a.tier {
                TierClass::TierA => acc.k_a += 1,
                TierClass::TierB => acc.k_b += 1,
                TierClass::TierC => acc.k_c += 1,
            }
            acc
        })
    }

    pub fn total(&self) -> usize {
        self.k_a + self.k_b + self.k_c
    }
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct Eligibility {
    pub eligible: Vec<Asset>,
    pub rejected: Vec<(Asset, String)>,
}

impl Eligibility {
    pub fn rejections(&self) -> Vec<Rejection> {
        self.rejected
            .iter()
            .map(|(a, reason)| Rejection {
                id: a.id.clone(),
                reason: reason.clone(),
            })
            .collect()
    }
}

/// Why an asset is ineligible, if it is. Domain inadmissibility is reported
/// ahead of any category exclusion.
pub fn rejection_reason(asset: &Asset) -> Option<String> {
    if !asset.gaer_admissible {
        Some(REASON_GAER_INADMISSIBLE.to_string())
    } else if asset.exclusion.is_excluded() {
        Some(asset.exclusion.as_str().to_string())
    } else {
        None
    }
}

/// Split candidates into eligible and rejected, preserving input order.
pub fn eligibility_filter(candidates: &[Asset]) -> Result<Eligibility> {
    ensure_unique_ids(candidates.iter().map(|a| a.id.as_str()))?;
    let mut out = Eligibility::default();
    for asset in candidates {
        match rejection_reason(asset) {
            None => out.eligible.push(asset.clone()),
            Some(reason) => out.rejected.push((asset.clone(), reason)),
        }
    }
    Ok(out)
}

fn tilt(tier: TierClass, kappa_a: f64, kappa_c: f64) -> f64 {
    match tier {
        TierClass::TierA => kappa_a,
        TierClass::TierB => 1.0,
        TierClass::TierC => kappa_c,
    }
}

/// Equal weight within tiers, tilted by `kappa_a` toward Tier A and by
/// `kappa_c` away from Tier C, then rescaled uniformly so the sleeve sums to
/// `alpha`.
///
/// The raw weight `(alpha/K) * tilt` times the rescale `alpha / sum(raw)`
/// reduces to `alpha * tilt / sum(tilts)`, which is what is computed; with no
/// tilt every name gets exactly `alpha / K`.
pub fn assign_tier_weights(alpha: f64, assets: &[Asset], kappa_a: f64, kappa_c: f64) -> Result<Vec<Holding>> {
    if assets.is_empty() {
        return Err(Error::EmptySleeve);
    }
    if !(alpha > 0.0 && alpha <= 1.0) {
        return Err(Error::invalid("alpha", "must lie in (0,1]"));
    }
    validate_tilts(kappa_a, kappa_c, "tilts.")?;
    ensure_unique_ids(assets.iter().map(|a| a.id.as_str()))?;

    let tilt_total: f64 = assets.iter().map(|a| tilt(a.tier, kappa_a, kappa_c)).sum();
    Ok(assets
        .iter()
        .map(|a| Holding::new(a.id.clone(), alpha * tilt(a.tier, kappa_a, kappa_c) / tilt_total))
        .collect())
}
