//! Governance-gated rebalance filter.
//!
//! A proposal is considered only while the schedule window is open or a
//! structural break has been declared; otherwise every trade is held back
//! and the sleeve stays as it is. Inside an open window each trade must
//! clear, in order: the cost-dominance threshold, the impact tolerance on
//! `Q = A |dw|`, the participation cap when configured, and position
//! feasibility (no short satellite weight, enough core to fund a buy).

use std::collections::BTreeMap;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::layers::{impact_cost, trade_admissible};
use crate::model::{Asset, FeasibilityParams, Portfolio, RebalanceProposal, Trade, WEIGHT_TOLERANCE};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SuppressionReason {
    GovernanceGate,
    BelowActionResolution,
    ImpactCap,
    ParticipationCap,
    /// A sell larger than the current holding.
    ExceedsHolding,
    /// A buy larger than the core can fund.
    InsufficientFunding,
}

impl SuppressionReason {
    pub fn as_str(self) -> &'static str {
        match self {
            SuppressionReason::GovernanceGate => "governance_gate",
            SuppressionReason::BelowActionResolution => "below_action_resolution",
            SuppressionReason::ImpactCap => "impact_cap",
            SuppressionReason::ParticipationCap => "participation_cap",
            SuppressionReason::ExceedsHolding => "exceeds_holding",
            SuppressionReason::InsufficientFunding => "insufficient_funding",
        }
    }
}

impl fmt::Display for SuppressionReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.pad(self.as_str())
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SuppressedTrade {
    #[serde(flatten)]
    pub trade: Trade,
    pub reason: SuppressionReason,
}

/// Partition of a proposal into executed and suppressed trades, each in
/// proposal order.
#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct RebalanceOutcome {
    pub executed: Vec<Trade>,
    pub suppressed: Vec<SuppressedTrade>,
}

/// Filter `proposal` against `current`, reading liquidity and friction from
/// `assets`. Every trade id must name an asset in `assets`.
pub fn filter_rebalance(
    proposal: &RebalanceProposal,
    params: &FeasibilityParams,
    current: &Portfolio,
    assets: &[Asset],
) -> Result<RebalanceOutcome> {
    proposal.validate()?;
    let lookup: BTreeMap<&str, &Asset> = assets.iter().map(|a| (a.id.as_str(), a)).collect();
    let resolved = proposal
        .trades
        .iter()
        .map(|t| {
            lookup
                .get(t.id.as_str())
                .map(|a| (t, *a))
                .ok_or_else(|| Error::UnknownAsset(t.id.clone()))
        })
        .collect::<Result<Vec<_>>>()?;

    let mut out = RebalanceOutcome::default();
    if !proposal.governance_open() {
        out.suppressed = proposal
            .trades
            .iter()
            .map(|t| SuppressedTrade {
                trade: t.clone(),
                reason: SuppressionReason::GovernanceGate,
            })
            .collect();
        return Ok(out);
    }

    let mut holdings: BTreeMap<&str, f64> = current
        .satellite
        .constituents
        .iter()
        .map(|h| (h.id.as_str(), h.weight))
        .collect();
    let mut core = current.core_total();

    for (trade, asset) in resolved {
        let verdict = match check_trade(trade, asset, params)? {
            Some(reason) => Err(reason),
            None => {
                let held = holdings.get(trade.id.as_str()).copied().unwrap_or(0.0);
                if held + trade.delta_w < -WEIGHT_TOLERANCE {
                    Err(SuppressionReason::ExceedsHolding)
                } else if trade.delta_w > core + WEIGHT_TOLERANCE {
                    Err(SuppressionReason::InsufficientFunding)
                } else {
                    holdings.insert(trade.id.as_str(), held + trade.delta_w);
                    core -= trade.delta_w;
                    Ok(())
                }
            }
        };
        match verdict {
            Ok(()) => out.executed.push(trade.clone()),
            Err(reason) => out.suppressed.push(SuppressedTrade {
                trade: trade.clone(),
                reason,
            }),
        }
    }
    Ok(out)
}

/// Stateless per-trade checks: cost dominance, impact, participation.
pub fn check_trade(trade: &Trade, asset: &Asset, params: &FeasibilityParams) -> Result<Option<SuppressionReason>> {
    let econ = params.econ.with_cost(asset.round_trip_cost_bps);
    if !trade_admissible(trade.delta_w, &econ) {
        return Ok(Some(SuppressionReason::BelowActionResolution));
    }
    let notional = params.aum_usd * trade.delta_w.abs();
    if impact_cost(notional, asset.adv_usd, &params.impact)? > params.impact.impact_cap {
        return Ok(Some(SuppressionReason::ImpactCap));
    }
    if let Some(phi) = params.impact.participation_cap {
        if notional / asset.adv_usd > phi {
            return Ok(Some(SuppressionReason::ParticipationCap));
        }
    }
    Ok(None)
}
