//! Deterministic replay of dated rebalance proposals.
//!
//! Weights move only through executed trades; there are no price dynamics.
//! Each executed trade is funded pro rata from the core (see
//! [`Portfolio::apply_trade`]), so the portfolio keeps summing to one.

use std::collections::BTreeMap;

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{Asset, FeasibilityParams, Portfolio, RebalanceProposal};
use crate::rebalance::{filter_rebalance, RebalanceOutcome, SuppressionReason};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RebalanceEvent {
    pub date: NaiveDate,
    pub proposal: RebalanceProposal,
}

impl RebalanceEvent {
    pub fn new(date: NaiveDate, proposal: RebalanceProposal) -> Self {
        RebalanceEvent { date, proposal }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Serialize, Deserialize)]
pub struct ReplayStats {
    pub events_total: u64,
    pub trades_proposed: u64,
    pub trades_executed: u64,
    pub trades_suppressed_by_reason: BTreeMap<SuppressionReason, u64>,
    /// Sum of `|dw|` over executed trades.
    pub gross_turnover_executed: f64,
    /// Largest `Q / V` over executed trades, zero when nothing executed.
    pub max_participation_observed: f64,
}

impl ReplayStats {
    pub fn trades_suppressed(&self) -> u64 {
        self.trades_suppressed_by_reason.values().sum()
    }

    pub fn suppressed(&self, reason: SuppressionReason) -> u64 {
        self.trades_suppressed_by_reason.get(&reason).copied().unwrap_or(0)
    }
}

/// State after one event.
#[derive(Clone, Debug, PartialEq)]
pub struct ReplayStep {
    pub date: NaiveDate,
    pub outcome: RebalanceOutcome,
    pub portfolio: Portfolio,
}

#[derive(Clone, Debug, PartialEq)]
pub struct ReplayTrace {
    pub stats: ReplayStats,
    pub steps: Vec<ReplayStep>,
}

impl ReplayTrace {
    pub fn final_portfolio(&self) -> Option<&Portfolio> {
        self.steps.last().map(|s| &s.portfolio)
    }
}

pub fn replay(
    events: &[RebalanceEvent],
    params: &FeasibilityParams,
    initial: &Portfolio,
    assets: &[Asset],
) -> Result<ReplayStats> {
    replay_trace(events, params, initial, assets).map(|t| t.stats)
}

/// Replay and keep the per-event outcome and portfolio.
pub fn replay_trace(
    events: &[RebalanceEvent],
    params: &FeasibilityParams,
    initial: &Portfolio,
    assets: &[Asset],
) -> Result<ReplayTrace> {
    params.validate()?;
    initial.validate()?;
    for pair in events.windows(2) {
        if pair[1].date <= pair[0].date {
            return Err(Error::EventsOutOfOrder {
                previous: pair[0].date.to_string(),
                next: pair[1].date.to_string(),
            });
        }
    }
    let adv: BTreeMap<&str, f64> = assets.iter().map(|a| (a.id.as_str(), a.adv_usd)).collect();

    let mut stats = ReplayStats::default();
    let mut portfolio = initial.clone();
    let mut steps = Vec::with_capacity(events.len());
    for event in events {
        let outcome = filter_rebalance(&event.proposal, params, &portfolio, assets)?;
        stats.events_total += 1;
        stats.trades_proposed += event.proposal.trades.len() as u64;
        stats.trades_executed += outcome.executed.len() as u64;
        for s in &outcome.suppressed {
            *stats.trades_suppressed_by_reason.entry(s.reason).or_insert(0) += 1;
        }
        for t in &outcome.executed {
            stats.gross_turnover_executed += t.delta_w.abs();
            let participation = params.aum_usd * t.delta_w.abs() / adv[t.id.as_str()];
            stats.max_participation_observed = stats.max_participation_observed.max(participation);
            portfolio.apply_trade(&t.id, t.delta_w);
        }
        steps.push(ReplayStep {
            date: event.date,
            outcome,
            portfolio: portfolio.clone(),
        });
    }
    Ok(ReplayTrace { stats, steps })
}
