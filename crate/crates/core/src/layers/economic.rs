//! Cost-dominance threshold: a weight change is worth making only when its
//! effect `|dw| * C_rt` reaches the minimum meaningful effect `eps`. Both are
//! in bps, so the threshold `eps / C_rt` is a pure fraction.

use crate::model::{Breadth, EconParams, WEIGHT_TOLERANCE};

/// `eps / C_rt`.
pub fn min_weight_change(econ: &EconParams) -> f64 {
    econ.min_effect_bps / econ.round_trip_cost_bps
}

/// Outside the no-trade region. The boundary itself is admissible.
pub fn trade_admissible(delta_w: f64, econ: &EconParams) -> bool {
    delta_w.abs() >= min_weight_change(econ)
}

/// Largest `K` with `K * dw_min <= alpha`, each constituent holding at least
/// one action-resolution step. Ratios within the weight tolerance of an
/// integer round up to it.
pub fn breadth_bound_econ(alpha: f64, econ: &EconParams) -> Breadth {
    let step = min_weight_change(econ);
    if step == 0.0 {
        return Breadth::Unbounded;
    }
    if alpha <= 0.0 {
        return Breadth::Finite(0);
    }
    let ratio = (alpha / step) * (1.0 + WEIGHT_TOLERANCE);
    if ratio >= crate::model::MAX_FINITE_BREADTH as f64 {
        return Breadth::Unbounded;
    }
    Breadth::from_count(ratio.floor() as u64)
}
