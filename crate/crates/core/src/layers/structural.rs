//! Optionality budget: the sleeve loses at most `D_max` of its value under
//! thesis failure, and that loss may cost at most `L` of the total portfolio.

use crate::model::StructuralParams;

/// `min(L / D_max, 1)`.
pub fn alpha_max_structural(structural: &StructuralParams) -> f64 {
    (structural.loss_tolerance / structural.max_drawdown).min(1.0)
}

/// `min(alpha_policy_max, L / D_max)`.
pub fn effective_alpha(structural: &StructuralParams) -> f64 {
    structural.alpha_policy_max.min(alpha_max_structural(structural))
}

/// The effective sleeve falls short of the policy floor.
pub fn below_policy_min(structural: &StructuralParams) -> bool {
    effective_alpha(structural) < structural.alpha_policy_min
}
