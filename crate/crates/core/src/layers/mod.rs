//! The four feasibility layers as pure functions of their inputs.
//!
//! - [`physical`]: concave market impact and the weight caps it implies.
//! - [`economic`]: the cost-dominance threshold, the no-trade region and the
//!   breadth bound it induces.
//! - [`structural`]: the optionality budget on sleeve size.
//! - [`epistemic`]: weight entropy and the entropy-budget breadth bound.

pub mod economic;
pub mod epistemic;
pub mod physical;
pub mod structural;

pub use economic::{breadth_bound_econ, min_weight_change, trade_admissible};
pub use epistemic::{
    breadth_bound_entropy, entropy_increment_approx, entropy_increment_exact, entropy_increment_mixture, weight_entropy,
};
pub use physical::{impact_cost, max_weight_impact, max_weight_participation};
pub use structural::{alpha_max_structural, effective_alpha};
