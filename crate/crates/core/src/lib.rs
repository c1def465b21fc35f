//! Feasibility engine for thematic satellite sleeves in small core-satellite
//! portfolios.
//!
//! A sleeve is admissible when it clears five layers in order: domain
//! eligibility, the structural loss budget on sleeve size, the entropy budget
//! on breadth, the cost-dominance threshold on trade size, and the impact and
//! participation caps on per-name weight. [`cascade::run_cascade`] evaluates
//! or synthesizes a sleeve and reports per-layer margins and the binding
//! layer; [`rebalance::filter_rebalance`] and [`replay::replay`] apply the
//! same layers to trades.
//!
//! ```
//! use satellite_feasibility::layers::{alpha_max_structural, breadth_bound_entropy};
//! use satellite_feasibility::model::{Breadth, EntropyParams, StructuralParams};
//!
//! let s = StructuralParams::new(0.05, 0.5, 0.10, 0.15).unwrap();
//! assert!((alpha_max_structural(&s) - 0.10).abs() < 1e-12);
//! let k = breadth_bound_entropy(0.10, &EntropyParams::new(0.5).unwrap());
//! assert_eq!(k, Breadth::Finite(14));
//! ```

pub mod cascade;
pub mod cli;
pub mod error;
pub mod io;
pub mod layers;
pub mod model;
pub mod rebalance;
pub mod replay;
pub mod tiering;

pub use cascade::{derive_bounds, evaluate_design, run_cascade, CascadeInput, CascadeOutcome};
pub use error::{Error, Result};
pub use rebalance::{filter_rebalance, RebalanceOutcome, SuppressedTrade, SuppressionReason};
pub use replay::{replay, replay_trace, RebalanceEvent, ReplayStats};
pub use tiering::{assign_tier_weights, eligibility_filter};
