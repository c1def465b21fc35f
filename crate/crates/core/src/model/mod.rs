//! Domain types. Every other module operates on these.
//!
//! Types carry public fields so they serialize transparently, and each one
//! exposes `validate()`; the `new` constructors and every loader in
//! [`crate::io`] call it, so an instance obtained through the public
//! construction paths always satisfies its invariants.
//!
//! Units:
//! - weights and sleeve sizes are fractions of total portfolio value;
//! - basis-point fields carry a `_bps` suffix and are plain numbers
//!   (1 bp = 1e-4), converted only where bps meet fractions;
//! - entropy is in nats.

mod asset;
mod breadth;
mod design;
mod params;
mod report;

pub use asset::{Asset, ExclusionCategory, TierClass};
pub use breadth::{Breadth, MAX_FINITE_BREADTH};
pub(crate) use design::validate_tilts;
pub use design::{Holding, Portfolio, RebalanceProposal, SatelliteDesign, Trade, CASH_ID};
pub use params::{EconParams, EntropyParams, FeasibilityParams, ImpactParams, StructuralParams};
pub use report::{
    ConstraintCheck, DerivedBounds, Diagnostics, FeasibilityReport, Layer, LayerVerdict, LayerVerdicts, Rejection,
    Sense, Status, WeightCaps,
};

use crate::error::{Error, Result};

/// Absolute tolerance for equality-style weight invariants.
pub const WEIGHT_TOLERANCE: f64 = 1e-12;

/// Tolerance on the total of a weight vector fed to the entropy functions.
pub const ENTROPY_NORMALIZATION_TOLERANCE: f64 = 1e-9;

pub(crate) fn ensure(cond: bool, field: &str, constraint: &str) -> Result<()> {
    if cond {
        Ok(())
    } else {
        Err(Error::invalid(field, constraint))
    }
}

pub(crate) fn ensure_finite(value: f64, field: &str) -> Result<()> {
    ensure(value.is_finite(), field, "must be a finite number")
}

pub(crate) fn ensure_unique_ids<'a>(ids: impl IntoIterator<Item = &'a str>) -> Result<()> {
    let mut seen = std::collections::BTreeSet::new();
    for id in ids {
        if !seen.insert(id) {
            return Err(Error::DuplicateId(id.to_string()));
        }
    }
    Ok(())
}
