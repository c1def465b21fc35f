//! Error type shared by the engine and its I/O surface.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A field violates its invariant. `field` uses the config key path
    /// (for example `impact.delta`).
    #[error("{field} {constraint}")]
    Invalid { field: String, constraint: String },

    #[error("adv_must_be_positive: average daily volume must be > 0, got {0}")]
    AdvMustBePositive(f64),

    #[error("participation_cap_not_configured: impact.participation_cap is absent")]
    ParticipationCapNotConfigured,

    #[error("weights_not_normalized: weights sum to {0}, expected 1")]
    WeightsNotNormalized(f64),

    #[error("empty_sleeve_has_no_increment: alpha must be > 0")]
    EmptySleeveHasNoIncrement,

    #[error("empty_sleeve: at least one asset is required")]
    EmptySleeve,

    #[error("duplicate_id: {0}")]
    DuplicateId(String),

    #[error("unknown_asset: {0}")]
    UnknownAsset(String),

    #[error("events_out_of_order: {next} does not follow {previous}")]
    EventsOutOfOrder { previous: String, next: String },

    #[error("{}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{}: parse error: {message}", path.display())]
    Parse { path: PathBuf, message: String },

    #[error("{}: schema violation: {message}", path.display())]
    Schema { path: PathBuf, message: String },

    #[error("{}: bad header: expected `{expected}`, found `{found}`", path.display())]
    BadHeader {
        path: PathBuf,
        expected: String,
        found: String,
    },

    #[error("{}:{line}: {message}", path.display())]
    Row { path: PathBuf, line: u64, message: String },
}

impl Error {
    pub(crate) fn invalid(field: impl Into<String>, constraint: impl Into<String>) -> Self {
        Error::Invalid {
            field: field.into(),
            constraint: constraint.into(),
        }
    }

    /// Stable machine-readable code for the error kind.
    pub fn code(&self) -> &'static str {
        match self {
            Error::Invalid { .. } => "invalid_field",
            Error::AdvMustBePositive(_) => "adv_must_be_positive",
            Error::ParticipationCapNotConfigured => "participation_cap_not_configured",
            Error::WeightsNotNormalized(_) => "weights_not_normalized",
            Error::EmptySleeveHasNoIncrement => "empty_sleeve_has_no_increment",
            Error::EmptySleeve => "empty_sleeve",
            Error::DuplicateId(_) => "duplicate_id",
            Error::UnknownAsset(_) => "unknown_asset",
            Error::EventsOutOfOrder { .. } => "events_out_of_order",
            Error::Io { .. } => "io",
            Error::Parse { .. } => "parse",
            Error::Schema { .. } => "schema",
            Error::BadHeader { .. } => "bad_header",
            Error::Row { .. } => "bad_row",
        }
    }
}
