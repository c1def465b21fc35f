//! Configuration, tabular inputs and report rendering.
//!
//! Everything here is plumbing around the engine: file formats are strict
//! (fixed CSV headers, no unknown JSON keys) and every failure names the
//! file, and where it applies the line or key, that caused it.

mod config;
mod render;
mod tables;

pub use config::{load_config, parse_config, RunConfig, Tilts};
pub use render::{emit_report, parse_report_json, render_bounds, to_sorted_json, OutputFormat, ReportDocument};
pub use tables::{
    load_candidates, load_core, load_design, load_events, load_proposal, parse_candidates, parse_core, parse_events,
    parse_proposal, CANDIDATES_HEADER, CORE_HEADER, EVENTS_HEADER, PROPOSAL_HEADER,
};

use std::path::Path;

use crate::error::{Error, Result};

pub(crate) fn read_file(path: &Path) -> Result<String> {
    std::fs::read_to_string(path).map_err(|source| Error::Io {
        path: path.to_path_buf(),
        source,
    })
}
