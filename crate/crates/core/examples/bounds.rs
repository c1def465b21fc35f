//! Closed-form bounds from a config file.
//!
//!     cargo run --example bounds -- fixtures/defense/config.json

use std::path::PathBuf;

use satellite_feasibility::derive_bounds;
use satellite_feasibility::io::{load_candidates, load_config, render_bounds, OutputFormat};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let path = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures/ai/config.json"));
    let config = load_config(&path)?;
    let assets = match config.candidates_path() {
        Some(p) => load_candidates(&p)?,
        None => Vec::new(),
    };
    let bounds = derive_bounds(&config.params(), &assets);
    print!("{}", String::from_utf8(render_bounds(&bounds, OutputFormat::Text))?);
    Ok(())
}
