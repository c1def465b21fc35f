//! Synthesize the AI sleeve, then show how a ten-fold higher effect
//! threshold collapses it to a single name.

use std::path::Path;

use satellite_feasibility::io::{emit_report, load_candidates, load_config, OutputFormat};
use satellite_feasibility::{run_cascade, CascadeInput};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/ai");
    let config = load_config(&dir.join("config.json"))?;
    let assets = load_candidates(&dir.join("candidates.csv"))?;

    let input = CascadeInput::synthesize(
        config.theme.clone(),
        assets,
        config.params(),
        config.tilts.kappa_a,
        config.tilts.kappa_c,
    );
    let outcome = run_cascade(&input)?;
    print!(
        "{}",
        String::from_utf8(emit_report(
            &outcome.report,
            outcome.design.as_ref(),
            OutputFormat::Text
        ))?
    );

    let mut strict = input.clone();
    strict.params.econ.min_effect_bps = 2.0;
    let outcome = run_cascade(&strict)?;
    let names = outcome.design.as_ref().map_or(0, |d| d.breadth());
    println!(
        "\nwith min_effect_bps = 2: delta_w_min {:.3}, {} name(s), binding {}",
        outcome.report.derived_bounds.delta_w_min, names, outcome.report.binding_layer
    );
    Ok(())
}
