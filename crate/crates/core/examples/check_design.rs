//! Validate a hand-written design; this one overshoots the loss budget.

use std::path::Path;

use satellite_feasibility::io::{load_candidates, load_config, load_design};
use satellite_feasibility::{run_cascade, CascadeInput};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/ai");
    let config = load_config(&dir.join("config.json"))?;
    let input = CascadeInput::synthesize(
        config.theme.clone(),
        load_candidates(&dir.join("candidates.csv"))?,
        config.params(),
        config.tilts.kappa_a,
        config.tilts.kappa_c,
    )
    .with_design(load_design(&dir.join("design_over_budget.json"))?);

    let report = run_cascade(&input)?.report;
    println!("admissible: {}  binding: {}", report.admissible, report.binding_layer);
    for (layer, v) in report.layer_verdicts.iter() {
        println!("  {:<11} {:<6} {:?}", layer, v.status.as_str(), v.normalized_margin);
    }
    for line in &report.advice {
        println!("  advice: {line}");
    }
    Ok(())
}
