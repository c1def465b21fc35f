//! Replay a year of dated proposals and print the sleeve after each event.

use std::path::Path;

use satellite_feasibility::io::{load_candidates, load_config, load_design, load_events};
use satellite_feasibility::model::Portfolio;
use satellite_feasibility::replay_trace;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/rebalance");
    let config = load_config(&dir.join("config.json"))?;
    let assets = load_candidates(&dir.join("candidates.csv"))?;
    let initial = Portfolio::from_core_composition(&[], load_design(&dir.join("current.json"))?)?;
    let events = load_events(&dir.join("events.csv"))?;

    let trace = replay_trace(&events, &config.params(), &initial, &assets)?;
    for step in &trace.steps {
        let sleeve: Vec<String> = step
            .portfolio
            .satellite
            .constituents
            .iter()
            .map(|h| format!("{}={:.2}", h.id, h.weight))
            .collect();
        println!(
            "{}  executed {}  suppressed {}  alpha {:.2}  [{}]",
            step.date,
            step.outcome.executed.len(),
            step.outcome.suppressed.len(),
            step.portfolio.satellite.alpha,
            sleeve.join(" ")
        );
    }
    println!("{:#?}", trace.stats);
    Ok(())
}
