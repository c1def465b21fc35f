//! One proposal, with the governance window closed and then open.

use std::path::Path;

use satellite_feasibility::filter_rebalance;
use satellite_feasibility::io::{load_candidates, load_config, load_design, load_proposal};
use satellite_feasibility::model::{Portfolio, RebalanceProposal};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/rebalance");
    let config = load_config(&dir.join("config.json"))?;
    let assets = load_candidates(&dir.join("candidates.csv"))?;
    let current = Portfolio::from_core_composition(&[], load_design(&dir.join("current.json"))?)?;
    let trades = load_proposal(&dir.join("proposal.csv"))?;

    for (label, due) in [("closed", false), ("scheduled", true)] {
        let proposal = RebalanceProposal::new(trades.clone(), due, false)?;
        let outcome = filter_rebalance(&proposal, &config.params(), &current, &assets)?;
        println!("{label} window:");
        for t in &outcome.executed {
            println!("  execute  {:<6} {:+.3}", t.id, t.delta_w);
        }
        for s in &outcome.suppressed {
            println!("  suppress {:<6} {:+.3}  {}", s.trade.id, s.trade.delta_w, s.reason);
        }
    }
    Ok(())
}
