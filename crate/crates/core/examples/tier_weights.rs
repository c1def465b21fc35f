//! Tiered weighting for a mixed sleeve at a few tilt settings.

use satellite_feasibility::assign_tier_weights;
use satellite_feasibility::model::{Asset, TierClass};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let assets = vec![
        Asset::new("A1", TierClass::TierA, 1e7)?,
        Asset::new("A2", TierClass::TierA, 1e7)?,
        Asset::new("B1", TierClass::TierB, 1e7)?,
        Asset::new("C1", TierClass::TierC, 1e7)?,
    ];
    for (ka, kc) in [(1.0, 1.0), (1.5, 0.5), (3.0, 0.25)] {
        let ws = assign_tier_weights(0.12, &assets, ka, kc)?;
        let row: Vec<String> = ws.iter().map(|h| format!("{}={:.4}", h.id, h.weight)).collect();
        println!("kappa_a {ka:<4} kappa_c {kc:<4}  {}", row.join("  "));
    }
    Ok(())
}
