//! Breadth allowed by an entropy budget, and how far the approximate
//! increment sits from the exact one for a concrete core.

use satellite_feasibility::layers::{breadth_bound_entropy, entropy_increment_approx, entropy_increment_exact};
use satellite_feasibility::model::EntropyParams;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    println!("{:>6} {:>6} {:>8}", "alpha", "dH", "K_max");
    for alpha in [0.05, 0.10, 0.15] {
        for dh in [0.25, 0.5, 1.0] {
            let k = breadth_bound_entropy(alpha, &EntropyParams::new(dh)?);
            println!("{alpha:>6.2} {dh:>6.2} {k:>8}");
        }
    }

    let core = [0.6, 0.4];
    println!("\ncore {core:?}");
    for k in [1u64, 5, 14] {
        let approx = entropy_increment_approx(0.10, k)?;
        let exact = entropy_increment_exact(&core, 0.10, k)?;
        println!(
            "  K={k:<3} approx {approx:.6}  exact {exact:.6}  exact-approx {:+.6}",
            exact - approx
        );
    }
    Ok(())
}
