//! Classify the Schrodinger-Poisson infimum across a mass grid: zero (not
//! attained) for masses up to c*, minus infinity above, mirrored by the
//! free critical Schrodinger energy whose threshold infimum is attained by
//! the ground state itself.
//!
//! Run with: cargo run --release --example threshold_scan

use masslab::analysis::scan;
use masslab::functionals::Model;
use masslab::groundstate::{solve_ground_state, GroundStateConfig};
use masslab::minimize::SolverConfig;

fn main() -> masslab::Result<()> {
    let gs = solve_ground_state(3, &GroundStateConfig::for_dim(3))?;
    let cfg = SolverConfig::default();
    let ratios = [0.5, 0.9, 1.0, 1.1, 1.5];
    let masses: Vec<f64> = ratios.iter().map(|r| r * gs.cstar).collect();

    for (name, model) in [
        ("schrodinger-poisson", Model::sp()),
        ("free critical", Model::nls(3)?),
    ] {
        println!("{name} energy over c/c* in {ratios:?}:");
        let result = scan(&model, &masses, &gs, &cfg)?;
        for (ratio, entry) in ratios.iter().zip(&result.entries) {
            println!(
                "  c = {ratio:<4} c*   {:?}{}",
                entry.classification,
                entry
                    .energy
                    .map(|e| format!("  energy = {e:+.6e}"))
                    .unwrap_or_default()
            );
        }
        println!();
    }
    Ok(())
}
