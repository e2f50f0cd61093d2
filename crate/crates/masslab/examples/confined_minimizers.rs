//! With a confining potential the Schrodinger-Poisson infimum is attained
//! for every mass up to the threshold, with strictly positive energy, and
//! the mass-ratio curve I_c / c^2 decreases strictly. This example solves
//! the minimizers, prints the curve, and probes continuity in the mass.
//!
//! Run with: cargo run --release --example confined_minimizers

use masslab::analysis::{continuity_probe, monotonicity_check, scan};
use masslab::functionals::{Model, Potential};
use masslab::groundstate::{solve_ground_state, GroundStateConfig};
use masslab::minimize::SolverConfig;

fn main() -> masslab::Result<()> {
    let gs = solve_ground_state(3, &GroundStateConfig::for_dim(3))?;
    let model = Model::sp_confined(Potential::harmonic(1.0)?)?;
    let cfg = SolverConfig::default();

    let ratios = [0.25, 0.5, 0.75, 1.0];
    let masses: Vec<f64> = ratios.iter().map(|r| r * gs.cstar).collect();
    let result = scan(&model, &masses, &gs, &cfg)?;
    println!("confined minimizers (harmonic potential):");
    for (ratio, e) in ratios.iter().zip(&result.entries) {
        println!(
            "  c = {ratio:<5} c*   I_c = {:+.8e}   lambda = {:+.6e}   ({} iterations)",
            e.energy.unwrap_or(f64::NAN),
            e.lagrange.unwrap_or(f64::NAN),
            e.iterations
        );
    }

    let mono = monotonicity_check(&result, gs.cstar)?;
    println!("\nmass-ratio curve I_c / c^2:");
    for (m, r) in mono.masses.iter().zip(&mono.ratios) {
        println!("  c = {:<10.6}   I_c/c^2 = {r:.10e}", m);
    }
    println!(
        "strictly decreasing: {} (min margin {:.3e})",
        mono.passed, mono.min_margin
    );

    let c = 0.6 * gs.cstar;
    let deltas: Vec<f64> = [0.1, 0.05, 0.01].iter().map(|d| d * c).collect();
    let probe = continuity_probe(&model, c, &deltas, &gs, &cfg)?;
    println!("\ncontinuity probe at c = 0.6 c*:");
    for (d, diff) in probe.deltas.iter().zip(&probe.differences) {
        println!("  delta = {d:<10.6}   |I(c+delta) - I(c)| = {diff:.6e}");
    }
    println!(
        "consistent with continuity: {} (smallest {:.3e} <= {:.3e})",
        probe.passed, probe.smallest, probe.smallest_allowed
    );
    Ok(())
}
