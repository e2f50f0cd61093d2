//! The explicit families that decide the threshold classification.
//!
//! Below the threshold mass, dilations u^t send the Schrodinger-Poisson
//! energy to zero from above as t -> 0+, so the infimum is exactly zero.
//! Above it, the scaled family Q^t drives the energy to -infinity as the
//! dilation concentrates; the compactly supported cutoff family does the
//! same for the confined energy. The divergence certificate requires a
//! strict decrease across at least five parameter doublings ending below
//! -10^3 (|E_start| + 1).
//!
//! Run with: cargo run --release --example witness_families

use masslab::families::{certify_divergence, cutoff_family, dilation_family, scaled_q_family};
use masslab::functionals::{Model, Potential};
use masslab::groundstate::{solve_ground_state, GroundStateConfig};

fn main() -> masslab::Result<()> {
    let gs = solve_ground_state(3, &GroundStateConfig::for_dim(3))?;
    let sp = Model::sp();
    println!("threshold mass c* = {:.6}\n", gs.cstar);

    println!("dilations at c = 0.5 c*: E(u^t) -> 0 from above");
    let c = 0.5 * gs.cstar;
    let base = gs.profile.rescale_mass(c)?;
    for k in 0..=8 {
        let t = 2.0f64.powi(-k);
        let e = sp.energy(&dilation_family(&base, c, t)?.field)?.total;
        println!("  t = 2^-{k:<2}   E = {e:+.6e}");
    }

    println!("\nscaled family at c = 1.5 c*: E(Q^t) -> -infinity");
    let c = 1.5 * gs.cstar;
    let witness = certify_divergence(
        |t| {
            let p = scaled_q_family(&gs, c, t)?;
            Ok(sp.energy(&p.field)?.total)
        },
        14,
    )?;
    for (t, e) in witness.parameters.iter().zip(&witness.energies) {
        println!("  t = {t:<8} E = {e:+.6e}");
    }
    println!(
        "  certified: {} (monotone decrease from t = {})",
        witness.certified, witness.start_parameter
    );

    println!("\ncutoff family for the confined energy at c = 1.2 c*");
    let confined = Model::sp_confined(Potential::harmonic(1.0)?)?;
    let c = 1.2 * gs.cstar;
    let witness = certify_divergence(
        |rho| {
            let p = cutoff_family(&gs, c, rho, 0.0)?;
            Ok(confined.energy(&p.field)?.total)
        },
        14,
    )?;
    for (rho, e) in witness.parameters.iter().zip(&witness.energies) {
        let a_rho = cutoff_family(&gs, c, *rho, 0.0)?.normalization;
        println!("  rho = {rho:<8} I = {e:+.6e}   A_rho = {a_rho:.8}");
    }
    println!(
        "  certified: {} (monotone decrease from rho = {})",
        witness.certified, witness.start_parameter
    );
    Ok(())
}
