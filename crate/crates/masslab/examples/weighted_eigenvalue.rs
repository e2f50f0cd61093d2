//! The weighted first Dirichlet eigenvalue
//! mu_1 = inf { int |grad u|^2 : int V u^2 = 1 } on a ball, validated
//! against the constant-weight closed form (pi/R)^2 and used to build the
//! negative-energy test field of the decaying-potential model.
//!
//! Run with: cargo run --release --example weighted_eigenvalue

use masslab::eigen::compute_mu1;
use masslab::functionals::{Model, Potential};
use std::f64::consts::PI;

fn main() -> masslab::Result<()> {
    let radius = 4.0;
    let unit = Potential::table(vec![0.0, radius], vec![1.0, 1.0])?;
    let res = compute_mu1(&unit, radius, 2048, 3)?;
    println!(
        "constant weight on B_{radius}: mu_1 = {:.10} vs (pi/R)^2 = {:.10}",
        res.mu1,
        (PI / radius).powi(2)
    );

    let gauss = Potential::gaussian_decay(1.0, 1.0)?;
    let res_g = compute_mu1(&gauss, radius, 2048, 3)?;
    println!(
        "gaussian weight: mu_1 = {:.10} ({} inverse-iteration sweeps, int V phi^2 = {})",
        res_g.mu1, res_g.iterations, res_g.weight_norm
    );
    let wide = compute_mu1(&gauss, 2.0 * radius, 4096, 3)?;
    println!(
        "doubling the ball radius lowers it: mu_1 = {:.10}",
        wide.mu1
    );

    // The rescaled eigenfunction makes the decaying-potential energy
    // negative whenever the coupling reaches mu_1.
    let model = Model::nls_decaying(3, gauss, 1.0 * res_g.mu1)?;
    for &c in &[0.5, 2.0, 10.0] {
        let phi_c = res_g.eigenfunction.rescale_mass(c)?;
        let e = model.energy(&phi_c)?;
        println!("  F_mu(phi_c) at mass {c:<4} = {:+.6e} (< 0)", e.total);
    }
    Ok(())
}
