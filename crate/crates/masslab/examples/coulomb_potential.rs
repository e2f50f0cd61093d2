//! Solve -Delta phi = 4 pi u^2 for a radial Gaussian density and compare
//! with the closed form phi(r) = pi^(3/2) erf(r)/r, then check Newton's
//! far-field law r phi(r) -> |u|_2^2 and the dilation scaling
//! B(u^t) = t B(u) of the Hartree energy.
//!
//! Run with: cargo run --release --example coulomb_potential

use masslab::grid::{Field, RadialGrid};
use masslab::hartree::{coulomb_potential, hartree_energy};
use std::f64::consts::PI;
use std::sync::Arc;

fn main() -> masslab::Result<()> {
    let grid = RadialGrid::build(3, 16.0, 2048)?;
    // u^2 = e^{-r^2}
    let u = Field::from_fn(Arc::clone(&grid), |r| (-r * r / 2.0).exp())?;
    let sol = coulomb_potential(&u)?;

    println!(
        "Gaussian density u^2 = exp(-r^2), |u|_2^2 = {:.10}",
        u.mass()
    );
    println!(
        "  phi(0) = {:.10} (exact 2 pi = {:.10})",
        sol.potential.values()[0],
        2.0 * PI
    );
    let mut max_rel: f64 = 0.0;
    for (i, &r) in grid.nodes().iter().enumerate().skip(1) {
        let exact = PI.powf(1.5) * libm::erf(r) / r;
        max_rel = max_rel.max((sol.potential.values()[i] - exact).abs() / exact);
    }
    println!("  max relative deviation from pi^(3/2) erf(r)/r: {max_rel:.3e}");
    println!("  Hartree energy B(u) = {:.10}", sol.energy);
    println!(
        "  closed form pi^(5/2)/(2 sqrt 2) = {:.10}",
        PI.powf(2.5) / (2.0 * 2.0f64.sqrt())
    );

    let far = grid.r_max() * sol.potential.values()[grid.len() - 1];
    println!(
        "  far field r_max phi(r_max) = {far:.10} vs mass {:.10}",
        u.mass()
    );

    println!("\ndilation scaling of the Hartree energy:");
    let b1 = sol.energy;
    for &t in &[0.5, 2.0, 4.0] {
        let bt = hartree_energy(&u.dilate(t)?.field)?;
        println!(
            "  t = {t:<4}  B(u^t) = {bt:.10}   t B(u) = {:.10}   rel err {:.2e}",
            t * b1,
            (bt - t * b1).abs() / (t * b1)
        );
    }
    Ok(())
}
