//! The sharp interpolation inequality
//!
//!   int |u|^((2N+4)/N) <= (N+2)/(N c*^(2/N)) int |grad u|^2 (int u^2)^(2/N)
//!
//! is an equality exactly at the ground state: its gap vanishes at Q, is
//! strictly positive on generic fields, and is invariant under dilation.
//! The same structure forces the multiplier lambda = -1 at Q and the
//! identity int |Q|^p = -(N+2)/2 lambda c*.
//!
//! Run with: cargo run --release --example sharp_constant

use masslab::functionals::{gn_gap, integral_power, Model};
use masslab::grid::Field;
use masslab::groundstate::{solve_ground_state, GroundStateConfig};
use masslab::minimize::lagrange_multiplier;
use std::sync::Arc;

fn main() -> masslab::Result<()> {
    for dim in 1..=3 {
        let gs = solve_ground_state(dim, &GroundStateConfig::for_dim(dim))?;
        let p = (2.0 * dim as f64 + 4.0) / dim as f64;
        let scale = integral_power(&gs.profile, p)?;
        let gap_q = gn_gap(&gs.profile, gs.cstar)?;
        let gauss = Field::from_fn(Arc::clone(gs.profile.grid()), |r| (-r * r).exp())?;
        let gap_gauss = gn_gap(&gauss, gs.cstar)?;
        let dilated = gs.profile.dilate(2.0)?.field;
        let gap_dilated = gn_gap(&dilated, gs.cstar)?;
        let model = Model::nls(dim)?;
        let lambda = lagrange_multiplier(&model, &gs.profile)?;
        println!("N = {dim}:");
        println!("  gap at Q (relative)        = {:+.3e}", gap_q / scale);
        println!("  gap at a Gaussian          = {:+.6e} (> 0)", gap_gauss);
        println!(
            "  gap at the dilated Q       = {:+.3e} (relative, scale-invariant)",
            gap_dilated / integral_power(&dilated, p)?
        );
        println!("  multiplier at Q            = {lambda:+.8}");
        println!(
            "  int |Q|^p + (N+2)/2 lambda c* = {:+.3e}",
            scale + (dim as f64 + 2.0) / 2.0 * lambda * gs.cstar
        );
        println!();
    }
    Ok(())
}
