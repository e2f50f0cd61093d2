//! Coulomb potential and Hartree energy for radial charge densities in
//! three dimensions.
//!
//! The scalar potential of the charge density u^2 solves
//! -Delta phi = 4 pi u^2. For radial data the solution has the closed
//! Green's-function form
//!
//!   phi(r) = 4 pi [ (1/r) int_0^r u^2(s) s^2 ds + int_r^inf u^2(s) s ds ],
//!
//! which is evaluated here by cumulative fourth-order quadrature in O(M)
//! work. Outside the truncation radius the density is taken to be zero, so
//! r phi(r) tends to the total mass |u|_2^2 at the boundary (Newton's
//! theorem), an identity the tests monitor.
//!
//! The Hartree energy is B(u) = (1/4) int phi_u u^2 >= 0. Both the kernel
//! 1/max(r, s) and the quadrature are symmetric in (r, s) up to O(h^4), so
//! the first variation of the discrete B is phi_u u to the same order.

use crate::error::{MasslabError, Result};
use crate::grid::Field;

/// Coulomb potential of a radial density together with the Hartree energy.
#[derive(Debug, Clone)]
pub struct CoulombSolution {
    /// phi_u sampled on the grid of the source field.
    pub potential: Field,
    /// B(u) = (1/4) int phi_u u^2.
    pub energy: f64,
}

/// Cumulative integral c_i = int_0^{r_i} f, fourth order.
///
/// Even indices accumulate composite Simpson panels; odd indices add the
/// half-panel integral of the local quadratic interpolant.
pub(crate) fn cumulative_integral(h: f64, f: &[f64]) -> Vec<f64> {
    let m = f.len();
    let mut c = vec![0.0; m];
    let mut even_acc = 0.0;
    for i in (2..m).step_by(2) {
        even_acc += h / 3.0 * (f[i - 2] + 4.0 * f[i - 1] + f[i]);
        c[i] = even_acc;
    }
    for i in (1..m).step_by(2) {
        c[i] = if i + 1 < m {
            c[i - 1] + h / 12.0 * (5.0 * f[i - 1] + 8.0 * f[i] - f[i + 1])
        } else {
            // Last node with an odd index: left-biased quadratic panel.
            c[i - 1] + h / 12.0 * (-f[i - 2] + 8.0 * f[i - 1] + 5.0 * f[i])
        };
    }
    c
}

/// Reverse cumulative integral r_i = int_{r_i}^{r_max} f, fourth order.
pub(crate) fn reverse_cumulative_integral(h: f64, f: &[f64]) -> Vec<f64> {
    let mut rev: Vec<f64> = f.iter().rev().copied().collect();
    rev = cumulative_integral(h, &rev);
    rev.reverse();
    rev
}

/// Solves -Delta phi = 4 pi u^2 for a radial field in three dimensions.
pub fn coulomb_potential(field: &Field) -> Result<CoulombSolution> {
    if field.dim() != 3 {
        return Err(MasslabError::Model(format!(
            "the Coulomb term is defined for three-dimensional fields, got N = {}",
            field.dim()
        )));
    }
    let grid = field.grid();
    let h = grid.step();
    let nodes = grid.nodes();
    let rho: Vec<f64> = field.values().iter().map(|u| u * u).collect();
    let inner_integrand: Vec<f64> = rho.iter().zip(nodes).map(|(p, &r)| p * r * r).collect();
    let outer_integrand: Vec<f64> = rho.iter().zip(nodes).map(|(p, &r)| p * r).collect();
    let inner = cumulative_integral(h, &inner_integrand);
    let outer = reverse_cumulative_integral(h, &outer_integrand);
    let four_pi = 4.0 * std::f64::consts::PI;
    let phi_values: Vec<f64> = nodes
        .iter()
        .enumerate()
        .map(|(i, &r)| {
            let near = if i == 0 { 0.0 } else { inner[i] / r };
            four_pi * (near + outer[i])
        })
        .collect();
    let potential = Field::new(std::sync::Arc::clone(grid), phi_values)?;
    let integrand: Vec<f64> = potential
        .values()
        .iter()
        .zip(&rho)
        .map(|(phi, p)| phi * p)
        .collect();
    let energy = 0.25 * grid.integrate(&integrand)?;
    Ok(CoulombSolution { potential, energy })
}

/// Hartree energy B(u) = (1/4) int phi_u u^2 of a three-dimensional field.
pub fn hartree_energy(field: &Field) -> Result<f64> {
    Ok(coulomb_potential(field)?.energy)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::RadialGrid;
    use std::f64::consts::PI;

    fn gaussian_field(points: usize) -> Field {
        // u^2 = e^{-r^2}
        let g = RadialGrid::build(3, 16.0, points).unwrap();
        Field::from_fn(g, |r| (-r * r / 2.0).exp()).unwrap()
    }

    #[test]
    fn zero_density_gives_zero_potential() {
        let g = RadialGrid::build(3, 8.0, 256).unwrap();
        let sol = coulomb_potential(&Field::zeros(g)).unwrap();
        assert!(sol.potential.values().iter().all(|&v| v == 0.0));
        assert_eq!(sol.energy, 0.0);
    }

    #[test]
    fn rejects_non_three_dimensional_fields() {
        let g = RadialGrid::build(1, 8.0, 64).unwrap();
        let f = Field::from_fn(g, |r| (-r).exp()).unwrap();
        assert!(matches!(coulomb_potential(&f), Err(MasslabError::Model(_))));
    }

    #[test]
    fn gaussian_potential_matches_error_function_form() {
        // For u^2 = e^{-r^2}: phi(r) = pi^(3/2) erf(r)/r, with limit 2 pi at
        // the origin.
        let f = gaussian_field(2048);
        let sol = coulomb_potential(&f).unwrap();
        let mut max_rel: f64 = 0.0;
        for (i, &r) in f.grid().nodes().iter().enumerate() {
            let exact = if i == 0 {
                2.0 * PI
            } else {
                PI.powf(1.5) * libm::erf(r) / r
            };
            let rel = (sol.potential.values()[i] - exact).abs() / exact;
            max_rel = max_rel.max(rel);
        }
        assert!(
            max_rel <= 1e-6,
            "max relative potential error {max_rel:.3e}"
        );
    }

    #[test]
    fn hartree_energy_matches_closed_form_for_gaussian() {
        // B = (1/4) int pi^(3/2) erf(r)/r e^{-r^2} 4 pi r^2 dr
        //   = pi^(5/2) int_0^inf erf(r) e^{-r^2} r dr = pi^(5/2) / (2 sqrt 2),
        // by parts with d(-e^{-r^2}/2) and int e^{-2 r^2} = sqrt(pi/2)/2.
        let f = gaussian_field(2048);
        let b = hartree_energy(&f).unwrap();
        let exact = PI.powf(2.5) / (2.0 * 2.0f64.sqrt());
        assert!(
            (b - exact).abs() <= 1e-8 * exact,
            "B = {b}, exact = {exact}"
        );
    }

    #[test]
    fn hartree_energy_agrees_with_double_integral_oracle() {
        // Independent route: B = (1/4)(4 pi)^2 int int rho(r) rho(s)
        // r^2 s^2 / max(r, s) dr ds, evaluated with composite Gauss-Legendre
        // panels that never touch this module's cumulative quadrature.
        let f = gaussian_field(2048);
        let b = hartree_energy(&f).unwrap();
        let rho = |r: f64| (-r * r).exp();

        // 8-point Gauss-Legendre nodes/weights on [-1, 1].
        const GL_X: [f64; 8] = [
            -0.960_289_856_497_536_2,
            -0.796_666_477_413_626_7,
            -0.525_532_409_916_329,
            -0.183_434_642_495_649_8,
            0.183_434_642_495_649_8,
            0.525_532_409_916_329,
            0.796_666_477_413_626_7,
            0.960_289_856_497_536_2,
        ];
        const GL_W: [f64; 8] = [
            0.101_228_536_290_376_26,
            0.222_381_034_453_374_47,
            0.313_706_645_877_887_3,
            0.362_683_783_378_362,
            0.362_683_783_378_362,
            0.313_706_645_877_887_3,
            0.222_381_034_453_374_47,
            0.101_228_536_290_376_26,
        ];
        let panels = 160;
        let upper = 10.0;
        let quad = |f: &dyn Fn(f64) -> f64, a: f64, b: f64| -> f64 {
            let mut total = 0.0;
            let w = (b - a) / panels as f64;
            for p in 0..panels {
                let lo = a + p as f64 * w;
                for (x, gw) in GL_X.iter().zip(GL_W.iter()) {
                    let t = lo + 0.5 * w * (x + 1.0);
                    total += 0.5 * w * gw * f(t);
                }
            }
            total
        };
        let inner = |r: f64| -> f64 {
            let below = quad(&|s| rho(s) * s * s / r, 0.0, r);
            let above = quad(&|s| rho(s) * s, r, upper);
            below + above
        };
        let oracle = 0.25 * (4.0 * PI).powi(2) * quad(&|r| rho(r) * r * r * inner(r), 1e-12, upper);
        assert!(
            (b - oracle).abs() <= 1e-6 * oracle,
            "Green form {b} vs double integral {oracle}"
        );
    }

    #[test]
    fn far_field_recovers_total_mass() {
        // Compactly supported density: r_max phi(r_max) = |u|_2^2.
        let g = RadialGrid::build(3, 12.0, 1024).unwrap();
        let f = Field::from_fn(g, |r| {
            if r < 3.0 {
                (1.0 - (r / 3.0).powi(2)).powi(2)
            } else {
                0.0
            }
        })
        .unwrap();
        let sol = coulomb_potential(&f).unwrap();
        let m = f.grid().len();
        let far = f.grid().r_max() * sol.potential.values()[m - 1];
        assert!(
            (far - f.mass()).abs() <= 1e-4 * f.mass(),
            "far field {far} vs mass {}",
            f.mass()
        );
    }

    #[test]
    fn energy_scales_linearly_under_dilation() {
        let f = gaussian_field(2048);
        let b1 = hartree_energy(&f).unwrap();
        for &t in &[0.5, 2.0, 4.0] {
            let d = f.dilate(t).unwrap();
            let bt = hartree_energy(&d.field).unwrap();
            assert!(
                (bt - t * b1).abs() <= 1e-6 * (t * b1),
                "t = {t}: B(u^t) = {bt}, t B(u) = {}",
                t * b1
            );
        }
    }

    #[test]
    fn quartic_homogeneity_is_exact() {
        let f = gaussian_field(512);
        let b1 = hartree_energy(&f).unwrap();
        for &theta in &[0.35f64, 2.0, 7.5] {
            let scaled = f.scale(theta.sqrt());
            let bt = hartree_energy(&scaled).unwrap();
            assert!(
                (bt - theta * theta * b1).abs() <= 1e-12 * theta * theta * b1,
                "theta = {theta}"
            );
        }
    }

    #[test]
    fn potential_is_nonnegative_and_decreasing_outside_support() {
        let f = gaussian_field(1024);
        let sol = coulomb_potential(&f).unwrap();
        for &v in sol.potential.values() {
            assert!(v >= -1e-12);
        }
        // Monotone 1/r decay once the density has died off.
        let vals = sol.potential.values();
        let start = 3 * vals.len() / 4;
        for i in start..vals.len() - 1 {
            assert!(vals[i + 1] <= vals[i] * (1.0 + 1e-12));
        }
    }

    #[test]
    fn poisson_residual_is_second_order() {
        let residual = |points: usize| -> f64 {
            let f = gaussian_field(points);
            let sol = coulomb_potential(&f).unwrap();
            let lap = sol.potential.laplacian().unwrap();
            let mut max_res: f64 = 0.0;
            let m = f.grid().len();
            for i in 1..(m - m / 8) {
                let u = f.values()[i];
                let res = lap.values()[i] + 4.0 * PI * u * u;
                max_res = max_res.max(res.abs());
            }
            max_res
        };
        let r1 = residual(1024);
        let r2 = residual(2048);
        let ratio = r1 / r2;
        assert!(r2 <= 5e-3, "residual {r2:.3e}");
        assert!((2.5..6.0).contains(&ratio), "ratio {ratio:.2}");
    }

    #[test]
    fn cumulative_rule_is_fourth_order() {
        let exact = |r: f64| 0.5 * (1.0 - (-r * r).exp());
        let err = |m: usize| -> f64 {
            let h = 4.0 / (m - 1) as f64;
            let f: Vec<f64> = (0..m)
                .map(|i| {
                    let r = i as f64 * h;
                    r * (-r * r).exp()
                })
                .collect();
            let c = cumulative_integral(h, &f);
            c.iter()
                .enumerate()
                .map(|(i, &v)| (v - exact(i as f64 * h)).abs())
                .fold(0.0f64, f64::max)
        };
        let e1 = err(201);
        let e2 = err(401);
        let ratio = e1 / e2;
        assert!((10.0..24.0).contains(&ratio), "expected O(h^4): {ratio:.2}");
    }
}
