//! Explicit test-function families on the mass sphere: the witnesses behind
//! every threshold classification.
//!
//! Three parametrized curves of mass-c fields are built from a base profile
//! or the ground state:
//!
//! * `dilation_family`: u^t(x) = t^(N/2) u(t x), which sends the energy to
//!   zero as t -> 0+ and certifies that the infimum is not positive;
//! * `scaled_q_family`: Q^t = t^(N/2) sqrt(c/c*) Q(t x), whose energy
//!   diverges to -infinity for supercritical mass;
//! * `cutoff_family`: a compactly supported copy
//!   A_rho sqrt(c/c*) rho^(N/2) psi(x - x0) Q(rho (x - x0)) admissible for
//!   confined energies, with the normalization A_rho -> 1 as rho grows.
//!
//! Family fields are sampled on dilation-adapted grids (same node count,
//! truncation radius scaled with the parameter) so every member keeps the
//! same relative resolution; energies of extremely compressed or spread
//! members remain trustworthy, which a fixed grid cannot offer.

use crate::error::{MasslabError, Result};
use crate::functionals::{EnergyBreakdown, Model};
use crate::grid::{Field, RadialGrid};
use crate::groundstate::GroundState;

/// Relative mass tolerance every family member must satisfy.
pub const MASS_TOL: f64 = 1e-8;

/// One member of a parametrized family of mass-c fields.
#[derive(Debug, Clone)]
pub struct FamilyPoint {
    pub field: Field,
    /// The family parameter (t, rho, or theta).
    pub parameter: f64,
    /// Mass normalization constant A_rho where applicable, else 1.
    pub normalization: f64,
    pub target_mass: f64,
}

/// Mass-preserving dilation u^t of a mass-c base field, sampled on a grid
/// whose radius scales with 1/t.
pub fn dilation_family(base: &Field, c: f64, t: f64) -> Result<FamilyPoint> {
    if !(t.is_finite() && t > 0.0) {
        return Err(MasslabError::Domain(format!(
            "dilation parameter must be positive, got {t}"
        )));
    }
    if !base.on_sphere(c, MASS_TOL) {
        return Err(MasslabError::Domain(format!(
            "base field has mass {}, expected {c}",
            base.mass()
        )));
    }
    let field = resample_dilated(base, t, 1.0)?;
    let drift = (field.mass() - c).abs() / c;
    if drift > MASS_TOL {
        return Err(MasslabError::Accuracy {
            what: "dilation family mass".into(),
            residual: drift,
            tolerance: MASS_TOL,
        });
    }
    Ok(FamilyPoint {
        field,
        parameter: t,
        normalization: 1.0,
        target_mass: c,
    })
}

/// Q^t = t^(N/2) sqrt(c/c*) Q(t x): mass exactly c for every t.
pub fn scaled_q_family(gs: &GroundState, c: f64, t: f64) -> Result<FamilyPoint> {
    if !(t.is_finite() && t > 0.0 && c > 0.0) {
        return Err(MasslabError::Domain(format!(
            "scaled family needs positive c and t, got c = {c}, t = {t}"
        )));
    }
    let amplitude = (c / gs.cstar).sqrt();
    let field = resample_dilated(&gs.profile, t, amplitude)?;
    let drift = (field.mass() - c).abs() / c;
    if drift > MASS_TOL {
        return Err(MasslabError::Accuracy {
            what: "scaled ground-state family mass".into(),
            residual: drift,
            tolerance: MASS_TOL,
        });
    }
    Ok(FamilyPoint {
        field,
        parameter: t,
        normalization: 1.0,
        target_mass: c,
    })
}

/// Samples amplitude * t^(N/2) u(t r) on a grid of radius r_max / t with
/// the same node count, so the argument never leaves the source domain.
fn resample_dilated(base: &Field, t: f64, amplitude: f64) -> Result<Field> {
    let grid = base.grid();
    let target = RadialGrid::build(grid.dim(), grid.r_max() / t, grid.len())?;
    let scale = amplitude * t.powf(grid.dim() as f64 / 2.0);
    let values: Vec<f64> = target
        .nodes()
        .iter()
        .map(|&r| scale * grid.interpolate(base.values(), t * r).unwrap_or(0.0))
        .collect();
    Field::new(target, values)
}

/// C^1 radial cutoff: identically 1 on [0, 1], identically 0 beyond 2,
/// quintic smoothstep ramp in between; |psi'| <= 15/8.
pub fn cutoff(r: f64) -> f64 {
    if r <= 1.0 {
        1.0
    } else if r >= 2.0 {
        0.0
    } else {
        let s = r - 1.0;
        1.0 - s * s * s * (10.0 - 15.0 * s + 6.0 * s * s)
    }
}

/// Compactly supported concentration family
/// u^rho = A_rho sqrt(c/c*) rho^(N/2) psi(x - x0) Q(rho (x - x0)),
/// admissible for confined energies.
///
/// The returned `normalization` is A_rho, fixed by the mass constraint and
/// tending to 1 as rho grows; the sampled field is renormalized onto the
/// sphere exactly. For x0 away from the origin the field is radial in the
/// shifted variable; see [`offset_potential_term`].
pub fn cutoff_family(gs: &GroundState, c: f64, rho: f64, x0_radius: f64) -> Result<FamilyPoint> {
    if !(rho.is_finite() && rho >= 1.0) {
        return Err(MasslabError::Domain(format!(
            "cutoff family needs rho >= 1, got {rho}"
        )));
    }
    if !(c.is_finite() && c > 0.0) {
        return Err(MasslabError::Domain(format!(
            "cutoff family needs positive mass, got {c}"
        )));
    }
    if !(x0_radius.is_finite() && x0_radius >= 0.0) {
        return Err(MasslabError::Domain(format!(
            "offset radius must be nonnegative, got {x0_radius}"
        )));
    }
    let q_grid = gs.profile.grid();
    let n = gs.dim as f64;

    // A_rho^-2 = (1/c*) int psi^2(s/rho) Q^2(s), evaluated on the ground
    // state's own grid.
    let integrand: Vec<f64> = q_grid
        .nodes()
        .iter()
        .zip(gs.profile.values())
        .map(|(&s, &q)| {
            let psi = cutoff(s / rho);
            psi * psi * q * q
        })
        .collect();
    let a_rho = (gs.cstar / q_grid.integrate(&integrand)?).sqrt();

    // The member lives inside the cutoff support, and for large rho the
    // profile concentrates like 1/rho; the grid radius follows it so the
    // spike stays resolved. Whatever is truncated beyond r_max/rho is
    // exponentially small in rho.
    let r_support = (q_grid.r_max() / rho).min(2.5);
    let target = RadialGrid::build(q_grid.dim(), r_support, q_grid.len())?;
    let scale = a_rho * (c / gs.cstar).sqrt() * rho.powf(n / 2.0);
    let values: Vec<f64> = target
        .nodes()
        .iter()
        .map(|&r| {
            let q = q_grid
                .interpolate(gs.profile.values(), rho * r)
                .unwrap_or(0.0);
            scale * cutoff(r) * q
        })
        .collect();
    let field = Field::new(target, values)?.rescale_mass(c)?;
    Ok(FamilyPoint {
        field,
        parameter: rho,
        normalization: a_rho,
        target_mass: c,
    })
}

/// sqrt(theta) u: multiplies the mass by theta and leaves the shape fixed.
pub fn mass_scale(base: &Field, theta: f64) -> Result<Field> {
    if !(theta.is_finite() && theta > 0.0) {
        return Err(MasslabError::Domain(format!(
            "mass scaling needs theta > 0, got {theta}"
        )));
    }
    Ok(base.scale(theta.sqrt()))
}

/// Energy breakdown of a shifted-center family member: the kinetic,
/// Hartree, and focusing terms are translation invariant and evaluated as
/// usual, while the potential term is approximated along the shifted radial
/// slice V(x0 + r). For x0 = 0 this is exactly the model energy.
pub fn offset_energy(
    model: &Model,
    point: &FamilyPoint,
    x0_radius: f64,
) -> Result<EnergyBreakdown> {
    if x0_radius == 0.0 {
        return model.energy(&point.field);
    }
    let pot = model
        .potential()
        .ok_or_else(|| MasslabError::Model("offset evaluation needs a potential term".into()))?;
    let base = model.energy(&point.field)?;
    let grid = point.field.grid();
    let integrand: Vec<f64> = grid
        .nodes()
        .iter()
        .zip(point.field.values())
        .map(|(&r, &u)| pot.eval(x0_radius + r) * u * u)
        .collect();
    let d_raw = 0.5 * grid.integrate(&integrand)?;
    let signed = match model.kind() {
        crate::functionals::ModelKind::SpConfined => d_raw,
        crate::functionals::ModelKind::NlsDecaying => -model.mu().unwrap() * d_raw,
        _ => 0.0,
    };
    let total = base.kinetic + base.hartree + signed - base.focusing;
    Ok(EnergyBreakdown {
        potential: signed,
        total,
        ..base
    })
}

/// Record of a divergence certification along a doubling parameter ladder.
#[derive(Debug, Clone)]
pub struct DivergenceWitness {
    pub parameters: Vec<f64>,
    pub energies: Vec<f64>,
    /// Parameter at which the certified monotone decrease starts.
    pub start_parameter: f64,
    pub certified: bool,
}

/// Certifies that an energy curve diverges to -infinity along parameter
/// doublings: the energy must decrease strictly across at least five
/// doublings and end below -10^3 (|E_start| + 1).
///
/// The decrease may set in late (the Coulomb term grows linearly in the
/// parameter and dominates small dilations), so the start of the monotone
/// window is located adaptively.
pub fn certify_divergence(
    mut energy_at: impl FnMut(f64) -> Result<f64>,
    max_doublings: usize,
) -> Result<DivergenceWitness> {
    let mut parameters = Vec::new();
    let mut energies = Vec::new();
    let mut window_start = 0usize;
    let mut certified = false;
    for k in 0..=max_doublings {
        let p = 2.0f64.powi(k as i32);
        let e = energy_at(p)?;
        if !e.is_finite() {
            return Err(MasslabError::Solver(format!(
                "witness energy not finite at parameter {p}"
            )));
        }
        parameters.push(p);
        energies.push(e);
        if k > 0 && e >= energies[k - 1] {
            window_start = k;
        }
        let span = k - window_start;
        if span >= 5 && e < -1e3 * (energies[window_start].abs() + 1.0) {
            certified = true;
            break;
        }
    }
    let start_parameter = parameters[window_start];
    Ok(DivergenceWitness {
        parameters,
        energies,
        start_parameter,
        certified,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::functionals::{integral_power, Model, Potential};
    use crate::grid::RadialGrid;

    #[test]
    fn dilation_family_identity_and_mass() {
        let gs = fixtures::ground_state(3);
        let c = gs.cstar;
        let p = dilation_family(&gs.profile, c, 1.0).unwrap();
        assert!((p.field.mass() - c).abs() <= 1e-10 * c);
        // Mass is conserved across the parameter range.
        for &t in &[0.01, 0.25, 4.0, 64.0] {
            let p = dilation_family(&gs.profile, c, t).unwrap();
            assert!(
                (p.field.mass() - c).abs() <= MASS_TOL * c,
                "t = {t}: mass {}",
                p.field.mass()
            );
        }
        // Wrong target mass is rejected.
        assert!(dilation_family(&gs.profile, 2.0 * c, 1.0).is_err());
        assert!(dilation_family(&gs.profile, c, 0.0).is_err());
    }

    #[test]
    fn dilation_family_sends_sp_energy_to_zero() {
        let gs = fixtures::ground_state(3);
        let model = Model::sp();
        let c = 0.5 * gs.cstar;
        let base = gs.profile.rescale_mass(c).unwrap();
        let e1 = model
            .energy(&dilation_family(&base, c, 1.0).unwrap().field)
            .unwrap()
            .total;
        assert!(e1 > 0.0);
        let mut prev = e1;
        for k in 1..=10 {
            let t = 2.0f64.powi(-k);
            let e = model
                .energy(&dilation_family(&base, c, t).unwrap().field)
                .unwrap()
                .total;
            assert!(e > 0.0, "t = {t}: energy {e}");
            assert!(e < prev, "t = {t}: energy did not decrease");
            prev = e;
        }
        // At t = 0.01 the energy sits well inside (0, 2 t E(u)).
        let t = 1e-2;
        let e = model
            .energy(&dilation_family(&base, c, t).unwrap().field)
            .unwrap()
            .total;
        assert!(e > 0.0 && e < 2.0 * t * e1, "E(u^t) = {e}, E(u) = {e1}");
    }

    #[test]
    fn scaled_family_matches_closed_form() {
        // E(Q^t) = t^2 (c/c*) A(Q) [1 - (c/c*)^(2/3)] + t (c/c*)^2 B(Q),
        // checked against the evaluated energies across t and c.
        let gs = fixtures::ground_state(3);
        let model = Model::sp();
        let e_q = model.energy(&gs.profile).unwrap();
        let (a, b) = (e_q.kinetic, e_q.hartree);
        for &ratio in &[0.5f64, 1.0, 1.5] {
            let c = ratio * gs.cstar;
            for &t in &[0.25, 1.0, 4.0, 16.0, 64.0] {
                let point = scaled_q_family(gs, c, t).unwrap();
                let e = model.energy(&point.field).unwrap().total;
                let predicted =
                    t * t * ratio * a * (1.0 - ratio.powf(2.0 / 3.0)) + t * ratio * ratio * b;
                let scale = (t * t * ratio * a).max(t * ratio * ratio * b);
                // Moderate dilations sit well inside the interpolation
                // budget; the widest ones stay within 1e-4.
                let tol = if t <= 4.0 { 1e-5 } else { 1e-4 };
                assert!(
                    (e - predicted).abs() <= tol * scale,
                    "c/c* = {ratio}, t = {t}: E = {e:.8e}, closed form {predicted:.8e}"
                );
            }
        }
    }

    #[test]
    fn scaled_family_is_linear_in_t_at_threshold() {
        let gs = fixtures::ground_state(3);
        let model = Model::sp();
        let b = model.energy(&gs.profile).unwrap().hartree;
        for &t in &[0.5f64, 2.0, 8.0] {
            let point = scaled_q_family(gs, gs.cstar, t).unwrap();
            let e = model.energy(&point.field).unwrap().total;
            assert!(
                (e - t * b).abs() <= 1e-4 * t * b,
                "t = {t}: E = {e}, t B = {}",
                t * b
            );
        }
    }

    #[test]
    fn scaled_family_nonnegative_below_threshold() {
        let gs = fixtures::ground_state(3);
        let model = Model::sp();
        let c = 0.5 * gs.cstar;
        for &t in &[0.25f64, 1.0, 8.0, 64.0] {
            let e = model
                .energy(&scaled_q_family(gs, c, t).unwrap().field)
                .unwrap()
                .total;
            assert!(e >= -1e-8, "t = {t}: E = {e}");
        }
    }

    #[test]
    fn scaled_family_certifies_divergence_above_threshold() {
        let gs = fixtures::ground_state(3);
        let model = Model::sp();
        for &ratio in &[1.1f64, 1.5] {
            let c = ratio * gs.cstar;
            let witness = certify_divergence(
                |t| {
                    let point = scaled_q_family(gs, c, t)?;
                    Ok(model.energy(&point.field)?.total)
                },
                14,
            )
            .unwrap();
            assert!(
                witness.certified,
                "c/c* = {ratio}: witness not certified, energies {:?}",
                witness.energies
            );
        }
    }

    #[test]
    fn divergence_not_certified_at_or_below_threshold() {
        let gs = fixtures::ground_state(3);
        let model = Model::sp();
        for &ratio in &[0.9f64, 1.0] {
            let c = ratio * gs.cstar;
            let witness = certify_divergence(
                |t| {
                    let point = scaled_q_family(gs, c, t)?;
                    Ok(model.energy(&point.field)?.total)
                },
                12,
            )
            .unwrap();
            assert!(!witness.certified, "c/c* = {ratio} wrongly certified");
        }
    }

    #[test]
    fn cutoff_normalization_tends_to_one() {
        let gs = fixtures::ground_state(3);
        let c = 1.2 * gs.cstar;
        let a8 = cutoff_family(gs, c, 8.0, 0.0).unwrap().normalization;
        assert!((a8 - 1.0).abs() <= 1e-4, "A_8 = {a8}");
        // |A_rho^-2 - 1| c decays faster than rho^-4.
        let dev = |rho: f64| {
            let a = cutoff_family(gs, c, rho, 0.0).unwrap().normalization;
            (1.0 / (a * a) - 1.0).abs() * c
        };
        let (d2, d4, d8) = (dev(2.0), dev(4.0), dev(8.0));
        assert!(
            d4 * 4.0f64.powi(4) < d2 * 2.0f64.powi(4),
            "{d2:.3e} {d4:.3e}"
        );
        assert!(
            d8 * 8.0f64.powi(4) < d4 * 4.0f64.powi(4),
            "{d4:.3e} {d8:.3e}"
        );
    }

    #[test]
    fn cutoff_member_mass_is_exact() {
        let gs = fixtures::ground_state(3);
        let c = 1.2 * gs.cstar;
        for &rho in &[1.0f64, 3.0, 16.0] {
            let p = cutoff_family(gs, c, rho, 0.0).unwrap();
            assert!(
                (p.field.mass() - c).abs() <= 1e-10 * c,
                "rho = {rho}: mass {}",
                p.field.mass()
            );
        }
        assert!(cutoff_family(gs, c, 0.5, 0.0).is_err());
    }

    #[test]
    fn cutoff_family_certifies_confined_divergence() {
        let gs = fixtures::ground_state(3);
        let model = Model::sp_confined(Potential::harmonic(1.0).unwrap()).unwrap();
        let c = 1.2 * gs.cstar;
        let witness = certify_divergence(
            |rho| {
                let point = cutoff_family(gs, c, rho, 0.0)?;
                Ok(model.energy(&point.field)?.total)
            },
            14,
        )
        .unwrap();
        assert!(
            witness.certified,
            "confined witness failed: {:?}",
            witness.energies
        );
    }

    #[test]
    fn offset_potential_concentrates_at_the_center() {
        // As rho grows the potential term of the shifted member approaches
        // V(x0) c / 2.
        let gs = fixtures::ground_state(3);
        let model = Model::sp_confined(Potential::harmonic(1.0).unwrap()).unwrap();
        let c = 0.8 * gs.cstar;
        let x0 = 1.3;
        let point = cutoff_family(gs, c, 256.0, x0).unwrap();
        let e = offset_energy(&model, &point, x0).unwrap();
        let expected = model.potential().unwrap().eval(x0) * c / 2.0;
        assert!(
            (e.potential - expected).abs() <= 1e-2 * expected,
            "D = {}, V(x0) c/2 = {}",
            e.potential,
            expected
        );
    }

    #[test]
    fn mass_scaling_identity() {
        let gs = fixtures::ground_state(1);
        let u = &gs.profile;
        let same = mass_scale(u, 1.0).unwrap();
        assert_eq!(same.values(), u.values());
        assert!(mass_scale(u, -1.0).is_err());

        // F_mu(sqrt(theta) u) - theta F_mu(u)
        //   = N/(2N+4) (theta - theta^((N+2)/N)) int |u|^p, exactly.
        let pot = Potential::gaussian_decay(1.0, 1.5).unwrap();
        let model = Model::nls_decaying(1, pot, 2.0).unwrap();
        let p_int = integral_power(u, 6.0).unwrap();
        let f1 = model.energy(u).unwrap().total;
        for &theta in &[1.25f64, 2.0, 3.0] {
            let scaled = mass_scale(u, theta).unwrap();
            assert!((scaled.mass() - theta * u.mass()).abs() <= 1e-12 * scaled.mass());
            let ft = model.energy(&scaled).unwrap().total;
            let lhs = ft - theta * f1;
            let rhs = 1.0 / 6.0 * (theta - theta.powf(3.0)) * p_int;
            assert!(
                (lhs - rhs).abs() <= 1e-10 * rhs.abs(),
                "theta = {theta}: {lhs} vs {rhs}"
            );
            assert!(lhs < 0.0, "theta = {theta}: difference not negative");
        }
    }

    #[test]
    fn adapted_grids_share_node_count() {
        let gs = fixtures::ground_state(3);
        let p = scaled_q_family(gs, gs.cstar, 32.0).unwrap();
        assert_eq!(p.field.grid().len(), gs.profile.grid().len());
        assert!((p.field.grid().r_max() - 0.5).abs() <= 1e-12);
        let _ = RadialGrid::build(3, 16.0, 2048).unwrap();
    }
}
