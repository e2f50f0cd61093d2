//! The critical ground state Q, the threshold mass c* = |Q|_2^2, and the
//! integral identities the rest of the crate leans on.
//!
//! Q is the unique positive radial decreasing solution of
//!
//!   Q'' + (N-1)/r Q' - Q + Q^(1+4/N) = 0,   Q'(0) = 0,  Q -> 0,
//!
//! computed two independent ways:
//!
//! * **Shooting**: classical fourth-order integration in Q(0) with
//!   bisection on the decay/blow-up dichotomy, followed by an asymptotic
//!   tail graft C r^(-(N-1)/2) e^(-r) (...) where the shot is contaminated
//!   by the growing mode. Node-aligned steps keep the profile at
//!   quadrature accuracy on the whole grid.
//! * **Normalized flow**: a semi-implicit gradient flow of the action
//!   with a renormalization after every step that pins the Rayleigh-type
//!   ratio <(-Delta+1)u, u> / <u^(1+4/N), u> to one, run on the flux-form
//!   operator. Its threshold mass is Richardson-extrapolated over two
//!   resolutions.
//!
//! A solved state certifies the equal-integral identities
//!
//!   int |Q|^((2N+4)/N) = (N+2)/N int |grad Q|^2 = (N+2)/2 int Q^2,
//!
//! the action value J(Q) = c*/2, the sharp interpolation gap, and the
//! exponential decay rate of the tail.

use std::sync::Arc;

use crate::error::{MasslabError, Result};
use crate::functionals::{gn_gap, integral_power, kinetic_energy};
use crate::grid::{Field, RadialGrid};

/// Tuning for the shooting solver and its grid.
#[derive(Debug, Clone)]
pub struct GroundStateConfig {
    pub points: usize,
    pub r_max: f64,
    /// Upper bound on the integrator substep; steps are node-aligned.
    pub ode_step: f64,
    /// Initial scan interval for Q(0).
    pub bracket: (f64, f64),
    /// Bisection stops when the bracket is narrower than this.
    pub bracket_tol: f64,
    /// Number of scan samples used to locate the initial bracket.
    pub scan_points: usize,
    /// Tail-graft fit window: nodes with Q in [fit_lower, fit_upper].
    pub fit_lower: f64,
    pub fit_upper: f64,
}

impl GroundStateConfig {
    /// Resolution defaults: 4096 nodes on [0, 20] for N = 1, 2048 nodes on
    /// [0, 16] for N = 2, 3.
    pub fn for_dim(dim: usize) -> Self {
        let (points, r_max) = if dim == 1 { (4096, 20.0) } else { (2048, 16.0) };
        Self {
            points,
            r_max,
            ode_step: 1e-3,
            bracket: (0.1, 10.0),
            bracket_tol: 1e-14,
            scan_points: 64,
            fit_lower: 3e-5,
            fit_upper: 3e-4,
        }
    }

    pub fn with_resolution(mut self, points: usize, r_max: f64) -> Self {
        self.points = points;
        self.r_max = r_max;
        self
    }
}

/// Ground-state profile with its certification numbers.
#[derive(Debug, Clone)]
pub struct GroundState {
    pub dim: usize,
    /// Q sampled on the solver grid; positive and decreasing.
    pub profile: Field,
    /// Threshold mass c* = |Q|_2^2.
    pub cstar: f64,
    /// Pairwise relative residuals of the three equal integrals.
    pub identity_residuals: [f64; 3],
    /// Action J(Q) = (1/2) int (|grad Q|^2 + Q^2) - N/(2N+4) int |Q|^p.
    pub action: f64,
    /// |slope + 1| of ln(Q r^((N-1)/2)) fitted over the tail window.
    pub decay_slope_error: f64,
}

impl GroundState {
    /// Certification numbers for a purported ground-state profile.
    pub fn from_profile(field: Field) -> Result<GroundState> {
        let dim = field.dim();
        let n = dim as f64;
        let p = (2.0 * n + 4.0) / n;
        let cstar = field.mass();
        if cstar <= 0.0 {
            return Err(MasslabError::Domain(
                "ground-state profile must have positive mass".into(),
            ));
        }
        let p_int = integral_power(&field, p)?;
        let grad_sq = 2.0 * kinetic_energy(&field)?;
        let lhs_grad = (n + 2.0) / n * grad_sq;
        let lhs_mass = (n + 2.0) / 2.0 * cstar;
        let identity_residuals = [
            (p_int - lhs_grad).abs() / p_int,
            (p_int - lhs_mass).abs() / p_int,
            (lhs_grad - lhs_mass).abs() / lhs_grad,
        ];
        let action = 0.5 * (grad_sq + cstar) - n / (2.0 * n + 4.0) * p_int;
        let decay_slope_error = tail_slope_error(&field);
        Ok(GroundState {
            dim,
            profile: field,
            cstar,
            identity_residuals,
            action,
            decay_slope_error,
        })
    }

    pub fn max_identity_residual(&self) -> f64 {
        self.identity_residuals.iter().copied().fold(0.0, f64::max)
    }
}

/// Action J(Q); equals c*/2 at a genuine ground state.
pub fn action(gs: &GroundState) -> f64 {
    gs.action
}

/// Sharp-constant certification: the interpolation gap of Q against its own
/// threshold mass, which must vanish to quadrature accuracy.
pub fn certify_gn(gs: &GroundState) -> Result<f64> {
    gn_gap(&gs.profile, gs.cstar)
}

/// |fitted slope + 1| of ln(Q r^((N-1)/2)) over [r_max/2, 3 r_max/4].
fn tail_slope_error(field: &Field) -> f64 {
    let grid = field.grid();
    let n = field.dim() as f64;
    let lo = 0.5 * grid.r_max();
    let hi = 0.75 * grid.r_max();
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    for (&r, &q) in grid.nodes().iter().zip(field.values()) {
        if r >= lo && r <= hi && q > 0.0 {
            xs.push(r);
            ys.push(q.ln() + (n - 1.0) / 2.0 * r.ln());
        }
    }
    if xs.len() < 8 {
        return f64::INFINITY;
    }
    let m = xs.len() as f64;
    let mean_x: f64 = xs.iter().sum::<f64>() / m;
    let mean_y: f64 = ys.iter().sum::<f64>() / m;
    let mut sxx = 0.0;
    let mut sxy = 0.0;
    for (x, y) in xs.iter().zip(&ys) {
        sxx += (x - mean_x) * (x - mean_x);
        sxy += (x - mean_x) * (y - mean_y);
    }
    (sxy / sxx + 1.0).abs()
}

/// Decaying solution of the linearized tail equation q'' + (N-1)/r q' = q,
/// up to a constant: e^-r, K_0-asymptotics, e^-r / r.
fn tail_profile(dim: usize, r: f64) -> f64 {
    match dim {
        1 => (-r).exp(),
        2 => {
            let inv = 1.0 / r;
            let series = 1.0
                + inv
                    * (-0.125
                        + inv * (9.0 / 128.0 + inv * (-75.0 / 1024.0 + inv * 11025.0 / 98304.0)));
            (-r).exp() / r.sqrt() * series
        }
        3 => (-r).exp() / r,
        _ => unreachable!(),
    }
}

fn nonlinear(dim: usize, q: f64) -> f64 {
    match dim {
        1 => q * q * q * q * q,
        2 => q * q * q,
        3 => q.abs().powf(4.0 / 3.0) * q,
        _ => unreachable!(),
    }
}

/// Radial acceleration q'' = -(N-1)/r q' + q - |q|^(4/N) q with the even
/// limit at the origin.
fn acceleration(dim: usize, r: f64, q: f64, dq: f64) -> f64 {
    let force = q - nonlinear(dim, q);
    if r == 0.0 {
        force / dim as f64
    } else {
        -((dim - 1) as f64) / r * dq + force
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
enum Shot {
    /// Q crossed zero: Q(0) too large.
    Crossed,
    /// Q turned upward while positive: Q(0) too small.
    TurnedUp,
    /// Q was still decaying at r_max.
    Decayed,
}

/// Integrates one shot with node-aligned fourth-order steps, recording the
/// profile until the first event.
fn shoot(dim: usize, amplitude: f64, grid: &RadialGrid, ode_step: f64) -> (Shot, Vec<f64>) {
    let h = grid.step();
    let n_sub = (h / ode_step).ceil().max(1.0) as usize;
    let dt = h / n_sub as f64;
    let m = grid.len();
    let mut samples = vec![0.0; m];
    samples[0] = amplitude;
    let mut q = amplitude;
    let mut dq = 0.0;
    let mut r = 0.0;
    for node in 1..m {
        for _ in 0..n_sub {
            let k1q = dq;
            let k1p = acceleration(dim, r, q, dq);
            let k2q = dq + 0.5 * dt * k1p;
            let k2p = acceleration(dim, r + 0.5 * dt, q + 0.5 * dt * k1q, dq + 0.5 * dt * k1p);
            let k3q = dq + 0.5 * dt * k2p;
            let k3p = acceleration(dim, r + 0.5 * dt, q + 0.5 * dt * k2q, dq + 0.5 * dt * k2p);
            let k4q = dq + dt * k3p;
            let k4p = acceleration(dim, r + dt, q + dt * k3q, dq + dt * k3p);
            q += dt / 6.0 * (k1q + 2.0 * k2q + 2.0 * k3q + k4q);
            dq += dt / 6.0 * (k1p + 2.0 * k2p + 2.0 * k3p + k4p);
            r += dt;
            if q < 0.0 {
                return (Shot::Crossed, samples);
            }
            if dq > 0.0 || q > 2.0 * amplitude {
                return (Shot::TurnedUp, samples);
            }
        }
        samples[node] = q;
    }
    (Shot::Decayed, samples)
}

/// Computes Q by bisection shooting on Q(0), grafting the asymptotic tail
/// where the shot loses accuracy to the growing mode.
pub fn solve_ground_state(dim: usize, cfg: &GroundStateConfig) -> Result<GroundState> {
    let grid = RadialGrid::build(dim, cfg.r_max, cfg.points)?;
    let classify = |a: f64| shoot(dim, a, &grid, cfg.ode_step).0;

    // Scan for a sign change of the dichotomy.
    let (a_lo, a_hi) = cfg.bracket;
    if !(a_lo > 0.0 && a_hi > a_lo) {
        return Err(MasslabError::Config(format!(
            "invalid shooting bracket ({a_lo}, {a_hi})"
        )));
    }
    let ratio = (a_hi / a_lo).powf(1.0 / (cfg.scan_points - 1) as f64);
    let mut bracket: Option<(f64, f64)> = None;
    let mut prev_a = a_lo;
    let mut prev_shot = classify(a_lo);
    for k in 1..cfg.scan_points {
        let a = a_lo * ratio.powi(k as i32);
        let shot = classify(a);
        let low_like = |s: Shot| s != Shot::Crossed;
        if low_like(prev_shot) && shot == Shot::Crossed {
            bracket = Some((prev_a, a));
            break;
        }
        prev_a = a;
        prev_shot = shot;
    }
    let (mut lo, mut hi) = bracket.ok_or_else(|| {
        MasslabError::Solver(format!(
            "no decay/blow-up transition of Q(0) found in [{a_lo}, {a_hi}]"
        ))
    })?;

    for _ in 0..200 {
        if hi - lo <= cfg.bracket_tol * hi.max(1.0) {
            break;
        }
        let mid = 0.5 * (lo + hi);
        match classify(mid) {
            Shot::Crossed => hi = mid,
            _ => lo = mid,
        }
    }
    let amplitude = 0.5 * (lo + hi);
    let (_, mut samples) = shoot(dim, amplitude, &grid, cfg.ode_step);

    graft_tail(dim, &grid, &mut samples, cfg.fit_lower, cfg.fit_upper);

    let field = Field::new(Arc::clone(&grid), samples)?;
    let gs = GroundState::from_profile(field)?;
    let residual = gs.max_identity_residual();
    if residual > 1e-4 {
        return Err(MasslabError::Accuracy {
            what: format!("ground-state identities (N = {dim})"),
            residual,
            tolerance: 1e-4,
        });
    }
    Ok(gs)
}

/// Replaces the profile beyond the fit window by C * tail_profile, with C
/// fitted where the shot is still clean but the nonlinearity is already
/// negligible.
fn graft_tail(dim: usize, grid: &RadialGrid, samples: &mut [f64], lower: f64, upper: f64) {
    let nodes = grid.nodes();
    let mut log_offsets = Vec::new();
    let mut last_fit = None;
    for (i, (&r, &q)) in nodes.iter().zip(samples.iter()).enumerate() {
        if r > 1.0 && q > 0.0 && q >= lower && q <= upper {
            log_offsets.push(q.ln() - tail_profile(dim, r).ln());
            last_fit = Some(i);
        }
        if q > 0.0 && q < lower {
            break;
        }
    }
    let (Some(last_fit), false) = (last_fit, log_offsets.len() < 4) else {
        return;
    };
    let c = (log_offsets.iter().sum::<f64>() / log_offsets.len() as f64).exp();
    for i in (last_fit + 1)..samples.len() {
        samples[i] = c * tail_profile(dim, nodes[i]);
    }
}

/// Outcome of the shooting/flow comparison.
#[derive(Debug, Clone, Copy)]
pub struct CrossCheck {
    pub shooting_cstar: f64,
    /// Richardson-extrapolated threshold mass from the flow solver.
    pub flow_cstar: f64,
    pub relative_gap: f64,
    /// Sup distance between the two profiles on the finer flow grid.
    pub profile_sup_distance: f64,
}

/// Semi-implicit normalized flow for Q on the flux-form operator.
///
/// Each step solves (I + tau (I - Delta)) v = u + tau u^(1+4/N) and then
/// rescales v so that <(I - Delta) v, v> = <v^(1+4/N), v> under the
/// cell-volume inner product; the fixed point solves the ground-state
/// equation exactly on the grid.
pub fn flow_ground_state(dim: usize, r_max: f64, points: usize) -> Result<Field> {
    let grid = RadialGrid::build(dim, r_max, points)?;
    let m = grid.len();
    let h = grid.step();
    let q_exp = 1.0 + 4.0 / dim as f64;
    let tau = 1.0;
    let omega = crate::grid::angular_factor(dim);
    let volumes: Vec<f64> = (0..m).map(|i| omega * grid.cell_volume(i)).collect();

    // Tridiagonal factors of I + tau (I - Delta) in flux form.
    let mut sub = vec![0.0; m];
    let mut diag = vec![0.0; m];
    let mut sup = vec![0.0; m];
    for i in 0..m {
        if i == 0 {
            let k = 2.0 * dim as f64 / (h * h);
            diag[0] = 1.0 + tau * (1.0 + k);
            sup[0] = -tau * k;
        } else {
            let denom = h * h * grid.cell_volume(i);
            let k_lo = h * grid.face_area(i - 1) / denom;
            let k_hi = h * grid.face_area(i) / denom;
            sub[i] = -tau * k_lo;
            diag[i] = 1.0 + tau * (1.0 + k_lo + k_hi);
            if i + 1 < m {
                sup[i] = -tau * k_hi;
            }
        }
    }

    let vdot = |a: &[f64], b: &[f64]| -> f64 {
        volumes
            .iter()
            .zip(a.iter().zip(b))
            .map(|(v, (x, y))| v * x * y)
            .sum()
    };

    let mut u: Vec<f64> = grid.nodes().iter().map(|&r| 2.0 * (-r * r).exp()).collect();
    let mut residual = f64::INFINITY;
    for _ in 0..10_000 {
        let f: Vec<f64> = u.iter().map(|&q| q.abs().powf(q_exp - 1.0) * q).collect();
        let rhs: Vec<f64> = u.iter().zip(&f).map(|(q, fq)| q + tau * fq).collect();
        let mut v = thomas_solve(&sub, &diag, &sup, &rhs);
        // Renormalize: <Lv, v> = <v^q, v> with L = I - Delta.
        let lap = grid.flux_laplacian(&v)?;
        let lv: Vec<f64> = v.iter().zip(&lap).map(|(x, l)| x - l).collect();
        let fv: Vec<f64> = v.iter().map(|&q| q.abs().powf(q_exp - 1.0) * q).collect();
        let num = vdot(&lv, &v);
        let den = vdot(&fv, &v);
        if !(num > 0.0 && den > 0.0) {
            return Err(MasslabError::Solver(
                "normalized flow lost positivity".into(),
            ));
        }
        let theta = (num / den).powf(1.0 / (q_exp - 1.0));
        for x in v.iter_mut() {
            *x *= theta;
        }
        // Residual of the ground-state equation in the volume norm.
        let lap_v = grid.flux_laplacian(&v)?;
        let mut res2 = 0.0;
        let mut norm2 = 0.0;
        for i in 0..m {
            let r = -lap_v[i] + v[i] - v[i].abs().powf(q_exp - 1.0) * v[i];
            res2 += volumes[i] * r * r;
            norm2 += volumes[i] * v[i] * v[i];
        }
        residual = (res2 / norm2).sqrt();
        u = v;
        if residual <= 1e-12 {
            break;
        }
    }
    if residual > 1e-9 {
        return Err(MasslabError::Solver(format!(
            "normalized flow stalled at residual {residual:.3e}"
        )));
    }
    Field::new(grid, u)
}

/// Wrapper comparing the shooting state with the flow solver, with the flow
/// threshold mass Richardson-extrapolated over (points, 2 points - 1).
pub fn cross_check(gs: &GroundState, cfg: &GroundStateConfig) -> Result<CrossCheck> {
    let coarse = flow_ground_state(gs.dim, cfg.r_max, cfg.points)?;
    let fine = flow_ground_state(gs.dim, cfg.r_max, 2 * cfg.points - 1)?;
    let flow_cstar = (4.0 * fine.mass() - coarse.mass()) / 3.0;
    let relative_gap = (flow_cstar - gs.cstar).abs() / gs.cstar;
    let mut sup = 0.0f64;
    for (&r, &v) in fine.grid().nodes().iter().zip(fine.values()) {
        let w = gs
            .profile
            .grid()
            .interpolate(gs.profile.values(), r)
            .unwrap_or(0.0);
        sup = sup.max((v - w).abs());
    }
    Ok(CrossCheck {
        shooting_cstar: gs.cstar,
        flow_cstar,
        relative_gap,
        profile_sup_distance: sup,
    })
}

/// Tridiagonal solve (Thomas algorithm).
fn thomas_solve(sub: &[f64], diag: &[f64], sup: &[f64], rhs: &[f64]) -> Vec<f64> {
    let m = rhs.len();
    let mut c = vec![0.0; m];
    let mut d = vec![0.0; m];
    c[0] = sup[0] / diag[0];
    d[0] = rhs[0] / diag[0];
    for i in 1..m {
        let denom = diag[i] - sub[i] * c[i - 1];
        c[i] = if i + 1 < m { sup[i] / denom } else { 0.0 };
        d[i] = (rhs[i] - sub[i] * d[i - 1]) / denom;
    }
    let mut x = vec![0.0; m];
    x[m - 1] = d[m - 1];
    for i in (0..m - 1).rev() {
        x[i] = d[i] - c[i] * x[i + 1];
    }
    x
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use std::f64::consts::PI;

    #[test]
    fn line_ground_state_matches_closed_form() {
        let gs = fixtures::ground_state(1);
        let exact_cstar = 3.0f64.sqrt() * PI / 2.0;
        assert!(
            (gs.cstar - exact_cstar).abs() <= 1e-8 * exact_cstar,
            "c* = {} vs {}",
            gs.cstar,
            exact_cstar
        );
        let mut max_err: f64 = 0.0;
        for (&x, &q) in gs.profile.grid().nodes().iter().zip(gs.profile.values()) {
            let exact = 3.0f64.powf(0.25) / (2.0 * x).cosh().sqrt();
            max_err = max_err.max((q - exact).abs());
        }
        assert!(max_err <= 1e-6, "pointwise error {max_err:.3e}");
    }

    #[test]
    fn identities_hold_in_all_dimensions() {
        for dim in 1..=3 {
            let gs = fixtures::ground_state(dim);
            let res = gs.max_identity_residual();
            assert!(res <= 1e-6, "N = {dim}: identity residual {res:.3e}");
            let action_ratio = gs.action / (gs.cstar / 2.0);
            assert!(
                (action_ratio - 1.0).abs() <= 1e-6,
                "N = {dim}: J(Q)/(c*/2) = {action_ratio}"
            );
        }
    }

    #[test]
    fn line_action_matches_closed_form() {
        let gs = fixtures::ground_state(1);
        let exact = 3.0f64.sqrt() * PI / 4.0;
        assert!((action(gs) - exact).abs() <= 1e-6 * exact);
    }

    #[test]
    fn action_identity_fails_off_solution() {
        // J is not homogeneous: doubling Q breaks J = mass/2.
        let gs = fixtures::ground_state(1);
        let doubled = GroundState::from_profile(gs.profile.scale(2.0)).unwrap();
        assert!((doubled.action - doubled.cstar / 2.0).abs() > 0.1 * doubled.cstar);
    }

    #[test]
    fn townes_mass_matches_literature_value() {
        let gs = fixtures::ground_state(2);
        assert!(
            (gs.cstar - 11.700_99).abs() <= 1e-3 * 11.7,
            "planar threshold mass {}",
            gs.cstar
        );
    }

    #[test]
    fn sharp_gap_certified_in_all_dimensions() {
        for dim in 1..=3 {
            let gs = fixtures::ground_state(dim);
            let gap = certify_gn(gs).unwrap();
            let p = (2.0 * dim as f64 + 4.0) / dim as f64;
            let p_int = integral_power(&gs.profile, p).unwrap();
            assert!(
                gap.abs() <= 1e-5 * p_int,
                "N = {dim}: gap {gap:.3e} vs scale {p_int:.3e}"
            );
        }
    }

    #[test]
    fn tail_decay_rate_certified() {
        for dim in 1..=3 {
            let gs = fixtures::ground_state(dim);
            assert!(
                gs.decay_slope_error <= 0.02,
                "N = {dim}: slope error {:.3e}",
                gs.decay_slope_error
            );
        }
    }

    #[test]
    fn profile_is_positive_and_decreasing() {
        for dim in 1..=3 {
            let gs = fixtures::ground_state(dim);
            let v = gs.profile.values();
            assert!(v.iter().all(|&q| q > 0.0), "N = {dim}");
            for w in v.windows(2) {
                assert!(w[1] < w[0] * (1.0 + 1e-12), "N = {dim}: not decreasing");
            }
        }
    }

    #[test]
    fn scaling_identity_at_ground_state() {
        // (N-2)/2 int |grad Q|^2 - N^2/(2N+4) int |Q|^p = -(N/2) c* at
        // lambda = -1.
        for dim in 1..=3 {
            let gs = fixtures::ground_state(dim);
            let model = crate::functionals::Model::nls(dim).unwrap();
            let p = (2.0 * dim as f64 + 4.0) / dim as f64;
            let p_int = integral_power(&gs.profile, p).unwrap();
            let res = model.pohozaev_residual(&gs.profile, -1.0).unwrap();
            assert!(
                res.abs() <= 1e-5 * p_int,
                "N = {dim}: residual {res:.3e} vs {p_int:.3e}"
            );
        }
    }

    #[test]
    fn cross_solver_agreement_planar_and_spatial() {
        for dim in 2..=3 {
            let gs = fixtures::ground_state(dim);
            let check = cross_check(gs, &GroundStateConfig::for_dim(dim)).unwrap();
            assert!(
                check.relative_gap <= 5e-5,
                "N = {dim}: flow c* {} vs shooting {} (gap {:.3e})",
                check.flow_cstar,
                check.shooting_cstar,
                check.relative_gap
            );
            assert!(
                check.profile_sup_distance <= 1e-4,
                "N = {dim}: profile distance {:.3e}",
                check.profile_sup_distance
            );
        }
    }

    #[test]
    fn threshold_mass_is_stable_under_truncation_radius() {
        let gs16 = fixtures::ground_state(3);
        let cfg12 = GroundStateConfig::for_dim(3).with_resolution(2048, 12.0);
        let gs12 = solve_ground_state(3, &cfg12).unwrap();
        assert!(
            (gs12.cstar - gs16.cstar).abs() <= 1e-6 * gs16.cstar,
            "c* moved from {} to {} between r_max 16 and 12",
            gs16.cstar,
            gs12.cstar
        );
    }

    #[test]
    fn coarse_grid_raises_accuracy_error() {
        let cfg = GroundStateConfig::for_dim(3).with_resolution(48, 16.0);
        match solve_ground_state(3, &cfg) {
            Err(MasslabError::Accuracy { .. }) => {}
            other => panic!("expected accuracy error, got {other:?}"),
        }
    }

    #[test]
    fn missing_bracket_raises_solver_error() {
        let mut cfg = GroundStateConfig::for_dim(1);
        cfg.bracket = (5.0, 9.0);
        cfg.scan_points = 16;
        match solve_ground_state(1, &cfg) {
            Err(MasslabError::Solver(_)) => {}
            other => panic!("expected solver error, got {other:?}"),
        }
    }
}
