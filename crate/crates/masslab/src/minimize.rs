//! Mass-constrained minimization on the sphere S(c) by normalized gradient
//! flow, with Lagrange-multiplier extraction and threshold classification.
//!
//! The flow iterates
//!
//!   u  <-  normalize_c( u - tau P g ),    g = energy gradient at u,
//!
//! where the projection back to S(c) is exact L2 renormalization and P is
//! an H1-type preconditioner (I - Delta)^-1 that removes the grid-scale
//! stiffness of the kinetic term; a backtracking line search keeps the
//! energy monotone. Convergence is declared on the projected-gradient
//! residual |g - lambda u| with lambda = <g, u>/c, which is the discrete
//! Euler-Lagrange equation of the constrained problem.
//!
//! `classify_infimum` combines three certificates: a divergence witness
//! along the explicit families (infimum -infinity), vanishing dilation
//! probes plus the sharp lower bound (infimum zero, not attained), and a
//! converged interior minimizer (attained).

use serde::Serialize;
use std::sync::Arc;

use crate::error::{MasslabError, Result};
use crate::families;
use crate::functionals::{Model, ModelKind};
use crate::grid::{Field, RadialGrid};
use crate::groundstate::GroundState;
use crate::rng::{smooth_samples, SplitMix64};

/// Energy below which the flow is declared divergent.
pub const DIVERGENCE_FLOOR: f64 = -1e6;

/// Flow tuning knobs.
#[derive(Debug, Clone, Serialize)]
pub struct SolverConfig {
    /// Initial flow step.
    pub step: f64,
    pub max_iter: usize,
    /// Projected-gradient threshold scale for convergence.
    pub grad_tol: f64,
    /// Relative energy change regarded as a stall.
    pub energy_tol: f64,
    /// Step shrink factor of the line search, in (0, 1).
    pub backtracking: f64,
    /// Seed for random initial fields.
    pub seed: u64,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            step: 0.5,
            max_iter: 50_000,
            grad_tol: 1e-6,
            energy_tol: 1e-12,
            backtracking: 0.5,
            seed: 2024,
        }
    }
}

impl SolverConfig {
    fn validate(&self) -> Result<()> {
        if !(self.step > 0.0
            && self.grad_tol > 0.0
            && self.energy_tol > 0.0
            && self.backtracking > 0.0
            && self.backtracking < 1.0)
        {
            return Err(MasslabError::Config(
                "solver tolerances must be positive and backtracking in (0, 1)".into(),
            ));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MinimizeStatus {
    Converged,
    Stalled,
    Diverged,
    MaxIter,
}

/// Converged (or terminated) state of one constrained minimization.
#[derive(Debug, Clone)]
pub struct MinimizeReport {
    pub model: Model,
    pub mass: f64,
    pub minimizer: Field,
    /// Realized energy value: an upper representative of the infimum.
    pub energy: f64,
    /// Lagrange multiplier <grad E, u>/c at the final iterate.
    pub lagrange: f64,
    /// Projected-gradient norm sqrt(<rho, P rho>) at the final iterate,
    /// measured in the dual metric of the (I - Delta)^-1 preconditioner.
    /// This is the scale of the energy decrease still available to the
    /// flow; the flat quadrature norm overweights stiff grid-scale modes
    /// whose Hessian grows like 1/h^2.
    pub grad_residual: f64,
    pub iterations: usize,
    pub status: MinimizeStatus,
}

/// Starting point for the flow.
pub enum InitialGuess<'a> {
    Field(&'a Field),
    /// Positive Gaussian bump with a seeded smooth perturbation.
    Random,
}

/// lambda = <E'(u), u> / |u|_2^2, evaluated through the homogeneity of the
/// energy terms: the pairing of the derivative with u itself is exactly
/// 2A + 4B + 2D - int |u|^p, so the multiplier inherits no quadrature or
/// stencil error beyond the energies themselves.
pub fn lagrange_multiplier(model: &Model, field: &Field) -> Result<f64> {
    if field.mass() <= 0.0 {
        return Err(MasslabError::Domain(
            "Lagrange multiplier needs a nonzero field".into(),
        ));
    }
    let e = model.energy(field)?;
    let n = model.dim() as f64;
    let p_int = e.focusing * (2.0 * n + 4.0) / n;
    Ok((2.0 * e.kinetic + 4.0 * e.hartree + 2.0 * e.potential - p_int) / field.mass())
}

fn random_initial(grid: &Arc<RadialGrid>, rng: &mut SplitMix64) -> Result<Field> {
    let width = rng.range(0.8, 1.6);
    let mut bumps = smooth_samples(rng, grid.nodes(), 2.5, 4);
    let sup = bumps.iter().fold(0.0f64, |m, b| m.max(b.abs())).max(1e-12);
    for b in bumps.iter_mut() {
        *b /= sup;
    }
    let values: Vec<f64> = grid
        .nodes()
        .iter()
        .zip(&bumps)
        .map(|(&r, &b)| (-r * r / (2.0 * width * width)).exp() * (1.0 + 0.3 * b))
        .collect();
    Field::new(Arc::clone(grid), values)
}

/// Tridiagonal factors of (I - Delta + diag(extra)) in flux form, with a
/// zero ghost value past r_max. The extra diagonal carries the known
/// nonnegative potential curvature (confining V, Coulomb potential), which
/// otherwise caps the stable step at the inverse potential scale.
struct Preconditioner {
    sub: Vec<f64>,
    diag: Vec<f64>,
    sup: Vec<f64>,
}

impl Preconditioner {
    fn build(grid: &RadialGrid, extra_diag: &[f64]) -> Self {
        let m = grid.len();
        let h = grid.step();
        let mut sub = vec![0.0; m];
        let mut diag = vec![0.0; m];
        let mut sup = vec![0.0; m];
        for i in 0..m {
            if i == 0 {
                let k = 2.0 * grid.dim() as f64 / (h * h);
                diag[0] = 1.0 + k + extra_diag[0];
                sup[0] = -k;
            } else {
                let denom = h * h * grid.cell_volume(i);
                let k_lo = h * grid.face_area(i - 1) / denom;
                let k_hi = h * grid.face_area(i) / denom;
                sub[i] = -k_lo;
                diag[i] = 1.0 + k_lo + k_hi + extra_diag[i];
                if i + 1 < m {
                    sup[i] = -k_hi;
                }
            }
        }
        Self { sub, diag, sup }
    }

    fn solve(&self, rhs: &[f64]) -> Vec<f64> {
        let n = rhs.len();
        let mut c = vec![0.0; n];
        let mut d = vec![0.0; n];
        c[0] = self.sup[0] / self.diag[0];
        d[0] = rhs[0] / self.diag[0];
        for i in 1..n {
            let denom = self.diag[i] - self.sub[i] * c[i - 1];
            c[i] = if i + 1 < n { self.sup[i] / denom } else { 0.0 };
            d[i] = (rhs[i] - self.sub[i] * d[i - 1]) / denom;
        }
        let mut x = vec![0.0; n];
        x[n - 1] = d[n - 1];
        for i in (0..n - 1).rev() {
            x[i] = d[i] - c[i] * x[i + 1];
        }
        x
    }
}

/// Runs the normalized gradient flow for `model` on the sphere of mass `c`.
pub fn minimize_on_sphere(
    model: &Model,
    c: f64,
    init: InitialGuess<'_>,
    grid: &Arc<RadialGrid>,
    cfg: &SolverConfig,
) -> Result<MinimizeReport> {
    cfg.validate()?;
    if !(c.is_finite() && c > 0.0) {
        return Err(MasslabError::Domain(format!(
            "target mass must be positive, got {c}"
        )));
    }
    let mut rng = SplitMix64::new(cfg.seed);
    let start = match init {
        InitialGuess::Field(f) => f.clone(),
        InitialGuess::Random => random_initial(grid, &mut rng)?,
    };
    let mut u = start.rescale_mass(c)?;
    let mut energy = model.energy(&u)?.total;
    let confining: Option<Vec<f64>> = match model.kind() {
        ModelKind::SpConfined => {
            let pot = model
                .potential()
                .expect("confined model carries a potential");
            Some(u.grid().nodes().iter().map(|&r| pot.eval(r)).collect())
        }
        _ => None,
    };
    let mut tau = cfg.step;
    let max_tau = cfg.step * 64.0;
    let mut stall_count = 0usize;
    let mut iterations = 0usize;
    let mut status = MinimizeStatus::MaxIter;
    let mut grad_residual = f64::INFINITY;

    while iterations < cfg.max_iter {
        iterations += 1;
        let g = model.gradient(&u)?;
        // The projection multiplier comes from the quadrature pairing so
        // that the residual is orthogonal to u in the metric of the
        // renormalization; the reported multiplier below uses the exact
        // homogeneity pairing instead.
        let lagrange = u.grid().inner(g.values(), u.values())? / c;
        let projected: Vec<f64> = g
            .values()
            .iter()
            .zip(u.values())
            .map(|(gi, ui)| gi - lagrange * ui)
            .collect();
        // Rebuild the preconditioner around the current iterate: confining
        // potential plus the Coulomb potential for the repulsive kinds.
        let mut extra = vec![0.0; u.grid().len()];
        if let Some(v) = &confining {
            for (e, vi) in extra.iter_mut().zip(v) {
                *e += vi;
            }
        }
        if model.has_hartree() {
            let phi = crate::hartree::coulomb_potential(&u)?.potential;
            for (e, p) in extra.iter_mut().zip(phi.values()) {
                *e += p.max(0.0);
            }
        }
        let precond = Preconditioner::build(u.grid(), &extra);
        let mut direction = precond.solve(&projected);
        let mut slope = u.grid().inner(&projected, &direction)?;
        if !(slope.is_finite() && slope > 0.0) {
            direction = projected.clone();
            slope = u.grid().inner(&projected, &direction)?;
        }
        grad_residual = slope.max(0.0).sqrt();
        if grad_residual <= cfg.grad_tol * (1.0 + lagrange.abs()) * c.sqrt() {
            status = MinimizeStatus::Converged;
            break;
        }

        // Backtracking: keep the energy monotone along the renormalized
        // step.
        let mut accepted = false;
        let mut next_u = u.clone();
        let mut next_e = energy;
        while tau > 1e-13 {
            let trial: Vec<f64> = u
                .values()
                .iter()
                .zip(&direction)
                .map(|(ui, di)| ui - tau * di)
                .collect();
            let trial = Field::new(Arc::clone(u.grid()), trial)?;
            if trial.mass() <= 0.0 {
                tau *= cfg.backtracking;
                continue;
            }
            let candidate = trial.rescale_mass(c)?;
            let e = model.energy(&candidate)?.total;
            if !e.is_finite() {
                return Err(MasslabError::Solver(
                    "energy became non-finite along the flow".into(),
                ));
            }
            if e < energy {
                next_u = candidate;
                next_e = e;
                accepted = true;
                break;
            }
            tau *= cfg.backtracking;
        }

        if !accepted {
            stall_count += 1;
            tau = cfg.step;
        } else {
            // Flow invariants: monotone energy and exact mass projection.
            debug_assert!(next_e <= energy);
            debug_assert!((next_u.mass() - c).abs() <= 1e-10 * c);
            let rel_change = (energy - next_e).abs() / (1.0 + energy.abs());
            if rel_change <= cfg.energy_tol {
                stall_count += 1;
            } else {
                stall_count = 0;
            }
            u = next_u;
            energy = next_e;
            tau = (tau / cfg.backtracking).min(max_tau);
        }

        if energy < DIVERGENCE_FLOOR {
            status = MinimizeStatus::Diverged;
            break;
        }
        if stall_count >= 50 {
            status = MinimizeStatus::Stalled;
            break;
        }
    }

    let lagrange = lagrange_multiplier(model, &u)?;
    Ok(MinimizeReport {
        model: model.clone(),
        mass: c,
        minimizer: u,
        energy,
        lagrange,
        grad_residual,
        iterations,
        status,
    })
}

/// Threshold classification of the constrained infimum.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Classification {
    /// Infimum is zero and no minimizer exists.
    ZeroNotAttained,
    /// A minimizer exists (interior critical point).
    Attained,
    /// The infimum is -infinity, certified by a witness family.
    MinusInfinity,
}

/// Solver configuration for attainment runs at mass ratio c/c*: coercivity
/// degenerates toward the threshold (the dilation direction flattens), so
/// close to it the flow gets more iterations and a wider residual target.
pub fn attainment_config(cfg: &SolverConfig, ratio: f64) -> SolverConfig {
    let mut run_cfg = cfg.clone();
    if ratio > 0.98 {
        run_cfg.max_iter = cfg.max_iter.max(100_000);
        run_cfg.grad_tol = cfg.grad_tol.max(1e-6) * 10.0;
    }
    run_cfg
}

/// Classifies inf E over S(c) for the model, using the ground state both as
/// the witness generator and as the seed for attainment runs.
pub fn classify_infimum(
    model: &Model,
    c: f64,
    gs: &GroundState,
    cfg: &SolverConfig,
) -> Result<Classification> {
    if model.dim() != gs.dim {
        return Err(MasslabError::Model(format!(
            "ground state dimension {} does not match model dimension {}",
            gs.dim,
            model.dim()
        )));
    }
    let ratio = c / gs.cstar;
    let boundary_tol = 1e-9;

    if ratio > 1.0 + boundary_tol {
        // Supercritical: a witness family must certify divergence.
        let witness = match model.kind() {
            ModelKind::SpConfined => families::certify_divergence(
                |rho| {
                    let p = families::cutoff_family(gs, c, rho, 0.0)?;
                    Ok(model.energy(&p.field)?.total)
                },
                14,
            )?,
            _ => families::certify_divergence(
                |t| {
                    let p = families::scaled_q_family(gs, c, t)?;
                    Ok(model.energy(&p.field)?.total)
                },
                14,
            )?,
        };
        if witness.certified {
            return Ok(Classification::MinusInfinity);
        }
        return Err(MasslabError::Diagnostic(format!(
            "supercritical mass {c} but the witness family did not certify divergence \
             (energies {:?})",
            witness.energies
        )));
    }

    let zero_candidate = matches!(model.kind(), ModelKind::Sp)
        || (matches!(model.kind(), ModelKind::Nls) && ratio < 1.0 - boundary_tol);
    if zero_candidate {
        // Dilation probes: E(u^t) must decrease to zero from above.
        let base = gs.profile.rescale_mass(c)?;
        let mut prev = f64::INFINITY;
        let mut last = f64::INFINITY;
        for k in 0..=8 {
            let t = 2.0f64.powi(-k);
            let p = families::dilation_family(&base, c, t)?;
            let e = model.energy(&p.field)?.total;
            if e < -1e-8 * (1.0 + e.abs()) {
                return Err(MasslabError::Diagnostic(format!(
                    "dilation probe went negative (E = {e}) although the sharp bound \
                     forces a nonnegative infimum at mass {c}"
                )));
            }
            if e >= prev {
                return Err(MasslabError::Diagnostic(format!(
                    "dilation probes not decreasing at mass {c} (t = {t})"
                )));
            }
            prev = e;
            last = e;
        }
        let first = model.energy(&base)?.total;
        if last > 1e-2 * first.abs().max(1e-12) {
            return Err(MasslabError::Diagnostic(format!(
                "dilation probes did not approach zero at mass {c}"
            )));
        }
        return Ok(Classification::ZeroNotAttained);
    }

    // Attainment regimes: confined or decaying models up to threshold, and
    // the free Schrodinger energy exactly at threshold.
    let seed = gs.profile.rescale_mass(c)?;
    let run_cfg = attainment_config(cfg, ratio);
    let report = minimize_on_sphere(
        model,
        c,
        InitialGuess::Field(&seed),
        &Arc::clone(gs.profile.grid()),
        &run_cfg,
    )?;
    if report.status == MinimizeStatus::Converged {
        return Ok(Classification::Attained);
    }
    Err(MasslabError::Diagnostic(format!(
        "expected an attained minimizer at mass {c} but the flow ended {:?} \
         with energy {} and residual {:.3e}",
        report.status, report.energy, report.grad_residual
    )))
}
