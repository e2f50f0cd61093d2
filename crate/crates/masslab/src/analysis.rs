//! Curve-level certifications: threshold maps over mass grids, mass-ratio
//! monotonicity, continuity probes, strict subadditivity, and coercivity.
//!
//! Every reported inequality carries a margin requirement tied to the
//! solver tolerances, because the energies are computed infima: a strict
//! inequality is only certified when it exceeds the optimization slack.
//! Continuity is probed through decreasing difference sequences and
//! reported as "consistent with continuity", never proven.

use serde::Serialize;
use std::sync::Arc;

use crate::eigen::EigenResult;
use crate::error::{MasslabError, Result};
use crate::families;
use crate::functionals::{Model, ModelKind};
use crate::grid::Field;
use crate::groundstate::GroundState;
use crate::minimize::{
    classify_infimum, minimize_on_sphere, Classification, InitialGuess, MinimizeStatus,
    SolverConfig,
};

/// Energy reproducibility scale of one converged solve, used to size
/// strictness margins.
fn solve_tolerance(energy: f64) -> f64 {
    (1e-7 * energy.abs()).max(1e-9)
}

/// One mass point of a scan.
#[derive(Debug, Clone, Serialize)]
pub struct ScanEntry {
    pub mass: f64,
    pub classification: Classification,
    /// Realized infimum: 0 for the zero class, the converged energy when
    /// attained, absent when the infimum is -infinity.
    pub energy: Option<f64>,
    pub lagrange: Option<f64>,
    pub iterations: usize,
    /// Witness trace in words.
    pub note: String,
}

/// Classification and energy of the constrained infimum across a mass grid.
#[derive(Debug, Clone, Serialize)]
pub struct ScanResult {
    pub model: Model,
    pub entries: Vec<ScanEntry>,
    pub config: SolverConfig,
    /// Discretization the solves ran on.
    pub grid: String,
}

fn scan_one(model: &Model, c: f64, gs: &GroundState, cfg: &SolverConfig) -> Result<ScanEntry> {
    let classification = classify_infimum(model, c, gs, cfg)?;
    let entry = match classification {
        Classification::MinusInfinity => ScanEntry {
            mass: c,
            classification,
            energy: None,
            lagrange: None,
            iterations: 0,
            note: "energy diverges along the witness family; no finite infimum".into(),
        },
        Classification::ZeroNotAttained => ScanEntry {
            mass: c,
            classification,
            energy: Some(0.0),
            lagrange: None,
            iterations: 0,
            note: "infimum zero by dilation probes and the sharp lower bound; \
                   flows admit no interior critical point here (weak evidence only)"
                .into(),
        },
        Classification::Attained => {
            let seed = gs.profile.rescale_mass(c)?;
            let run_cfg = crate::minimize::attainment_config(cfg, c / gs.cstar);
            let report = minimize_on_sphere(
                model,
                c,
                InitialGuess::Field(&seed),
                &Arc::clone(gs.profile.grid()),
                &run_cfg,
            )?;
            if report.status != MinimizeStatus::Converged {
                return Err(MasslabError::Diagnostic(format!(
                    "classification said attained at mass {c} but the flow ended {:?}",
                    report.status
                )));
            }
            ScanEntry {
                mass: c,
                classification,
                energy: Some(report.energy),
                lagrange: Some(report.lagrange),
                iterations: report.iterations,
                note: "interior minimizer reached by normalized flow".into(),
            }
        }
    };
    Ok(entry)
}

/// Classifies and evaluates the infimum at every mass of `c_grid`.
/// Entries are independent and solved on a scoped thread pool; the result
/// order follows the input order, so reports are deterministic.
pub fn scan(
    model: &Model,
    c_grid: &[f64],
    gs: &GroundState,
    cfg: &SolverConfig,
) -> Result<ScanResult> {
    if c_grid.is_empty() {
        return Err(MasslabError::Config("empty mass grid".into()));
    }
    if c_grid.iter().any(|&c| !(c.is_finite() && c > 0.0)) {
        return Err(MasslabError::Config("masses must be positive".into()));
    }
    if c_grid.windows(2).any(|w| w[1] <= w[0]) {
        return Err(MasslabError::Config(
            "mass grid must be strictly increasing".into(),
        ));
    }
    let entries: Vec<Result<ScanEntry>> = std::thread::scope(|scope| {
        let handles: Vec<_> = c_grid
            .iter()
            .map(|&c| scope.spawn(move || scan_one(model, c, gs, cfg)))
            .collect();
        handles
            .into_iter()
            .map(|h| h.join().expect("scan worker panicked"))
            .collect()
    });
    let entries: Vec<ScanEntry> = entries.into_iter().collect::<Result<_>>()?;

    // Threshold structure: nothing finite may sit above a divergent mass.
    let mut seen_divergent = false;
    for e in &entries {
        if seen_divergent && e.classification != Classification::MinusInfinity {
            return Err(MasslabError::Diagnostic(format!(
                "classification not monotone in mass: finite entry at {} above a \
                 divergent one",
                e.mass
            )));
        }
        if e.classification == Classification::MinusInfinity {
            seen_divergent = true;
        }
    }
    let g = gs.profile.grid();
    Ok(ScanResult {
        model: model.clone(),
        entries,
        config: cfg.clone(),
        grid: format!(
            "N={} uniform, {} nodes on [0, {}]",
            g.dim(),
            g.len(),
            g.r_max()
        ),
    })
}

/// Mass-ratio monotonicity certificate: I_c / c^2 strictly decreasing over
/// the attained entries of a confined scan.
#[derive(Debug, Clone, Serialize)]
pub struct MonotonicityReport {
    pub masses: Vec<f64>,
    pub ratios: Vec<f64>,
    /// Smallest decrement between consecutive ratios.
    pub min_margin: f64,
    /// Margin the certificate required.
    pub required_margin: f64,
    pub passed: bool,
}

/// Checks I_c/c^2 strict decrease on the attained entries at or below the
/// threshold mass.
pub fn monotonicity_check(scan: &ScanResult, cstar: f64) -> Result<MonotonicityReport> {
    let mut masses = Vec::new();
    let mut ratios = Vec::new();
    for e in &scan.entries {
        if e.classification == Classification::Attained && e.mass <= cstar * (1.0 + 1e-12) {
            let energy = e.energy.expect("attained entries carry an energy");
            masses.push(e.mass);
            ratios.push(energy / (e.mass * e.mass));
        }
    }
    if masses.len() < 4 {
        return Err(MasslabError::Config(format!(
            "monotonicity check needs at least 4 attained masses, got {}",
            masses.len()
        )));
    }
    if masses.windows(2).any(|w| w[1] <= w[0]) {
        return Err(MasslabError::Config(
            "duplicate or unsorted masses in monotonicity check".into(),
        ));
    }
    let mut min_margin = f64::INFINITY;
    let mut required_margin: f64 = 0.0;
    for (k, w) in ratios.windows(2).enumerate() {
        min_margin = min_margin.min(w[0] - w[1]);
        let tol = solve_tolerance(w[0] * masses[k] * masses[k])
            / (masses[k] * masses[k]).min(masses[k + 1] * masses[k + 1]);
        required_margin = required_margin.max(tol);
    }
    Ok(MonotonicityReport {
        masses,
        ratios,
        min_margin,
        required_margin,
        passed: min_margin > required_margin,
    })
}

/// Decreasing-difference continuity probe around one mass.
#[derive(Debug, Clone, Serialize)]
pub struct ContinuityReport {
    pub mass: f64,
    pub energy: f64,
    pub deltas: Vec<f64>,
    pub differences: Vec<f64>,
    pub decreasing: bool,
    /// Smallest difference against its acceptance level.
    pub smallest: f64,
    pub smallest_allowed: f64,
    pub passed: bool,
}

/// Probes |I_{c+delta} - I_c| -> 0 across shrinking deltas. The smallest
/// difference must fall below 10 times a 0.5 percent-of-energy solver
/// scale; the report claims consistency with continuity, nothing stronger.
pub fn continuity_probe(
    model: &Model,
    c: f64,
    deltas: &[f64],
    gs: &GroundState,
    cfg: &SolverConfig,
) -> Result<ContinuityReport> {
    if deltas.is_empty() {
        return Err(MasslabError::Config("no deltas supplied".into()));
    }
    let attained_limit = gs.cstar * (1.0 + 1e-12);
    let max_delta = deltas.iter().copied().fold(0.0f64, f64::max);
    if c + max_delta > attained_limit {
        return Err(MasslabError::Domain(format!(
            "continuity probe outside the attained regime: c + delta = {}",
            c + max_delta
        )));
    }
    let solve = |mass: f64| -> Result<f64> {
        let seed = gs.profile.rescale_mass(mass)?;
        let report = minimize_on_sphere(
            model,
            mass,
            InitialGuess::Field(&seed),
            &Arc::clone(gs.profile.grid()),
            cfg,
        )?;
        if report.status != MinimizeStatus::Converged {
            return Err(MasslabError::Diagnostic(format!(
                "continuity probe did not converge at mass {mass}"
            )));
        }
        Ok(report.energy)
    };
    let base = solve(c)?;
    let mut differences = Vec::with_capacity(deltas.len());
    for &d in deltas {
        let value = if d == 0.0 { base } else { solve(c + d)? };
        differences.push((value - base).abs());
    }
    let decreasing = differences.windows(2).all(|w| w[1] < w[0] || w[1] == 0.0);
    let smallest = differences.iter().copied().fold(f64::INFINITY, f64::min);
    let smallest_allowed = 10.0 * 0.005 * base.abs().max(1e-9);
    Ok(ContinuityReport {
        mass: c,
        energy: base,
        deltas: deltas.to_vec(),
        differences,
        decreasing,
        smallest,
        smallest_allowed,
        passed: decreasing && smallest <= smallest_allowed,
    })
}

/// Strict subadditivity certificate f(c) < f(alpha) + f(c - alpha).
#[derive(Debug, Clone, Serialize)]
pub struct SubadditivityReport {
    pub mass: f64,
    pub total_energy: f64,
    /// (alpha, f(alpha), f(c - alpha), margin) per split.
    pub splits: Vec<SubadditivitySplit>,
    /// theta-scaling ingredient: F(sqrt(theta) u_c) against theta f(c).
    pub theta: f64,
    pub theta_scaled_energy: f64,
    pub theta_bound: f64,
    pub passed: bool,
}

#[derive(Debug, Clone, Serialize)]
pub struct SubadditivitySplit {
    pub alpha: f64,
    pub left: f64,
    pub right: f64,
    pub margin: f64,
    pub required_margin: f64,
}

/// Verifies the strict subadditivity of the decaying-potential infimum at
/// `c` for every split in `alphas`, plus the theta-scaling inequality on
/// the mass-c minimizer.
pub fn subadditivity_check(
    model: &Model,
    c: f64,
    alphas: &[f64],
    gs: &GroundState,
    eig: &EigenResult,
    cfg: &SolverConfig,
) -> Result<SubadditivityReport> {
    if model.kind() != ModelKind::NlsDecaying {
        return Err(MasslabError::Model(
            "subadditivity applies to the decaying-potential model".into(),
        ));
    }
    let mu = model.mu().expect("decaying model carries mu");
    if mu < eig.mu1 * (1.0 - 1e-12) {
        return Err(MasslabError::Domain(format!(
            "subadditivity needs mu >= mu_1 = {}, got {mu}",
            eig.mu1
        )));
    }
    if !(c > 0.0 && c < gs.cstar) {
        return Err(MasslabError::Domain(format!(
            "subadditivity needs 0 < c < c*, got {c}"
        )));
    }
    if alphas.iter().any(|&a| !(a > 0.0 && a < c)) {
        return Err(MasslabError::Domain(
            "every split must satisfy 0 < alpha < c".into(),
        ));
    }

    let solve = |mass: f64| -> Result<(f64, Field)> {
        let seed = gs.profile.rescale_mass(mass)?;
        let report = minimize_on_sphere(
            model,
            mass,
            InitialGuess::Field(&seed),
            &Arc::clone(gs.profile.grid()),
            cfg,
        )?;
        if report.status != MinimizeStatus::Converged {
            return Err(MasslabError::Diagnostic(format!(
                "subadditivity solve did not converge at mass {mass}"
            )));
        }
        Ok((report.energy, report.minimizer))
    };

    let (f_c, u_c) = solve(c)?;
    let mut splits = Vec::with_capacity(alphas.len());
    let mut passed = f_c < 0.0;
    for &alpha in alphas {
        let (f_left, _) = solve(alpha)?;
        let (f_right, _) = solve(c - alpha)?;
        let margin = f_left + f_right - f_c;
        let required_margin =
            3.0 * (solve_tolerance(f_c) + solve_tolerance(f_left) + solve_tolerance(f_right));
        passed &= margin > required_margin;
        splits.push(SubadditivitySplit {
            alpha,
            left: f_left,
            right: f_right,
            margin,
            required_margin,
        });
    }

    // theta-scaling: sqrt(theta) u_c belongs to S(theta c), so
    // f(theta c) <= F(sqrt(theta) u_c), and the explicit difference
    // identity forces F(sqrt(theta) u_c) < theta f(c).
    let theta = 1.25;
    let scaled = families::mass_scale(&u_c, theta)?;
    let theta_scaled_energy = model.energy(&scaled)?.total;
    let theta_bound = theta * f_c;
    passed &= theta_scaled_energy < theta_bound;

    Ok(SubadditivityReport {
        mass: c,
        total_energy: f_c,
        splits,
        theta,
        theta_scaled_energy,
        theta_bound,
        passed,
    })
}

/// Coercivity probe along a kinetic-blowup dilation ladder.
#[derive(Debug, Clone, Serialize)]
pub struct CoercivityReport {
    pub mass: f64,
    pub parameters: Vec<f64>,
    pub energies: Vec<f64>,
    pub kinetic: Vec<f64>,
    /// Every probe obeyed F >= (1 - (c/c*)^(2/N)) 2A/2 - mu V0 c / 2.
    pub lower_bound_ok: bool,
    pub increasing_tail: bool,
    pub passed: bool,
}

/// Verifies that the decaying-potential energy grows without bound along
/// mass-preserving dilations t = 2^k, and that every probe point respects
/// the coercivity lower bound.
pub fn coercivity_probe(model: &Model, c: f64, gs: &GroundState) -> Result<CoercivityReport> {
    if model.kind() != ModelKind::NlsDecaying {
        return Err(MasslabError::Model(
            "coercivity probe applies to the decaying-potential model".into(),
        ));
    }
    if !(c > 0.0 && c < gs.cstar) {
        return Err(MasslabError::Domain(format!(
            "coercivity holds below the threshold mass, got c = {c}"
        )));
    }
    let mu = model.mu().expect("decaying model carries mu");
    let v0 = model
        .potential()
        .expect("decaying model carries a potential")
        .upper_bound();
    let n = model.dim() as f64;
    let shrink = 1.0 - (c / gs.cstar).powf(2.0 / n);
    let mut parameters = Vec::new();
    let mut energies = Vec::new();
    let mut kinetic = Vec::new();
    let mut lower_bound_ok = true;
    for k in 0..=6 {
        let t = 2.0f64.powi(k);
        let point = families::scaled_q_family(gs, c, t)?;
        let e = model.energy(&point.field)?;
        let bound = shrink * e.kinetic - mu * v0 * c / 2.0;
        lower_bound_ok &= e.total >= bound - 1e-8 * (1.0 + e.total.abs());
        parameters.push(t);
        energies.push(e.total);
        kinetic.push(e.kinetic);
    }
    let m = energies.len();
    let increasing_tail =
        energies[m - 3..].windows(2).all(|w| w[1] > w[0]) && energies[m - 1] > energies[0];
    Ok(CoercivityReport {
        mass: c,
        parameters,
        energies,
        kinetic,
        lower_bound_ok,
        increasing_tail,
        passed: lower_bound_ok && increasing_tail,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::eigen::compute_mu1;
    use crate::fixtures;
    use crate::functionals::Potential;

    fn cfg() -> SolverConfig {
        SolverConfig::default()
    }

    #[test]
    fn scan_rejects_bad_grids() {
        let gs = fixtures::ground_state(1);
        let model = Model::nls(1).unwrap();
        assert!(scan(&model, &[], gs, &cfg()).is_err());
        assert!(scan(&model, &[1.0, 1.0], gs, &cfg()).is_err());
        assert!(scan(&model, &[2.0, 1.0], gs, &cfg()).is_err());
        assert!(scan(&model, &[-1.0, 1.0], gs, &cfg()).is_err());
    }

    #[test]
    fn free_critical_scan_matches_threshold_map() {
        let gs = fixtures::ground_state(1);
        let model = Model::nls(1).unwrap();
        let grid: Vec<f64> = [0.5, 0.9, 1.3, 1.8].iter().map(|r| r * gs.cstar).collect();
        let result = scan(&model, &grid, gs, &cfg()).unwrap();
        let classes: Vec<Classification> =
            result.entries.iter().map(|e| e.classification).collect();
        assert_eq!(
            classes,
            vec![
                Classification::ZeroNotAttained,
                Classification::ZeroNotAttained,
                Classification::MinusInfinity,
                Classification::MinusInfinity,
            ]
        );
        assert_eq!(result.entries[0].energy, Some(0.0));
        assert_eq!(result.entries[2].energy, None);
    }

    #[test]
    fn monotonicity_needs_enough_points() {
        let gs = fixtures::ground_state(1);
        let model = Model::nls(1).unwrap();
        let result = scan(&model, &[0.5 * gs.cstar], gs, &cfg()).unwrap();
        assert!(monotonicity_check(&result, gs.cstar).is_err());
    }

    #[test]
    fn continuity_probe_on_decaying_model() {
        let gs = fixtures::ground_state(1);
        let pot = Potential::gaussian_decay(1.0, 1.5).unwrap();
        let mu1 = compute_mu1(&pot, 6.0, 1024, 1).unwrap().mu1;
        let model = Model::nls_decaying(1, pot, 1.5 * mu1).unwrap();
        let c = 0.5 * gs.cstar;
        let deltas: Vec<f64> = [0.1, 0.05, 0.01].iter().map(|d| d * c).collect();
        let report = continuity_probe(&model, c, &deltas, gs, &cfg()).unwrap();
        assert!(report.decreasing, "{:?}", report.differences);
        assert!(
            report.passed,
            "smallest {:.3e} vs allowed {:.3e}",
            report.smallest, report.smallest_allowed
        );
        // A zero delta reproduces the base solve exactly.
        let with_zero = continuity_probe(&model, c, &[0.1 * c, 0.0], gs, &cfg()).unwrap();
        assert_eq!(with_zero.differences[1], 0.0);
        // Outside the attained regime the probe is inapplicable.
        assert!(continuity_probe(&model, gs.cstar, &deltas, gs, &cfg()).is_err());
    }

    #[test]
    fn confined_scan_mixes_attained_and_divergent_entries() {
        let gs = fixtures::ground_state(3);
        let model = Model::sp_confined(Potential::harmonic(1.0).unwrap()).unwrap();
        let masses: Vec<f64> = [0.5, 1.0, 1.2].iter().map(|r| r * gs.cstar).collect();
        let result = scan(&model, &masses, gs, &cfg()).unwrap();
        let classes: Vec<Classification> =
            result.entries.iter().map(|e| e.classification).collect();
        assert_eq!(
            classes,
            vec![
                Classification::Attained,
                Classification::Attained,
                Classification::MinusInfinity,
            ]
        );
        for e in &result.entries[..2] {
            assert!(e.energy.unwrap() > 0.0);
        }
    }

    #[test]
    fn subadditivity_on_the_line() {
        let gs = fixtures::ground_state(1);
        let pot = Potential::gaussian_decay(1.0, 1.5).unwrap();
        let eig = compute_mu1(&pot, 6.0, 1024, 1).unwrap();
        let model = Model::nls_decaying(1, pot, 1.5 * eig.mu1).unwrap();
        let c = 0.8 * gs.cstar;
        let alphas: Vec<f64> = [0.2, 0.4, 0.6].iter().map(|a| a * c).collect();
        let report = subadditivity_check(&model, c, &alphas, gs, &eig, &cfg()).unwrap();
        assert!(report.passed, "{report:?}");
        assert!(report.total_energy < 0.0);
        for split in &report.splits {
            assert!(
                split.margin > split.required_margin,
                "alpha = {}: margin {:.3e}",
                split.alpha,
                split.margin
            );
        }
        // Symmetric splits give the same right-hand side.
        let sym = subadditivity_check(&model, c, &[0.2 * c, 0.8 * c], gs, &eig, &cfg()).unwrap();
        let lhs = sym.splits[0].left + sym.splits[0].right;
        let rhs = sym.splits[1].left + sym.splits[1].right;
        assert!((lhs - rhs).abs() <= 1e-12 * lhs.abs());

        // mu below mu_1 is rejected.
        let weak = Model::nls_decaying(
            1,
            Potential::gaussian_decay(1.0, 1.5).unwrap(),
            0.5 * eig.mu1,
        )
        .unwrap();
        assert!(subadditivity_check(&weak, c, &alphas, gs, &eig, &cfg()).is_err());
    }

    #[test]
    fn coercivity_probe_on_the_line() {
        let gs = fixtures::ground_state(1);
        let pot = Potential::gaussian_decay(1.0, 1.5).unwrap();
        let mu1 = compute_mu1(&pot, 6.0, 1024, 1).unwrap().mu1;
        let model = Model::nls_decaying(1, pot, 1.5 * mu1).unwrap();
        for &ratio in &[0.5f64, 0.99] {
            let report = coercivity_probe(&model, ratio * gs.cstar, gs).unwrap();
            assert!(report.passed, "c/c* = {ratio}: {report:?}");
        }
        assert!(coercivity_probe(&model, 1.5 * gs.cstar, gs).is_err());
    }
}
