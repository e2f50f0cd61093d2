//! Command execution: configuration, orchestration, and artifact emission.
//!
//! Every run is fully determined by its [`RunConfig`]; results are written
//! as JSON (machine-readable, stamped with a configuration hash) and CSV
//! (fixed columns for plotting) under the output directory. Exit-code
//! mapping is left to the binary: 0 success, 1 numerical failure or failed
//! certification, 2 usage errors.

use serde::Serialize;
use serde_json::json;
use std::path::{Path, PathBuf};
use std::sync::Arc;

use crate::analysis::scan;
use crate::certify::run_certification;
use crate::eigen::compute_mu1;
use crate::error::{MasslabError, Result};
use crate::functionals::{Model, Potential};
use crate::grid::{Field, RadialGrid};
use crate::groundstate::GroundStateConfig;
use crate::io;
use crate::minimize::{minimize_on_sphere, InitialGuess, MinimizeStatus, SolverConfig};

/// Mass units for `--c` style flags.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MassUnits {
    /// Multiples of the solved threshold mass c*.
    CStar,
    Raw,
}

impl MassUnits {
    pub fn parse(s: &str) -> Result<Self> {
        match s {
            "cstar" => Ok(Self::CStar),
            "raw" => Ok(Self::Raw),
            other => Err(MasslabError::Config(format!(
                "unknown mass units {other:?} (expected cstar or raw)"
            ))),
        }
    }
}

/// Which energy model a command addresses, in flag form.
#[derive(Debug, Clone, Serialize)]
pub struct ModelSpec {
    /// sp | sp-confined | nls | nls-decaying
    pub kind: String,
    pub dim: usize,
    /// harmonic:a | gaussian:v0[,width]
    pub potential: Option<String>,
    pub mu: Option<f64>,
    /// Coupling as a multiple of mu_1 for the given potential.
    pub mu_factor: Option<f64>,
}

/// Field input for the `energy` command.
#[derive(Debug, Clone, Serialize)]
pub enum FieldSource {
    Profile(PathBuf),
    /// amplitude, width
    Gaussian(f64, f64),
}

/// One fully specified run.
#[derive(Debug, Clone, Serialize)]
pub enum Command {
    GroundState {
        dim: usize,
        points: Option<usize>,
        r_max: Option<f64>,
    },
    Energy {
        model: ModelSpec,
        source: FieldSource,
    },
    Minimize {
        model: ModelSpec,
        mass: f64,
        units: MassUnits,
        seed: u64,
    },
    Scan {
        model: ModelSpec,
        masses: Vec<f64>,
        units: MassUnits,
    },
    Mu1 {
        potential: String,
        radius: f64,
        points: usize,
        dim: usize,
    },
    Certify {
        seed: u64,
    },
}

#[derive(Debug, Clone, Serialize)]
pub struct RunConfig {
    pub command: Command,
    pub out_dir: PathBuf,
    pub cache_dir: Option<PathBuf>,
}

/// What the caller needs for exit-code mapping and follow-up.
#[derive(Debug, Clone)]
pub struct RunOutcome {
    /// Set when a certification failed (exit code 1 without an error).
    pub failed: bool,
    /// Lines already printed to stdout, kept for tests.
    pub summary: Vec<String>,
}

pub fn parse_potential(spec: &str) -> Result<Potential> {
    let (kind, params) = spec.split_once(':').unwrap_or((spec, ""));
    let values: Vec<f64> = if params.is_empty() {
        Vec::new()
    } else {
        params
            .split(',')
            .map(|p| {
                p.trim().parse::<f64>().map_err(|e| {
                    MasslabError::Config(format!("bad potential parameter {p:?}: {e}"))
                })
            })
            .collect::<Result<_>>()?
    };
    match kind {
        "harmonic" => Potential::harmonic(values.first().copied().unwrap_or(1.0)),
        "gaussian" => Potential::gaussian_decay(
            values.first().copied().unwrap_or(1.0),
            values.get(1).copied().unwrap_or(1.0),
        ),
        other => Err(MasslabError::Config(format!(
            "unknown potential kind {other:?} (expected harmonic:a or gaussian:v0[,w])"
        ))),
    }
}

fn build_model(spec: &ModelSpec) -> Result<Model> {
    match spec.kind.as_str() {
        "sp" => Ok(Model::sp()),
        "sp-confined" => {
            let pot = parse_potential(spec.potential.as_deref().unwrap_or("harmonic:1.0"))?;
            Model::sp_confined(pot)
        }
        "nls" => Model::nls(spec.dim),
        "nls-decaying" => {
            let pot = parse_potential(spec.potential.as_deref().unwrap_or("gaussian:1.0"))?;
            let mu = match (spec.mu, spec.mu_factor) {
                (Some(mu), _) => mu,
                (None, Some(factor)) => factor * compute_mu1(&pot, 4.0, 2048, spec.dim)?.mu1,
                (None, None) => {
                    return Err(MasslabError::Config(
                        "the decaying model needs --mu or --mu-factor".into(),
                    ))
                }
            };
            Model::nls_decaying(spec.dim, pot, mu)
        }
        other => Err(MasslabError::Config(format!(
            "unknown model {other:?} (expected sp, sp-confined, nls, nls-decaying)"
        ))),
    }
}

fn write_json(
    out_dir: &Path,
    name: &str,
    config: &serde_json::Value,
    result: serde_json::Value,
) -> Result<PathBuf> {
    let payload = json!({
        "schema_version": io::SCHEMA_VERSION,
        "command": name,
        "config": config,
        "config_hash": io::config_hash(config),
        "result": result,
    });
    std::fs::create_dir_all(out_dir)?;
    let path = out_dir.join(format!("{name}.json"));
    std::fs::write(&path, serde_json::to_string_pretty(&payload)?)?;
    Ok(path)
}

fn ground_state_for(
    dim: usize,
    points: Option<usize>,
    r_max: Option<f64>,
    cache_dir: Option<&Path>,
) -> Result<crate::groundstate::GroundState> {
    let mut cfg = GroundStateConfig::for_dim(dim);
    if let Some(p) = points {
        cfg.points = p;
    }
    if let Some(r) = r_max {
        cfg.r_max = r;
    }
    io::load_or_solve(dim, &cfg, cache_dir)
}

/// Executes one run, writing artifacts under `config.out_dir`.
pub fn run(config: &RunConfig) -> Result<RunOutcome> {
    let mut summary = Vec::new();
    let mut failed = false;
    // Only the command determines the numbers; output paths stay out of the
    // payload so identical commands emit byte-identical files.
    let config_json = serde_json::to_value(&config.command)?;
    let cache = config.cache_dir.as_deref();
    match &config.command {
        Command::GroundState { dim, points, r_max } => {
            let gs = ground_state_for(*dim, *points, *r_max, cache)?;
            let profile_name = format!("q{dim}.profile");
            io::save_ground_state(&config.out_dir.join(&profile_name), &gs)?;
            write_json(
                &config.out_dir,
                "ground-state",
                &config_json,
                json!({
                    "dim": dim,
                    "points": gs.profile.grid().len(),
                    "r_max": gs.profile.grid().r_max(),
                    "cstar": gs.cstar,
                    "identity_residuals": gs.identity_residuals,
                    "action": gs.action,
                    "decay_slope_error": gs.decay_slope_error,
                    "profile": profile_name,
                }),
            )?;
            summary.push(format!(
                "ground state N={dim}: c* = {}",
                io::format_g17(gs.cstar)
            ));
            summary.push(format!(
                "identity residuals: {}",
                gs.identity_residuals
                    .iter()
                    .map(|r| format!("{r:.3e}"))
                    .collect::<Vec<_>>()
                    .join(" ")
            ));
        }

        Command::Energy { model, source } => {
            let m = build_model(model)?;
            let field = match source {
                FieldSource::Profile(path) => io::load_field(path)?.0,
                FieldSource::Gaussian(amplitude, width) => {
                    let cfg = GroundStateConfig::for_dim(m.dim());
                    let grid = RadialGrid::build(m.dim(), cfg.r_max, cfg.points)?;
                    let w = *width;
                    let a = *amplitude;
                    Field::from_fn(grid, |r| a * (-r * r / (2.0 * w * w)).exp())?
                }
            };
            let e = m.energy(&field)?;
            write_json(
                &config.out_dir,
                "energy",
                &config_json,
                json!({
                    "mass": field.mass(),
                    "kinetic": e.kinetic,
                    "hartree": e.hartree,
                    "focusing": e.focusing,
                    "potential": e.potential,
                    "total": e.total,
                }),
            )?;
            summary.push(format!(
                "energy: total = {} (A = {}, B = {}, C = {}, D = {})",
                io::format_g17(e.total),
                io::format_g17(e.kinetic),
                io::format_g17(e.hartree),
                io::format_g17(e.focusing),
                io::format_g17(e.potential),
            ));
        }

        Command::Minimize {
            model,
            mass,
            units,
            seed,
        } => {
            let m = build_model(model)?;
            let gs = ground_state_for(m.dim(), None, None, cache)?;
            let c = match units {
                MassUnits::CStar => mass * gs.cstar,
                MassUnits::Raw => *mass,
            };
            let cfg = SolverConfig {
                seed: *seed,
                ..SolverConfig::default()
            };
            let report = minimize_on_sphere(
                &m,
                c,
                InitialGuess::Random,
                &Arc::clone(gs.profile.grid()),
                &cfg,
            )?;
            io::save_field(
                &config.out_dir.join("minimizer.profile"),
                &report.minimizer,
                &[("mass".into(), io::format_g17(report.minimizer.mass()))],
            )?;
            let mut csv = String::from("c,energy,classification,lambda,iterations\n");
            csv.push_str(&format!(
                "{},{},{},{},{}\n",
                io::format_g17(c),
                io::format_g17(report.energy),
                match report.status {
                    MinimizeStatus::Converged => "attained",
                    _ => "not-converged",
                },
                io::format_g17(report.lagrange),
                report.iterations
            ));
            std::fs::create_dir_all(&config.out_dir)?;
            std::fs::write(config.out_dir.join("minimize.csv"), csv)?;
            write_json(
                &config.out_dir,
                "minimize",
                &config_json,
                json!({
                    "mass": c,
                    "status": report.status,
                    "energy": report.energy,
                    "lagrange": report.lagrange,
                    "grad_residual": report.grad_residual,
                    "iterations": report.iterations,
                    "minimizer": "minimizer.profile",
                }),
            )?;
            summary.push(format!(
                "minimize at c = {}: {:?}, energy = {}, lambda = {}",
                io::format_g17(c),
                report.status,
                io::format_g17(report.energy),
                io::format_g17(report.lagrange)
            ));
            if report.status != MinimizeStatus::Converged {
                failed = true;
            }
        }

        Command::Scan {
            model,
            masses,
            units,
        } => {
            let m = build_model(model)?;
            let gs = ground_state_for(m.dim(), None, None, cache)?;
            let grid: Vec<f64> = match units {
                MassUnits::CStar => masses.iter().map(|r| r * gs.cstar).collect(),
                MassUnits::Raw => masses.clone(),
            };
            let cfg = SolverConfig::default();
            let result = scan(&m, &grid, &gs, &cfg)?;
            let mut csv = format!("# config_hash {}\n", io::config_hash(&config_json));
            csv.push_str(&io::scan_csv(&result));
            std::fs::create_dir_all(&config.out_dir)?;
            std::fs::write(config.out_dir.join("scan.csv"), csv)?;
            write_json(
                &config.out_dir,
                "scan",
                &config_json,
                serde_json::to_value(&result)?,
            )?;
            for e in &result.entries {
                summary.push(format!(
                    "c = {:<22} {:?}{}",
                    io::format_g17(e.mass),
                    e.classification,
                    e.energy
                        .map(|v| format!(", energy = {}", io::format_g17(v)))
                        .unwrap_or_default()
                ));
            }
        }

        Command::Mu1 {
            potential,
            radius,
            points,
            dim,
        } => {
            let pot = parse_potential(potential)?;
            let res = compute_mu1(&pot, *radius, *points, *dim)?;
            io::save_field(
                &config.out_dir.join("phi.profile"),
                &res.eigenfunction,
                &[("mu1".into(), io::format_g17(res.mu1))],
            )?;
            write_json(
                &config.out_dir,
                "mu1",
                &config_json,
                json!({
                    "mu1": res.mu1,
                    "domain_radius": res.domain_radius,
                    "weight_norm": res.weight_norm,
                    "iterations": res.iterations,
                    "eigenfunction": "phi.profile",
                }),
            )?;
            summary.push(format!(
                "mu1 = {} on the ball of radius {radius}",
                io::format_g17(res.mu1)
            ));
        }

        Command::Certify { seed } => {
            let report = run_certification(*seed)?;
            write_json(
                &config.out_dir,
                "certify",
                &config_json,
                serde_json::to_value(&report)?,
            )?;
            summary.push(format!("certification matrix (seed {seed}):"));
            for check in &report.checks {
                summary.push(format!(
                    "  {:<32} {}",
                    check.key,
                    if check.passed { "PASS" } else { "FAIL" }
                ));
                if !check.passed {
                    for d in &check.details {
                        summary.push(format!("    {d}"));
                    }
                }
            }
            summary.push(format!(
                "overall: {}",
                if report.all_passed { "PASS" } else { "FAIL" }
            ));
            failed = !report.all_passed;
        }
    }
    for line in &summary {
        println!("{line}");
    }
    Ok(RunOutcome { failed, summary })
}
