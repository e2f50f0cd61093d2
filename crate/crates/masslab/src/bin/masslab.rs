//! Thin command-line front end; all logic lives in the library.

use clap::{Parser, Subcommand};
use std::path::PathBuf;
use std::process::ExitCode;

use masslab::cli::{self, Command, FieldSource, MassUnits, ModelSpec, RunConfig};

#[derive(Parser)]
#[command(
    name = "masslab",
    about = "Mass-constrained variational laboratory: critical ground states, \
             sharp thresholds, and normalized-flow minimization",
    version
)]
struct Args {
    /// Directory for JSON/CSV artifacts.
    #[arg(long, global = true, default_value = "masslab-out")]
    out_dir: PathBuf,
    /// Ground-state cache directory (default: $MASSLAB_CACHE or .masslab-cache).
    #[arg(long, global = true)]
    cache_dir: Option<PathBuf>,
    #[command(subcommand)]
    command: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Solve the critical ground state and persist its profile.
    GroundState {
        #[arg(long)]
        dim: usize,
        #[arg(long)]
        points: Option<usize>,
        #[arg(long)]
        rmax: Option<f64>,
    },
    /// Evaluate one model energy on a stored or synthetic field.
    Energy {
        /// sp | sp-confined | nls | nls-decaying
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        /// harmonic:a | gaussian:v0[,width]
        #[arg(long)]
        potential: Option<String>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        mu_factor: Option<f64>,
        /// Field stored by ground-state or minimize.
        #[arg(long, conflicts_with = "gaussian")]
        profile: Option<PathBuf>,
        /// Synthetic Gaussian field "amplitude,width".
        #[arg(long)]
        gaussian: Option<String>,
    },
    /// Normalized-flow minimization on the mass sphere.
    Minimize {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        potential: Option<String>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        mu_factor: Option<f64>,
        /// Target mass.
        #[arg(long)]
        c: f64,
        /// cstar | raw
        #[arg(long, default_value = "cstar")]
        units: String,
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
    /// Classify and evaluate the infimum across a mass grid.
    Scan {
        #[arg(long)]
        model: String,
        #[arg(long, default_value_t = 3)]
        dim: usize,
        #[arg(long)]
        potential: Option<String>,
        #[arg(long)]
        mu: Option<f64>,
        #[arg(long)]
        mu_factor: Option<f64>,
        /// Comma-separated masses, e.g. 0.5,0.9,1.0,1.1,1.5
        #[arg(long)]
        c_grid: String,
        #[arg(long, default_value = "cstar")]
        units: String,
    },
    /// Weighted first Dirichlet eigenvalue on a ball.
    Mu1 {
        #[arg(long)]
        potential: String,
        #[arg(long, default_value_t = 4.0)]
        radius: f64,
        #[arg(long, default_value_t = 2048)]
        points: usize,
        #[arg(long, default_value_t = 3)]
        dim: usize,
    },
    /// Run the full certification suite and print the pass/fail matrix.
    Certify {
        #[arg(long, default_value_t = 2024)]
        seed: u64,
    },
}

fn parse_list(spec: &str) -> Result<Vec<f64>, String> {
    spec.split(',')
        .map(|p| {
            p.trim()
                .parse::<f64>()
                .map_err(|e| format!("bad number {p:?} in list: {e}"))
        })
        .collect()
}

fn main() -> ExitCode {
    let args = Args::parse();
    let command = match args.command {
        Cmd::GroundState { dim, points, rmax } => Command::GroundState {
            dim,
            points,
            r_max: rmax,
        },
        Cmd::Energy {
            model,
            dim,
            potential,
            mu,
            mu_factor,
            profile,
            gaussian,
        } => {
            let source = if let Some(path) = profile {
                FieldSource::Profile(path)
            } else {
                let spec = gaussian.unwrap_or_else(|| "1.0,1.0".into());
                match parse_list(&spec) {
                    Ok(v) => FieldSource::Gaussian(
                        v.first().copied().unwrap_or(1.0),
                        v.get(1).copied().unwrap_or(1.0),
                    ),
                    Err(e) => {
                        eprintln!("error: {e}");
                        return ExitCode::from(2);
                    }
                }
            };
            Command::Energy {
                model: ModelSpec {
                    kind: model,
                    dim,
                    potential,
                    mu,
                    mu_factor,
                },
                source,
            }
        }
        Cmd::Minimize {
            model,
            dim,
            potential,
            mu,
            mu_factor,
            c,
            units,
            seed,
        } => {
            let units = match MassUnits::parse(&units) {
                Ok(u) => u,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            Command::Minimize {
                model: ModelSpec {
                    kind: model,
                    dim,
                    potential,
                    mu,
                    mu_factor,
                },
                mass: c,
                units,
                seed,
            }
        }
        Cmd::Scan {
            model,
            dim,
            potential,
            mu,
            mu_factor,
            c_grid,
            units,
        } => {
            let masses = match parse_list(&c_grid) {
                Ok(v) => v,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            let units = match MassUnits::parse(&units) {
                Ok(u) => u,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(2);
                }
            };
            Command::Scan {
                model: ModelSpec {
                    kind: model,
                    dim,
                    potential,
                    mu,
                    mu_factor,
                },
                masses,
                units,
            }
        }
        Cmd::Mu1 {
            potential,
            radius,
            points,
            dim,
        } => Command::Mu1 {
            potential,
            radius,
            points,
            dim,
        },
        Cmd::Certify { seed } => Command::Certify { seed },
    };

    let config = RunConfig {
        command,
        out_dir: args.out_dir,
        cache_dir: args.cache_dir,
    };
    match cli::run(&config) {
        Ok(outcome) => {
            if outcome.failed {
                ExitCode::from(1)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let diagnostic = serde_json::json!({
                "schema_version": masslab::io::SCHEMA_VERSION,
                "error": e.to_string(),
            });
            let _ = std::fs::create_dir_all(&config.out_dir);
            let _ = std::fs::write(
                config.out_dir.join("error.json"),
                serde_json::to_string_pretty(&diagnostic).unwrap_or_default(),
            );
            ExitCode::from(1)
        }
    }
}
