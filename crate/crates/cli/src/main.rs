//! `linklab`: runs and validates scene files.
//!
//! Exit codes: 0 all checks pass, 1 a check failed its tolerance, 2 the
//! scene is invalid, 3 the numerics failed (unresolved grid, non-decaying
//! integrand, surface dependence).

mod output;
mod runner;
mod scene;

use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use runner::{is_numeric_failure, RunOptions};

#[derive(Parser)]
#[command(name = "linklab", version, about = "Linking numbers from smeared field commutators")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run the experiment of a scene and write the report and CSV table.
    Run {
        scene: PathBuf,
        /// Run this experiment instead of the one named in the scene.
        #[arg(long)]
        experiment: Option<String>,
        /// Doublings of the automatic momentum grid.
        #[arg(long, default_value_t = 0)]
        refine: u32,
        /// Output directory for the report and the table.
        #[arg(long, default_value = ".")]
        out: PathBuf,
        /// Worker threads; the results do not depend on it.
        #[arg(long)]
        workers: Option<usize>,
        /// Seed for random trials; overrides the scene.
        #[arg(long)]
        seed: Option<u64>,
    },
    /// Check a scene without running any numerics.
    Validate {
        scene: PathBuf,
        #[arg(long)]
        experiment: Option<String>,
    },
}

const EXIT_TOLERANCE: u8 = 1;
const EXIT_INVALID: u8 = 2;
const EXIT_NUMERIC: u8 = 3;

fn load(path: &Path, experiment: Option<&str>) -> Result<(Vec<u8>, scene::Resolved), Vec<String>> {
    let bytes = std::fs::read(path).map_err(|e| vec![format!("{}: {e}", path.display())])?;
    let text = String::from_utf8(bytes.clone()).map_err(|_| vec!["scene is not valid UTF-8".to_string()])?;
    let parsed = scene::parse(&text).map_err(|e| vec![e])?;
    let resolved = scene::validate(parsed, experiment).map_err(|d| d.iter().map(|d| d.to_string()).collect::<Vec<_>>())?;
    Ok((bytes, resolved))
}

fn write(path: &Path, content: &str) -> Result<(), String> {
    std::fs::write(path, content).map_err(|e| format!("{}: {e}", path.display()))
}

fn run(
    path: &Path,
    experiment: Option<&str>,
    refine: u32,
    out: &Path,
    seed: Option<u64>,
) -> Result<u8, (u8, String)> {
    let (bytes, resolved) = load(path, experiment).map_err(|d| (EXIT_INVALID, d.join("\n")))?;
    let opts = RunOptions {
        refine,
        seed: seed.or(resolved.scene.seed).unwrap_or(0),
    };
    let header = output::header(&path.display().to_string(), &output::scene_hash(&bytes), &resolved, opts);
    std::fs::create_dir_all(out).map_err(|e| (EXIT_INVALID, format!("{}: {e}", out.display())))?;
    let report_path = out.join(&resolved.scene.output.report);
    let io = |e| (EXIT_INVALID, e);
    match runner::run(&resolved, opts) {
        Ok(outcome) => {
            let text = output::report(&header, &outcome);
            print!("{text}");
            write(&report_path, &text).map_err(io)?;
            write(&out.join(&resolved.scene.output.csv), &output::csv(&outcome)).map_err(io)?;
            Ok(if outcome.passed() { 0 } else { EXIT_TOLERANCE })
        }
        Err(e) => {
            write(&report_path, &output::failure_report(&header, &e.to_string())).map_err(io)?;
            let code = if is_numeric_failure(&e) { EXIT_NUMERIC } else { EXIT_INVALID };
            Err((code, e.to_string()))
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Validate { scene, experiment } => match load(&scene, experiment.as_deref()) {
            Ok((_, r)) => {
                println!("ok: {} ({})", scene.display(), r.experiment);
                ExitCode::SUCCESS
            }
            Err(diagnostics) => {
                for d in diagnostics {
                    eprintln!("error: {d}");
                }
                ExitCode::from(EXIT_INVALID)
            }
        },
        Command::Run {
            scene,
            experiment,
            refine,
            out,
            workers,
            seed,
        } => {
            let mut pool = rayon::ThreadPoolBuilder::new();
            if let Some(n) = workers {
                pool = pool.num_threads(n.max(1));
            }
            let pool = match pool.build() {
                Ok(p) => p,
                Err(e) => {
                    eprintln!("error: {e}");
                    return ExitCode::from(EXIT_INVALID);
                }
            };
            match pool.install(|| run(&scene, experiment.as_deref(), refine, &out, seed)) {
                Ok(code) => ExitCode::from(code),
                Err((code, message)) => {
                    for line in message.lines() {
                        eprintln!("error: {line}");
                    }
                    ExitCode::from(code)
                }
            }
        }
    }
}
