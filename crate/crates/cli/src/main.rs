use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use curveflow::comparison::{compute_tbar, compute_tbar_pairs_only, TbarSearch};
use curveflow::flow::renormalize;
use curveflow::ProfileError;
use curveflow_cli::config::{ExperimentConfig, Overrides};
use curveflow_cli::experiment::run;
use curveflow_cli::profile::{verify_profile, GridArgs};
use curveflow_cli::ExitStatus;

#[derive(Parser)]
#[command(name = "curveflow", version, about = "Inverse curvature flow experiments")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Evolve a curve and check the bounds at every snapshot.
    Run {
        /// JSON configuration; flags override its fields.
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
    },
    /// Check the comparison profile inequalities on a grid.
    VerifyProfile {
        #[command(flatten)]
        grid: GridArgs,
    },
    /// Print the comparison offset of the configured shape.
    Tbar {
        #[arg(long)]
        config: Option<PathBuf>,
        #[command(flatten)]
        overrides: Overrides,
        /// Only use vertex pairs, without the curvature limit.
        #[arg(long)]
        pairs_only: bool,
    },
}

fn load(config: Option<PathBuf>, overrides: &Overrides) -> Result<ExperimentConfig, ExitStatus> {
    let mut c = match config {
        Some(path) => ExperimentConfig::load(&path).map_err(|e| {
            eprintln!("error: {e}");
            ExitStatus::Usage
        })?,
        None => ExperimentConfig::default(),
    };
    c.apply(overrides);
    c.validate().map_err(|e| {
        eprintln!("error: {e}");
        ExitStatus::Usage
    })?;
    Ok(c)
}

fn run_command(config: Option<PathBuf>, overrides: &Overrides) -> ExitStatus {
    let c = match load(config, overrides) {
        Ok(c) => c,
        Err(s) => return s,
    };
    match run(&c) {
        Ok(outcome) => {
            let s = &outcome.summary;
            if let Some(f) = &s.failure {
                eprintln!("run stopped at t = {}: {}", f.time, f.message);
            }
            for check in &s.checks {
                println!(
                    "{:<5} {:<18} worst {:>24.16e}  limit {:e}",
                    if check.status == curveflow_cli::checks::Status::Pass { "pass" } else { "FAIL" },
                    check.name.as_str(),
                    check.worst,
                    check.limit
                );
            }
            println!("{} ({} snapshots)", s.status, s.snapshots);
            outcome.exit
        }
        Err(e) => {
            eprintln!("error: {e}");
            e.exit_status()
        }
    }
}

fn profile_command(grid: GridArgs) -> ExitStatus {
    match verify_profile(&grid.into()) {
        Ok(lines) => {
            for line in &lines {
                println!("{line}");
            }
            if lines.iter().all(|l| l.pass) {
                ExitStatus::Pass
            } else {
                ExitStatus::CheckFailure
            }
        }
        Err(e @ (ProfileError::Parameter(_) | ProfileError::Domain { .. })) => {
            eprintln!("error: {e}");
            ExitStatus::Usage
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitStatus::Runtime
        }
    }
}

fn tbar_command(config: Option<PathBuf>, overrides: &Overrides, pairs_only: bool) -> ExitStatus {
    let c = match load(config, overrides) {
        Ok(c) => c,
        Err(s) => return s,
    };
    let curve = match c.initial_curve() {
        Ok(curve) => renormalize(&curve),
        Err(e) => {
            eprintln!("error: {e}");
            return ExitStatus::Runtime;
        }
    };
    let search = TbarSearch::default();
    let result = if pairs_only {
        compute_tbar_pairs_only(&curve, &search)
    } else {
        compute_tbar(&curve, &search)
    };
    match result {
        Ok(t) => {
            println!("{t}");
            ExitStatus::Pass
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitStatus::Runtime
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => e.exit(),
    };
    let status = match cli.command {
        Command::Run { config, overrides } => run_command(config, &overrides),
        Command::VerifyProfile { grid } => profile_command(grid),
        Command::Tbar {
            config,
            overrides,
            pairs_only,
        } => tbar_command(config, &overrides, pairs_only),
    };
    ExitCode::from(status.code() as u8)
}
