use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use vorwave::pipeline::{self, Overrides};
use vorwave::{Result, Side};

/// Traveling water waves with constant vorticity.
#[derive(Parser)]
#[command(name = "vorwave", version)]
struct Cli {
    /// JSON run configuration.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    /// Output directory.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    /// Number of Fourier modes N.
    #[arg(long, global = true)]
    modes: Option<usize>,
    /// First amplitude off the trivial branch.
    #[arg(long = "seed-amplitude", global = true)]
    seed_amplitude: Option<f64>,
    /// Also write gnuplot scripts next to CSV output.
    #[arg(long = "emit-gnuplot", global = true)]
    emit_gnuplot: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Dispersion roots, bifurcating fluxes and the stagnation criterion.
    Dispersion,
    /// Bifurcation points on the trivial branch with kernel diagnostics.
    Bifurcate,
    /// Trace the branch bifurcating from one dispersion root.
    Trace {
        #[arg(long, value_parser = parse_side)]
        side: Side,
        #[arg(long)]
        points: Option<usize>,
    },
    /// Reconstruct the flow under one point of a branch file.
    Reconstruct {
        #[arg(long)]
        branch: PathBuf,
        #[arg(long)]
        index: usize,
    },
    /// Bifurcating fluxes over a range of depths.
    Sweep {
        #[arg(long)]
        h_min: Option<f64>,
        #[arg(long)]
        h_max: Option<f64>,
        #[arg(long)]
        count: Option<usize>,
    },
}

fn parse_side(s: &str) -> std::result::Result<Side, String> {
    s.parse().map_err(|e: vorwave::Error| e.to_string())
}

fn run(cli: Cli) -> Result<()> {
    let overrides = Overrides { output_dir: cli.out, n_modes: cli.modes, seed_amplitude: cli.seed_amplitude };
    let mut cfg = pipeline::load_config(cli.config.as_deref(), &overrides)?;
    let stdout = std::io::stdout();
    let mut out = stdout.lock();
    match cli.command {
        Command::Dispersion => pipeline::cmd_dispersion(&cfg, &mut out).map(drop),
        Command::Bifurcate => pipeline::cmd_bifurcate(&cfg, &mut out).map(drop),
        Command::Trace { side, points } => {
            let n = points.unwrap_or(cfg.trace.n_points);
            pipeline::cmd_trace(&cfg, side, n, &mut out).map(drop)
        }
        Command::Reconstruct { branch, index } => {
            pipeline::cmd_reconstruct(&cfg, &branch, index, cli.emit_gnuplot, &mut out).map(drop)
        }
        Command::Sweep { h_min, h_max, count } => {
            cfg.sweep.h_min = h_min.unwrap_or(cfg.sweep.h_min);
            cfg.sweep.h_max = h_max.unwrap_or(cfg.sweep.h_max);
            cfg.sweep.count = count.unwrap_or(cfg.sweep.count);
            cfg.validate()?;
            pipeline::cmd_sweep(&cfg, cli.emit_gnuplot, &mut out).map(drop)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(pipeline::exit_code(&e) as u8)
        }
    }
}
