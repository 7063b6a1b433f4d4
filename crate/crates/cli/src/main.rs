use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use hyperkin_cli::{commands, load, CliError};

#[derive(Parser)]
#[command(
    name = "hyperkin",
    version,
    about = "Planar kinematics in the Lorentzian plane"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Grid {
    /// Motion document (JSON).
    #[arg(long)]
    spec: PathBuf,
    /// Time range `t0:t1`, overriding the document.
    #[arg(long, allow_hyphen_values = true)]
    range: Option<String>,
    /// Number of samples, overriding the document.
    #[arg(long)]
    samples: Option<usize>,
}

#[derive(Subcommand)]
enum Command {
    /// Trace poles and curvature data as CSV.
    Simulate {
        #[command(flatten)]
        grid: Grid,
        /// Output file; stdout when omitted.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run the verification suites.
    Verify {
        #[command(flatten)]
        grid: Grid,
    },
    /// Conjugate point of a pole-relative position.
    EulerSavary {
        #[command(flatten)]
        grid: Grid,
        #[arg(long, allow_hyphen_values = true)]
        t: f64,
        /// Pole-relative position `re,uni`.
        #[arg(long, allow_hyphen_values = true)]
        point: String,
    },
    /// Draw centrodes and trajectories as SVG.
    Plot {
        #[command(flatten)]
        grid: Grid,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Moving-plane point `re,uni` whose trajectory is drawn; repeatable.
        #[arg(long, allow_hyphen_values = true)]
        point: Vec<String>,
    },
}

fn open(grid: &Grid) -> Result<hyperkin_cli::LoadedDocument, CliError> {
    let range = grid
        .range
        .as_deref()
        .map(commands::parse_range)
        .transpose()?;
    load(&grid.spec)?.with_grid(range, grid.samples)
}

fn run(cli: Cli) -> Result<(), CliError> {
    let mut stdout = std::io::stdout().lock();
    match cli.command {
        Command::Simulate { grid, out } => {
            commands::simulate(&open(&grid)?, out.as_deref(), &mut stdout)
        }
        Command::Verify { grid } => commands::verify(&open(&grid)?, &mut stdout),
        Command::EulerSavary { grid, t, point } => {
            let x = commands::parse_point(&point)?;
            commands::euler_savary(&open(&grid)?, t, x, &mut stdout)
        }
        Command::Plot { grid, out, point } => {
            let points = point
                .iter()
                .map(|p| commands::parse_point(p))
                .collect::<Result<Vec<_>, _>>()?;
            commands::plot(&open(&grid)?, &points, out.as_deref(), &mut stdout)
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("hyperkin: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
