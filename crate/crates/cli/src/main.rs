mod commands;
mod settings;

use clap::{Args, Parser, Subcommand};
use spindle_core::{Error, ErrorClass};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Debug, Parser)]
#[command(name = "spindle", version, about = "r-hulls, disc-caps and r-duals of planar convex bodies")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalArgs,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Args)]
pub struct GlobalArgs {
    /// Worker threads for simulations [default: $SPINDLE_WORKERS or 1]
    #[arg(long, global = true)]
    pub workers: Option<usize>,
    /// Base seed for every random stream [default: 0]
    #[arg(long, global = true)]
    pub seed: Option<u64>,
    /// Write the result here instead of stdout
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// JSON file whose keys mirror the long flags; flags win
    #[arg(long, global = true)]
    pub config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// r-hull of the points in a CSV file of x,y rows
    Hull(HullArgs),
    /// Disc-cap area, arc length and reparametrization Jacobian
    Caps(CapsArgs),
    /// Limit constants of the expected vertex count and missed area
    Limits(LimitsArgs),
    /// Residuals of the r-dual identities
    DualCheck(BodyArgs),
    /// Monte Carlo estimates written as CSV
    Simulate(SimulateArgs),
    /// Log-log slopes of columns of a simulate CSV
    VarianceScan(ScanArgs),
    /// One nested sample path, recomputed at powers of two
    Lln(LlnArgs),
}

#[derive(Debug, Args)]
pub struct BodyArgs {
    /// Body spec, e.g. disc:1, ellipse:0.6,0.5, cw:1,0.03
    #[arg(long)]
    pub body: Option<String>,
    #[arg(long)]
    pub r: Option<f64>,
}

#[derive(Debug, Args)]
pub struct HullArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub r: Option<f64>,
    /// Use the brute-force construction
    #[arg(long)]
    pub oracle: bool,
}

#[derive(Debug, Args)]
pub struct CapsArgs {
    #[command(flatten)]
    pub body: BodyArgs,
    #[arg(long, allow_hyphen_values = true)]
    pub theta: Option<f64>,
    #[arg(long)]
    pub t: Option<f64>,
}

#[derive(Debug, Args)]
pub struct LimitsArgs {
    #[command(flatten)]
    pub body: BodyArgs,
    /// inscribed, circle or circumscribed
    #[arg(long)]
    pub model: Option<String>,
}

#[derive(Debug, Args)]
pub struct SimulateArgs {
    #[command(flatten)]
    pub body: BodyArgs,
    #[arg(long)]
    pub model: Option<String>,
    /// Comma-separated, strictly increasing sample sizes
    #[arg(long, value_delimiter = ',')]
    pub n_values: Option<Vec<usize>>,
    #[arg(long)]
    pub reps: Option<usize>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long)]
    pub input: Option<PathBuf>,
    /// Column to fit; repeat for several [default: every variance column present]
    #[arg(long = "field")]
    pub fields: Vec<String>,
}

#[derive(Debug, Args)]
pub struct LlnArgs {
    #[command(flatten)]
    pub body: BodyArgs,
    #[arg(long)]
    pub n_max: Option<usize>,
}

fn exit_code(e: &Error) -> u8 {
    match e.class() {
        ErrorClass::Validation => 2,
        ErrorClass::Numeric => 3,
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            use clap::error::ErrorKind;
            if matches!(e.kind(), ErrorKind::DisplayHelp | ErrorKind::DisplayVersion) {
                print!("{e}");
                return ExitCode::SUCCESS;
            }
            let text = e.to_string();
            let line = text.lines().next().unwrap_or("invalid arguments");
            eprintln!("ERROR usage: {}", line.trim_start_matches("error: "));
            return ExitCode::from(2);
        }
    };
    match commands::run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("ERROR {}: {}", e.code(), e);
            ExitCode::from(exit_code(&e))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exit_codes_follow_error_class() {
        assert_eq!(exit_code(&Error::SingularJacobian { cross: 0.0 }), 3);
        assert_eq!(exit_code(&Error::QuadratureNoConvergence { last_delta: 1.0 }), 3);
        assert_eq!(exit_code(&Error::Infeasible("r too small".into())), 2);
        assert_eq!(exit_code(&Error::EmptyInput), 2);
    }
}
