mod construct;
mod moment;
mod output;
mod phase;
mod scaling;
mod svg;

use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use plyfold::Spec;

#[derive(Parser)]
#[command(name = "plyfold", version, about = "Delaminating fold constructions for multi-ply plates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Build (or optimize) one construction; write field, certificate, energy and an outline.
    Construct(construct::ConstructArgs),
    /// Energy and moment along an angle grid.
    Moment(moment::MomentArgs),
    /// Regime label and bound value on a two-parameter grid.
    PhaseDiagram(phase::PhaseArgs),
    /// Fit the scaling exponent of optimized energies along a one-parameter sweep.
    VerifyScaling(scaling::ScalingArgs),
}

/// Sample geometry shared by every command.
#[derive(Args, Clone, Debug)]
pub struct SpecArgs {
    /// Total thickness.
    #[arg(long = "h")]
    pub h: f64,
    /// Half-length of the sample.
    #[arg(long = "L")]
    pub l: f64,
    /// Number of plies.
    #[arg(long = "N", id = "plies")]
    pub n: usize,
    /// Delamination energy per unit interface length.
    #[arg(long)]
    pub gamma: f64,
}

impl SpecArgs {
    pub fn spec(&self) -> Result<Spec, Failure> {
        Spec::new(self.h, self.l, self.n, self.gamma).map_err(|e| Failure::Usage(e.to_string()))
    }
}

#[derive(Debug)]
pub enum Failure {
    Usage(String),
    Certification(String),
    Regime(String),
    Slope(String),
    Runtime(String),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Certification(_) => 3,
            Failure::Regime(_) => 4,
            Failure::Slope(_) | Failure::Runtime(_) => 1,
        }
    }

    fn message(&self) -> &str {
        match self {
            Failure::Usage(m)
            | Failure::Certification(m)
            | Failure::Regime(m)
            | Failure::Slope(m)
            | Failure::Runtime(m) => m,
        }
    }
}

impl From<std::io::Error> for Failure {
    fn from(e: std::io::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<csv::Error> for Failure {
    fn from(e: csv::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<serde_json::Error> for Failure {
    fn from(e: serde_json::Error) -> Self {
        Failure::Runtime(e.to_string())
    }
}

impl From<plyfold::Error> for Failure {
    fn from(e: plyfold::Error) -> Self {
        // every library error traces back to a flag value
        Failure::Usage(e.to_string())
    }
}

fn init_threads() -> Result<(), Failure> {
    if let Ok(v) = std::env::var("PLYFOLD_THREADS") {
        let n: usize = v
            .parse()
            .ok()
            .filter(|&n| n > 0)
            .ok_or_else(|| Failure::Usage(format!("PLYFOLD_THREADS must be a positive integer, got '{v}'")))?;
        rayon::ThreadPoolBuilder::new().num_threads(n).build_global().map_err(|e| Failure::Runtime(e.to_string()))?;
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let run = init_threads().and_then(|()| match cli.command {
        Command::Construct(a) => construct::run(&a),
        Command::Moment(a) => moment::run(&a),
        Command::PhaseDiagram(a) => phase::run(&a),
        Command::VerifyScaling(a) => scaling::run(&a),
    });
    match run {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            eprintln!("error: {}", f.message());
            ExitCode::from(f.code())
        }
    }
}
