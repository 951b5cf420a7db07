//! `torschain <command> --scenario <path> [--json] [--seed N]`

mod commands;
mod scenario;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use torschain_core::Error;

#[derive(Parser)]
#[command(name = "torschain", version, about = "Chains of torsion classes on small type-A quivers")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
pub struct Common {
    /// Scenario file (JSON, see docs/scenario.md).
    #[arg(long)]
    pub scenario: PathBuf,
    /// Print a machine-readable report.
    #[arg(long)]
    pub json: bool,
    /// Seed for randomized sweeps.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
}

#[derive(Subcommand)]
pub enum Command {
    /// List the indecomposables.
    Indecs {
        #[command(flatten)]
        common: Common,
    },
    /// The lattice of torsion classes.
    TorsLattice {
        #[command(flatten)]
        common: Common,
    },
    /// Check torsion classes and their torsion pairs.
    TorsCheck {
        #[command(flatten)]
        common: Common,
        /// A named torsion class; default is every named class.
        #[arg(long, conflicts_with = "members")]
        torsion: Option<String>,
        /// A literal comma-separated set of indecomposables.
        #[arg(long)]
        members: Option<String>,
    },
    /// Pieces of a chain and its nonzero phase categories.
    ChainPt {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chain: Option<String>,
        /// Report the single category at this phase.
        #[arg(long)]
        t: Option<String>,
    },
    /// Harder-Narasimhan filtration of a module.
    Hn {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chain: String,
        /// A direct sum such as `S1+2*M[1..2]`.
        #[arg(long)]
        module: String,
    },
    /// Phase word of a module.
    PhaseWord {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chain: String,
        #[arg(long)]
        module: String,
    },
    /// Maximal green sequences.
    MgsList {
        #[command(flatten)]
        common: Common,
    },
    /// Brick labels and c-vectors of maximal green sequences.
    MgsBricks {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        index: Option<usize>,
    },
    /// The chain induced by a stability form.
    StabChain {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        form: Option<String>,
    },
    /// Compare phase categories with semistables for stability forms.
    StabVerify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        form: Option<String>,
        /// Additional random admissible forms.
        #[arg(long, default_value_t = 0)]
        samples: usize,
    },
    /// Wall-crossing identity in the truncated Hall algebra.
    HallVerify {
        #[command(flatten)]
        common: Common,
        #[arg(long, conflicts_with = "torsion")]
        chain: Option<String>,
        /// Check the torsion-pair identity for this named class instead.
        #[arg(long)]
        torsion: Option<String>,
        /// Dimension cap such as `2,2`; default is the scenario's `hall` bound.
        #[arg(long)]
        bound: Option<String>,
    },
    /// Distance between two chains.
    Dist {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chain: String,
        #[arg(long)]
        other: String,
    },
    /// Chamber test: maximal green sequence check against small perturbations.
    ChamberTest {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chain: Option<String>,
        #[arg(long)]
        eps: Option<String>,
    },
    /// Slicing axioms and the slicing round trip.
    SlicingVerify {
        #[command(flatten)]
        common: Common,
        #[arg(long)]
        chain: Option<String>,
    },
}

impl Command {
    fn common(&self) -> &Common {
        match self {
            Command::Indecs { common }
            | Command::TorsLattice { common }
            | Command::TorsCheck { common, .. }
            | Command::ChainPt { common, .. }
            | Command::Hn { common, .. }
            | Command::PhaseWord { common, .. }
            | Command::MgsList { common }
            | Command::MgsBricks { common, .. }
            | Command::StabChain { common, .. }
            | Command::StabVerify { common, .. }
            | Command::HallVerify { common, .. }
            | Command::Dist { common, .. }
            | Command::ChamberTest { common, .. }
            | Command::SlicingVerify { common, .. } => common,
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let common = cli.command.common().clone();
    let result = scenario::load(&common.scenario).and_then(|s| commands::run(&cli.command, &s));
    match result {
        Ok(out) => {
            let mut stdout = std::io::stdout().lock();
            // a closed pipe (`| head`) is not an error worth reporting
            let _ = if common.json {
                writeln!(stdout, "{}", serde_json::to_string_pretty(&out.json).expect("reports serialize"))
            } else {
                write!(stdout, "{}", out.text)
            };
            ExitCode::from(if out.passed { 0 } else { 1 })
        }
        Err(e) => {
            eprintln!("torschain: {e}");
            ExitCode::from(match e {
                Error::Input(_) => 2,
                Error::Resource(_) => 3,
                Error::Internal(_) => 1,
            })
        }
    }
}
