//! `enumera`: reproduces the ledgers and runs the verification suites,
//! printing one machine-readable report per invocation.
//!
//! Exit codes: 0 when every check passes, 1 when a check fails, 2 for
//! usage errors and unreadable input.

mod commands;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand, ValueEnum};

use report::Status;

#[derive(Debug, Parser)]
#[command(name = "enumera", version, about = "Exact checks for multi-tangent planes of quartic surfaces")]
pub struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Worker threads for the partitioned scans; 0 picks the library default.
    #[arg(long, global = true, default_value_t = 0)]
    jobs: usize,

    /// Seed for the tetrahedron configurations.
    #[arg(long, global = true, env = "ENUMERA_SEED", default_value_t = 0)]
    seed: u64,

    /// Add wall-clock timings to the report. Off by default so that
    /// reports are byte-for-byte reproducible.
    #[arg(long, global = true)]
    timing: bool,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Tsv,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Closed formulas.
    #[command(subcommand)]
    Formulas(FormulasCmd),
    /// Number of divisors with `tau` double points in a g^1_d on a genus-g curve.
    Dejonquieres {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        g: u32,
        #[arg(long)]
        tau: u32,
    },
    /// Plücker numbers of a plane curve with nodes and cusps.
    Plucker {
        #[arg(long)]
        d: u32,
        #[arg(long)]
        delta: u32,
        #[arg(long)]
        kappa: u32,
    },
    /// Union of four planes degenerating a quartic.
    #[command(subcommand)]
    Tetra(TetraCmd),
    /// Cubic times plane degeneration with a triangle of lines.
    #[command(subcommand)]
    Triangle(TriangleCmd),
    /// Kummer quartics and their sixteen nodes and tropes.
    #[command(subcommand)]
    Kummer(KummerCmd),
    /// Degenerate fibres and the Triple Point Formula.
    #[command(subcommand)]
    Fibre(FibreCmd),
    /// The full acceptance suite.
    #[command(subcommand)]
    Verify(VerifyCmd),
}

#[derive(Debug, Subcommand)]
pub enum FormulasCmd {
    /// Degrees of the varieties of 1-, 2- and 3-tangent planes.
    Table {
        #[arg(long, default_value_t = 2)]
        k_min: u32,
        #[arg(long, default_value_t = 6)]
        k_max: u32,
    },
}

#[derive(Debug, Clone, Copy, Args)]
pub struct DeltaArg {
    /// Number of tangency points.
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..=3))]
    pub delta: u32,
}

#[derive(Debug, Subcommand)]
pub enum TetraCmd {
    /// Component ledger of the limit of the delta-tangent planes.
    Ledger(DeltaArg),
    /// Monoid crude limit and through-point audits for one face.
    Monoid {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..=4))]
        face: u32,
    },
}

#[derive(Debug, Subcommand)]
pub enum TriangleCmd {
    Ledger(DeltaArg),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Model {
    Theta,
    Grid,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum GroupCheck {
    Order,
    #[value(name = "2transitive")]
    TwoTransitive,
    TropeS6,
    OfftropeOrbits,
    All,
}

#[derive(Debug, Subcommand)]
pub enum KummerCmd {
    Ledger(DeltaArg),
    /// The 16_6 incidence of nodes and tropes.
    Incidence {
        #[arg(long, value_enum)]
        model: Model,
        /// Check the 16_6 axioms exhaustively.
        #[arg(long)]
        verify: bool,
    },
    /// Automorphisms of the incidence.
    Group {
        #[arg(long, value_enum, default_value_t = Model::Theta)]
        model: Model,
        #[arg(long, value_enum, default_value_t = GroupCheck::All)]
        check: GroupCheck,
    },
}

#[derive(Debug, Subcommand)]
pub enum FibreCmd {
    /// Check the Triple Point Formula on every double curve.
    Check {
        /// FibreGraph JSON file.
        #[arg(long, conflicts_with = "builtin")]
        file: Option<std::path::PathBuf>,
        /// A bundled fibre; `kummer` is used when no file is given.
        #[arg(long, value_enum)]
        builtin: Option<Builtin>,
        /// Also list every curve check.
        #[arg(long)]
        curves: bool,
        /// Write the fibre graph JSON to this path.
        #[arg(long)]
        dump: Option<std::path::PathBuf>,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Builtin {
    Kummer,
}

#[derive(Debug, Subcommand)]
pub enum VerifyCmd {
    /// Every acceptance check; passes iff all of them do.
    All,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = enumera_core::par::with_jobs(cli.jobs, |exec| commands::run(&cli, exec));
    match result {
        Ok(mut report) => {
            if cli.timing {
                report.timing_ms = Some(start.elapsed().as_millis() as u64);
            }
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Tsv => report.to_tsv(),
            };
            print!("{text}");
            if report.status == Status::Pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(commands::Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
