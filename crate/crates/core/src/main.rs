use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use cube_orbits::cli::{self, Format, OutputRecord, SuiteChoice, TableName, WitnessKind};
use cube_orbits::oracle::Ground;
use cube_orbits::CubeKind;

const EXIT_FAILURE: u8 = 1;
const EXIT_USAGE: u8 = 2;

/// Vertex and edge orbits of Fibonacci and Lucas cubes.
#[derive(Debug, Parser)]
#[command(name = "cube-orbits", version)]
struct Args {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = FormatArg::Plain)]
    format: FormatArg,

    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Print one of the orbit tables for n = 1..=max.
    Table {
        /// gamma-v, gamma-e, lucas-classes, lambda-v or lambda-e.
        which: TableName,
        /// Last column; defaults to the reference range of the table.
        #[arg(long)]
        max: Option<usize>,
    },
    /// Run verification suites and report the first counterexample of each check.
    Verify {
        /// formulas, oracle-vs-formula, bijections, automorphisms or all.
        suite: SuiteChoice,
        /// Largest n to check; defaults to each suite's bound.
        #[arg(long)]
        max: Option<usize>,
    },
    /// List orbits by brute force: one line per orbit with representative and size.
    Orbits {
        #[arg(value_enum)]
        cube: CubeArg,
        n: usize,
        #[arg(value_enum)]
        ground: GroundArg,
    },
    /// Construct a witness string and recompute its dihedral orbit size.
    Witness {
        #[arg(value_enum)]
        kind: WitnessArg,
        n: usize,
        /// Orbit size, for vertex-orbit-size witnesses.
        k: Option<usize>,
    },
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum FormatArg {
    Plain,
    Csv,
    Json,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum CubeArg {
    Gamma,
    Lambda,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum GroundArg {
    Vertices,
    Edges,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
enum WitnessArg {
    Asymmetric,
    VertexOrbitSize,
}

fn run(args: Args) -> cube_orbits::Result<(OutputRecord, u8)> {
    let record = match args.command {
        Command::Table { which, max } => cli::cmd_table(which, max.unwrap_or_else(|| which.default_max()))?,
        Command::Verify { suite, max } => {
            let record = cli::cmd_verify(suite, max);
            let code = if cli::verify_has_failures(&record) {
                EXIT_FAILURE
            } else if record.failed() {
                // Only refusals: the requested range was out of bounds.
                EXIT_USAGE
            } else {
                0
            };
            return Ok((record, code));
        }
        Command::Orbits { cube, n, ground } => {
            let cube = match cube {
                CubeArg::Gamma => CubeKind::Gamma,
                CubeArg::Lambda => CubeKind::Lambda,
            };
            let ground = match ground {
                GroundArg::Vertices => Ground::Vertices,
                GroundArg::Edges => Ground::Edges,
            };
            cli::cmd_orbits(cube, n, ground)?
        }
        Command::Witness { kind, n, k } => {
            let kind = match kind {
                WitnessArg::Asymmetric => WitnessKind::Asymmetric,
                WitnessArg::VertexOrbitSize => WitnessKind::VertexOrbitSize,
            };
            cli::cmd_witness(kind, n, k)?
        }
    };
    let code = if record.failed() { EXIT_FAILURE } else { 0 };
    Ok((record, code))
}

fn main() -> ExitCode {
    let args = match Args::try_parse() {
        Ok(args) => args,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    let format = match args.format {
        FormatArg::Plain => Format::Plain,
        FormatArg::Csv => Format::Csv,
        FormatArg::Json => Format::Json,
    };
    match run(args) {
        Ok((record, code)) => {
            print!("{}", record.render(format));
            ExitCode::from(code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
