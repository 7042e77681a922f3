//! Command-line front end for the toric residue toolkit.

mod checks;
mod problem;
mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};

use crate::checks::Options;
use crate::problem::Problem;
use crate::report::Report;

#[derive(Parser, Debug)]
#[command(name = "toric-mirror", version, about = "Exact toric residues, mirror series and mixed volumes")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Degree bound for series and identity checks (overrides the file).
    #[arg(long, global = true)]
    bound: Option<u32>,

    /// Completion vector, comma separated (overrides the file).
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    v0: Option<Vec<i64>>,

    /// Seed for the randomized checks.
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,

    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Structural checks: triangulation, coherence, completion, nef-partition, polynomial.
    Validate { file: PathBuf },
    /// Series coefficients up to the degree bound.
    Series { file: PathBuf },
    /// The full identity suite.
    Verify { file: PathBuf },
    /// Mixed volumes of the nef-partition and the mixed residues that compute them.
    MixedVolume { file: PathBuf },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

fn run(cli: &Cli) -> anyhow::Result<Report> {
    let file = match &cli.command {
        Command::Validate { file } | Command::Series { file } | Command::Verify { file } | Command::MixedVolume { file } => file,
    };
    let mut problem = Problem::load(file)?;
    if let Some(v0) = &cli.v0 {
        problem.v0 = Some(v0.iter().map(|&x| x.into()).collect());
    }
    let opts = Options {
        bound: cli.bound,
        seed: cli.seed,
    };
    Ok(match cli.command {
        Command::Validate { .. } => {
            let mut report = Report::new("validate", &problem.name);
            checks::validate(&problem, &mut report);
            report
        }
        Command::Series { .. } => checks::series(&problem, &opts)?,
        Command::Verify { .. } => checks::verify(&problem, &opts)?,
        Command::MixedVolume { .. } => checks::mixed_volume(&problem, &opts)?,
    })
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(jobs) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global() {
            log::warn!("could not size the thread pool: {e}");
        }
    }
    match run(&cli) {
        Ok(report) => {
            let text = match cli.format {
                Format::Json => report.to_json(),
                Format::Text => report.to_text(),
            };
            print!("{text}");
            if report.passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
