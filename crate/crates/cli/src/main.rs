use std::path::PathBuf;
use std::process::ExitCode;

use clap::{ArgGroup, Parser, Subcommand, ValueEnum};

use quatindex::appcli::render::{render_formula, render_lattice, OutputFormat};
use quatindex::appcli::suite::run_suite;
use quatindex::appcli::{
    evaluate_formula, hp_characteristic_data, integrality_lattice, parse_classes,
};
use quatindex::exactalg::fmt_rational;
use quatindex::indexengine::{index_formula_with, EngineConfig, IndexFormula};
use quatindex::Error;

const EXIT_USAGE: u8 = 1;
const EXIT_COMPUTATION: u8 = 2;
const EXIT_CHECK_FAILED: u8 = 3;

/// Index formulas for the quaternionic complexes D_k on 4m-dimensional
/// quaternionic manifolds.
#[derive(Parser, Debug)]
#[command(name = "quatindex", version)]
struct Cli {
    /// Truncation degree for the numerator and Euler class (default 8m)
    #[arg(long, global = true)]
    cap: Option<u32>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print the index of D_k in terms of p_1..p_m and q_1
    Formula {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Evaluate the index of D_k on a manifold
    #[command(group(ArgGroup::new("source").required(true).args(["manifold", "classes"])))]
    Evaluate {
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        /// Built-in model manifold
        #[arg(long, value_enum)]
        manifold: Option<Manifold>,
        /// JSON file with characteristic numbers
        #[arg(long)]
        classes: Option<PathBuf>,
    },
    /// Integer combinations of index formulas with integral q_1 terms
    Integrality {
        #[arg(long)]
        m: usize,
        /// Comma-separated list of k values
        #[arg(long, value_delimiter = ',', required = true)]
        ks: Vec<usize>,
        #[arg(long, value_enum, default_value_t = Format::Text)]
        format: Format,
    },
    /// Run a regression suite
    Check {
        #[arg(long)]
        suite: Suite,
    },
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Format {
    Text,
    Latex,
    Json,
}

impl From<Format> for OutputFormat {
    fn from(f: Format) -> Self {
        match f {
            Format::Text => OutputFormat::Text,
            Format::Latex => OutputFormat::Latex,
            Format::Json => OutputFormat::Json,
        }
    }
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Manifold {
    /// Quaternionic projective space HP^m
    Hp,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
enum Suite {
    Paper,
}

enum Failure {
    Lib(Error),
    Io(String),
    Checks,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn formula(cli_cap: Option<u32>, m: usize, k: usize) -> Result<IndexFormula, Failure> {
    let config = EngineConfig {
        cap: cli_cap,
        ..EngineConfig::default()
    };
    Ok(index_formula_with(m, k, &config)?)
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Formula { m, k, format } => {
            let f = formula(cli.cap, m, k)?;
            println!("{}", render_formula(&f, format.into()));
        }
        Command::Evaluate {
            m,
            k,
            manifold,
            classes,
        } => {
            let data = match (manifold, classes) {
                (Some(Manifold::Hp), _) => {
                    if m < 2 {
                        return Err(
                            Error::InvalidInput(format!("m must be at least 2, got {m}")).into(),
                        );
                    }
                    hp_characteristic_data(m)
                }
                (None, Some(path)) => {
                    let text = std::fs::read_to_string(&path)
                        .map_err(|e| Failure::Io(format!("{}: {e}", path.display())))?;
                    parse_classes(&text)?
                }
                (None, None) => unreachable!("clap requires a source"),
            };
            let f = formula(cli.cap, m, k)?;
            println!("{}", fmt_rational(&evaluate_formula(&f, &data)?));
        }
        Command::Integrality { m, ks, format } => {
            let fs = ks
                .iter()
                .map(|&k| formula(cli.cap, m, k))
                .collect::<Result<Vec<_>, _>>()?;
            println!(
                "{}",
                render_lattice(&integrality_lattice(&fs)?, format.into())
            );
        }
        Command::Check { suite } => {
            let name = match suite {
                Suite::Paper => "paper",
            };
            let results = run_suite(name)?;
            let mut failed = 0;
            for r in &results {
                println!(
                    "{} {}: {}",
                    if r.passed { "PASS" } else { "FAIL" },
                    r.name,
                    r.detail
                );
                failed += usize::from(!r.passed);
            }
            println!(
                "{} of {} checks passed",
                results.len() - failed,
                results.len()
            );
            if failed > 0 {
                return Err(Failure::Checks);
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() {
                ExitCode::from(EXIT_USAGE)
            } else {
                ExitCode::SUCCESS
            };
        }
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(if e.is_computation_error() {
                EXIT_COMPUTATION
            } else {
                EXIT_USAGE
            })
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(Failure::Checks) => ExitCode::from(EXIT_CHECK_FAILED),
    }
}
