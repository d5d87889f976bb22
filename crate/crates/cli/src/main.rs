mod checks;
mod report;
mod target;

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};

use cellproj::complex::write_gcx;
use cellproj::gem::{complex_to_gem, export_gem};
use cellproj::homology::homology;
use cellproj::Error;

use crate::checks::{Check, Status};
use crate::target::Target;

#[derive(Parser, Debug)]
#[command(
    name = "cellproj",
    version,
    about = "Build and certify simplicial cell decompositions of (S^2)^n, CP^n and RP^n"
)]
struct Cli {
    /// Worker threads (0 = one per core).
    #[arg(long, global = true, env = "CELLPROJ_THREADS", default_value_t = 0)]
    threads: usize,

    /// Progress messages on standard error.
    #[arg(short, long, global = true, action = clap::ArgAction::Count)]
    verbose: u8,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Construct a complex and write it out.
    Build {
        #[arg(long, value_enum)]
        target: Target,
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value_t = Format::Gcx)]
        format: Format,
        /// Output file (standard output when absent).
        #[arg(long, short)]
        output: Option<PathBuf>,
    },
    /// Run certificate checks on a constructed or loaded complex.
    Verify {
        #[arg(long, value_enum, required_unless_present = "input")]
        target: Option<Target>,
        #[arg(long, required_unless_present = "input")]
        n: Option<usize>,
        /// A GCX or GEM file to check instead of a constructed complex.
        #[arg(long, conflicts_with_all = ["target", "n"])]
        input: Option<PathBuf>,
        /// Comma-separated check names.
        #[arg(long, value_enum, value_delimiter = ',', conflicts_with = "all")]
        checks: Vec<Check>,
        /// Run every check (the default when no checks are named).
        #[arg(long)]
        all: bool,
        /// Soft time limit; checks not started in time are skipped.
        #[arg(long)]
        budget_seconds: Option<u64>,
    },
    /// Print tables of face counts, derived face counts or homology.
    Report {
        #[arg(long, value_enum)]
        table: Table,
        /// A single value or a range such as `1..4`.
        #[arg(long, default_value = "1..4")]
        n: String,
        #[arg(long)]
        budget_seconds: Option<u64>,
    },
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Gcx,
    Gem,
    Fvector,
    HomologyReport,
}

#[derive(Copy, Clone, Debug, PartialEq, Eq, ValueEnum)]
pub enum Table {
    Fvectors,
    Derived,
    Homology,
}

/// Exit statuses.
const EXIT_FAIL: u8 = 1;
const EXIT_CONFIG: u8 = 2;
const EXIT_INTERNAL: u8 = 3;

fn exit_for(e: &Error) -> u8 {
    match e {
        Error::CapacityExceeded(_) | Error::InvalidArgument(_) | Error::DimensionTooLarge(_) => {
            EXIT_CONFIG
        }
        _ => EXIT_INTERNAL,
    }
}

pub struct Progress {
    verbose: bool,
    start: Instant,
    budget: Option<Duration>,
}

impl Progress {
    fn new(verbose: bool, budget_seconds: Option<u64>) -> Self {
        Progress {
            verbose,
            start: Instant::now(),
            budget: budget_seconds.map(Duration::from_secs),
        }
    }

    pub fn step(&self, msg: &str) {
        if self.verbose {
            eprintln!("[{:>8.2}s] {msg}", self.start.elapsed().as_secs_f64());
        }
    }

    pub fn over_budget(&self) -> bool {
        self.budget.is_some_and(|b| self.start.elapsed() >= b)
    }
}

fn write_output(path: Option<&PathBuf>, text: &str) -> std::io::Result<()> {
    match path {
        Some(p) => std::fs::write(p, text),
        None => std::io::stdout().lock().write_all(text.as_bytes()),
    }
}

fn run(cli: Cli) -> Result<u8, (u8, String)> {
    if cli.threads > 0 {
        rayon::ThreadPoolBuilder::new()
            .num_threads(cli.threads)
            .build_global()
            .map_err(|e| (EXIT_CONFIG, e.to_string()))?;
    }
    let lib = |e: Error| (exit_for(&e), e.to_string());
    match cli.command {
        Command::Build {
            target,
            n,
            format,
            output,
        } => {
            target.check_bounds(n).map_err(lib)?;
            let progress = Progress::new(cli.verbose > 0, None);
            progress.step(&format!("building {} for n = {n}", target.name()));
            let c = target.build(n).map_err(lib)?;
            let text = match format {
                Format::Gcx => write_gcx(&c),
                Format::Gem => export_gem(&complex_to_gem(&c).map_err(lib)?),
                Format::Fvector => format!("{}\n", c.f_vector().map_err(lib)?),
                Format::HomologyReport => {
                    progress.step("computing homology");
                    homology(&c).map_err(lib)?.to_string()
                }
            };
            write_output(output.as_ref(), &text).map_err(|e| (EXIT_CONFIG, e.to_string()))?;
            Ok(0)
        }
        Command::Verify {
            target,
            n,
            input,
            checks,
            all,
            budget_seconds,
        } => {
            let progress = Progress::new(cli.verbose > 0, budget_seconds);
            let selected = if all || checks.is_empty() {
                Check::ALL.to_vec()
            } else {
                checks
            };
            let subject = match input {
                Some(path) => checks::Subject::from_file(&path).map_err(|e| (EXIT_CONFIG, e))?,
                None => {
                    let (t, n) = (target.unwrap(), n.unwrap());
                    t.check_bounds(n).map_err(lib)?;
                    checks::Subject::Constructed { target: t, n }
                }
            };
            let rows = checks::run_checks(&subject, &selected, &progress);
            let text = checks::format_table(&subject, &rows);
            write_output(None, &text).map_err(|e| (EXIT_CONFIG, e.to_string()))?;
            if rows.iter().any(|r| r.status == Status::Fail) {
                Ok(EXIT_FAIL)
            } else {
                Ok(0)
            }
        }
        Command::Report {
            table,
            n,
            budget_seconds,
        } => {
            let range = report::parse_range(&n).map_err(|e| (EXIT_CONFIG, e))?;
            let progress = Progress::new(cli.verbose > 0, budget_seconds);
            let text = report::table(table, range, &progress).map_err(lib)?;
            write_output(None, &text).map_err(|e| (EXIT_CONFIG, e.to_string()))?;
            Ok(0)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err((code, msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(code)
        }
    }
}
