//! Command line front end.
//!
//! Exit codes: 0 means the command completed (verdicts may still be
//! negative), 1 means an input or validation problem, 2 means the request
//! was infeasible (instance or search space too large).

mod report;

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use proxring::error::AlgebraError;
use proxring::format::{parse_instance, FormatError, ParsedInstance};
use proxring::harness::{Family, GenParams, TheoremId, ALL_THEOREMS};
use proxring::MAX_POINTS;

pub const ENV_MAX_POINTS: &str = "PROXRING_MAX_POINTS";

#[derive(Parser)]
#[command(
    name = "proxring",
    version,
    about = "Descriptive proximity spaces with approximately algebraic structure: \
             classify ideal-like subsets and stress-test the theory's claims"
)]
struct Cli {
    /// Emit machine-readable JSON with stable key order.
    #[arg(long, global = true)]
    machine: bool,

    /// Largest accepted instance, in points (default from PROXRING_MAX_POINTS, capped at 64).
    #[arg(long, global = true)]
    max_points: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide the ring-like axioms of an instance and report witnesses.
    CheckStructure { file: PathBuf },
    /// Run every ideal predicate on a named ideal.
    Classify {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Elements with some power inside the named ideal.
    Radical {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
    },
    /// Elements whose product with the given element lands in the ideal.
    Colon {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        #[arg(long)]
        element: String,
    },
    /// Cosets of the carrier modulo the named ideal.
    Quotient {
        file: PathBuf,
        #[arg(long)]
        ideal: String,
        /// Test zero cosets against the ideal itself instead of its upper
        /// approximation.
        #[arg(long)]
        strict: bool,
    },
    /// Enumerate every subset satisfying the ideal axioms.
    Ideals { file: PathBuf },
    /// Generate instances, run the claim-checking suite, and report.
    Suite {
        /// exhaustive | modular | random
        #[arg(long, default_value = "modular")]
        family: String,
        /// Upper bound on points per instance.
        #[arg(long = "n-points", default_value_t = 8)]
        n_points: usize,
        /// Stream length for the sampled families.
        #[arg(long, default_value_t = 100)]
        samples: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Comma-separated claim ids (default: all).
        #[arg(long)]
        theorems: Option<String>,
    },
    /// Write the built-in fixtures as instance files.
    Fixtures {
        #[arg(long, default_value = ".")]
        dir: PathBuf,
    },
}

struct CliError {
    exit: u8,
    message: String,
}

impl CliError {
    fn input(message: impl Into<String>) -> Self {
        CliError {
            exit: 1,
            message: message.into(),
        }
    }
}

impl From<AlgebraError> for CliError {
    fn from(e: AlgebraError) -> Self {
        let exit = match e {
            AlgebraError::TooLarge { .. }
            | AlgebraError::SizeOverflow { .. }
            | AlgebraError::InfeasibleParams { .. } => 2,
            _ => 1,
        };
        CliError {
            exit,
            message: e.to_string(),
        }
    }
}

impl From<FormatError> for CliError {
    fn from(e: FormatError) -> Self {
        match e {
            FormatError::Algebra(inner) => inner.into(),
            other => CliError {
                exit: 1,
                message: other.to_string(),
            },
        }
    }
}

fn effective_max_points(flag: Option<usize>) -> Result<usize, CliError> {
    let from_env = match std::env::var(ENV_MAX_POINTS) {
        Ok(v) => Some(v.parse::<usize>().map_err(|_| {
            CliError::input(format!("{ENV_MAX_POINTS} must be an integer, got `{v}`"))
        })?),
        Err(_) => None,
    };
    let requested = flag.or(from_env).unwrap_or(MAX_POINTS);
    if requested == 0 || requested > MAX_POINTS {
        return Err(CliError {
            exit: 2,
            message: format!("max points must be between 1 and {MAX_POINTS}, got {requested}"),
        });
    }
    Ok(requested)
}

fn load(file: &PathBuf, max_points: usize) -> Result<ParsedInstance, CliError> {
    let text = std::fs::read_to_string(file)
        .map_err(|e| CliError::input(format!("cannot read {}: {e}", file.display())))?;
    Ok(parse_instance(&text, max_points)?)
}

fn named_ideal(parsed: &ParsedInstance, name: &str) -> Result<proxring::PointSet, CliError> {
    parsed
        .ideals
        .get(name)
        .copied()
        .ok_or_else(|| CliError::input(format!("no ideal named `{name}` in the instance file")))
}

fn named_point(parsed: &ParsedInstance, name: &str) -> Result<usize, CliError> {
    parsed
        .point_index(name)
        .ok_or_else(|| CliError::input(format!("no point named `{name}` in the instance file")))
}

fn parse_theorems(list: Option<&str>) -> Result<Vec<TheoremId>, CliError> {
    match list {
        None => Ok(ALL_THEOREMS.to_vec()),
        Some(list) => list
            .split(',')
            .map(|tok| tok.trim().parse::<TheoremId>().map_err(CliError::input))
            .collect(),
    }
}

fn run(cli: Cli) -> Result<String, CliError> {
    let max_points = effective_max_points(cli.max_points)?;
    match cli.command {
        Command::CheckStructure { file } => {
            let parsed = load(&file, max_points)?;
            Ok(report::check_structure(&parsed, cli.machine))
        }
        Command::Classify { file, ideal } => {
            let parsed = load(&file, max_points)?;
            let w = named_ideal(&parsed, &ideal)?;
            let rep = proxring::classify_ideal(&parsed.instance, w)?;
            Ok(report::classify(&parsed, &ideal, &rep, cli.machine))
        }
        Command::Radical { file, ideal } => {
            let parsed = load(&file, max_points)?;
            let w = named_ideal(&parsed, &ideal)?;
            let rad = proxring::radical(&parsed.instance, w)?;
            Ok(report::members(
                &parsed,
                "radical",
                &ideal,
                rad,
                cli.machine,
            ))
        }
        Command::Colon {
            file,
            ideal,
            element,
        } => {
            let parsed = load(&file, max_points)?;
            let w = named_ideal(&parsed, &ideal)?;
            let s = named_point(&parsed, &element)?;
            let c = proxring::colon(&parsed.instance, w, s)?;
            Ok(report::members(
                &parsed,
                "colon",
                &format!("{ideal}:{element}"),
                c,
                cli.machine,
            ))
        }
        Command::Quotient {
            file,
            ideal,
            strict,
        } => {
            let parsed = load(&file, max_points)?;
            let w = named_ideal(&parsed, &ideal)?;
            let mode = if strict {
                proxring::ZeroTestMode::Strict
            } else {
                proxring::ZeroTestMode::Descriptive
            };
            let q = proxring::quotient(&parsed.instance, w, mode)?;
            Ok(report::quotient(&parsed, &ideal, &q, cli.machine))
        }
        Command::Ideals { file } => {
            let parsed = load(&file, max_points)?;
            let ideals = proxring::enumerate_ideals(&parsed.instance)?;
            Ok(report::ideal_list(&parsed, &ideals, cli.machine))
        }
        Command::Suite {
            family,
            n_points,
            samples,
            seed,
            theorems,
        } => {
            let family: Family = family.parse().map_err(CliError::input)?;
            if n_points > max_points {
                return Err(CliError {
                    exit: 2,
                    message: format!("--n-points {n_points} exceeds the limit of {max_points}"),
                });
            }
            let params = GenParams {
                family,
                n_min: if family == Family::Exhaustive { 1 } else { 2 },
                n_max: n_points,
                alphabet: 3,
                samples,
                seed,
            };
            let selection = parse_theorems(theorems.as_deref())?;
            Ok(report::suite(&params, &selection, cli.machine)?)
        }
        Command::Fixtures { dir } => {
            let mut written = Vec::new();
            for (name, parsed) in proxring::harness::all_fixtures() {
                let path = dir.join(format!("{name}.inst"));
                let text = proxring::format::serialize_instance(&parsed);
                std::fs::write(&path, text).map_err(|e| {
                    CliError::input(format!("cannot write {}: {e}", path.display()))
                })?;
                written.push(path.display().to_string());
            }
            if cli.machine {
                Ok(serde_json::to_string_pretty(&written).expect("serializable") + "\n")
            } else {
                Ok(written.join("\n") + "\n")
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // Help and version requests are not errors.
            if e.use_stderr() {
                eprint!("{e}");
                return ExitCode::from(1);
            }
            print!("{e}");
            return ExitCode::SUCCESS;
        }
    };
    match run(cli) {
        Ok(output) => {
            print!("{output}");
            ExitCode::SUCCESS
        }
        Err(e) => {
            eprintln!("error: {}", e.message);
            ExitCode::from(e.exit)
        }
    }
}
