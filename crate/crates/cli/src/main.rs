//! `bwcv`: run committee rules, verify outcomes and generate instances.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Instant;

use bwcv::axioms::{verify_outcome, Axiom};
use bwcv::bw_mes::Completion;
use bwcv::harness::format::{parse_approval_lines, read_instance, write_instance};
use bwcv::harness::report::{parse_outcome, RunReport, VerdictRecord};
use bwcv::harness::{generate_instance, guaranteed_axioms, run_rule, Rule};
use bwcv::limits::Limits;
use bwcv::Error;
use clap::{Parser, Subcommand};
use log::{info, warn};

#[derive(Parser)]
#[command(
    name = "bwcv",
    version,
    about = "Best-of-both-worlds committee lotteries"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Run a rule on an instance file and write a JSON report.
    Run {
        #[arg(long, value_parser = parse_rule)]
        rule: Rule,
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        out: PathBuf,
        /// How BW-MES fills the fractional committee after the MES phase.
        #[arg(long, default_value = "default", value_parser = parse_completion)]
        completion: Completion,
        /// Accepted for interface stability; every rule is deterministic.
        #[arg(long)]
        seed: Option<u64>,
        /// Comma-separated axioms to check; defaults to the rule's guarantees.
        #[arg(long)]
        axioms: Option<String>,
    },
    /// Check axioms on a lottery or committee (a run report works as input).
    Verify {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        outcome: PathBuf,
        #[arg(long, default_value = "")]
        axioms: String,
        /// Write verdicts here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a random instance file.
    Gen {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        density: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: PathBuf,
    },
    /// Convert a one-ballot-per-line approval profile to an instance file.
    Convert {
        #[arg(long = "in")]
        input: PathBuf,
        #[arg(long)]
        k: usize,
        /// Number of candidates; defaults to the largest index used.
        #[arg(long)]
        m: Option<usize>,
        #[arg(long)]
        out: PathBuf,
    },
}

fn parse_rule(s: &str) -> Result<Rule, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

fn parse_completion(s: &str) -> Result<Completion, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

enum Failure {
    Lib(Error),
    Io(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Lib(e)
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).map_err(|e| Failure::Io(format!("cannot write {}: {e}", path.display())))
}

fn read_file(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path)
        .map_err(|e| Failure::Io(format!("cannot read {}: {e}", path.display())))
}

fn execute(command: Command) -> Result<(), Failure> {
    let limits = Limits::from_env();
    match command {
        Command::Run {
            rule,
            input,
            out,
            completion,
            seed,
            axioms,
        } => {
            let inst = read_instance(&input)?;
            if seed.is_some() {
                info!("--seed ignored: {rule} is deterministic");
            }
            if rule.is_exponential() {
                warn!("{rule} enumerates candidate subsets; running time grows exponentially in m");
            }
            let axioms = match axioms {
                Some(list) => Axiom::parse_list(&list)?,
                None => guaranteed_axioms(rule),
            };
            let start = Instant::now();
            let result = run_rule(&inst, rule, completion)?;
            let elapsed = start.elapsed();
            let verdicts = verify_outcome(&inst, &result.outcome, &axioms, &limits)?;
            for v in verdicts.iter().filter(|v| !v.satisfied()) {
                warn!("{} violated", v.axiom);
            }
            let report = RunReport::new(rule.name(), &inst, &result, &verdicts, elapsed);
            write_file(&out, &report.to_json())
        }
        Command::Verify {
            input,
            outcome,
            axioms,
            out,
        } => {
            let inst = read_instance(&input)?;
            let outcome = parse_outcome(&read_file(&outcome)?, &inst)?;
            let axioms = Axiom::parse_list(&axioms)?;
            let records: Vec<VerdictRecord> = verify_outcome(&inst, &outcome, &axioms, &limits)?
                .iter()
                .map(VerdictRecord::from)
                .collect();
            let mut text = serde_json::to_string_pretty(&records).expect("verdicts serialize");
            text.push('\n');
            match out {
                Some(path) => write_file(&path, &text),
                None => {
                    print!("{text}");
                    Ok(())
                }
            }
        }
        Command::Gen {
            n,
            m,
            k,
            density,
            seed,
            out,
        } => {
            let inst = generate_instance(n, m, k, density, seed)?;
            write_file(&out, &write_instance(&inst))
        }
        Command::Convert { input, k, m, out } => {
            let inst = parse_approval_lines(&read_file(&input)?, k, m)?;
            write_file(&out, &write_instance(&inst))
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Lib(e)) => {
            eprintln!("error: {e}");
            match e {
                Error::SizeLimitExceeded { .. } => ExitCode::from(3),
                e if e.is_validation() => ExitCode::from(2),
                _ => ExitCode::from(1),
            }
        }
        Err(Failure::Io(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
    }
}
