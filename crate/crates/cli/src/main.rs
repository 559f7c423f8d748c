//! `khova`: run a job file through one command and print a JSON report.
//!
//! Exit codes: 0 success, 1 precondition failure, 2 cap exceeded, 3 parse error.

mod commands;
mod encode;
mod job;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::Parser;
use khova_core::Error;
use serde_json::{json, Value};

use crate::commands::{Run, COMMANDS};
use crate::job::Job;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] Error),
    #[error("job file{}: {msg}", line.map(|l| format!(" line {l}")).unwrap_or_default())]
    Job { line: Option<usize>, msg: String },
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Core(Error::Parse { .. }) | CliError::Job { .. } | CliError::Usage(_) => 3,
            CliError::Core(Error::CapExceeded { .. }) | CliError::Core(Error::Overflow) => 2,
            CliError::Core(_) | CliError::Io(_) => 1,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Core(Error::Parse { .. }) | CliError::Job { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::Core(Error::CapExceeded { .. }) | CliError::Core(Error::Overflow) => {
                "cap_exceeded"
            }
            CliError::Core(Error::Internal(_)) => "internal",
            CliError::Core(_) => "precondition",
            CliError::Io(_) => "io",
        }
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "khova",
    version,
    about = "Khovanskii bases, weight valuations and Newton-Okounkov polytopes"
)]
struct Args {
    /// One of: gb, initial, trop, cone-verify, lineality, val, subduce, khovanskii,
    /// complete, semigroup, nobody, degree, hilbert, compactify, rees-dims, contract.
    command: String,
    /// Job file.
    job: PathBuf,
    /// Critical-pair cap for Buchberger.
    #[arg(long)]
    cap_pairs: Option<usize>,
    /// Degree cap for Buchberger.
    #[arg(long)]
    cap_degree: Option<u64>,
    /// Step cap for subduction.
    #[arg(long)]
    cap_subduction: Option<usize>,
    /// Seed for sampling; falls back to KHOVA_SEED, then to the job's `seed`, then 0.
    #[arg(long, env = "KHOVA_SEED")]
    seed: Option<u64>,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Include wall-clock timing (makes the report nondeterministic).
    #[arg(long)]
    timing: bool,
}

fn run(args: &Args, text: &str) -> Result<(Value, bool, Value), CliError> {
    if !COMMANDS.contains(&args.command.as_str()) {
        return Err(CliError::Usage(format!(
            "unknown command {:?}",
            args.command
        )));
    }
    let job = Job::parse(text)?;
    let mut caps = job.caps()?;
    if let Some(p) = args.cap_pairs {
        caps.max_pairs = p;
    }
    if let Some(d) = args.cap_degree {
        caps.max_degree = d;
    }
    if let Some(s) = args.cap_subduction {
        caps.max_subduction = s;
    }
    let seed = match args.seed {
        Some(s) => s,
        None => job.integer("seed")?.unwrap_or(0),
    };
    let settings = json!({
        "seed": seed,
        "caps": { "pairs": caps.max_pairs, "degree": caps.max_degree, "subduction": caps.max_subduction },
    });
    let outcome = Run {
        job: &job,
        caps,
        seed,
    }
    .execute(&args.command)?;
    Ok((outcome.result, outcome.capped, settings))
}

fn main() -> ExitCode {
    // clap exits with 2 on usage errors, which would collide with "cap exceeded".
    let args = match Args::try_parse() {
        Ok(a) => a,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 3 } else { 0 });
        }
    };
    let start = Instant::now();
    let text = std::fs::read_to_string(&args.job)
        .map_err(|e| CliError::Io(format!("{}: {e}", args.job.display())));
    let mut report = json!({ "command": args.command });
    let code = match text.and_then(|t| {
        report["job"] = Value::String(t.clone());
        run(&args, &t)
    }) {
        Ok((result, capped, settings)) => {
            report["result"] = result;
            report["settings"] = settings;
            report["status"] = json!(if capped { "cap_exceeded" } else { "ok" });
            if capped {
                2
            } else {
                0
            }
        }
        Err(e) => {
            report["status"] = json!("error");
            report["error"] = json!({ "kind": e.kind(), "message": e.to_string() });
            e.exit_code()
        }
    };
    if args.timing {
        report["timing_ms"] = json!(start.elapsed().as_secs_f64() * 1000.0);
    }
    let mut text = serde_json::to_string_pretty(&report).expect("serializable report");
    text.push('\n');
    match &args.out {
        Some(path) => {
            if let Err(e) = std::fs::write(path, &text) {
                eprintln!("khova: cannot write {}: {e}", path.display());
                return ExitCode::from(1);
            }
        }
        None => print!("{text}"),
    }
    ExitCode::from(code)
}
