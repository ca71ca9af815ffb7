use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use serde_json::Value;

use strong_morse::io::run::{IterationRecord, OutputFormat};
use strong_morse::io::{self, BenchManifest, MatchingDoc, ResultDoc, RunConfig, RunReport, TraceDoc};
use strong_morse::morse::{validate_matching, MatchingViolation};
use strong_morse::reduce::{replay, CoreKind};
use strong_morse::{homology, Error};

#[derive(Parser)]
#[command(name = "strong-morse", version, about = "Strong discrete Morse reductions of simplicial complexes")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Reduce a complex and report sizes, traces and results.
    Reduce {
        #[arg(long)]
        input: PathBuf,
        /// strong-core, weak-core, strong-internal or weak-then-strong
        #[arg(long)]
        method: CoreKind,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
        iterations: u64,
        /// Check every iteration against integer homology.
        #[arg(long)]
        verify: bool,
        /// Include wall times (reports are then no longer reproducible byte for byte).
        #[arg(long)]
        timing: bool,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
    },
    /// Check a matching for disjointness, codimension one and acyclicity.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        matching: PathBuf,
    },
    /// Print the integer homology of a complex.
    Homology {
        #[arg(long)]
        input: PathBuf,
    },
    /// Run every input of a manifest with every listed method.
    Bench {
        #[arg(long)]
        manifest: PathBuf,
        /// One row per input with a column per method.
        #[arg(long)]
        wide: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Re-execute recorded traces and compare with the recorded results.
    Replay {
        /// A trace, a single result or a full run report.
        #[arg(long)]
        trace: PathBuf,
        #[arg(long)]
        input: PathBuf,
    },
}

#[derive(Clone, Copy, clap::ValueEnum)]
enum Format {
    Json,
    Csv,
}

enum Failure {
    Verification(String),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::VerificationFailure(_) | Error::ReplayMismatch { .. } | Error::MatchingNotAcyclic(_) => {
                Failure::Verification(e.to_string())
            }
            other => Failure::Usage(other.to_string()),
        }
    }
}

fn emit(text: &str, out: Option<&PathBuf>) -> Result<(), Failure> {
    match out {
        Some(path) => std::fs::write(path, text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn read_json(path: &PathBuf) -> Result<Value, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))?;
    serde_json::from_str(&text).map_err(|e| Failure::Usage(format!("{}: {e}", path.display())))
}

fn parse_doc<T: serde::de::DeserializeOwned>(v: Value) -> Result<T, Failure> {
    serde_json::from_value(v).map_err(|e| Failure::Usage(e.to_string()))
}

fn execute(command: Command) -> Result<(), Failure> {
    match command {
        Command::Reduce {
            input,
            method,
            seed,
            iterations,
            verify,
            timing,
            out,
            format,
        } => {
            let mut config = RunConfig::new(input, method, seed);
            config.iterations = iterations as usize;
            config.verify = verify;
            config.timing = timing;
            config.format = match format {
                Format::Json => OutputFormat::Json,
                Format::Csv => OutputFormat::Csv,
            };
            let (name, hash, k) = io::load_input(&config.input)?;
            let report = io::execute(&config, &name, &hash, &k)?;
            let text = match config.format {
                OutputFormat::Json => report.to_json()?,
                OutputFormat::Csv => report.to_csv()?,
            };
            emit(&text, out.as_ref())?;
            if let Some(bad) = report.iterations.iter().find(|r| r.verification.as_ref().is_some_and(|v| !v.passed)) {
                let reasons = bad.verification.as_ref().map(|v| v.failures.join("; ")).unwrap_or_default();
                return Err(Failure::Verification(format!("iteration {}: {reasons}", bad.iteration)));
            }
            Ok(())
        }
        Command::Validate { input, matching } => {
            let (_, _, k) = io::load_input(&input)?;
            let value = read_json(&matching)?;
            let doc: MatchingDoc = match value {
                Value::Array(_) => MatchingDoc { pairs: parse_doc(value)? },
                other => parse_doc(other)?,
            };
            let m = doc.to_matching(&k)?;
            let report = validate_matching(&k, &m);
            let lab = |s: &strong_morse::Simplex| serde_json::json!(k.labeled(s));
            let violation = report.violation.as_ref().map(|v| match v {
                MatchingViolation::NotInComplex(s) => serde_json::json!({ "not_in_complex": lab(s) }),
                MatchingViolation::MatchedTwice(s) => serde_json::json!({ "matched_twice": lab(s) }),
                MatchingViolation::NotCodimensionOne(a, b) => {
                    serde_json::json!({ "not_codimension_one": [lab(a), lab(b)] })
                }
                MatchingViolation::Cycle(c) => serde_json::json!({ "cycle": c.iter().map(lab).collect::<Vec<_>>() }),
            });
            let json = serde_json::json!({
                "disjoint": report.disjoint,
                "codimension_one": report.codimension_one,
                "acyclic": report.acyclic,
                "violation": violation,
            });
            println!("{json}");
            if report.is_valid() {
                Ok(())
            } else {
                Err(Failure::Verification("matching is not a valid acyclic matching".into()))
            }
        }
        Command::Homology { input } => {
            let (_, _, k) = io::load_input(&input)?;
            let h = homology(&k);
            println!("{}", serde_json::to_string(&h).map_err(Error::from)?);
            Ok(())
        }
        Command::Bench { manifest, wide, out } => {
            let manifest = BenchManifest::load(&manifest)?;
            let reports = io::bench(&manifest)?;
            let rows = io::aggregate_statistics(&reports);
            let text = if wide { io::summary_csv_wide(&rows)? } else { io::summary_csv(&rows)? };
            emit(&text, out.as_ref())?;
            if reports.iter().all(RunReport::verified) {
                Ok(())
            } else {
                Err(Failure::Verification("some iterations failed verification".into()))
            }
        }
        Command::Replay { trace, input } => {
            let (_, _, k) = io::load_input(&input)?;
            let value = read_json(&trace)?;
            let recorded: Vec<ResultDoc> = if value.get("iterations").is_some() {
                let report: RunReport = parse_doc(value)?;
                report.iterations.into_iter().map(|r: IterationRecord| r.result).collect()
            } else if value.get("trace").is_some() {
                vec![parse_doc(value)?]
            } else {
                let doc: TraceDoc = parse_doc(value)?;
                let r = replay(&k, &doc.to_trace(&k)?)?;
                println!("replayed 1 trace: output size {}", r.output_size);
                return Ok(());
            };
            for (i, doc) in recorded.iter().enumerate() {
                let r = replay(&k, &doc.trace.to_trace(&k)?)?;
                if &ResultDoc::new(&k, &r) != doc {
                    return Err(Failure::Verification(format!("result {i} differs from its replay")));
                }
            }
            println!("replayed {} trace(s): all results reproduced", recorded.len());
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match execute(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Verification(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(1)
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
