use std::io::Read;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use twalex::commands::{cmd_alex, cmd_bound, cmd_compare, cmd_delta, cmd_torsion, Outcome};
use twalex::error::EXIT_TEST_FAILURE;
use twalex::schema::{InputDocument, Problem};
use twalex::selftest::selftest;
use twalex::{corpus, CliError};

/// Twisted Alexander polynomials, Reidemeister torsion and the degree bounds they give.
#[derive(Parser)]
#[command(name = "twalex", version)]
struct Cli {
    /// Emit JSON (the only format; accepted for explicitness).
    #[arg(long, global = true)]
    json: bool,
    /// Pretty-print the report.
    #[arg(long, global = true)]
    pretty: bool,
    /// Add wall-clock time to the report. Off by default so reports are reproducible.
    #[arg(long, global = true)]
    timing: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Source {
    /// Input document; `-` reads standard input.
    #[arg(long, short, conflicts_with = "corpus")]
    input: Option<PathBuf>,
    /// A bundled corpus document by name.
    #[arg(long)]
    corpus: Option<String>,
}

#[derive(Subcommand)]
enum Command {
    /// Alexander polynomials Δ_0, …, Δ_n and their degrees.
    Alex(Source),
    /// Reidemeister torsion.
    Torsion {
        #[command(flatten)]
        source: Source,
        /// Recompute along a τ-chain and from the Alexander polynomials; exit 4 on disagreement.
        #[arg(long)]
        verify: bool,
    },
    /// Thurston norm lower bound, with a genus bound for knots.
    Bound(Source),
    /// Harvey's degree δ̄ for the document's pair (the initial pair if none).
    Delta(Source),
    /// Monotonicity of δ̄ (and of torsion degrees, given a rep) across a triple.
    Compare(Source),
    /// Property suite plus the corpus.
    Selftest {
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Random cases per property.
        #[arg(long, default_value_t = 24)]
        cases: usize,
        /// Use the JSON documents in this directory instead of the bundled corpus.
        #[arg(long)]
        corpus_dir: Option<PathBuf>,
    },
    /// Names of the bundled corpus documents.
    Corpus,
}

fn load(source: &Source) -> Result<Problem, CliError> {
    let text = match (&source.input, &source.corpus) {
        (Some(path), _) if path.as_os_str() == "-" => {
            let mut s = String::new();
            std::io::stdin().read_to_string(&mut s)?;
            s
        }
        (Some(path), _) => std::fs::read_to_string(path)?,
        (None, Some(name)) => corpus::get(name)
            .ok_or_else(|| CliError::Parse(format!("no bundled document \"{name}\"")))?
            .to_string(),
        (None, None) => return Err(CliError::Parse("give --input FILE or --corpus NAME".into())),
    };
    Problem::from_document(&InputDocument::from_json(&text)?)
}

fn documents(dir: &Option<PathBuf>) -> Result<Vec<(String, String)>, CliError> {
    let Some(dir) = dir else {
        return Ok(corpus::BUNDLED
            .iter()
            .map(|(n, t)| (n.to_string(), t.to_string()))
            .collect());
    };
    let mut out = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.extension().is_some_and(|e| e == "json") {
            let name = path.file_stem().unwrap().to_string_lossy().into_owned();
            out.push((name, std::fs::read_to_string(&path)?));
        }
    }
    out.sort();
    Ok(out)
}

fn dispatch(command: &Command) -> Result<Outcome, CliError> {
    match command {
        Command::Alex(s) => cmd_alex(&load(s)?),
        Command::Torsion { source, verify } => cmd_torsion(&load(source)?, *verify),
        Command::Bound(s) => cmd_bound(&load(s)?),
        Command::Delta(s) => cmd_delta(&load(s)?),
        Command::Compare(s) => cmd_compare(&load(s)?),
        Command::Selftest {
            seed,
            cases,
            corpus_dir,
        } => {
            let (checks, ok) = selftest(*seed, *cases, &documents(corpus_dir)?);
            let failed = checks.iter().filter(|c| !c.passed).count();
            let report = json!({
                "command": "selftest",
                "seed": seed.to_string(),
                "checks": checks,
                "failed": failed.to_string(),
                "passed": ok,
            });
            Ok(Outcome {
                report,
                failure: None,
            })
        }
        Command::Corpus => Ok(Outcome {
            report: json!({ "command": "corpus", "documents": corpus::names() }),
            failure: None,
        }),
    }
}

fn print(report: &Value, pretty: bool) {
    let text = if pretty {
        serde_json::to_string_pretty(report)
    } else {
        serde_json::to_string(report)
    };
    println!("{}", text.expect("reports serialize"));
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let start = Instant::now();
    let result = dispatch(&cli.command);
    match result {
        Ok(Outcome {
            mut report,
            failure,
        }) => {
            if cli.timing {
                report["timing_ms"] = json!(start.elapsed().as_millis().to_string());
            }
            print(&report, cli.pretty);
            let selftest_failed = report.get("passed") == Some(&Value::Bool(false));
            match failure {
                Some(e) => {
                    eprintln!("twalex: {e}");
                    ExitCode::from(e.exit_code() as u8)
                }
                None if selftest_failed => ExitCode::from(EXIT_TEST_FAILURE as u8),
                None => ExitCode::SUCCESS,
            }
        }
        Err(e) => {
            eprintln!("twalex: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
