mod commands;
mod dot;
mod format;

use std::io::Write as _;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use anyhow::{Context, Result};
use clap::Parser;
use indist::arena::{self, Severity};
use indist::KnowledgeType;
use serde_json::{json, Value};

use commands::{Command, Options, Report};
use format::{Document, Input};

const EXIT_INPUT: u8 = 2;
const EXIT_UNDECIDED: u8 = 3;

/// Decide privacy and equilibrium questions on games described in JSON.
#[derive(Debug, Parser)]
#[command(name = "indist", version)]
struct Cli {
    /// Input document.
    #[arg(long)]
    input: PathBuf,
    /// One of: validate, winnable, winnable-map, feasible-inf-sets, obj-set,
    /// exists-ois, exists-winning-ois, check-ois, exists-ne, exists-multi-ne,
    /// exists-oie, exists-oine, is-ne-outcome, is-oie, equiv, export-dot.
    #[arg(long)]
    command: Command,
    #[arg(long)]
    knw: Option<KnowledgeType>,
    #[arg(long)]
    player: Option<String>,
    /// Stop subset enumeration after N sets and report "undecided".
    #[arg(long)]
    max_subsets: Option<u64>,
    /// Also run the brute-force oracle and report agreement.
    #[arg(long)]
    oracle: bool,
    /// Write the arena, with the witness cycle in bold, as DOT.
    #[arg(long)]
    emit_dot: Option<PathBuf>,
    /// Synthesize a strategy profile for equilibrium witnesses.
    #[arg(long)]
    witness_strategies: bool,
    /// Include wall time in the statistics (breaks byte-identical output).
    #[arg(long)]
    timing: bool,
}

fn load(path: &PathBuf) -> Result<Document> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    serde_json::from_str(&text).with_context(|| format!("parsing {}", path.display()))
}

fn print(doc: &Value) {
    let text = serde_json::to_string_pretty(doc).expect("json values serialize");
    // a closed pipe is not worth a panic
    let _ = writeln!(std::io::stdout().lock(), "{text}");
}

fn document(cli: &Cli, r: &Report, started: Instant) -> Value {
    let mut stats = json!({
        "subsets": r.stats.subsets,
        "solver_calls": r.stats.solver_calls,
    });
    if cli.timing {
        stats["wall_ms"] = json!(started.elapsed().as_secs_f64() * 1e3);
    }
    let mut doc = json!({
        "query": r.query,
        "verdict": r.verdict,
        "stats": stats,
    });
    if let Some(w) = &r.witness {
        doc["witness"] = w.clone();
    }
    if let Some(o) = &r.oracle {
        doc["oracle"] = o.clone();
    }
    doc
}

fn run(cli: &Cli) -> Result<ExitCode> {
    let started = Instant::now();
    let doc = load(&cli.input)?;
    if cli.command == Command::Validate {
        if let Some(desc) = &doc.arena {
            let violations = arena::validate(desc);
            if violations.iter().any(|v| v.severity == Severity::Error) {
                print(&json!({
                    "query": { "command": "validate" },
                    "verdict": false,
                    "witness": { "violations": violations },
                    "stats": { "subsets": 0, "solver_calls": 0 },
                }));
                return Ok(ExitCode::from(EXIT_INPUT));
            }
        }
    }
    let input = Input::new(doc)?;
    let opts = Options {
        knw: cli.knw,
        player: cli.player.clone(),
        max_subsets: cli.max_subsets,
        oracle: cli.oracle,
        witness_strategies: cli.witness_strategies,
    };
    let report = commands::run(&input, cli.command, &opts)?;
    if let Some(path) = &cli.emit_dot {
        let text = report
            .dot
            .clone()
            .unwrap_or_else(|| dot::render(&input.arena, report.play.as_ref()));
        std::fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    }
    print(&document(cli, &report, started));
    Ok(if report.undecided {
        ExitCode::from(EXIT_UNDECIDED)
    } else {
        ExitCode::SUCCESS
    })
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(EXIT_INPUT)
        }
    }
}
