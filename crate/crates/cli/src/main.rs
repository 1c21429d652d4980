//! `ucat`: check, decompose and verify unimodal decompositions of functions
//! on graphs.
//!
//! Exit codes: 0 success, 1 invalid input, 2 budget exceeded, 3 a reduction
//! check disagreed.

mod commands;
mod config;

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::{json, Value};
use thiserror::Error;
use ucat::exact::Budget;
use ucat::gadgets::GadgetKind;

use commands::{DecomposeArgs, Method, OracleProblem, Outcome, Power};
use config::BudgetFlags;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error("{0}")]
    Budget(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Input(_) => 1,
            CliError::Budget(_) => 2,
        }
    }

    fn kind(&self) -> &'static str {
        match self {
            CliError::Input(_) => "invalid-input",
            CliError::Budget(_) => "budget-exceeded",
        }
    }
}

#[derive(Debug, Parser)]
#[command(name = "ucat", version, about = "Unimodal decompositions of edge-linear functions on graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
    /// Print the report as compact JSON.
    #[arg(long, global = true)]
    json: bool,
    /// Print the report as indented JSON.
    #[arg(long, global = true)]
    pretty: bool,
    /// Worker threads for parallel searches (default: all cores).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Largest vertex count the exact solver accepts, after refinement.
    #[arg(long, global = true, env = Budget::ENV_VERTICES)]
    budget_vertices: Option<usize>,
    /// Most components tried per connected piece of the support.
    #[arg(long, global = true)]
    budget_k: Option<usize>,
    /// Simplex pivot limit per LP.
    #[arg(long, global = true)]
    pivot_cap: Option<usize>,
    /// TOML file with a `[budget]` table; flags take precedence.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Decide whether the instance's function is unimodal.
    Check { file: PathBuf },
    /// Compute a minimal unimodal decomposition.
    Decompose {
        file: PathBuf,
        #[arg(long, value_enum, default_value = "auto")]
        method: Method,
        /// Exponent: a positive integer or `inf` (trees only).
        #[arg(long, default_value = "1")]
        p: Power,
        /// Only decide whether at most this many components suffice.
        #[arg(long)]
        k: Option<usize>,
        /// Subdivide every edge this many times first (exact method).
        #[arg(long, default_value_t = 0)]
        refine: usize,
        /// Require the components' superlevel sets to form a good cover.
        #[arg(long)]
        strong: bool,
    },
    /// Build a reduction instance from the graph in FILE.
    Gadget {
        #[arg(value_parser = parse_kind)]
        kind: GadgetKind,
        file: PathBuf,
        /// Number of colors for the coloring gadget (default 3).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Check a reduction's equivalence on the graph in FILE.
    #[command(alias = "verify-reduction")]
    Verify {
        #[arg(value_parser = parse_kind)]
        kind: GadgetKind,
        file: PathBuf,
        /// Number of colors for the coloring reduction (default 3).
        #[arg(long)]
        k: Option<usize>,
    },
    /// Run a brute-force solver on the graph in FILE.
    Oracle {
        #[arg(value_enum)]
        problem: OracleProblem,
        file: PathBuf,
        #[arg(long)]
        k: Option<usize>,
        /// For two-trees: allow the two sets to overlap.
        #[arg(long)]
        overlap: bool,
    },
    /// Fewest induced subtrees whose open stars cover the graph.
    TreeCover { file: PathBuf },
}

fn parse_kind(s: &str) -> Result<GadgetKind, String> {
    s.parse().map_err(|e: ucat::Error| e.to_string())
}

impl Command {
    fn name(&self) -> &'static str {
        match self {
            Command::Check { .. } => "check",
            Command::Decompose { .. } => "decompose",
            Command::Gadget { .. } => "gadget",
            Command::Verify { .. } => "verify",
            Command::Oracle { .. } => "oracle",
            Command::TreeCover { .. } => "tree-cover",
        }
    }
}

fn run(cli: &Cli, budget: &Budget) -> Result<Outcome, CliError> {
    match &cli.command {
        Command::Check { file } => commands::check(file),
        Command::Decompose { file, method, p, k, refine, strong } => {
            let args = DecomposeArgs { method: *method, p: *p, k: *k, refine: *refine, strong: *strong };
            commands::decompose(file, &args, budget)
        }
        Command::Gadget { kind, file, k } => commands::gadget(*kind, file, *k),
        Command::Verify { kind, file, k } => commands::verify(*kind, file, *k, budget),
        Command::Oracle { problem, file, k, overlap } => commands::oracle(*problem, file, *k, *overlap),
        Command::TreeCover { file } => commands::tree_cover(file, budget),
    }
}

fn budget_json(b: &Budget) -> Value {
    json!({"max_vertices": b.max_vertices, "max_k": b.max_k, "pivot_cap": b.pivot_cap})
}

fn emit(cli: &Cli, doc: &Value) {
    let text = if cli.pretty { serde_json::to_string_pretty(doc) } else { serde_json::to_string(doc) };
    println!("{}", text.expect("JSON values serialize"));
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 1 } else { 0 });
        }
    };
    let machine = cli.json || cli.pretty;
    let echo = json!({"name": cli.command.name(), "args": std::env::args().skip(1).collect::<Vec<_>>()});

    let started = Instant::now();
    let outcome = (|| {
        if let Some(n) = cli.threads {
            rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build_global()
                .map_err(|e| CliError::Input(format!("--threads: {e}")))?;
        }
        let flags = BudgetFlags { max_vertices: cli.budget_vertices, max_k: cli.budget_k, pivot_cap: cli.pivot_cap };
        let budget = config::resolve_budget(cli.config.as_deref(), flags)?;
        run(&cli, &budget).map(|out| (out, budget))
    })();
    let elapsed_ms = started.elapsed().as_secs_f64() * 1e3;

    match outcome {
        Ok((out, budget)) => {
            if let Some(raw) = &out.raw {
                emit(&cli, raw);
            } else if machine {
                let mut parameters = out.parameters.clone();
                parameters.insert("budget".into(), budget_json(&budget));
                parameters.insert("threads".into(), json!(cli.threads.unwrap_or_else(rayon::current_num_threads)));
                emit(
                    &cli,
                    &json!({
                        "command": echo,
                        "result": out.result,
                        "certificates": out.certificates,
                        "parameters": parameters,
                        "timings": {"total_ms": elapsed_ms},
                        "warnings": out.warnings,
                    }),
                );
            } else {
                println!("{}", out.human.trim_end());
                for w in &out.warnings {
                    println!("warning: {w}");
                }
            }
            if out.failed {
                ExitCode::from(3)
            } else {
                ExitCode::SUCCESS
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            if machine {
                emit(&cli, &json!({"command": echo, "error": {"kind": e.kind(), "message": e.to_string()}}));
            }
            ExitCode::from(e.code())
        }
    }
}
