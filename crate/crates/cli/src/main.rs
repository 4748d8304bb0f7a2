//! `conflictkit`: certified bounds, stacked triangulations, embeddability
//! search and conflict verification from the command line.
//!
//! Every run prints one JSON report on stdout. Exit status: 0 success,
//! 1 refuted or mismatched expectation, 2 usage or input error,
//! 3 inconclusive (search budget, sampler incompleteness, uncertified floor).

mod commands;
mod inputs;
mod report;

use std::process::ExitCode;
use std::time::Instant;

use clap::{ArgMatches, CommandFactory, FromArgMatches, Parser, Subcommand};
use serde::Serialize;
use serde_json::json;

use commands::{
    bounds::BoundsCmd, conflict::VerifyConflictArgs, construct::ConstructCmd, embed::EmbedCmd,
    experiment::ExperimentCmd, otdb::OtdbCmd, tn::TnCmd,
};
use report::{Outcome, RunReport, Status};

#[derive(Debug, Parser)]
#[command(name = "conflictkit", version, about)]
struct Cli {
    /// Pretty-print the report.
    #[arg(long, global = true)]
    pretty: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
enum Command {
    /// Certified sigma bounds.
    #[command(subcommand)]
    Bounds(BoundsCmd),
    /// The stacked triangulation family T_n.
    #[command(subcommand)]
    Tn(TnCmd),
    /// Straight-line embeddings on point sets.
    #[command(subcommand)]
    Embed(EmbedCmd),
    /// Members of the octahedron-based collection.
    #[command(subcommand)]
    Construct(ConstructCmd),
    /// Checks that no representative point set carries all given graphs.
    VerifyConflict(VerifyConflictArgs),
    /// Embedding-count experiments.
    #[command(subcommand)]
    Experiment(ExperimentCmd),
    /// Order-type files and representatives.
    #[command(subcommand)]
    Otdb(OtdbCmd),
}

impl Command {
    fn run(&self) -> anyhow::Result<Outcome> {
        match self {
            Command::Bounds(c) => commands::bounds::run(c),
            Command::Tn(c) => commands::tn::run(c),
            Command::Embed(c) => commands::embed::run(c),
            Command::Construct(c) => commands::construct::run(c),
            Command::VerifyConflict(a) => commands::conflict::run(a),
            Command::Experiment(c) => commands::experiment::run(c),
            Command::Otdb(c) => commands::otdb::run(c),
        }
    }
}

/// Subcommand names from the parsed matches, outermost first.
fn command_path(matches: &ArgMatches) -> Vec<String> {
    let mut path = Vec::new();
    let mut cur = matches;
    while let Some((name, sub)) = cur.subcommand() {
        path.push(name.to_string());
        cur = sub;
    }
    path
}

/// The flags of the innermost subcommand, as echoed in the report.
fn echoed_inputs(command: &Command, depth: usize) -> serde_json::Value {
    let mut value = serde_json::to_value(command).unwrap_or(json!(null));
    for _ in 0..depth {
        value = match value {
            serde_json::Value::Object(m) if m.len() == 1 => m.into_iter().next().expect("one entry").1,
            // Unit variants serialize as bare strings and carry no flags.
            _ => json!({}),
        };
    }
    value
}

fn main() -> ExitCode {
    let matches = Cli::command().get_matches();
    let cli = Cli::from_arg_matches(&matches).unwrap_or_else(|e| e.exit());
    let path = command_path(&matches);
    let inputs = echoed_inputs(&cli.command, path.len());
    let command = path.join(" ");
    let start = Instant::now();
    let outcome = cli.command.run().unwrap_or_else(|e| {
        eprintln!("error: {e:#}");
        Outcome::new(Status::Error, json!({ "error": format!("{e:#}") }))
    });
    let report = RunReport::new(command, inputs, outcome, start.elapsed());
    let text = if cli.pretty {
        serde_json::to_string_pretty(&report)
    } else {
        serde_json::to_string(&report)
    }
    .expect("reports serialize");
    println!("{text}");
    ExitCode::from(report.status.exit_code() as u8)
}
