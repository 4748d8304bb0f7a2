use std::path::PathBuf;

use anyhow::{bail, Result};
use clap::Args;
use conflictkit::embedding::{verify_conflict_collection, ConflictOutcome};
use serde::Serialize;
use serde_json::json;

use crate::inputs::{graph_order, load_graph_dir, serve, SourceArg};
use crate::report::{Outcome, Status};

#[derive(Debug, Args, Serialize)]
pub struct VerifyConflictArgs {
    /// Directory of graph record files (`*.json`, `*.jsonl`).
    #[arg(long)]
    pub graphs: PathBuf,
    #[arg(long)]
    pub n: usize,
    /// `otdb:PATH` or `fallback:SEED`; defaults to the configured database,
    /// then the sampler.
    #[arg(long)]
    pub source: Option<SourceArg>,
    /// Node budget per embedding search.
    #[arg(long)]
    pub budget: Option<u64>,
}

pub fn run(args: &VerifyConflictArgs) -> Result<Outcome> {
    let graphs = load_graph_dir(&args.graphs)?;
    let order = graph_order(&graphs)?;
    if order != args.n {
        bail!("graphs have order {order}, but --n is {}", args.n);
    }
    let served = serve(args.n, args.source.as_ref(), None)?;
    let v = verify_conflict_collection(&graphs, args.n, served.sets.iter().cloned(), args.budget)?;
    let status = match v.outcome {
        ConflictOutcome::Refuted => Status::Refuted,
        ConflictOutcome::Inconclusive => Status::Inconclusive,
        // A conflict over an incomplete family of representatives proves
        // nothing.
        ConflictOutcome::Conflict if !served.complete => Status::Inconclusive,
        ConflictOutcome::Conflict => Status::Success,
    };
    let body = json!({
        "n": args.n,
        "graphs": graphs.len(),
        "source": served,
        "representatives": served.sets.len(),
        "outcome": v.outcome,
        "is_conflict": v.is_conflict,
        "counterexample": v.counterexample.as_ref().map(|p| p.to_text()),
        "witnesses": v.witnesses,
        "representatives_checked": v.representatives_checked,
        "undecided": v.undecided,
    });
    Ok(Outcome::new(status, body).complete(served.complete))
}
