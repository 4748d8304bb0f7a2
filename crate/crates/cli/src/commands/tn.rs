use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;

use anyhow::{Context, Result};
use clap::Subcommand;
use conflictkit::triangulations::{count_tn, enumerate_tn, sample_uniform_tn, GraphRecord};
use serde::Serialize;
use serde_json::json;

use crate::report::Outcome;

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum TnCmd {
    /// |T_n| as an exact integer.
    Count {
        #[arg(long)]
        n: usize,
    },
    /// Every member of T_n, one graph record per line.
    Enumerate {
        #[arg(long)]
        n: usize,
        /// Destination file; records are inlined in the report otherwise.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Lift the n <= 10 guard.
        #[arg(long)]
        override_guard: bool,
    },
    /// One uniformly random member of T_n.
    Sample {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

pub fn run(cmd: &TnCmd) -> Result<Outcome> {
    match cmd {
        TnCmd::Count { n } => Ok(Outcome::success(json!({
            "n": n,
            "count": count_tn(*n)?.to_string(),
        }))),
        TnCmd::Enumerate { n, out, override_guard } => {
            let members = enumerate_tn(*n, *override_guard)?;
            match out {
                Some(path) => {
                    let file = File::create(path).with_context(|| format!("creating {}", path.display()))?;
                    let mut w = BufWriter::new(file);
                    let mut records = 0u64;
                    for t in members {
                        writeln!(w, "{}", GraphRecord::from_stacked(&t).to_json_line())?;
                        records += 1;
                    }
                    w.flush()?;
                    Ok(Outcome::success(json!({ "n": n, "records": records, "out": path })))
                }
                None => {
                    let records: Vec<GraphRecord> = members.map(|t| GraphRecord::from_stacked(&t)).collect();
                    Ok(Outcome::success(json!({
                        "n": n,
                        "records": records.len(),
                        "graphs": records,
                    })))
                }
            }
        }
        TnCmd::Sample { n, seed, out } => {
            let record = GraphRecord::from_stacked(&sample_uniform_tn(*n, *seed)?);
            if let Some(path) = out {
                crate::inputs::write_text(path, &format!("{}\n", record.to_json_line()))?;
            }
            Ok(Outcome::success(json!({ "n": n, "seed": seed, "graph": record })))
        }
    }
}
