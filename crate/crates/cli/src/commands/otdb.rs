use std::path::PathBuf;

use anyhow::Result;
use clap::Subcommand;
use conflictkit::otdb::{probe_format, read_order_type_file, write_order_type_file, CoordWidth, SamplerConfig};
use conflictkit::LabelledPointSet;
use serde::Serialize;
use serde_json::json;

use crate::inputs::{serve, write_text, SourceArg};
use crate::report::{Outcome, Status};

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum OtdbCmd {
    /// Decodes a binary order-type file into the point-set text format.
    Convert {
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        n: usize,
        /// Coordinate width in bits: 8 or 16.
        #[arg(long)]
        width: CoordWidth,
        /// Text output, sets separated by blank lines.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Lists (n, width) layouts consistent with a file's size.
    Probe {
        #[arg(long)]
        input: PathBuf,
    },
    /// One representative per order type of n points.
    Representatives {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        source: Option<SourceArg>,
        /// Stop once this many classes are found.
        #[arg(long)]
        target: Option<usize>,
        /// Consecutive fruitless samples before the sampler gives up.
        #[arg(long)]
        stall: Option<u64>,
        /// Text output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Binary output in the database layout, 16-bit coordinates.
        #[arg(long)]
        binary: Option<PathBuf>,
    },
}

fn joined(sets: &[LabelledPointSet]) -> String {
    sets.iter().map(LabelledPointSet::to_text).collect::<Vec<_>>().join("\n")
}

pub fn run(cmd: &OtdbCmd) -> Result<Outcome> {
    match cmd {
        OtdbCmd::Convert { input, n, width, out } => {
            let sets = read_order_type_file(input, *n, *width)?
                .map(|r| r.map(|rec| rec.points))
                .collect::<conflictkit::Result<Vec<_>>>()?;
            let text = joined(&sets);
            let sets_field = match out {
                Some(path) => {
                    write_text(path, &text)?;
                    json!(null)
                }
                None => json!(sets.iter().map(LabelledPointSet::to_text).collect::<Vec<_>>()),
            };
            Ok(Outcome::success(json!({ "records": sets.len(), "sets": sets_field })))
        }
        OtdbCmd::Probe { input } => Ok(Outcome::success(json!({ "candidates": probe_format(input)? }))),
        OtdbCmd::Representatives {
            n,
            source,
            target,
            stall,
            out,
            binary,
        } => {
            let mut sampler = SamplerConfig::new(0);
            sampler.target = *target;
            if let Some(s) = stall {
                sampler.stall = *s;
            }
            let served = serve(*n, source.as_ref(), Some(sampler))?;
            if let Some(path) = out {
                write_text(path, &joined(&served.sets))?;
            }
            if let Some(path) = binary {
                write_order_type_file(path, &served.sets, CoordWidth::Sixteen)?;
            }
            let status = if served.complete { Status::Success } else { Status::Inconclusive };
            Ok(Outcome::new(
                status,
                json!({ "n": n, "count": served.sets.len(), "source": served }),
            )
            .complete(served.complete))
        }
    }
}
