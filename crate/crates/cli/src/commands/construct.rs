use std::fs::File;
use std::io::{BufWriter, Write};
use std::path::PathBuf;
use std::time::Instant;

use anyhow::{bail, Context, Result};
use clap::{Args, Subcommand};
use conflictkit::construction::{
    build_t_of, collection_size, composition_at, count_s_n, validate_member, CollectionIndex, Scale,
};
use conflictkit::triangulations::GraphRecord;
use num_bigint::BigUint;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::json;

use crate::report::{Outcome, Status};

#[derive(Debug, Args, Serialize)]
pub struct ScaleArgs {
    #[arg(long)]
    pub n: u64,
    /// Accept n below 5040 for desk-scale experiments.
    #[arg(long)]
    pub override_small: bool,
}

impl ScaleArgs {
    fn scale(&self) -> Scale {
        if self.override_small {
            Scale::DeskOverride
        } else {
            Scale::Full
        }
    }
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum ConstructCmd {
    /// The member at one index.
    Member {
        #[command(flatten)]
        #[serde(flatten)]
        scale: ScaleArgs,
        #[arg(long)]
        #[serde(serialize_with = "decimal")]
        index: BigUint,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Members FROM..TO (end exclusive), one record per line.
    Range {
        #[command(flatten)]
        #[serde(flatten)]
        scale: ScaleArgs,
        #[arg(long)]
        #[serde(serialize_with = "decimal")]
        from: BigUint,
        #[arg(long)]
        #[serde(serialize_with = "decimal")]
        to: BigUint,
        #[arg(long)]
        out: PathBuf,
    },
    /// Collection size and the number of compositions it is drawn from.
    Size {
        #[command(flatten)]
        #[serde(flatten)]
        scale: ScaleArgs,
    },
    /// Rebuilds and re-checks a random sample of members.
    Validate {
        #[command(flatten)]
        #[serde(flatten)]
        scale: ScaleArgs,
        #[arg(long, default_value_t = 100)]
        sample: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
    },
}

fn decimal<S: serde::Serializer>(v: &BigUint, s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_str(v)
}

fn member_record(n: u64, idx: &BigUint, scale: Scale) -> Result<(serde_json::Value, GraphRecord)> {
    let s = composition_at(n, &CollectionIndex(idx.clone()), scale)?;
    let t = build_t_of(&s);
    Ok((json!(s.parts()), GraphRecord::from_faced(&t)))
}

pub fn run(cmd: &ConstructCmd) -> Result<Outcome> {
    match cmd {
        ConstructCmd::Member { scale, index, out } => {
            let (composition, record) = member_record(scale.n, index, scale.scale())?;
            let graph = match out {
                Some(path) => {
                    crate::inputs::write_text(path, &format!("{}\n", record.to_json_line()))?;
                    json!(null)
                }
                None => json!(record),
            };
            Ok(Outcome::success(json!({
                "n": scale.n,
                "index": index.to_string(),
                "composition": composition,
                "edges": record.edges.len(),
                "graph": graph,
            })))
        }
        ConstructCmd::Range { scale, from, to, out } => {
            if to < from {
                bail!("--to must not be below --from");
            }
            let file = File::create(out).with_context(|| format!("creating {}", out.display()))?;
            let mut w = BufWriter::new(file);
            let mut i = from.clone();
            while &i < to {
                let (_, record) = member_record(scale.n, &i, scale.scale())?;
                writeln!(w, "{}", record.to_json_line())?;
                i += 1u32;
            }
            w.flush()?;
            Ok(Outcome::success(json!({
                "n": scale.n,
                "records": (to - from).to_string(),
                "out": out,
            })))
        }
        ConstructCmd::Size { scale } => {
            let size = collection_size(scale.n, scale.scale())?;
            let available = count_s_n(scale.n)?;
            Ok(Outcome::success(json!({
                "n": scale.n,
                "collection_size": size.to_string(),
                "count_s_n": available.to_string(),
                "fits": available >= size,
            })))
        }
        ConstructCmd::Validate { scale, sample, seed } => {
            let size = collection_size(scale.n, scale.scale())?;
            // At desk scale only the existing compositions can be indexed.
            let limit = size.min(count_s_n(scale.n)?);
            let mut rng = ChaCha8Rng::seed_from_u64(*seed);
            let mut failures = Vec::new();
            let mut slowest_ms = 0f64;
            for _ in 0..*sample {
                let idx = BigUint::from_bytes_le(&rng.gen::<[u8; 32]>()) % &limit;
                let start = Instant::now();
                let s = composition_at(scale.n, &CollectionIndex(idx.clone()), scale.scale())?;
                let t = build_t_of(&s);
                slowest_ms = slowest_ms.max(start.elapsed().as_secs_f64() * 1e3);
                if let Err(msg) = validate_member(&t, &s) {
                    failures.push(json!({ "index": idx.to_string(), "error": msg }));
                }
            }
            let status = if failures.is_empty() { Status::Success } else { Status::Mismatch };
            Ok(Outcome::new(
                status,
                json!({
                    "n": scale.n,
                    "checked": sample,
                    "failures": failures,
                    "slowest_build_ms": slowest_ms,
                }),
            ))
        }
    }
}
