//! Loading graphs, point sets and representative sources from the command
//! line.

use std::fmt;
use std::fs;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, Context, Result};
use conflictkit::otdb::{
    read_order_type_file, representatives, CoordWidth, OtdbConfig, SamplerConfig, Source,
};
use conflictkit::triangulations::{octahedron, EdgeListGraph, GraphRecord};
use conflictkit::{LabelledGraph, LabelledPointSet, StackedTriangulation};
use serde::{Serialize, Serializer};

/// A graph argument: `k4`, `octahedron`, or a file holding one graph record.
pub fn load_graph(spec: &str) -> Result<(GraphRecord, EdgeListGraph)> {
    let record = match spec {
        "k4" => GraphRecord::from_stacked(&StackedTriangulation::k4()),
        "octahedron" => GraphRecord::from_faced(&octahedron()),
        path => {
            let text = fs::read_to_string(path).with_context(|| format!("reading graph file {path}"))?;
            let line = text
                .lines()
                .find(|l| !l.trim().is_empty())
                .with_context(|| format!("{path} holds no graph record"))?;
            parse_record(line).with_context(|| format!("in {path}"))?
        }
    };
    let graph = record.edge_graph()?;
    Ok((record, graph))
}

/// Parses a record and re-checks whatever structure it carries.
pub fn parse_record(line: &str) -> Result<GraphRecord> {
    let record: GraphRecord = serde_json::from_str(line).context("malformed graph record")?;
    record.stacked()?;
    record.faced()?;
    Ok(record)
}

/// All records in `*.json` / `*.jsonl` files of a directory, in file-name
/// order, one record per non-empty line.
pub fn load_graph_dir(dir: &Path) -> Result<Vec<EdgeListGraph>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading graph directory {}", dir.display()))?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| matches!(p.extension().and_then(|e| e.to_str()), Some("json" | "jsonl")))
        .collect();
    files.sort();
    let mut graphs = Vec::new();
    for file in files {
        let text = fs::read_to_string(&file)?;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let rec = parse_record(line).with_context(|| format!("{}:{}", file.display(), i + 1))?;
            graphs.push(rec.edge_graph()?);
        }
    }
    if graphs.is_empty() {
        bail!("no graph records found in {}", dir.display());
    }
    Ok(graphs)
}

pub fn load_points(path: &Path) -> Result<LabelledPointSet> {
    let text = fs::read_to_string(path).with_context(|| format!("reading point file {}", path.display()))?;
    LabelledPointSet::parse_text(&text).with_context(|| format!("in {}", path.display()))
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))
}

pub fn graph_order<G: LabelledGraph>(graphs: &[G]) -> Result<usize> {
    let n = graphs[0].order();
    if let Some(g) = graphs.iter().find(|g| g.order() != n) {
        bail!("graphs of different orders: {} and {}", n, g.order());
    }
    Ok(n)
}

/// `otdb:PATH` (a database directory or a single `.b08`/`.b16` file) or
/// `fallback:SEED`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SourceArg {
    Otdb(PathBuf),
    Fallback(u64),
}

impl FromStr for SourceArg {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.split_once(':') {
            Some(("otdb", path)) if !path.is_empty() => Ok(SourceArg::Otdb(path.into())),
            Some(("fallback", seed)) => seed
                .parse()
                .map(SourceArg::Fallback)
                .map_err(|_| format!("bad fallback seed {seed:?}")),
            _ => Err(format!("expected otdb:PATH or fallback:SEED, got {s:?}")),
        }
    }
}

impl fmt::Display for SourceArg {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SourceArg::Otdb(p) => write!(f, "otdb:{}", p.display()),
            SourceArg::Fallback(s) => write!(f, "fallback:{s}"),
        }
    }
}

impl Serialize for SourceArg {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_str(self)
    }
}

#[derive(Debug, Serialize)]
pub struct Served {
    pub source: Source,
    pub path: Option<PathBuf>,
    /// False when the sampler missed an explicit target.
    pub complete: bool,
    pub samples: Option<u64>,
    #[serde(skip)]
    pub sets: Vec<LabelledPointSet>,
}

fn width_of(path: &Path) -> Result<CoordWidth> {
    match path.extension().and_then(|e| e.to_str()) {
        Some(ext) => ext.parse().map_err(|e| anyhow::anyhow!("{e}")),
        None => bail!("cannot infer coordinate width of {}", path.display()),
    }
}

/// Collects the representatives for `n` from the requested source; without
/// one, the database directory from the environment is tried first.
pub fn serve(n: usize, source: Option<&SourceArg>, sampler: Option<SamplerConfig>) -> Result<Served> {
    let sampler_for = |seed| sampler.clone().map(|c| SamplerConfig { seed, ..c }).unwrap_or_else(|| SamplerConfig::new(seed));
    let cfg = match source {
        Some(SourceArg::Otdb(path)) if path.is_file() => {
            let sets = read_order_type_file(path, n, width_of(path)?)?
                .map(|r| r.map(|rec| rec.points))
                .collect::<conflictkit::Result<Vec<_>>>()?;
            return Ok(Served {
                source: Source::Database,
                path: Some(path.clone()),
                complete: true,
                samples: None,
                sets,
            });
        }
        Some(SourceArg::Otdb(dir)) => OtdbConfig {
            dir: Some(dir.clone()),
            allow_fallback: false,
            sampler: sampler_for(0),
        },
        Some(SourceArg::Fallback(seed)) => OtdbConfig {
            dir: None,
            allow_fallback: true,
            sampler: sampler_for(*seed),
        },
        None => OtdbConfig {
            sampler: sampler_for(0),
            ..OtdbConfig::from_env(0)
        },
    };
    let reps = representatives(n, &cfg)?;
    let source = reps.source;
    let path = reps.path.clone();
    let (complete, samples) = match &reps.generated {
        Some(g) => (g.complete(), Some(g.samples)),
        None => (true, None),
    };
    let sets = reps.collect::<conflictkit::Result<Vec<_>>>()?;
    Ok(Served {
        source,
        path,
        complete,
        samples,
        sets,
    })
}
