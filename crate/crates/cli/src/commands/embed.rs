use std::path::PathBuf;

use anyhow::Result;
use clap::{Subcommand, ValueEnum};
use conflictkit::embedding::{
    embeds_on, has_label_preserving_embedding, is_straight_line_embedding, reconstruct_stacked, svg::render_svg,
    SearchOutcome, VertexPlacement,
};
use conflictkit::triangulations::GraphRecord;
use conflictkit::LabelledGraph;
use serde::Serialize;
use serde_json::json;

use crate::inputs::{load_graph, load_points, write_text};
use crate::report::{Outcome, Status};

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Expect {
    Embeds,
    DoesNotEmbed,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum EmbedCmd {
    /// Checks one placement (the identity unless --placement is given).
    Check {
        /// `k4`, `octahedron`, or a graph record file.
        #[arg(long)]
        graph: String,
        #[arg(long)]
        points: PathBuf,
        /// Comma-separated 1-based point labels for vertices 1..n.
        #[arg(long, value_delimiter = ',')]
        placement: Option<Vec<usize>>,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        /// Draw the placement as SVG.
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Searches for any crossing-free placement.
    Search {
        #[arg(long)]
        graph: String,
        #[arg(long)]
        points: PathBuf,
        /// Only try the identity placement.
        #[arg(long)]
        label_preserving: bool,
        /// Node budget for the backtracking search.
        #[arg(long)]
        budget: Option<u64>,
        #[arg(long, value_enum)]
        expect: Option<Expect>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// The stacked triangulation drawn label-preservingly on the points, if any.
    Reconstruct {
        #[arg(long)]
        points: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

fn judged(embeds: Option<bool>, expect: Option<Expect>) -> Status {
    match (embeds, expect) {
        (None, _) => Status::Inconclusive,
        (Some(e), Some(x)) if e != (x == Expect::Embeds) => Status::Mismatch,
        _ => Status::Success,
    }
}

pub fn run(cmd: &EmbedCmd) -> Result<Outcome> {
    match cmd {
        EmbedCmd::Check {
            graph,
            points,
            placement,
            expect,
            svg,
        } => {
            let (_, g) = load_graph(graph)?;
            let p = load_points(points)?;
            let place = match placement {
                Some(labels) => VertexPlacement::try_from(labels.clone())?,
                None => VertexPlacement::identity(g.order()),
            };
            let ok = is_straight_line_embedding(&g, &p, &place)?;
            if let Some(path) = svg {
                write_text(path, &render_svg(&g, &p, &place))?;
            }
            Ok(Outcome::new(
                judged(Some(ok), *expect),
                json!({ "embeds": ok, "placement": place }),
            ))
        }
        EmbedCmd::Search {
            graph,
            points,
            label_preserving,
            budget,
            expect,
            svg,
        } => {
            let (_, g) = load_graph(graph)?;
            let p = load_points(points)?;
            if *label_preserving {
                let ok = has_label_preserving_embedding(&g, &p)?;
                if let (true, Some(path)) = (ok, svg) {
                    write_text(path, &render_svg(&g, &p, &VertexPlacement::identity(g.order())))?;
                }
                return Ok(Outcome::new(
                    judged(Some(ok), *expect),
                    json!({ "outcome": if ok { SearchOutcome::Embeds } else { SearchOutcome::DoesNotEmbed }, "label_preserving": true }),
                ));
            }
            let v = embeds_on(&g, &p, *budget)?;
            if let (Some(w), Some(path)) = (&v.witness, svg) {
                write_text(path, &render_svg(&g, &p, w))?;
            }
            let decided = (!v.is_unknown()).then(|| v.embeds());
            Ok(Outcome::new(judged(decided, *expect), serde_json::to_value(&v)?))
        }
        EmbedCmd::Reconstruct { points, out } => {
            let p = load_points(points)?;
            let record = reconstruct_stacked(&p)?.map(|t| GraphRecord::from_stacked(&t));
            if let (Some(r), Some(path)) = (&record, out) {
                write_text(path, &format!("{}\n", r.to_json_line()))?;
            }
            Ok(Outcome::success(json!({ "found": record.is_some(), "graph": record })))
        }
    }
}
