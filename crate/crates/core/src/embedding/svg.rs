//! SVG rendering of a placement, for eyeballing witnesses.

use std::fmt::Write;

use num_traits::ToPrimitive;

use super::VertexPlacement;
use crate::geom::LabelledPointSet;
use crate::triangulations::LabelledGraph;

const SIZE: f64 = 600.0;
const MARGIN: f64 = 30.0;

/// Draws `g` on `p` under `placement`. Coordinates are rescaled into a fixed
/// canvas (lossy, display only); y grows upward as in the input.
pub fn render_svg<G: LabelledGraph + ?Sized>(g: &G, p: &LabelledPointSet, placement: &VertexPlacement) -> String {
    let coords: Vec<(f64, f64)> = p
        .points()
        .iter()
        .map(|q| (q.x.to_f64().unwrap_or(0.0), q.y.to_f64().unwrap_or(0.0)))
        .collect();
    let (mut min_x, mut max_x, mut min_y, mut max_y) = (f64::MAX, f64::MIN, f64::MAX, f64::MIN);
    for &(x, y) in &coords {
        min_x = min_x.min(x);
        max_x = max_x.max(x);
        min_y = min_y.min(y);
        max_y = max_y.max(y);
    }
    let span = (max_x - min_x).max(max_y - min_y).max(1.0);
    let k = (SIZE - 2.0 * MARGIN) / span;
    let map = |(x, y): (f64, f64)| (MARGIN + (x - min_x) * k, SIZE - MARGIN - (y - min_y) * k);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{SIZE}" height="{SIZE}" viewBox="0 0 {SIZE} {SIZE}">"#
    );
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
    for e in g.edge_list() {
        let (x1, y1) = map(coords[placement.target(e.lo())]);
        let (x2, y2) = map(coords[placement.target(e.hi())]);
        let _ = writeln!(
            out,
            r#"<line x1="{x1:.2}" y1="{y1:.2}" x2="{x2:.2}" y2="{y2:.2}" stroke="black" stroke-width="1.2"/>"#
        );
    }
    for v in 1..=placement.len() as u32 {
        let (x, y) = map(coords[placement.target(v)]);
        let _ = writeln!(out, r#"<circle cx="{x:.2}" cy="{y:.2}" r="4" fill="crimson"/>"#);
        let _ = writeln!(
            out,
            r#"<text x="{:.2}" y="{:.2}" font-size="12" font-family="monospace">{v}</text>"#,
            x + 6.0,
            y - 6.0
        );
    }
    out.push_str("</svg>\n");
    out
}
