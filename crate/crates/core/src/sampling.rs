//! Random point sets for experiments and tests.
//!
//! Two generators: uniform general-position sets on a square grid, and
//! random straight-line drawings of stacked triangulations in which the
//! identity placement is an embedding. The second kind is what makes
//! label-preserving embeddings show up at all; uniform sets almost never
//! admit one.

use num_bigint::BigInt;
use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{out_of_range, Result};
use crate::geom::{orientation, LabelledPointSet, Point};
use crate::triangulations::{Face, FacedTriangulation, Stack, StackedTriangulation};

const MAX_ATTEMPTS: usize = 1_000_000;

fn collinear_with_any(points: &[Point], p: &Point) -> bool {
    for (i, a) in points.iter().enumerate() {
        if a == p {
            return true;
        }
        for b in &points[i + 1..] {
            if orientation(a, b, p) == 0 {
                return true;
            }
        }
    }
    false
}

/// `n` points drawn uniformly from `[0, side)^2`, rejecting any point that
/// coincides with or is collinear with earlier ones.
pub fn random_general_position<R: Rng + ?Sized>(n: usize, side: i64, rng: &mut R) -> Result<LabelledPointSet> {
    if n == 0 {
        return Err(out_of_range("n", n, ">= 1"));
    }
    if side < 4 {
        return Err(out_of_range("side", side, ">= 4"));
    }
    let mut points: Vec<Point> = Vec::with_capacity(n);
    let mut attempts = 0;
    while points.len() < n {
        attempts += 1;
        if attempts > MAX_ATTEMPTS {
            return Err(out_of_range("n", n, "small enough for the grid side"));
        }
        let p = Point::new(rng.gen_range(0..side), rng.gen_range(0..side));
        if !collinear_with_any(&points, &p) {
            points.push(p);
        }
    }
    LabelledPointSet::new(points)
}

/// A point set together with the stacked triangulation drawn on it by the
/// identity placement.
#[derive(Clone, Debug)]
pub struct StackedDrawing {
    pub points: LabelledPointSet,
    pub triangulation: StackedTriangulation,
}

fn combo(weights: [i64; 3], corners: [&Point; 3]) -> Point {
    let mut x = BigInt::from(0);
    let mut y = BigInt::from(0);
    for (w, c) in weights.iter().zip(corners) {
        x += &c.x * *w;
        y += &c.y * *w;
    }
    Point::new(x, y)
}

fn scale(points: &mut [Point], k: i64) {
    for p in points {
        p.x *= k;
        p.y *= k;
    }
}

/// Random drawing of a random member of T_n. Every stacking step picks a
/// face of the current triangulation uniformly, the outer face included,
/// and places the new point inside it (or outside the hull so that exactly
/// one hull corner becomes interior).
pub fn random_stacked_drawing<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<StackedDrawing> {
    if n < 4 {
        return Err(out_of_range("n", n, ">= 4"));
    }
    let base = random_general_position(3, 1 << 20, rng)?;
    let mut pts: Vec<Point> = base.points().to_vec();
    // Outer triangle plus one interior point, then a random label order.
    let w = [rng.gen_range(1..=8), rng.gen_range(1..=8), rng.gen_range(1..=8)];
    let inner = combo(w, [&pts[0], &pts[1], &pts[2]]);
    scale(&mut pts, w.iter().sum());
    pts.push(inner);
    pts.shuffle(rng);
    let interior = (0..4)
        .find(|&i| {
            let o: Vec<usize> = (0..4).filter(|&j| j != i).collect();
            crate::geom::strictly_inside_triangle(&pts[i], &pts[o[0]], &pts[o[1]], &pts[o[2]])
        })
        .expect("one of the four points is interior");
    let mut hull: [u32; 3] = [0; 3];
    let mut k = 0;
    for v in 0..4u32 {
        if v as usize != interior {
            hull[k] = v + 1;
            k += 1;
        }
    }
    let mut hull = Face::from_array(hull);

    let mut t = FacedTriangulation::k4();
    let mut stacks = Vec::with_capacity(n - 4);
    for _ in 4..n {
        let faces: Vec<Face> = t.faces().iter().copied().collect();
        let face = *faces.choose(rng).expect("faces exist");
        let [a, b, c] = face.vertices().map(|v| v as usize - 1);
        let mut attempts = 0;
        loop {
            attempts += 1;
            if attempts > MAX_ATTEMPTS {
                return Err(out_of_range("n", n, "small enough to place points"));
            }
            // Inside a bounded face the candidate is a weighted sum, so the
            // existing points are scaled by the weight total to match.
            let (candidate, factor) = if face == hull {
                let mut corners = [a, b, c];
                corners.shuffle(rng);
                let [u, v, q] = corners;
                let (s1, s2) = (rng.gen_range(1..=4i64), rng.gen_range(1..=4i64));
                // q + s1 (q - u) + s2 (q - v) keeps q inside (p, u, v).
                (combo([1 + s1 + s2, -s1, -s2], [&pts[q], &pts[u], &pts[v]]), 1)
            } else {
                let w = [rng.gen_range(1..=16), rng.gen_range(1..=16), rng.gen_range(1..=16)];
                (combo(w, [&pts[a], &pts[b], &pts[c]]), w.iter().sum())
            };
            let mut scaled = pts.clone();
            scale(&mut scaled, factor);
            if !collinear_with_any(&scaled, &candidate) {
                scaled.push(candidate);
                pts = scaled;
                break;
            }
        }
        let vertex = t.stack_into(face)?;
        if face == hull {
            let swallowed = [a, b, c]
                .into_iter()
                .find(|&q| {
                    let o: Vec<usize> = [a, b, c].into_iter().filter(|&x| x != q).collect();
                    crate::geom::strictly_inside_triangle(&pts[q], &pts[vertex as usize - 1], &pts[o[0]], &pts[o[1]])
                })
                .expect("one hull corner becomes interior");
            let [x, y, z] = face.vertices();
            let keep: Vec<u32> = [x, y, z].into_iter().filter(|&v| v as usize - 1 != swallowed).collect();
            hull = Face::new(vertex, keep[0], keep[1]);
        }
        stacks.push(Stack { vertex, face });
    }
    Ok(StackedDrawing {
        points: LabelledPointSet::new(pts)?,
        triangulation: StackedTriangulation::from_stacks(stacks)?,
    })
}
