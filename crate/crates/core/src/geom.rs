//! Exact planar predicates and order-type comparisons over integer points.
//!
//! Orientation is the sign of
//! `(b.x - a.x) * (c.y - a.y) - (b.y - a.y) * (c.x - a.x)`:
//! `+1` counterclockwise, `0` collinear, `-1` clockwise. Every other
//! predicate in the crate is built from it.

use std::collections::HashMap;
use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Point {
    pub x: BigInt,
    pub y: BigInt,
}

impl Point {
    pub fn new(x: impl Into<BigInt>, y: impl Into<BigInt>) -> Self {
        Point {
            x: x.into(),
            y: y.into(),
        }
    }

    /// Coordinates as machine integers when both are small enough for the
    /// `i128` determinant to be exact.
    fn small(&self) -> Option<(i64, i64)> {
        const LIMIT: i64 = 1 << 61;
        let x = self.x.to_i64()?;
        let y = self.y.to_i64()?;
        (x.abs() < LIMIT && y.abs() < LIMIT).then_some((x, y))
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.x, self.y)
    }
}

/// Sign of the orientation determinant of `a, b, c`.
pub fn orientation(a: &Point, b: &Point, c: &Point) -> i8 {
    if let (Some(a), Some(b), Some(c)) = (a.small(), b.small(), c.small()) {
        let det = (b.0 as i128 - a.0 as i128) * (c.1 as i128 - a.1 as i128)
            - (b.1 as i128 - a.1 as i128) * (c.0 as i128 - a.0 as i128);
        return det.signum() as i8;
    }
    let det = (&b.x - &a.x) * (&c.y - &a.y) - (&b.y - &a.y) * (&c.x - &a.x);
    if det.is_zero() {
        0
    } else if det.is_positive() {
        1
    } else {
        -1
    }
}

/// Sign of the dot product `(u - o) . (v - o)`.
pub(crate) fn dot_sign(o: &Point, u: &Point, v: &Point) -> i8 {
    let d = (&u.x - &o.x) * (&v.x - &o.x) + (&u.y - &o.y) * (&v.y - &o.y);
    if d.is_zero() {
        0
    } else if d.is_positive() {
        1
    } else {
        -1
    }
}

/// `p` lies in the closed bounding box of `a` and `b`. Combined with a zero
/// orientation this places `p` on the closed segment.
pub(crate) fn within_box(p: &Point, a: &Point, b: &Point) -> bool {
    let (xlo, xhi) = if a.x <= b.x { (&a.x, &b.x) } else { (&b.x, &a.x) };
    let (ylo, yhi) = if a.y <= b.y { (&a.y, &b.y) } else { (&b.y, &a.y) };
    *xlo <= p.x && p.x <= *xhi && *ylo <= p.y && p.y <= *yhi
}

/// `p` lies in the relative interior of segment `ab`.
pub fn in_segment_interior(p: &Point, a: &Point, b: &Point) -> bool {
    p != a && p != b && orientation(a, b, p) == 0 && within_box(p, a, b)
}

/// `p` lies strictly inside triangle `abc` (either orientation).
pub fn strictly_inside_triangle(p: &Point, a: &Point, b: &Point, c: &Point) -> bool {
    let o1 = orientation(a, b, p);
    let o2 = orientation(b, c, p);
    let o3 = orientation(c, a, p);
    o1 != 0 && o1 == o2 && o2 == o3
}

/// True iff closed segments `ab` and `cd` share a point other than a shared
/// endpoint.
pub fn segments_properly_intersect(a: &Point, b: &Point, c: &Point, d: &Point) -> Result<bool> {
    if a == b || c == d {
        return Err(Error::DegenerateSegment);
    }
    if (a == c && b == d) || (a == d && b == c) {
        return Ok(true);
    }
    let shared = if a == c {
        Some((a, b, d))
    } else if a == d {
        Some((a, b, c))
    } else if b == c {
        Some((b, a, d))
    } else if b == d {
        Some((b, a, c))
    } else {
        None
    };
    if let Some((s, u, v)) = shared {
        // Overlap beyond the shared endpoint needs both on one ray from it.
        return Ok(orientation(s, u, v) == 0 && dot_sign(s, u, v) > 0);
    }
    let o1 = orientation(a, b, c);
    let o2 = orientation(a, b, d);
    let o3 = orientation(c, d, a);
    let o4 = orientation(c, d, b);
    if o1 * o2 < 0 && o3 * o4 < 0 {
        return Ok(true);
    }
    Ok((o1 == 0 && within_box(c, a, b))
        || (o2 == 0 && within_box(d, a, b))
        || (o3 == 0 && within_box(a, c, d))
        || (o4 == 0 && within_box(b, c, d)))
}

/// A labelled point set; the label of a point is its 1-based position.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<Point>", into = "Vec<Point>")]
pub struct LabelledPointSet {
    points: Vec<Point>,
}

impl LabelledPointSet {
    pub fn new(points: Vec<Point>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::TooFewPoints { min: 1, got: 0 });
        }
        let mut seen: HashMap<&Point, usize> = HashMap::with_capacity(points.len());
        for (i, p) in points.iter().enumerate() {
            if let Some(&j) = seen.get(p) {
                return Err(Error::DuplicatePoint {
                    first: j + 1,
                    second: i + 1,
                });
            }
            seen.insert(p, i);
        }
        Ok(LabelledPointSet { points })
    }

    pub fn from_coords(coords: &[(i64, i64)]) -> Result<Self> {
        Self::new(coords.iter().map(|&(x, y)| Point::new(x, y)).collect())
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        self.points.is_empty()
    }

    pub fn points(&self) -> &[Point] {
        &self.points
    }

    /// Point at 0-based index `i` (label `i + 1`).
    pub fn point(&self, i: usize) -> &Point {
        &self.points[i]
    }

    /// The set `[q[tau[0]], q[tau[1]], ...]`, i.e. new label `i + 1` carries
    /// the point that had label `tau[i] + 1`.
    pub fn relabel(&self, tau: &[usize]) -> Result<Self> {
        check_permutation(tau, self.len())?;
        Ok(LabelledPointSet {
            points: tau.iter().map(|&t| self.points[t].clone()).collect(),
        })
    }

    /// Applies `(x, y) -> (a x + b y + e, c x + d y + f)`; orientation is
    /// preserved iff `ad - bc > 0`.
    pub fn affine_map(&self, m: [i64; 6]) -> Result<Self> {
        let [a, b, c, d, e, f] = m.map(BigInt::from);
        Self::new(
            self.points
                .iter()
                .map(|p| Point {
                    x: &a * &p.x + &b * &p.y + &e,
                    y: &c * &p.x + &d * &p.y + &f,
                })
                .collect(),
        )
    }

    /// Renders the plain-text point-set format.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.len());
        for p in &self.points {
            out.push_str(&format!("{} {}\n", p.x, p.y));
        }
        out
    }

    /// Parses the plain-text point-set format: a count line followed by one
    /// `x y` line per point.
    pub fn parse_text(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty());
        let (_, header) = lines.next().ok_or(Error::Parse {
            line: 1,
            msg: "missing point count".into(),
        })?;
        let n: usize = header.trim().parse().map_err(|e| Error::Parse {
            line: 1,
            msg: format!("bad point count: {e}"),
        })?;
        let mut points = Vec::with_capacity(n);
        for (idx, line) in lines {
            let mut it = line.split_whitespace();
            let parse = |tok: Option<&str>| -> Result<BigInt> {
                let tok = tok.ok_or(Error::Parse {
                    line: idx + 1,
                    msg: "expected two coordinates".into(),
                })?;
                BigInt::from_str(tok).map_err(|e| Error::Parse {
                    line: idx + 1,
                    msg: format!("bad coordinate {tok:?}: {e}"),
                })
            };
            let x = parse(it.next())?;
            let y = parse(it.next())?;
            if it.next().is_some() {
                return Err(Error::Parse {
                    line: idx + 1,
                    msg: "trailing tokens".into(),
                });
            }
            points.push(Point { x, y });
        }
        if points.len() != n {
            return Err(Error::Parse {
                line: 1,
                msg: format!("header says {n} points, found {}", points.len()),
            });
        }
        Self::new(points)
    }
}

impl TryFrom<Vec<Point>> for LabelledPointSet {
    type Error = Error;

    fn try_from(points: Vec<Point>) -> Result<Self> {
        Self::new(points)
    }
}

impl From<LabelledPointSet> for Vec<Point> {
    fn from(set: LabelledPointSet) -> Self {
        set.points
    }
}

impl FromStr for LabelledPointSet {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Self::parse_text(s)
    }
}

pub(crate) fn check_permutation(tau: &[usize], n: usize) -> Result<()> {
    if tau.len() != n {
        return Err(Error::SizeMismatch {
            expected: n,
            got: tau.len(),
        });
    }
    let mut seen = vec![false; n];
    for &t in tau {
        if t >= n || std::mem::replace(&mut seen[t], true) {
            return Err(Error::Invalid(format!("{tau:?} is not a permutation")));
        }
    }
    Ok(())
}

/// Position of triple `i < j < k` (0-based) in lexicographic order.
fn triple_rank(n: usize, i: usize, j: usize, k: usize) -> usize {
    // Triples starting below i, then pairs (j', k') with i < j' < j, then k.
    let c3 = |m: usize| if m < 3 { 0 } else { m * (m - 1) * (m - 2) / 6 };
    let c2 = |m: usize| if m < 2 { 0 } else { m * (m - 1) / 2 };
    (c3(n) - c3(n - i)) + (c2(n - i - 1) - c2(n - j)) + (k - j - 1)
}

/// Orientation signs over all triples `i < j < k`, lexicographic.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct SignPattern {
    n: usize,
    entries: Vec<i8>,
}

impl SignPattern {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[i8] {
        &self.entries
    }

    /// Entry for 0-based `i < j < k`.
    pub fn get(&self, i: usize, j: usize, k: usize) -> i8 {
        self.entries[triple_rank(self.n, i, j, k)]
    }

    pub fn has_zero(&self) -> bool {
        self.entries.contains(&0)
    }
}

pub fn sign_pattern(p: &LabelledPointSet) -> Result<SignPattern> {
    let n = p.len();
    if n < 3 {
        return Err(Error::TooFewPoints { min: 3, got: n });
    }
    let mut entries = Vec::with_capacity(n * (n - 1) * (n - 2) / 6);
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                entries.push(orientation(p.point(i), p.point(j), p.point(k)));
            }
        }
    }
    Ok(SignPattern { n, entries })
}

pub fn is_general_position(p: &LabelledPointSet) -> Result<bool> {
    Ok(!sign_pattern(p)?.has_zero())
}

pub fn are_isomorphic(p: &LabelledPointSet, q: &LabelledPointSet) -> Result<bool> {
    if p.len() != q.len() {
        return Err(Error::SizeMismatch {
            expected: p.len(),
            got: q.len(),
        });
    }
    if p.len() < 3 {
        return Ok(true);
    }
    Ok(sign_pattern(p)? == sign_pattern(q)?)
}

/// Dense orientation lookup over all ordered triples of a small point set.
#[derive(Clone, Debug)]
pub struct OrientationTable {
    n: usize,
    data: Vec<i8>,
}

impl OrientationTable {
    pub fn new(p: &LabelledPointSet) -> Self {
        let n = p.len();
        let mut data = vec![0i8; n * n * n];
        for i in 0..n {
            for j in i + 1..n {
                for k in j + 1..n {
                    let o = orientation(p.point(i), p.point(j), p.point(k));
                    for (a, b, c, s) in [
                        (i, j, k, o),
                        (j, k, i, o),
                        (k, i, j, o),
                        (j, i, k, -o),
                        (i, k, j, -o),
                        (k, j, i, -o),
                    ] {
                        data[(a * n + b) * n + c] = s;
                    }
                }
            }
        }
        OrientationTable { n, data }
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize, k: usize) -> i8 {
        self.data[(i * self.n + j) * self.n + k]
    }

    pub fn is_general_position(&self) -> bool {
        let n = self.n;
        (0..n).all(|i| (i + 1..n).all(|j| (j + 1..n).all(|k| self.get(i, j, k) != 0)))
    }

    /// Number of points on the boundary of the convex hull (extreme points
    /// and points in the relative interior of hull edges).
    pub fn hull_boundary_count(&self) -> usize {
        let n = self.n;
        if n <= 3 {
            return n;
        }
        (0..n)
            .filter(|&i| {
                (0..n).filter(|&j| j != i).any(|j| {
                    let others = || (0..n).filter(move |&k| k != i && k != j);
                    others().all(|k| self.get(i, j, k) >= 0) || others().all(|k| self.get(i, j, k) <= 0)
                })
            })
            .count()
    }
}

/// Searches for a relabelling `tau` with `orientation(p_i, p_j, p_k) ==
/// orientation(q_tau(i), q_tau(j), q_tau(k))` for every triple, i.e.
/// `q.relabel(tau)` is isomorphic to `p`. Desk scale only (backtracking).
pub fn are_combinatorially_equivalent(
    p: &LabelledPointSet,
    q: &LabelledPointSet,
) -> Result<Option<Vec<usize>>> {
    let n = p.len();
    if n != q.len() {
        return Err(Error::SizeMismatch {
            expected: n,
            got: q.len(),
        });
    }
    if n < 3 {
        return Ok(Some((0..n).collect()));
    }
    let tp = OrientationTable::new(p);
    let tq = OrientationTable::new(q);

    let zeros = |t: &OrientationTable, i: usize| {
        let mut z = 0;
        for j in 0..n {
            for k in j + 1..n {
                if j != i && k != i && t.get(i, j, k) == 0 {
                    z += 1;
                }
            }
        }
        z
    };
    let zp: Vec<usize> = (0..n).map(|i| zeros(&tp, i)).collect();
    let zq: Vec<usize> = (0..n).map(|i| zeros(&tq, i)).collect();
    {
        let (mut a, mut b) = (zp.clone(), zq.clone());
        a.sort_unstable();
        b.sort_unstable();
        if a != b {
            return Ok(None);
        }
    }
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| zp[b].cmp(&zp[a]).then(a.cmp(&b)));

    struct Ctx<'a> {
        tp: &'a OrientationTable,
        tq: &'a OrientationTable,
        order: Vec<usize>,
        zp: Vec<usize>,
        zq: Vec<usize>,
        image: Vec<usize>,
        used: Vec<bool>,
    }

    fn extend(ctx: &mut Ctx<'_>, depth: usize) -> bool {
        let n = ctx.order.len();
        if depth == n {
            return true;
        }
        let a = ctx.order[depth];
        for b in 0..n {
            if ctx.used[b] || ctx.zp[a] != ctx.zq[b] {
                continue;
            }
            let consistent = (0..depth).all(|s| {
                let x = ctx.order[s];
                (s + 1..depth).all(|t| {
                    let y = ctx.order[t];
                    ctx.tp.get(x, y, a) == ctx.tq.get(ctx.image[x], ctx.image[y], b)
                })
            });
            if !consistent {
                continue;
            }
            ctx.image[a] = b;
            ctx.used[b] = true;
            if extend(ctx, depth + 1) {
                return true;
            }
            ctx.used[b] = false;
        }
        false
    }

    let mut ctx = Ctx {
        tp: &tp,
        tq: &tq,
        order,
        zp,
        zq,
        image: vec![usize::MAX; n],
        used: vec![false; n],
    };
    Ok(extend(&mut ctx, 0).then_some(ctx.image))
}
