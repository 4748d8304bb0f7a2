//! Backtracking placement search over a prepared point set.

use std::ops::ControlFlow;

use crate::geom::{dot_sign, within_box, LabelledPointSet, OrientationTable};
use crate::triangulations::Edge;

const UNPLACED: usize = usize::MAX;

/// A point set with its orientation table. All predicates take 0-based
/// point indices; coordinates are only consulted for collinear cases.
pub(crate) struct Drawing<'a> {
    points: &'a LabelledPointSet,
    table: OrientationTable,
}

impl<'a> Drawing<'a> {
    pub(crate) fn new(points: &'a LabelledPointSet) -> Self {
        Drawing {
            points,
            table: OrientationTable::new(points),
        }
    }

    pub(crate) fn len(&self) -> usize {
        self.points.len()
    }

    pub(crate) fn table(&self) -> &OrientationTable {
        &self.table
    }

    #[inline]
    pub(crate) fn orient(&self, i: usize, j: usize, k: usize) -> i8 {
        self.table.get(i, j, k)
    }

    fn between(&self, p: usize, a: usize, b: usize) -> bool {
        within_box(self.points.point(p), self.points.point(a), self.points.point(b))
    }

    /// Point `p` lies in the relative interior of segment `ab`.
    #[inline]
    pub(crate) fn interior(&self, p: usize, a: usize, b: usize) -> bool {
        p != a && p != b && self.orient(a, b, p) == 0 && self.between(p, a, b)
    }

    /// Strictly inside triangle `abc`.
    #[inline]
    pub(crate) fn inside(&self, p: usize, a: usize, b: usize, c: usize) -> bool {
        let o = self.orient(a, b, p);
        o != 0 && o == self.orient(b, c, p) && o == self.orient(c, a, p)
    }

    /// Segments `ab` and `cd` share a point other than a common endpoint.
    pub(crate) fn conflict(&self, a: usize, b: usize, c: usize, d: usize) -> bool {
        if (a == c && b == d) || (a == d && b == c) {
            return true;
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
            return self.orient(s, u, v) == 0
                && dot_sign(self.points.point(s), self.points.point(u), self.points.point(v)) > 0;
        }
        let o1 = self.orient(a, b, c);
        let o2 = self.orient(a, b, d);
        let o3 = self.orient(c, d, a);
        let o4 = self.orient(c, d, b);
        if o1 * o2 < 0 && o3 * o4 < 0 {
            return true;
        }
        (o1 == 0 && self.between(c, a, b))
            || (o2 == 0 && self.between(d, a, b))
            || (o3 == 0 && self.between(a, c, d))
            || (o4 == 0 && self.between(b, c, d))
    }

    /// Full check of a complete placement (`place[v]` is the point of
    /// 0-based vertex `v`). Returns the verdict and the number of predicate
    /// evaluations.
    pub(crate) fn is_embedding(&self, edges: &[Edge], place: &[usize]) -> (bool, u64) {
        let segs: Vec<(usize, usize)> = edges
            .iter()
            .map(|e| (place[e.lo() as usize - 1], place[e.hi() as usize - 1]))
            .collect();
        let mut checks = 0;
        for (i, &(a, b)) in segs.iter().enumerate() {
            for &(c, d) in &segs[i + 1..] {
                checks += 1;
                if self.conflict(a, b, c, d) {
                    return (false, checks);
                }
            }
            for &p in place {
                checks += 1;
                if self.interior(p, a, b) {
                    return (false, checks);
                }
            }
        }
        (true, checks)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct BudgetExceeded;

/// Depth-first placement of vertices in a fixed order, pruning as soon as a
/// placed edge conflicts with another or passes through a placed vertex.
pub(crate) struct Search<'d, 'p> {
    drawing: &'d Drawing<'p>,
    adj: Vec<Vec<usize>>,
    order: Vec<usize>,
    place: Vec<usize>,
    used: Vec<bool>,
    segs: Vec<(usize, usize)>,
    pub(crate) nodes: u64,
    pub(crate) checks: u64,
    budget: Option<u64>,
}

impl<'d, 'p> Search<'d, 'p> {
    /// `order` lists 0-based vertices; by default decreasing degree, ties by
    /// label.
    pub(crate) fn new(
        drawing: &'d Drawing<'p>,
        n: usize,
        edges: &[Edge],
        order: Option<Vec<usize>>,
        budget: Option<u64>,
    ) -> Self {
        let mut adj = vec![Vec::new(); n];
        for e in edges {
            let (a, b) = (e.lo() as usize - 1, e.hi() as usize - 1);
            adj[a].push(b);
            adj[b].push(a);
        }
        let order = order.unwrap_or_else(|| {
            let mut o: Vec<usize> = (0..n).collect();
            o.sort_by(|&a, &b| adj[b].len().cmp(&adj[a].len()).then(a.cmp(&b)));
            o
        });
        debug_assert_eq!(order.len(), n);
        Search {
            drawing,
            adj,
            order,
            place: vec![UNPLACED; n],
            used: vec![false; drawing.len()],
            segs: Vec::new(),
            nodes: 0,
            checks: 0,
            budget,
        }
    }

    /// Calls `visit` with every complete placement until it breaks.
    pub(crate) fn run(
        &mut self,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, BudgetExceeded> {
        self.descend(0, visit)
    }

    fn descend(
        &mut self,
        depth: usize,
        visit: &mut dyn FnMut(&[usize]) -> ControlFlow<()>,
    ) -> Result<ControlFlow<()>, BudgetExceeded> {
        if depth == self.order.len() {
            return Ok(visit(&self.place));
        }
        let v = self.order[depth];
        for p in 0..self.used.len() {
            if self.used[p] {
                continue;
            }
            self.nodes += 1;
            if self.budget.is_some_and(|b| self.nodes > b) {
                return Err(BudgetExceeded);
            }
            let mark = self.segs.len();
            if self.try_place(v, p) {
                self.used[p] = true;
                self.place[v] = p;
                let flow = self.descend(depth + 1, visit);
                self.used[p] = false;
                self.place[v] = UNPLACED;
                self.segs.truncate(mark);
                if flow?.is_break() {
                    return Ok(ControlFlow::Break(()));
                }
            } else {
                self.segs.truncate(mark);
            }
        }
        Ok(ControlFlow::Continue(()))
    }

    fn try_place(&mut self, v: usize, p: usize) -> bool {
        let d = self.drawing;
        for &(a, b) in &self.segs {
            self.checks += 1;
            if d.interior(p, a, b) {
                return false;
            }
        }
        for i in 0..self.adj[v].len() {
            let u = self.adj[v][i];
            let q = self.place[u];
            if q == UNPLACED {
                continue;
            }
            for &(a, b) in &self.segs {
                self.checks += 1;
                if d.conflict(p, q, a, b) {
                    return false;
                }
            }
            for w in 0..self.used.len() {
                if self.used[w] && w != q {
                    self.checks += 1;
                    if d.interior(w, p, q) {
                        return false;
                    }
                }
            }
            self.segs.push((p, q));
        }
        true
    }
}
