//! Recovering the unique stacked member drawn label-preservingly on a point
//! set in general position.
//!
//! Points are processed in label order while the drawing of the prefix is
//! kept as its outer triangle plus the list of bounded triangular faces.
//! Point `p_i` must be drawn inside the face its vertex was stacked into, so
//! that face is forced:
//!
//! * strictly inside a bounded face: stack there;
//! * outside the outer triangle `(x, y, z)`: stacking into the outer face is
//!   crossing-free iff exactly one corner lies inside the triangle spanned by
//!   `p_i` and the other two corners. That corner becomes interior and the
//!   outer triangle moves out to `p_i`. Otherwise some new edge crosses a
//!   hull edge and no member fits.

use crate::geom::{LabelledPointSet, OrientationTable};
use crate::triangulations::{Face, Stack};

/// Orientation oracle over 0-based point indices.
pub(crate) trait Orient {
    fn len(&self) -> usize;
    fn orient(&self, i: usize, j: usize, k: usize) -> i8;

    fn inside(&self, p: usize, a: usize, b: usize, c: usize) -> bool {
        let o = self.orient(a, b, p);
        o != 0 && o == self.orient(b, c, p) && o == self.orient(c, a, p)
    }
}

impl Orient for OrientationTable {
    fn len(&self) -> usize {
        OrientationTable::len(self)
    }

    #[inline]
    fn orient(&self, i: usize, j: usize, k: usize) -> i8 {
        self.get(i, j, k)
    }
}

pub(crate) struct Direct<'a>(pub(crate) &'a LabelledPointSet);

impl Orient for Direct<'_> {
    fn len(&self) -> usize {
        self.0.len()
    }

    fn orient(&self, i: usize, j: usize, k: usize) -> i8 {
        crate::geom::orientation(self.0.point(i), self.0.point(j), self.0.point(k))
    }
}

/// Label `i` reads point `perm[i]` of the underlying oracle.
pub(crate) struct Permuted<'a, O> {
    pub(crate) inner: &'a O,
    pub(crate) perm: &'a [usize],
}

impl<O: Orient> Orient for Permuted<'_, O> {
    fn len(&self) -> usize {
        self.perm.len()
    }

    #[inline]
    fn orient(&self, i: usize, j: usize, k: usize) -> i8 {
        self.inner.orient(self.perm[i], self.perm[j], self.perm[k])
    }
}

fn face(a: usize, b: usize, c: usize) -> Face {
    Face::new(a as u32 + 1, b as u32 + 1, c as u32 + 1)
}

/// Stacking history of the member drawn on the oracle's points, if any.
/// Assumes general position and at least four points.
pub(crate) fn reconstruct_with<O: Orient>(o: &O) -> Option<Vec<Stack>> {
    let n = o.len();
    debug_assert!(n >= 4);
    let mut base = None;
    for inner in 0..4 {
        let [a, b, c] = others(inner);
        if o.inside(inner, a, b, c) {
            if base.is_some() {
                return None;
            }
            base = Some((inner, [a, b, c]));
        }
    }
    let (inner, mut hull) = base?;
    let [a, b, c] = hull;
    let mut bounded = vec![[inner, a, b], [inner, b, c], [inner, a, c]];
    let mut stacks = Vec::with_capacity(n - 4);

    for p in 4..n {
        let vertex = p as u32 + 1;
        if let Some(pos) = bounded.iter().position(|t| o.inside(p, t[0], t[1], t[2])) {
            let [x, y, z] = bounded.swap_remove(pos);
            stacks.push(Stack {
                vertex,
                face: face(x, y, z),
            });
            bounded.extend([[x, y, p], [x, z, p], [y, z, p]]);
            continue;
        }
        let [x, y, z] = hull;
        let mut swallowed = None;
        for (corner, u, v) in [(x, y, z), (y, x, z), (z, x, y)] {
            if o.inside(corner, p, u, v) {
                if swallowed.is_some() {
                    return None;
                }
                swallowed = Some((corner, u, v));
            }
        }
        let (corner, u, v) = swallowed?;
        stacks.push(Stack {
            vertex,
            face: face(x, y, z),
        });
        bounded.extend([[p, corner, u], [p, corner, v]]);
        hull = [p, u, v];
    }
    Some(stacks)
}

fn others(i: usize) -> [usize; 3] {
    match i {
        0 => [1, 2, 3],
        1 => [0, 2, 3],
        2 => [0, 1, 3],
        _ => [0, 1, 2],
    }
}
