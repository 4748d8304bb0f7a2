#![allow(dead_code)]

use conflictkit::geom::{in_segment_interior, orientation, segments_properly_intersect};
use conflictkit::{Edge, LabelledGraph, LabelledPointSet};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Crossing-free test straight from the public segment predicates, with
/// `place[v - 1]` the 0-based point of vertex `v`.
pub fn brute_is_embedding(edges: &[Edge], p: &LabelledPointSet, place: &[usize]) -> bool {
    let seg = |e: &Edge| (p.point(place[e.lo() as usize - 1]), p.point(place[e.hi() as usize - 1]));
    for (i, e) in edges.iter().enumerate() {
        let (a, b) = seg(e);
        for f in &edges[i + 1..] {
            let (c, d) = seg(f);
            if segments_properly_intersect(a, b, c, d).unwrap() {
                return false;
            }
        }
        for &q in place {
            let q = p.point(q);
            if q != a && q != b && in_segment_interior(q, a, b) {
                return false;
            }
        }
    }
    true
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// Does `g` embed on `p` under any of the `n!` placements?
pub fn brute_embeds<G: LabelledGraph>(g: &G, p: &LabelledPointSet) -> bool {
    let edges = g.edge_list();
    permutations(p.len()).iter().any(|place| brute_is_embedding(&edges, p, place))
}

/// Sign pattern of `p` relabelled by `perm`, from raw orientations.
pub fn pattern_under(p: &LabelledPointSet, perm: &[usize]) -> Vec<i8> {
    let n = p.len();
    let mut out = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                out.push(orientation(p.point(perm[i]), p.point(perm[j]), p.point(perm[k])));
            }
        }
    }
    out
}

/// Smallest sign pattern over all relabellings.
pub fn brute_canonical(p: &LabelledPointSet) -> Vec<i8> {
    permutations(p.len())
        .iter()
        .map(|perm| pattern_under(p, perm))
        .min()
        .unwrap()
}
