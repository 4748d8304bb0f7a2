//! Labelled planar triangulations that carry their face list.
//!
//! Faces are maintained by the constructors (`K4`, stacking, the
//! octahedron), never recovered by planarity testing. Labels are 1-based.

use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigUint;
use num_traits::One;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};

/// Undirected edge `{a, b}` stored with `a < b`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Edge(u32, u32);

impl Edge {
    pub fn new(a: u32, b: u32) -> Self {
        assert_ne!(a, b, "loop edge {a}-{a}");
        if a < b {
            Edge(a, b)
        } else {
            Edge(b, a)
        }
    }

    pub fn lo(self) -> u32 {
        self.0
    }

    pub fn hi(self) -> u32 {
        self.1
    }

    pub fn contains(self, v: u32) -> bool {
        self.0 == v || self.1 == v
    }
}

/// Facial triangle stored with sorted corners.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Face([u32; 3]);

impl Face {
    pub fn new(a: u32, b: u32, c: u32) -> Self {
        let mut v = [a, b, c];
        v.sort_unstable();
        assert!(v[0] != v[1] && v[1] != v[2], "degenerate face {v:?}");
        Face(v)
    }

    pub fn from_array(v: [u32; 3]) -> Self {
        Face::new(v[0], v[1], v[2])
    }

    pub fn vertices(self) -> [u32; 3] {
        self.0
    }

    pub fn edges(self) -> [Edge; 3] {
        let [a, b, c] = self.0;
        [Edge::new(a, b), Edge::new(a, c), Edge::new(b, c)]
    }

    /// The three faces created by stacking `v` into this one.
    pub fn split(self, v: u32) -> [Face; 3] {
        let [a, b, c] = self.0;
        [Face::new(a, b, v), Face::new(a, c, v), Face::new(b, c, v)]
    }
}

/// Anything with labelled vertices `1..=n` and an edge list.
pub trait LabelledGraph {
    fn order(&self) -> usize;
    fn edge_list(&self) -> Vec<Edge>;
}

impl<G: LabelledGraph + ?Sized> LabelledGraph for &G {
    fn order(&self) -> usize {
        (**self).order()
    }

    fn edge_list(&self) -> Vec<Edge> {
        (**self).edge_list()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FacedTriangulation {
    n: usize,
    edges: BTreeSet<Edge>,
    faces: BTreeSet<Face>,
}

impl FacedTriangulation {
    fn from_parts(n: usize, edges: BTreeSet<Edge>, faces: BTreeSet<Face>) -> Self {
        FacedTriangulation { n, edges, faces }
    }

    pub fn k4() -> Self {
        let edges = [(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]
            .into_iter()
            .map(|(a, b)| Edge::new(a, b))
            .collect();
        let faces = [(1, 2, 3), (1, 2, 4), (1, 3, 4), (2, 3, 4)]
            .into_iter()
            .map(|(a, b, c)| Face::new(a, b, c))
            .collect();
        Self::from_parts(4, edges, faces)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &BTreeSet<Edge> {
        &self.edges
    }

    pub fn faces(&self) -> &BTreeSet<Face> {
        &self.faces
    }

    pub fn has_edge(&self, a: u32, b: u32) -> bool {
        a != b && self.edges.contains(&Edge::new(a, b))
    }

    pub fn has_face(&self, face: Face) -> bool {
        self.faces.contains(&face)
    }

    pub fn degree(&self, v: u32) -> usize {
        self.edges.iter().filter(|e| e.contains(v)).count()
    }

    /// Adds vertex `n + 1` inside `face`, joined to its three corners.
    /// Returns the new label.
    pub fn stack_into(&mut self, face: Face) -> Result<u32> {
        if !self.faces.remove(&face) {
            return Err(Error::FaceNotPresent(face.vertices()));
        }
        self.n += 1;
        let v = self.n as u32;
        for c in face.vertices() {
            self.edges.insert(Edge::new(c, v));
        }
        self.faces.extend(face.split(v));
        Ok(v)
    }

    /// Edges of the subgraph induced on `labels`.
    pub fn induced_edges(&self, labels: &[u32]) -> BTreeSet<Edge> {
        self.edges
            .iter()
            .copied()
            .filter(|e| labels.contains(&e.lo()) && labels.contains(&e.hi()))
            .collect()
    }

    /// Checks the Euler counts and the edge/face incidence structure.
    pub fn validate(&self) -> std::result::Result<(), String> {
        let n = self.n;
        if n >= 3 {
            if self.edges.len() != 3 * n - 6 {
                return Err(format!("{} edges, expected {}", self.edges.len(), 3 * n - 6));
            }
            if self.faces.len() != 2 * n - 4 {
                return Err(format!("{} faces, expected {}", self.faces.len(), 2 * n - 4));
            }
        }
        for e in &self.edges {
            if e.lo() == 0 || e.hi() as usize > n {
                return Err(format!("edge {e:?} has a label outside 1..={n}"));
            }
        }
        let mut incidence: BTreeMap<Edge, usize> = BTreeMap::new();
        for f in &self.faces {
            for e in f.edges() {
                if !self.edges.contains(&e) {
                    return Err(format!("face {f:?} uses non-edge {e:?}"));
                }
                *incidence.entry(e).or_default() += 1;
            }
        }
        for e in &self.edges {
            match incidence.get(e).copied().unwrap_or(0) {
                2 => {}
                k => return Err(format!("edge {e:?} lies in {k} faces")),
            }
        }
        Ok(())
    }
}

impl LabelledGraph for FacedTriangulation {
    fn order(&self) -> usize {
        self.n
    }

    fn edge_list(&self) -> Vec<Edge> {
        self.edges.iter().copied().collect()
    }
}

/// One stacking step: `vertex` placed into `face`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Stack {
    pub vertex: u32,
    pub face: Face,
}

/// A member of the stacked family: `K4` on `1..=4` followed by stacking
/// vertices `5, 6, ..., n` in order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct StackedTriangulation {
    stacks: Vec<Stack>,
}

impl StackedTriangulation {
    pub fn k4() -> Self {
        StackedTriangulation { stacks: Vec::new() }
    }

    /// Rebuilds a member from its stacking history, checking that each step
    /// uses a face present at that point.
    pub fn from_stacks(stacks: Vec<Stack>) -> Result<Self> {
        let mut t = FacedTriangulation::k4();
        for (i, s) in stacks.iter().enumerate() {
            let expected = 5 + i as u32;
            if s.vertex != expected {
                return Err(Error::Invalid(format!(
                    "stack {i} introduces vertex {}, expected {expected}",
                    s.vertex
                )));
            }
            t.stack_into(s.face)?;
        }
        Ok(StackedTriangulation { stacks })
    }

    pub(crate) fn from_stacks_unchecked(stacks: Vec<Stack>) -> Self {
        StackedTriangulation { stacks }
    }

    pub fn order(&self) -> usize {
        4 + self.stacks.len()
    }

    pub fn stacks(&self) -> &[Stack] {
        &self.stacks
    }

    pub fn expand(&self) -> FacedTriangulation {
        let mut t = FacedTriangulation::k4();
        for s in &self.stacks {
            t.stack_into(s.face).expect("stacking history verified at construction");
        }
        t
    }

    pub fn stack_child(&self, face: Face) -> Result<Self> {
        if !self.expand().has_face(face) {
            return Err(Error::FaceNotPresent(face.vertices()));
        }
        let mut stacks = self.stacks.clone();
        stacks.push(Stack {
            vertex: self.order() as u32 + 1,
            face,
        });
        Ok(StackedTriangulation { stacks })
    }
}

impl LabelledGraph for StackedTriangulation {
    fn order(&self) -> usize {
        StackedTriangulation::order(self)
    }

    fn edge_list(&self) -> Vec<Edge> {
        let mut edges: Vec<Edge> = FacedTriangulation::k4().edges.into_iter().collect();
        for s in &self.stacks {
            edges.extend(s.face.vertices().map(|c| Edge::new(c, s.vertex)));
        }
        edges.sort_unstable();
        edges
    }
}

/// Plain labelled graph read from a record without face information.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EdgeListGraph {
    n: usize,
    edges: Vec<Edge>,
}

impl EdgeListGraph {
    pub fn new(n: usize, edges: impl IntoIterator<Item = Edge>) -> Result<Self> {
        let set: BTreeSet<Edge> = edges.into_iter().collect();
        if let Some(e) = set.iter().find(|e| e.lo() == 0 || e.hi() as usize > n) {
            return Err(Error::Invalid(format!("edge {e:?} outside 1..={n}")));
        }
        Ok(EdgeListGraph {
            n,
            edges: set.into_iter().collect(),
        })
    }
}

impl LabelledGraph for EdgeListGraph {
    fn order(&self) -> usize {
        self.n
    }

    fn edge_list(&self) -> Vec<Edge> {
        self.edges.clone()
    }
}

pub const TN_GUARD: usize = 10;

/// |T_n| = 2^(n-4) (n-3)!.
pub fn count_tn(n: usize) -> Result<BigUint> {
    if n < 4 {
        return Err(out_of_range("n", n, ">= 4"));
    }
    let fact: BigUint = (1..=(n as u64 - 3)).map(BigUint::from).product();
    Ok((BigUint::one() << (n - 4)) * fact)
}

/// Depth-first stream of every member of T_n, children in lexicographic
/// face order. Guarded to `n <= 10` unless `override_guard` is set.
pub fn enumerate_tn(n: usize, override_guard: bool) -> Result<TnEnumerator> {
    if n < 4 || (n > TN_GUARD && !override_guard) {
        return Err(out_of_range("n", n, "4..=10 (pass the override for larger n)"));
    }
    Ok(TnEnumerator::new(n))
}

struct Frame {
    faces: Vec<Face>,
    cursor: usize,
}

pub struct TnEnumerator {
    n: usize,
    frames: Vec<Frame>,
    stacks: Vec<Stack>,
    k4_pending: bool,
}

impl TnEnumerator {
    fn new(n: usize) -> Self {
        let root = Frame {
            faces: FacedTriangulation::k4().faces.into_iter().collect(),
            cursor: 0,
        };
        TnEnumerator {
            n,
            frames: if n > 4 { vec![root] } else { Vec::new() },
            stacks: Vec::new(),
            k4_pending: n == 4,
        }
    }
}

impl Iterator for TnEnumerator {
    type Item = StackedTriangulation;

    fn next(&mut self) -> Option<StackedTriangulation> {
        if self.k4_pending {
            self.k4_pending = false;
            return Some(StackedTriangulation::k4());
        }
        let last_depth = self.n.checked_sub(5)?;
        loop {
            let depth = self.frames.len().checked_sub(1)?;
            let frame = self.frames.last_mut()?;
            if frame.cursor == frame.faces.len() {
                self.frames.pop();
                self.stacks.pop();
                continue;
            }
            let face = frame.faces[frame.cursor];
            frame.cursor += 1;
            let stack = Stack {
                vertex: 5 + depth as u32,
                face,
            };
            if depth == last_depth {
                let mut stacks = self.stacks.clone();
                stacks.push(stack);
                return Some(StackedTriangulation::from_stacks_unchecked(stacks));
            }
            let mut faces: Vec<Face> = frame.faces.iter().copied().filter(|&f| f != face).collect();
            faces.extend(face.split(stack.vertex));
            faces.sort_unstable();
            self.stacks.push(stack);
            self.frames.push(Frame { faces, cursor: 0 });
        }
    }
}

/// Uniform member of T_n: each step picks one of the current faces
/// uniformly. Face-choice sequences are in bijection with T_n, so this is
/// exactly uniform.
pub fn sample_uniform_tn(n: usize, seed: u64) -> Result<StackedTriangulation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    sample_uniform_tn_with(n, &mut rng)
}

pub fn sample_uniform_tn_with<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Result<StackedTriangulation> {
    if n < 4 {
        return Err(out_of_range("n", n, ">= 4"));
    }
    let mut faces: Vec<Face> = FacedTriangulation::k4().faces.into_iter().collect();
    let mut stacks = Vec::with_capacity(n - 4);
    for v in 5..=n as u32 {
        let face = faces.swap_remove(rng.gen_range(0..faces.len()));
        faces.extend(face.split(v));
        // Keep the face list ordered so the draw depends only on the seed
        // and the history, not on removal order.
        faces.sort_unstable();
        stacks.push(Stack { vertex: v, face });
    }
    Ok(StackedTriangulation::from_stacks_unchecked(stacks))
}

/// Canonical octahedron faces `f1..f8`.
pub const OCTAHEDRON_FACES: [[u32; 3]; 8] = [
    [1, 2, 3],
    [1, 3, 5],
    [1, 5, 4],
    [1, 4, 2],
    [6, 2, 3],
    [6, 3, 5],
    [6, 5, 4],
    [6, 4, 2],
];

/// Antipodal (non-adjacent) pairs of the octahedron.
pub const OCTAHEDRON_NON_EDGES: [[u32; 2]; 3] = [[1, 6], [2, 5], [3, 4]];

pub fn octahedron() -> FacedTriangulation {
    let faces: BTreeSet<Face> = OCTAHEDRON_FACES.iter().map(|&f| Face::from_array(f)).collect();
    let edges: BTreeSet<Edge> = faces.iter().flat_map(|f| f.edges()).collect();
    FacedTriangulation::from_parts(6, edges, faces)
}

/// On-disk graph record: `n`, `edges` as `[i, j]` with `i < j`, and
/// optionally the face list and the stacking history.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphRecord {
    pub n: usize,
    pub edges: Vec<[u32; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub faces: Option<Vec<[u32; 3]>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub stacks: Option<Vec<StackRecord>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StackRecord {
    pub vertex: u32,
    pub face: [u32; 3],
}

impl GraphRecord {
    pub fn from_faced(t: &FacedTriangulation) -> Self {
        GraphRecord {
            n: t.n,
            edges: t.edges.iter().map(|e| [e.lo(), e.hi()]).collect(),
            faces: Some(t.faces.iter().map(|f| f.vertices()).collect()),
            stacks: None,
        }
    }

    pub fn from_stacked(t: &StackedTriangulation) -> Self {
        let mut rec = Self::from_faced(&t.expand());
        rec.stacks = Some(
            t.stacks
                .iter()
                .map(|s| StackRecord {
                    vertex: s.vertex,
                    face: s.face.vertices(),
                })
                .collect(),
        );
        rec
    }

    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("graph records always serialize")
    }

    pub fn edge_graph(&self) -> Result<EdgeListGraph> {
        let mut edges = Vec::with_capacity(self.edges.len());
        for &[a, b] in &self.edges {
            if a >= b {
                return Err(Error::Invalid(format!("edge [{a}, {b}] must satisfy i < j")));
            }
            edges.push(Edge::new(a, b));
        }
        EdgeListGraph::new(self.n, edges)
    }

    /// The stacked member described by `stacks`, cross-checked against the
    /// recorded edges.
    pub fn stacked(&self) -> Result<Option<StackedTriangulation>> {
        let Some(stacks) = &self.stacks else {
            return Ok(None);
        };
        let t = StackedTriangulation::from_stacks(
            stacks
                .iter()
                .map(|s| Stack {
                    vertex: s.vertex,
                    face: Face::from_array(s.face),
                })
                .collect(),
        )?;
        if t.order() != self.n || t.edge_list() != self.edge_graph()?.edge_list() {
            return Err(Error::Invalid("stacking history disagrees with edge list".into()));
        }
        Ok(Some(t))
    }

    /// The faced triangulation when a face list is present, validated.
    pub fn faced(&self) -> Result<Option<FacedTriangulation>> {
        let Some(faces) = &self.faces else {
            return Ok(None);
        };
        let edges: BTreeSet<Edge> = self.edge_graph()?.edges.into_iter().collect();
        let faces: BTreeSet<Face> = faces.iter().map(|&f| Face::from_array(f)).collect();
        let t = FacedTriangulation::from_parts(self.n, edges, faces);
        t.validate().map_err(Error::Invalid)?;
        Ok(Some(t))
    }
}

#[cfg(test)]
mod tests {
    use std::collections::HashSet;

    use super::*;

    #[test]
    fn k4_structure() {
        let t = StackedTriangulation::k4().expand();
        let edges: Vec<_> = t.edges().iter().map(|e| (e.lo(), e.hi())).collect();
        assert_eq!(edges, vec![(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)]);
        let faces: Vec<_> = t.faces().iter().map(|f| f.vertices()).collect();
        assert_eq!(faces, vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
        assert_eq!(t.edges().len(), 3 * 4 - 6);
        assert_eq!(t.faces().len(), 2 * 4 - 4);
        t.validate().unwrap();
    }

    #[test]
    fn stack_child_examples() {
        let t5 = StackedTriangulation::k4().stack_child(Face::new(1, 2, 3)).unwrap();
        let e = t5.expand();
        for (a, b) in [(1, 5), (2, 5), (3, 5)] {
            assert!(e.has_edge(a, b));
        }
        assert_eq!(e.edges().len(), 9);
        e.validate().unwrap();
        assert!(matches!(
            StackedTriangulation::k4().stack_child(Face::new(1, 2, 6)),
            Err(Error::FaceNotPresent([1, 2, 6]))
        ));
        let mut t = StackedTriangulation::k4();
        for i in 0..8 {
            let face = *t.expand().faces().iter().nth(i % 3).unwrap();
            let before = t.expand();
            t = t.stack_child(face).unwrap();
            let after = t.expand();
            assert!(before.edges().is_subset(after.edges()));
        }
        assert_eq!(t.expand().edges().len(), 3 * 12 - 6);
    }

    #[test]
    fn counts() {
        assert_eq!(count_tn(4).unwrap(), BigUint::from(1u32));
        assert_eq!(count_tn(5).unwrap(), BigUint::from(4u32));
        assert_eq!(count_tn(10).unwrap(), BigUint::from(322_560u32));
        assert_eq!(count_tn(20).unwrap(), BigUint::from(23_310_331_287_699_456_000u128));
        assert!(count_tn(3).is_err());
    }

    #[test]
    fn enumeration_matches_count_and_is_distinct() {
        for n in 4..=8 {
            let mut seen = HashSet::new();
            for t in enumerate_tn(n, false).unwrap() {
                let e = t.expand();
                assert_eq!(e.order(), n);
                e.validate().unwrap();
                assert!(seen.insert(t.edge_list()));
            }
            assert_eq!(BigUint::from(seen.len()), count_tn(n).unwrap(), "n = {n}");
        }
    }

    #[test]
    fn enumeration_guard() {
        assert!(enumerate_tn(11, false).is_err());
        assert!(enumerate_tn(3, true).is_err());
        assert!(enumerate_tn(11, true).is_ok());
    }

    #[test]
    fn enumeration_order_is_lexicographic() {
        let t5: Vec<_> = enumerate_tn(5, false).unwrap().map(|t| t.stacks()[0].face.vertices()).collect();
        assert_eq!(t5, vec![[1, 2, 3], [1, 2, 4], [1, 3, 4], [2, 3, 4]]);
    }

    #[test]
    fn sampling_is_deterministic_and_valid() {
        assert_eq!(sample_uniform_tn(4, 99).unwrap(), StackedTriangulation::k4());
        let a = sample_uniform_tn(50, 7).unwrap();
        assert_eq!(a, sample_uniform_tn(50, 7).unwrap());
        a.expand().validate().unwrap();
        assert_eq!(StackedTriangulation::from_stacks(a.stacks().to_vec()).unwrap(), a);
    }

    #[test]
    fn octahedron_structure() {
        let h = octahedron();
        assert_eq!(h.edges().len(), 12);
        assert_eq!(h.faces().len(), 8);
        assert!(!h.has_edge(1, 6));
        for [a, b] in OCTAHEDRON_NON_EDGES {
            assert!(!h.has_edge(a, b));
            for f in h.faces() {
                let v = f.vertices();
                assert!(!(v.contains(&a) && v.contains(&b)));
            }
        }
        for v in 1..=6 {
            assert_eq!(h.degree(v), 4);
        }
        h.validate().unwrap();
    }

    #[test]
    fn record_round_trip() {
        let t = sample_uniform_tn(9, 3).unwrap();
        let rec = GraphRecord::from_stacked(&t);
        let back: GraphRecord = serde_json::from_str(&rec.to_json_line()).unwrap();
        assert_eq!(back, rec);
        assert_eq!(back.stacked().unwrap().unwrap(), t);
        assert_eq!(back.faced().unwrap().unwrap(), t.expand());
        let mut bad = rec.clone();
        bad.edges[0] = [2, 1];
        assert!(bad.edge_graph().is_err());
    }
}
