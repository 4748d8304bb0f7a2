//! Straight-line embeddings of labelled graphs on labelled point sets.
//!
//! Every check is exact. "Embeds on P" is defined for arbitrary point sets:
//! no two edges share a point other than a common endpoint and no vertex
//! lies in the relative interior of an edge. Conflict verification itself
//! only accepts representatives in general position.
//!
//! Searches take an optional node budget. Running out of budget is reported
//! as [`SearchOutcome::BudgetExceeded`], never as "does not embed".

mod reconstruct;
mod search;
pub mod svg;

use std::collections::HashSet;
use std::ops::ControlFlow;

use num_bigint::BigUint;
use serde::{Deserialize, Serialize};

use crate::construction::{build_t_of, Composition8};
use crate::error::{out_of_range, Error, Result};
use crate::geom::{check_permutation, is_general_position, LabelledPointSet};
use crate::triangulations::{
    count_tn, enumerate_tn, Edge, LabelledGraph, StackedTriangulation, OCTAHEDRON_FACES,
};

use reconstruct::{reconstruct_with, Direct, Permuted};
use search::{Drawing, Search};

/// Injective map from vertex labels to points: vertex `v` (1-based) sits on
/// point index `targets[v - 1]` (0-based).
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct VertexPlacement {
    targets: Vec<usize>,
}

impl VertexPlacement {
    pub fn new(targets: Vec<usize>) -> Result<Self> {
        check_permutation(&targets, targets.len())?;
        Ok(VertexPlacement { targets })
    }

    pub fn identity(n: usize) -> Self {
        VertexPlacement {
            targets: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.targets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.targets.is_empty()
    }

    pub fn targets(&self) -> &[usize] {
        &self.targets
    }

    /// 0-based point index of 1-based vertex `v`.
    pub fn target(&self, v: u32) -> usize {
        self.targets[v as usize - 1]
    }
}

// Serialized with 1-based point labels.
impl TryFrom<Vec<usize>> for VertexPlacement {
    type Error = Error;

    fn try_from(labels: Vec<usize>) -> Result<Self> {
        if labels.contains(&0) {
            return Err(Error::Invalid("point labels are 1-based".into()));
        }
        VertexPlacement::new(labels.into_iter().map(|l| l - 1).collect())
    }
}

impl From<VertexPlacement> for Vec<usize> {
    fn from(p: VertexPlacement) -> Self {
        p.targets.into_iter().map(|t| t + 1).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SearchOutcome {
    Embeds,
    DoesNotEmbed,
    BudgetExceeded,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EmbeddingVerdict {
    pub outcome: SearchOutcome,
    pub witness: Option<VertexPlacement>,
    pub crossings_checked: u64,
    pub nodes: u64,
}

impl EmbeddingVerdict {
    pub fn embeds(&self) -> bool {
        self.outcome == SearchOutcome::Embeds
    }

    pub fn is_unknown(&self) -> bool {
        self.outcome == SearchOutcome::BudgetExceeded
    }

    fn rejected() -> Self {
        EmbeddingVerdict {
            outcome: SearchOutcome::DoesNotEmbed,
            witness: None,
            crossings_checked: 0,
            nodes: 0,
        }
    }
}

fn check_sizes<G: LabelledGraph + ?Sized>(g: &G, p: &LabelledPointSet) -> Result<()> {
    if g.order() != p.len() {
        return Err(Error::SizeMismatch {
            expected: g.order(),
            got: p.len(),
        });
    }
    Ok(())
}

pub fn is_straight_line_embedding<G: LabelledGraph + ?Sized>(
    g: &G,
    p: &LabelledPointSet,
    placement: &VertexPlacement,
) -> Result<bool> {
    check_sizes(g, p)?;
    if placement.len() != p.len() {
        return Err(Error::SizeMismatch {
            expected: p.len(),
            got: placement.len(),
        });
    }
    let drawing = Drawing::new(p);
    Ok(drawing.is_embedding(&g.edge_list(), placement.targets()).0)
}

pub fn has_label_preserving_embedding<G: LabelledGraph + ?Sized>(g: &G, p: &LabelledPointSet) -> Result<bool> {
    is_straight_line_embedding(g, p, &VertexPlacement::identity(p.len()))
}

/// The unique member of T_n with a label-preserving straight-line embedding
/// on `p`, if one exists.
pub fn reconstruct_stacked(p: &LabelledPointSet) -> Result<Option<StackedTriangulation>> {
    if p.len() < 4 {
        return Err(Error::TooFewPoints { min: 4, got: p.len() });
    }
    if !is_general_position(p)? {
        return Err(Error::NotGeneralPosition);
    }
    Ok(reconstruct_with(&Direct(p)).map(StackedTriangulation::from_stacks_unchecked))
}

/// Maximal planar graphs only embed on sets whose hull has exactly three
/// boundary points.
fn hull_rules_out<G: LabelledGraph + ?Sized>(g: &G, edges: usize, drawing: &Drawing<'_>) -> bool {
    let n = g.order();
    n >= 4 && edges == 3 * n - 6 && drawing.table().hull_boundary_count() != 3
}

/// Backtracking search for any placement of `g` on `p`.
pub fn embeds_on<G: LabelledGraph + ?Sized>(
    g: &G,
    p: &LabelledPointSet,
    budget: Option<u64>,
) -> Result<EmbeddingVerdict> {
    check_sizes(g, p)?;
    let edges = g.edge_list();
    let drawing = Drawing::new(p);
    if hull_rules_out(g, edges.len(), &drawing) {
        return Ok(EmbeddingVerdict::rejected());
    }
    let mut search = Search::new(&drawing, g.order(), &edges, None, budget);
    let mut witness = None;
    let flow = search.run(&mut |place| {
        witness = Some(place.to_vec());
        ControlFlow::Break(())
    });
    let outcome = match flow {
        Err(_) => SearchOutcome::BudgetExceeded,
        Ok(_) if witness.is_some() => SearchOutcome::Embeds,
        Ok(_) => SearchOutcome::DoesNotEmbed,
    };
    Ok(EmbeddingVerdict {
        outcome,
        witness: witness.map(|targets| VertexPlacement { targets }),
        crossings_checked: search.checks,
        nodes: search.nodes,
    })
}

/// Advances `perm` to its lexicographic successor; false after the last.
pub(crate) fn next_permutation(perm: &mut [usize]) -> bool {
    let Some(i) = perm.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = perm.iter().rposition(|&x| x > perm[i]).expect("successor exists");
    perm.swap(i, j);
    perm[i + 1..].reverse();
    true
}

/// Alternative strategy for stacked members: `t` embeds on `p` iff for some
/// relabelling `tau` the reconstruction on `p` relabelled by `tau` is `t`.
/// Requires general position.
pub fn embeds_on_by_reconstruction(t: &StackedTriangulation, p: &LabelledPointSet) -> Result<EmbeddingVerdict> {
    check_sizes(t, p)?;
    let drawing = Drawing::new(p);
    if !drawing.table().is_general_position() {
        return Err(Error::NotGeneralPosition);
    }
    let n = p.len();
    let mut perm: Vec<usize> = (0..n).collect();
    let mut nodes = 0;
    loop {
        nodes += 1;
        let view = Permuted {
            inner: drawing.table(),
            perm: &perm,
        };
        if reconstruct_with(&view).is_some_and(|stacks| stacks == t.stacks()) {
            return Ok(EmbeddingVerdict {
                outcome: SearchOutcome::Embeds,
                witness: Some(VertexPlacement { targets: perm }),
                crossings_checked: 0,
                nodes,
            });
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    Ok(EmbeddingVerdict {
        outcome: SearchOutcome::DoesNotEmbed,
        witness: None,
        crossings_checked: 0,
        nodes,
    })
}

#[derive(Clone, Debug, Serialize)]
pub struct SimultaneousVerdict {
    /// `Embeds` when every graph embeds, `DoesNotEmbed` when one provably
    /// does not, `BudgetExceeded` otherwise.
    pub outcome: SearchOutcome,
    pub per_graph: Vec<EmbeddingVerdict>,
}

impl SimultaneousVerdict {
    pub fn embeddable(&self) -> bool {
        self.outcome == SearchOutcome::Embeds
    }
}

/// Checks each graph in turn; stops at the first graph that provably fails.
pub fn simultaneously_embeddable_on<G: LabelledGraph>(
    graphs: &[G],
    p: &LabelledPointSet,
    budget: Option<u64>,
) -> Result<SimultaneousVerdict> {
    for g in graphs {
        check_sizes(g, p)?;
    }
    let mut per_graph = Vec::with_capacity(graphs.len());
    let mut unknown = false;
    for g in graphs {
        let v = embeds_on(g, p, budget)?;
        let outcome = v.outcome;
        per_graph.push(v);
        match outcome {
            SearchOutcome::DoesNotEmbed => {
                return Ok(SimultaneousVerdict {
                    outcome: SearchOutcome::DoesNotEmbed,
                    per_graph,
                })
            }
            SearchOutcome::BudgetExceeded => unknown = true,
            SearchOutcome::Embeds => {}
        }
    }
    Ok(SimultaneousVerdict {
        outcome: if unknown {
            SearchOutcome::BudgetExceeded
        } else {
            SearchOutcome::Embeds
        },
        per_graph,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ConflictOutcome {
    /// No representative admits a simultaneous embedding.
    Conflict,
    /// A representative admits one; see the counterexample.
    Refuted,
    /// Some search ran out of budget and nothing refuted the collection.
    Inconclusive,
}

#[derive(Clone, Debug, Serialize)]
pub struct ConflictVerdict {
    pub outcome: ConflictOutcome,
    pub is_conflict: bool,
    pub counterexample: Option<LabelledPointSet>,
    pub witnesses: Vec<VertexPlacement>,
    pub representatives_checked: usize,
    pub undecided: usize,
}

/// Decides whether `graphs` is a conflict collection, given one
/// representative per simple order type of size `n` (the caller's
/// responsibility). Duplicate graphs are ignored.
pub fn verify_conflict_collection<G, I>(
    graphs: &[G],
    n: usize,
    reps: I,
    budget: Option<u64>,
) -> Result<ConflictVerdict>
where
    G: LabelledGraph,
    I: IntoIterator<Item = LabelledPointSet>,
{
    let mut seen = HashSet::new();
    let unique: Vec<&G> = graphs.iter().filter(|g| seen.insert(g.edge_list())).collect();
    for g in &unique {
        if g.order() != n {
            return Err(Error::SizeMismatch {
                expected: n,
                got: g.order(),
            });
        }
    }
    let mut checked = 0;
    let mut undecided = 0;
    for p in reps {
        if p.len() != n {
            return Err(Error::SizeMismatch { expected: n, got: p.len() });
        }
        if !is_general_position(&p)? {
            return Err(Error::NotGeneralPosition);
        }
        checked += 1;
        let verdict = simultaneously_embeddable_on(&unique, &p, budget)?;
        match verdict.outcome {
            SearchOutcome::Embeds => {
                return Ok(ConflictVerdict {
                    outcome: ConflictOutcome::Refuted,
                    is_conflict: false,
                    counterexample: Some(p),
                    witnesses: verdict.per_graph.into_iter().filter_map(|v| v.witness).collect(),
                    representatives_checked: checked,
                    undecided,
                });
            }
            SearchOutcome::BudgetExceeded => undecided += 1,
            SearchOutcome::DoesNotEmbed => {}
        }
    }
    if checked == 0 {
        return Err(Error::NoRepresentatives);
    }
    let outcome = if undecided > 0 {
        ConflictOutcome::Inconclusive
    } else {
        ConflictOutcome::Conflict
    };
    Ok(ConflictVerdict {
        outcome,
        is_conflict: outcome == ConflictOutcome::Conflict,
        counterexample: None,
        witnesses: Vec::new(),
        representatives_checked: checked,
        undecided,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EmbeddingCounts {
    pub n: usize,
    /// Members of T_n with a label-preserving embedding on P.
    pub label_preserving_count: u64,
    /// Members of T_n embedding on P under some placement.
    pub embeddable_count: u64,
    pub total: BigUint,
}

impl EmbeddingCounts {
    pub fn label_preserving_fraction(&self) -> f64 {
        self.label_preserving_count as f64 / total_f64(&self.total)
    }

    pub fn embeddable_fraction(&self) -> f64 {
        self.embeddable_count as f64 / total_f64(&self.total)
    }
}

fn total_f64(total: &BigUint) -> f64 {
    num_traits::ToPrimitive::to_f64(total).unwrap_or(f64::INFINITY)
}

pub const EXACT_COUNT_MAX_N: usize = 8;

/// Exact counts over T_n for one point set. The label-preserving count is an
/// exhaustive check of every member; the embeddable count collects the
/// reconstructions over all `n!` relabellings.
pub fn exact_embedding_counts(n: usize, p: &LabelledPointSet) -> Result<EmbeddingCounts> {
    if !(4..=EXACT_COUNT_MAX_N).contains(&n) {
        return Err(out_of_range("n", n, "4..=8"));
    }
    if p.len() != n {
        return Err(Error::SizeMismatch { expected: n, got: p.len() });
    }
    let drawing = Drawing::new(p);
    if !drawing.table().is_general_position() {
        return Err(Error::NotGeneralPosition);
    }
    let identity: Vec<usize> = (0..n).collect();
    let mut label_preserving = 0;
    for t in enumerate_tn(n, false)? {
        if drawing.is_embedding(&t.edge_list(), &identity).0 {
            label_preserving += 1;
        }
    }
    let members = embeddable_members(&drawing);
    Ok(EmbeddingCounts {
        n,
        label_preserving_count: label_preserving,
        embeddable_count: members.len() as u64,
        total: count_tn(n)?,
    })
}

fn embeddable_members(drawing: &Drawing<'_>) -> HashSet<Vec<Edge>> {
    let mut members = HashSet::new();
    if drawing.table().hull_boundary_count() != 3 {
        return members;
    }
    let mut perm: Vec<usize> = (0..drawing.len()).collect();
    loop {
        let view = Permuted {
            inner: drawing.table(),
            perm: &perm,
        };
        if let Some(stacks) = reconstruct_with(&view) {
            members.insert(StackedTriangulation::from_stacks_unchecked(stacks).edge_list());
        }
        if !next_permutation(&mut perm) {
            return members;
        }
    }
}

pub const CONSISTENCY_MAX_N: u64 = 10;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ConsistencyReport {
    /// No placement of the octahedron (labels 1..=6) extends to embeddings
    /// of both members.
    pub consistent: bool,
    /// Distinct octahedron placements extending to `T(s)`, resp. `T(s')`.
    pub prefixes_s: usize,
    pub prefixes_s_prime: usize,
    pub shared_prefixes: usize,
    /// Complete embeddings examined for the face-interior count check.
    pub embeddings_checked: usize,
    /// Embeddings in which some bounded octahedron face contained a number
    /// of points different from its composition part.
    pub face_count_violations: usize,
}

/// Octahedron placements that extend to an embedding of `T(s)` on `p`,
/// checking interior counts of bounded octahedron faces on the way.
fn octahedron_prefixes(
    s: &Composition8,
    drawing: &Drawing<'_>,
    checked: &mut usize,
    violations: &mut usize,
) -> HashSet<[usize; 6]> {
    let t = build_t_of(s);
    let n = t.order();
    let edges = t.edge_list();
    let mut prefixes = HashSet::new();
    if hull_rules_out(&t, edges.len(), drawing) {
        return prefixes;
    }
    let order: Vec<usize> = (0..n).collect();
    let parts = s.parts();
    let mut search = Search::new(drawing, n, &edges, Some(order), None);
    let _ = search.run(&mut |place| {
        *checked += 1;
        for (face, &count) in OCTAHEDRON_FACES.iter().zip(parts.iter()) {
            let [a, b, c] = face.map(|v| place[v as usize - 1]);
            let octa_inside = (0..6)
                .map(|v| place[v])
                .filter(|&q| q != a && q != b && q != c)
                .any(|q| drawing.inside(q, a, b, c));
            if octa_inside {
                // Outer face of the octahedron drawing.
                continue;
            }
            let inside = (0..drawing.len()).filter(|&q| drawing.inside(q, a, b, c)).count();
            if inside as u64 != count {
                *violations += 1;
            }
        }
        let mut prefix = [0; 6];
        prefix.copy_from_slice(&place[..6]);
        prefixes.insert(prefix);
        ControlFlow::Continue(())
    });
    prefixes
}

/// Exhaustively checks that no point placement of the octahedron extends to
/// straight-line embeddings of both `T(s)` and `T(s')` on `p`.
pub fn octahedron_consistency_check(
    s: &Composition8,
    s_prime: &Composition8,
    p: &LabelledPointSet,
) -> Result<ConsistencyReport> {
    if s == s_prime {
        return Err(Error::Invalid("compositions must differ".into()));
    }
    if s.n() != s_prime.n() {
        return Err(Error::SizeMismatch {
            expected: s.n() as usize,
            got: s_prime.n() as usize,
        });
    }
    if s.n() > CONSISTENCY_MAX_N {
        return Err(out_of_range("n", s.n(), "6..=10"));
    }
    if p.len() as u64 != s.n() {
        return Err(Error::SizeMismatch {
            expected: s.n() as usize,
            got: p.len(),
        });
    }
    let drawing = Drawing::new(p);
    let mut checked = 0;
    let mut violations = 0;
    let a = octahedron_prefixes(s, &drawing, &mut checked, &mut violations);
    let b = octahedron_prefixes(s_prime, &drawing, &mut checked, &mut violations);
    let shared = a.intersection(&b).count();
    Ok(ConsistencyReport {
        consistent: shared == 0,
        prefixes_s: a.len(),
        prefixes_s_prime: b.len(),
        shared_prefixes: shared,
        embeddings_checked: checked,
        face_count_violations: violations,
    })
}
