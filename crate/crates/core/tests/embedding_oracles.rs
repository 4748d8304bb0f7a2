mod common;

use std::collections::HashSet;

use common::{brute_embeds, brute_is_embedding, rng};
use conflictkit::construction::Composition8;
use conflictkit::embedding::*;
use conflictkit::otdb::{generate_representatives, SamplerConfig};
use conflictkit::sampling::{random_general_position, random_stacked_drawing};
use conflictkit::triangulations::{enumerate_tn, sample_uniform_tn_with, EdgeListGraph};
use conflictkit::{Edge, LabelledGraph, LabelledPointSet, StackedTriangulation};
use rand::seq::SliceRandom;
use rand::Rng;

fn random_set<R: Rng>(n: usize, r: &mut R) -> LabelledPointSet {
    if r.gen_bool(0.5) {
        random_stacked_drawing(n, r).unwrap().points
    } else {
        random_general_position(n, 1 << 10, r).unwrap()
    }
}

fn label_preserving_members(n: usize, p: &LabelledPointSet) -> Vec<StackedTriangulation> {
    let identity: Vec<usize> = (0..n).collect();
    enumerate_tn(n, false)
        .unwrap()
        .filter(|t| brute_is_embedding(&t.edge_list(), p, &identity))
        .collect()
}

#[test]
fn reconstruction_agrees_with_exhaustive_t7() {
    let mut r = rng(1);
    let mut hits = 0;
    for _ in 0..250 {
        let p = random_set(7, &mut r);
        let members = label_preserving_members(7, &p);
        assert!(members.len() <= 1, "{} members embed on {:?}", members.len(), p);
        let got = reconstruct_stacked(&p).unwrap();
        assert_eq!(got.as_ref(), members.first());
        if let Some(t) = got {
            hits += 1;
            assert!(has_label_preserving_embedding(&t, &p).unwrap());
        }
    }
    assert!(hits > 50, "too few positive cases: {hits}");
}

#[test]
fn reconstruction_agrees_with_exhaustive_small_n() {
    let mut r = rng(2);
    for n in 4..=6 {
        for _ in 0..150 {
            let p = random_set(n, &mut r);
            let members = label_preserving_members(n, &p);
            assert!(members.len() <= 1);
            assert_eq!(reconstruct_stacked(&p).unwrap().as_ref(), members.first());
        }
    }
}

#[test]
fn drawings_are_recovered() {
    let mut r = rng(3);
    for n in 4..=11 {
        for _ in 0..40 {
            let d = random_stacked_drawing(n, &mut r).unwrap();
            assert!(has_label_preserving_embedding(&d.triangulation, &d.points).unwrap());
            assert_eq!(reconstruct_stacked(&d.points).unwrap(), Some(d.triangulation));
        }
    }
}

fn random_subgraph<R: Rng>(n: usize, r: &mut R) -> EdgeListGraph {
    let mut edges: Vec<Edge> = sample_uniform_tn_with(n, r).unwrap().edge_list();
    edges.shuffle(r);
    let keep = r.gen_range(n - 1..=edges.len());
    edges.truncate(keep);
    EdgeListGraph::new(n, edges).unwrap()
}

#[test]
fn search_agrees_with_brute_force() {
    let mut r = rng(4);
    for n in [5usize, 6] {
        let mut positives = 0;
        for trial in 0..120 {
            let p = random_set(n, &mut r);
            let verdict_and_truth = if trial % 3 == 0 {
                let g = random_subgraph(n, &mut r);
                (embeds_on(&g, &p, None).unwrap(), brute_embeds(&g, &p), g.edge_list())
            } else {
                let t = sample_uniform_tn_with(n, &mut r).unwrap();
                let by_reconstruction = embeds_on_by_reconstruction(&t, &p).unwrap();
                let v = embeds_on(&t, &p, None).unwrap();
                assert_eq!(v.embeds(), by_reconstruction.embeds());
                (v, brute_embeds(&t, &p), t.edge_list())
            };
            let (v, truth, edges) = verdict_and_truth;
            assert_ne!(v.outcome, SearchOutcome::BudgetExceeded);
            assert_eq!(v.embeds(), truth, "n = {n}, trial {trial}");
            if let Some(w) = &v.witness {
                positives += 1;
                assert!(brute_is_embedding(&edges, &p, w.targets()));
            }
        }
        assert!(positives > 20, "n = {n}: only {positives} positive cases");
    }
}

#[test]
fn verdicts_invariant_under_equivalence() {
    let mut r = rng(5);
    for _ in 0..60 {
        let p = random_set(6, &mut r);
        let m = loop {
            let m: [i64; 6] = std::array::from_fn(|_| r.gen_range(-9..10));
            if m[0] * m[3] - m[1] * m[2] > 0 {
                break m;
            }
        };
        let q = p.affine_map(m).unwrap();
        let mut tau: Vec<usize> = (0..6).collect();
        tau.shuffle(&mut r);
        let shuffled = q.relabel(&tau).unwrap();
        let t = sample_uniform_tn_with(6, &mut r).unwrap();
        assert_eq!(
            has_label_preserving_embedding(&t, &p).unwrap(),
            has_label_preserving_embedding(&t, &q).unwrap()
        );
        let a = embeds_on(&t, &p, None).unwrap().embeds();
        assert_eq!(a, embeds_on(&t, &q, None).unwrap().embeds());
        assert_eq!(a, embeds_on(&t, &shuffled, None).unwrap().embeds());
    }
}

#[test]
fn simultaneous_is_the_conjunction() {
    let t5: Vec<StackedTriangulation> = enumerate_tn(5, false).unwrap().collect();
    assert_eq!(t5.len(), 4);
    let mut r = rng(6);
    for _ in 0..40 {
        let p = random_set(5, &mut r);
        let truth = t5.iter().all(|t| brute_embeds(t, &p));
        let v = simultaneously_embeddable_on(&t5, &p, None).unwrap();
        assert_eq!(v.embeddable(), truth);
    }
}

#[test]
fn conflict_verdicts_at_five_match_brute_force() {
    let reps: Vec<LabelledPointSet> = generate_representatives(5, &SamplerConfig::new(9))
        .unwrap()
        .records
        .into_iter()
        .map(|r| r.points)
        .collect();
    assert_eq!(reps.len(), 3);
    let t5: Vec<StackedTriangulation> = enumerate_tn(5, false).unwrap().collect();
    let mut conflicts = 0;
    for i in 0..t5.len() {
        for j in i..t5.len() {
            let pair = vec![t5[i].clone(), t5[j].clone()];
            let truth = !reps.iter().any(|p| pair.iter().all(|g| brute_embeds(g, p)));
            let v = verify_conflict_collection(&pair, 5, reps.clone(), None).unwrap();
            assert_eq!(v.is_conflict, truth, "pair ({i}, {j})");
            if let Some(p) = &v.counterexample {
                assert!(pair.iter().all(|g| brute_embeds(g, p)));
            }
            conflicts += truth as usize;
            // Adding graphs never breaks a conflict.
            if truth {
                let mut more = pair.clone();
                more.extend(t5.iter().cloned());
                assert!(verify_conflict_collection(&more, 5, reps.clone(), None).unwrap().is_conflict);
            }
        }
    }
    // Every member of T_5 embeds on the unique 5-point type whose hull is a
    // triangle, so there are no conflicts among these pairs.
    assert_eq!(conflicts, 0);
}

#[test]
fn duplicates_do_not_matter() {
    let mut r = rng(7);
    let reps: Vec<LabelledPointSet> = (0..10).map(|_| random_set(6, &mut r)).collect();
    let t = sample_uniform_tn_with(6, &mut r).unwrap();
    let u = sample_uniform_tn_with(6, &mut r).unwrap();
    let once = verify_conflict_collection(&[t.clone(), u.clone()], 6, reps.clone(), None).unwrap();
    let twice = verify_conflict_collection(&[t.clone(), u.clone(), t, u], 6, reps, None).unwrap();
    assert_eq!(once.outcome, twice.outcome);
    assert_eq!(once.counterexample, twice.counterexample);
}

#[test]
fn tiny_budget_is_inconclusive() {
    let mut r = rng(8);
    let reps: Vec<LabelledPointSet> = (0..5).map(|_| random_stacked_drawing(7, &mut r).unwrap().points).collect();
    let t = sample_uniform_tn_with(7, &mut r).unwrap();
    let v = verify_conflict_collection(&[t], 7, reps, Some(1)).unwrap();
    assert_eq!(v.outcome, ConflictOutcome::Inconclusive);
    assert!(!v.is_conflict);
    assert!(v.undecided > 0);
}

#[test]
fn exact_counts_cross_checked() {
    let mut r = rng(9);
    for n in [5usize, 6, 7] {
        let members: Vec<StackedTriangulation> = enumerate_tn(n, false).unwrap().collect();
        for _ in 0..6 {
            let p = random_set(n, &mut r);
            let c = exact_embedding_counts(n, &p).unwrap();
            let lp = label_preserving_members(n, &p).len() as u64;
            assert_eq!(c.label_preserving_count, lp);
            let by_search = members
                .iter()
                .filter(|t| embeds_on(*t, &p, None).unwrap().embeds())
                .count() as u64;
            assert_eq!(c.embeddable_count, by_search, "n = {n}");
            if n <= 6 {
                let brute = members.iter().filter(|t| brute_embeds(*t, &p)).count() as u64;
                assert_eq!(c.embeddable_count, brute);
            }
        }
    }
}

#[test]
fn octahedron_pigeonhole_at_ten() {
    let mut r = rng(10);
    let s = Composition8::new(10, [4, 0, 0, 0, 0, 0, 0, 0]).unwrap();
    let t = Composition8::new(10, [0, 4, 0, 0, 0, 0, 0, 0]).unwrap();
    for _ in 0..3 {
        let p = random_set(10, &mut r);
        let rep = octahedron_consistency_check(&s, &t, &p).unwrap();
        assert!(rep.consistent);
        assert_eq!(rep.face_count_violations, 0);
    }
}

#[test]
fn octahedron_pigeonhole_over_representatives_at_eight() {
    let cfg = SamplerConfig {
        seed: 1,
        target: Some(400),
        stall: 50_000,
    };
    let reps = generate_representatives(8, &cfg).unwrap();
    let s = Composition8::new(8, [2, 0, 0, 0, 0, 0, 0, 0]).unwrap();
    let t = Composition8::new(8, [1, 1, 0, 0, 0, 0, 0, 0]).unwrap();
    let mut embeddings = 0;
    for rec in &reps.records {
        let rep = octahedron_consistency_check(&s, &t, &rec.points).unwrap();
        assert!(rep.consistent);
        assert_eq!(rep.face_count_violations, 0);
        embeddings += rep.embeddings_checked;
    }
    assert!(embeddings > 0, "no embeddings found at all");
}

#[test]
fn witnesses_render() {
    let mut r = rng(11);
    let d = random_stacked_drawing(8, &mut r).unwrap();
    let svg = svg::render_svg(&d.triangulation, &d.points, &VertexPlacement::identity(8));
    assert_eq!(svg.matches("<line").count(), 18);
    let _: HashSet<_> = HashSet::<usize>::new();
}
