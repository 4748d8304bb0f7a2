mod common;

use common::{permutations, rng};
use conflictkit::geom::*;
use conflictkit::sampling::random_general_position;
use conflictkit::{LabelledPointSet, Point};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::Rng;

fn coord() -> impl Strategy<Value = BigInt> {
    prop_oneof![
        (-20i64..20).prop_map(BigInt::from),
        any::<i64>().prop_map(BigInt::from),
        (any::<i64>(), any::<i64>()).prop_map(|(a, b)| (BigInt::from(a) << 70) + b),
    ]
}

fn point() -> impl Strategy<Value = Point> {
    (coord(), coord()).prop_map(|(x, y)| Point::new(x, y))
}

fn small_set(n: usize) -> impl Strategy<Value = LabelledPointSet> {
    proptest::collection::hash_set((-6i64..6, -6i64..6), n).prop_map(|s| {
        let v: Vec<(i64, i64)> = s.into_iter().collect();
        LabelledPointSet::from_coords(&v).unwrap()
    })
}

fn shuffled(p: &LabelledPointSet, seed: u64) -> (LabelledPointSet, Vec<usize>) {
    use rand::seq::SliceRandom;
    let mut tau: Vec<usize> = (0..p.len()).collect();
    tau.shuffle(&mut rng(seed));
    (p.relabel(&tau).unwrap(), tau)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(2000))]

    #[test]
    fn orientation_symmetries(a in point(), b in point(), c in point()) {
        let o = orientation(&a, &b, &c);
        prop_assert_eq!(o, -orientation(&b, &a, &c));
        prop_assert_eq!(o, -orientation(&a, &c, &b));
        prop_assert_eq!(o, orientation(&b, &c, &a));
        prop_assert_eq!(o, orientation(&c, &a, &b));
    }

    #[test]
    fn orientation_translation_and_scaling(
        a in point(), b in point(), c in point(), t in point(), k in 1i64..1_000_000
    ) {
        let o = orientation(&a, &b, &c);
        let shift = |p: &Point| Point::new(&p.x + &t.x, &p.y + &t.y);
        let grow = |p: &Point| Point::new(&p.x * k, &p.y * k);
        prop_assert_eq!(o, orientation(&shift(&a), &shift(&b), &shift(&c)));
        prop_assert_eq!(o, orientation(&grow(&a), &grow(&b), &grow(&c)));
    }

    #[test]
    fn orientation_matches_float_when_clear(a in point(), b in point(), c in point()) {
        use num_traits::ToPrimitive;
        let f = |v: &BigInt| v.to_f64().unwrap();
        let (ax, ay, bx, by, cx, cy) = (f(&a.x), f(&a.y), f(&b.x), f(&b.y), f(&c.x), f(&c.y));
        let l = (bx - ax) * (cy - ay);
        let r = (by - ay) * (cx - ax);
        let det = l - r;
        // Generous forward error bound for the float evaluation.
        let bound = 1e-12 * (l.abs() + r.abs()) + 1e-300;
        if det.abs() > bound {
            prop_assert_eq!(orientation(&a, &b, &c), det.signum() as i8);
        }
    }

    #[test]
    fn isomorphy_is_an_equivalence(p in small_set(5), s1 in any::<u64>(), s2 in any::<u64>()) {
        let (q, _) = shuffled(&p, s1);
        let (r, _) = shuffled(&p, s2);
        prop_assert!(are_isomorphic(&p, &p).unwrap());
        prop_assert_eq!(are_isomorphic(&p, &q).unwrap(), are_isomorphic(&q, &p).unwrap());
        if are_isomorphic(&p, &q).unwrap() && are_isomorphic(&q, &r).unwrap() {
            prop_assert!(are_isomorphic(&p, &r).unwrap());
        }
    }

    #[test]
    fn equivalence_witness_round_trips(p in small_set(6), seed in any::<u64>()) {
        let (q, _) = shuffled(&p, seed);
        let tau = are_combinatorially_equivalent(&p, &q).unwrap().expect("relabelled copy");
        prop_assert!(are_isomorphic(&p, &q.relabel(&tau).unwrap()).unwrap());
    }

    #[test]
    fn sign_pattern_length(p in small_set(7)) {
        prop_assert_eq!(sign_pattern(&p).unwrap().entries().len(), 35);
    }
}

#[test]
fn bijection_search_matches_exhaustive() {
    let perms = permutations(6);
    let mut found = 0;
    let mut r = rng(11);
    for trial in 0..150 {
        let side = if trial % 2 == 0 { 8 } else { 1 << 12 };
        let p = random_general_position(6, side, &mut r).unwrap();
        let q = if trial % 3 == 0 {
            shuffled(&p, trial).0
        } else {
            random_general_position(6, side, &mut r).unwrap()
        };
        let sp = sign_pattern(&p).unwrap();
        let exhaustive = perms
            .iter()
            .any(|tau| sign_pattern(&q.relabel(tau).unwrap()).unwrap() == sp);
        let got = are_combinatorially_equivalent(&p, &q).unwrap();
        assert_eq!(got.is_some(), exhaustive, "trial {trial}");
        if let Some(tau) = got {
            found += 1;
            assert!(are_isomorphic(&p, &q.relabel(&tau).unwrap()).unwrap());
        }
    }
    assert!(found >= 50);
}

#[test]
fn affine_maps_preserve_order_type() {
    let mut r = rng(5);
    for _ in 0..300 {
        let p = random_general_position(7, 1 << 20, &mut r).unwrap();
        let m = loop {
            let m: [i64; 6] = std::array::from_fn(|_| r.gen_range(-50..50));
            if m[0] * m[3] - m[1] * m[2] > 0 {
                break m;
            }
        };
        let q = p.affine_map(m).unwrap();
        assert!(are_isomorphic(&p, &q).unwrap());
        let flip = p.affine_map([-1, 0, 0, 1, 0, 0]).unwrap();
        let sp = sign_pattern(&p).unwrap();
        let sf = sign_pattern(&flip).unwrap();
        assert!(sp.entries().iter().zip(sf.entries()).all(|(a, b)| *a == -*b));
    }
}

#[test]
fn text_format_round_trip() {
    let mut r = rng(8);
    for n in 1..12 {
        let p = random_general_position(n, 1 << 30, &mut r).unwrap();
        let p = p.affine_map([1, 0, 0, 1, -(1 << 29), -(1 << 29)]).unwrap();
        let text = p.to_text();
        assert_eq!(LabelledPointSet::parse_text(&text).unwrap(), p);
        assert_eq!(text.parse::<LabelledPointSet>().unwrap().to_text(), text);
    }
}

#[test]
fn huge_coordinates_are_exact() {
    // (k, k+1), (2k, 2k+2) are collinear with the origin for any k; a unit
    // nudge must flip the sign even at 2^300.
    let k: BigInt = BigInt::from(1) << 300;
    let o = Point::new(0, 0);
    let a = Point::new(k.clone(), &k + 1);
    let b = Point::new(&k * 2, &k * 2 + 2);
    assert_eq!(orientation(&o, &a, &b), 0);
    let b_up = Point::new(&k * 2, &k * 2 + 3);
    assert_eq!(orientation(&o, &a, &b_up), 1);
    let b_down = Point::new(&k * 2, &k * 2 + 1);
    assert_eq!(orientation(&o, &a, &b_down), -1);
}
