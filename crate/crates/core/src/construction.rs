//! The explicit octahedron-based collection.
//!
//! Members are indexed by compositions `(n1, ..., n8)` of `n - 6` into eight
//! non-negative parts. The selected subset is the first `n(n-1)...(n-5) + 1`
//! compositions in lexicographic order, so a member is a pure function of
//! `(n, index)` and the collection is never materialized.

use std::fmt;

use num_bigint::BigUint;
use num_integer::binomial;
use num_traits::{One, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};
use crate::triangulations::{octahedron, Edge, Face, FacedTriangulation, OCTAHEDRON_FACES};

/// Smallest n for which the selected subset fits inside the compositions.
pub const FULL_SCALE_MIN_N: u64 = 5040;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Composition8 {
    n: u64,
    parts: [u64; 8],
}

impl Composition8 {
    pub fn new(n: u64, parts: [u64; 8]) -> Result<Self> {
        if n < 6 {
            return Err(out_of_range("n", n, ">= 6"));
        }
        let sum: u64 = parts.iter().sum();
        if sum != n - 6 {
            return Err(Error::Invalid(format!("parts {parts:?} sum to {sum}, expected {}", n - 6)));
        }
        Ok(Composition8 { n, parts })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn parts(&self) -> [u64; 8] {
        self.parts
    }
}

impl fmt::Display for Composition8 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.parts.iter().map(u64::to_string).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Position of a member inside the collection.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub struct CollectionIndex(pub BigUint);

impl From<u64> for CollectionIndex {
    fn from(v: u64) -> Self {
        CollectionIndex(BigUint::from(v))
    }
}

/// Whether small `n` (below 5040) is accepted. The pigeonhole argument only
/// applies at `n >= 5040`; small n exists for desk-scale experiments.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scale {
    Full,
    DeskOverride,
}

fn check_scale(n: u64, scale: Scale) -> Result<()> {
    match scale {
        Scale::Full if n < FULL_SCALE_MIN_N => Err(out_of_range(
            "n",
            n,
            ">= 7! = 5040 (use the small-n override for desk-scale experiments)",
        )),
        _ if n < 6 => Err(out_of_range("n", n, ">= 6")),
        _ => Ok(()),
    }
}

pub fn falling_factorial(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (0..k).map(|i| BigUint::from(n - i)).product()
}

/// Number of compositions of `total` into `parts` non-negative parts.
fn compositions(total: u64, parts: u64) -> BigUint {
    if parts == 0 {
        return if total == 0 { BigUint::one() } else { BigUint::zero() };
    }
    binomial(BigUint::from(total + parts - 1), BigUint::from(parts - 1))
}

/// |S_n| = C(n + 1, 7).
pub fn count_s_n(n: u64) -> Result<BigUint> {
    if n < 6 {
        return Err(out_of_range("n", n, ">= 6"));
    }
    Ok(compositions(n - 6, 8))
}

/// n(n-1)(n-2)(n-3)(n-4)(n-5) + 1.
pub fn collection_size(n: u64, scale: Scale) -> Result<BigUint> {
    check_scale(n, scale)?;
    Ok(falling_factorial(n, 6) + 1u32)
}

/// The `idx`-th composition of `n - 6` into eight parts, lexicographically.
pub fn composition_at(n: u64, idx: &CollectionIndex, scale: Scale) -> Result<Composition8> {
    let size = collection_size(n, scale)?;
    if idx.0 >= size {
        return Err(out_of_range("index", &idx.0, &format!("0..{size}")));
    }
    let available = count_s_n(n)?;
    if idx.0 >= available {
        return Err(out_of_range("index", &idx.0, &format!("0..{available} (|S_n| at this n)")));
    }
    let mut rest = idx.0.clone();
    let mut remaining = n - 6;
    let mut parts = [0u64; 8];
    for (pos, part) in parts.iter_mut().enumerate().take(7) {
        let after = 7 - pos as u64;
        let mut v = 0;
        loop {
            let block = compositions(remaining - v, after);
            if rest < block {
                break;
            }
            rest -= block;
            v += 1;
        }
        *part = v;
        remaining -= v;
    }
    parts[7] = remaining;
    Composition8::new(n, parts)
}

/// Lexicographic rank of a composition among all compositions of `n - 6`.
pub fn composition_rank(c: &Composition8) -> BigUint {
    let mut rank = BigUint::zero();
    let mut remaining = c.n - 6;
    for pos in 0..7 {
        let after = 7 - pos as u64;
        for v in 0..c.parts[pos] {
            rank += compositions(remaining - v, after);
        }
        remaining -= c.parts[pos];
    }
    rank
}

/// Builds `T_n(s)`: the octahedron with `n_i` vertices fan-stacked into face
/// `f_i`. With `f_i = (a, b, c)` sorted, the first new vertex goes into
/// `(a, b, c)` and each later one into `(a, b, q)` for the previous vertex
/// `q`. New labels run 7, 8, ... through f1, then f2, and so on.
pub fn build_t_of(s: &Composition8) -> FacedTriangulation {
    let mut t = octahedron();
    for (face, &count) in OCTAHEDRON_FACES.iter().zip(s.parts.iter()) {
        let [a, b, c] = Face::from_array(*face).vertices();
        let mut target = Face::new(a, b, c);
        for _ in 0..count {
            let q = t.stack_into(target).expect("fan target is always a current face");
            target = Face::new(a, b, q);
        }
    }
    t
}

pub fn conflict_collection_member(n: u64, idx: &CollectionIndex, scale: Scale) -> Result<FacedTriangulation> {
    Ok(build_t_of(&composition_at(n, idx, scale)?))
}

/// Re-checks a member: triangulation invariants, vertex count, and that the
/// labelled subgraph induced on 1..=6 is exactly the octahedron.
pub fn validate_member(t: &FacedTriangulation, s: &Composition8) -> std::result::Result<(), String> {
    t.validate()?;
    if t.order() as u64 != s.n {
        return Err(format!("member has {} vertices, expected {}", t.order(), s.n));
    }
    let induced = t.induced_edges(&[1, 2, 3, 4, 5, 6]);
    let expected: std::collections::BTreeSet<Edge> = octahedron().edges().clone();
    if induced != expected {
        return Err("subgraph on labels 1..=6 is not the octahedron".into());
    }
    Ok(())
}
