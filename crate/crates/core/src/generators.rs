//! Seeded generators for the graph families.
//!
//! All randomness comes from ChaCha8 seeded with `seed_from_u64`, so a
//! `(family, n, seed)` triple always yields the same graph.

use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::{Dag, Edge};
use crate::recognition::outerplanar::StellationKind;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GenError {
    #[error("family {family} needs n >= {min}, got {n}")]
    TooSmall {
        family: Family,
        n: usize,
        min: usize,
    },
    #[error("unknown family {0:?}")]
    UnknownFamily(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Transitive,
    SingleSource,
    Monotone,
    Outerpath,
    Up3Tree,
    TwistGadget,
    Random,
}

impl Family {
    pub const ALL: [Family; 7] = [
        Family::Transitive,
        Family::SingleSource,
        Family::Monotone,
        Family::Outerpath,
        Family::Up3Tree,
        Family::TwistGadget,
        Family::Random,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Family::Transitive => "transitive",
            Family::SingleSource => "single-source",
            Family::Monotone => "monotone",
            Family::Outerpath => "outerpath",
            Family::Up3Tree => "up3tree",
            Family::TwistGadget => "twist-gadget",
            Family::Random => "random",
        }
    }

    fn min_n(self) -> usize {
        match self {
            Family::Up3Tree => 3,
            Family::TwistGadget => 1,
            Family::Random => 0,
            _ => 2,
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Family {
    type Err = GenError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Family::ALL
            .into_iter()
            .find(|f| f.name() == s)
            .ok_or_else(|| GenError::UnknownFamily(s.to_string()))
    }
}

/// Edge probability used by [`generate`] for the random family.
pub const RANDOM_EDGE_PROBABILITY: f64 = 0.3;

/// Generates a member of `family`. For the twist gadget `n` is the twist
/// size `k` (the graph has `2k` vertices).
pub fn generate(family: Family, n: usize, seed: u64) -> Result<Dag, GenError> {
    if n < family.min_n() {
        return Err(GenError::TooSmall {
            family,
            n,
            min: family.min_n(),
        });
    }
    use StellationKind::*;
    Ok(match family {
        Family::Transitive => stellate(n, seed, &[O1], false),
        Family::SingleSource => stellate(n, seed, &[O1, O2], false),
        Family::Monotone => stellate(n, seed, &[O2, O3], false),
        Family::Outerpath => stellate(n, seed, &[O1, O2, O3], true),
        Family::Up3Tree => up3tree(n, seed),
        Family::TwistGadget => twist_gadget(n),
        Family::Random => random_dag(n, RANDOM_EDGE_PROBABILITY, seed),
    })
}

pub fn gen_transitive_odag(n: usize, seed: u64) -> Result<Dag, GenError> {
    generate(Family::Transitive, n, seed)
}

pub fn gen_single_source_odag(n: usize, seed: u64) -> Result<Dag, GenError> {
    generate(Family::SingleSource, n, seed)
}

pub fn gen_monotone_odag(n: usize, seed: u64) -> Result<Dag, GenError> {
    generate(Family::Monotone, n, seed)
}

pub fn gen_outerpath(n: usize, seed: u64) -> Result<Dag, GenError> {
    generate(Family::Outerpath, n, seed)
}

pub fn gen_up3tree(n: usize, seed: u64) -> Result<Dag, GenError> {
    generate(Family::Up3Tree, n, seed)
}

pub fn gen_twist_gadget(k: usize) -> Result<Dag, GenError> {
    generate(Family::TwistGadget, k, 0)
}

/// Maximal outerplanar DAG grown from base `0 -> 1`; vertex `i` is the
/// apex of the `(i-2)`-th stellation.
fn stellate(n: usize, seed: u64, kinds: &[StellationKind], path: bool) -> Dag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![Edge::new(0, 1)];
    let mut open = vec![Edge::new(0, 1)];
    for x in 2..n {
        let e = open.swap_remove(rng.random_range(0..open.len()));
        let kind = kinds[rng.random_range(0..kinds.len())];
        let (s, t) = (e.source, e.target);
        let new = match kind {
            StellationKind::O1 => [Edge::new(s, x), Edge::new(x, t)],
            StellationKind::O2 => [Edge::new(s, x), Edge::new(t, x)],
            StellationKind::O3 => [Edge::new(x, s), Edge::new(x, t)],
        };
        edges.extend_from_slice(&new);
        if path {
            open.clear();
            open.push(new[rng.random_range(0..2)]);
        } else {
            open.extend_from_slice(&new);
        }
    }
    Dag::new(n, edges).expect("stellation keeps the graph a simple DAG")
}

/// Face-consistent 3-tree DAG grown from the triangle `0 -> 1 -> 2`, `0 -> 2`.
fn up3tree(n: usize, seed: u64) -> Dag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = vec![Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)];
    // Faces as (source, middle, sink).
    let mut faces = vec![(0, 1, 2)];
    for x in 3..n {
        let (a, b, c) = faces.swap_remove(rng.random_range(0..faces.len()));
        let to_middle = rng.random_bool(0.5);
        edges.push(Edge::new(a, x));
        if to_middle {
            edges.push(Edge::new(x, b));
            faces.extend([(a, x, c), (a, x, b), (x, b, c)]);
        } else {
            edges.push(Edge::new(b, x));
            faces.extend([(a, x, c), (a, b, x), (b, x, c)]);
        }
        edges.push(Edge::new(x, c));
    }
    Dag::new(n, edges).expect("insertion keeps the graph a simple DAG")
}

/// Paths `u_1..u_k` and `v_1..v_k`, bridge `u_k -> v_1`, matching `u_i -> v_i`,
/// with `u_i = i - 1` and `v_i = k + i - 1`.
fn twist_gadget(k: usize) -> Dag {
    let mut edges = Vec::new();
    for i in 0..k.saturating_sub(1) {
        edges.push(Edge::new(i, i + 1));
    }
    for i in 0..k.saturating_sub(1) {
        edges.push(Edge::new(k + i, k + i + 1));
    }
    edges.push(Edge::new(k - 1, k));
    for i in 0..k {
        let e = Edge::new(i, k + i);
        if !edges.contains(&e) {
            edges.push(e);
        }
    }
    Dag::new(2 * k, edges).expect("gadget is a simple DAG")
}

/// Each pair is an edge with probability `p`, directed along a random
/// permutation.
pub fn random_dag(n: usize, p: f64, seed: u64) -> Dag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.random_bool(p) {
                edges.push(Edge::new(perm[i], perm[j]));
            }
        }
    }
    Dag::new(n, edges).expect("edges follow a permutation")
}

/// Random DAG with exactly `m` edges (capped at `n(n-1)/2`).
pub fn random_dag_with_edges(n: usize, m: usize, seed: u64) -> Dag {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(&mut rng);
    let mut pairs: Vec<(usize, usize)> = (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    pairs.shuffle(&mut rng);
    pairs.truncate(m);
    let edges = pairs.into_iter().map(|(i, j)| Edge::new(perm[i], perm[j])).collect();
    Dag::new(n, edges).expect("edges follow a permutation")
}
