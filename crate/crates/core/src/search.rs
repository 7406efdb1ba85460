//! Search for small graphs with large stack number.
//!
//! Maximal outerplanar topologies are polygon triangulations of `0..n`
//! (outer cycle in id order), deduplicated under the dihedral group; every
//! acyclic orientation is tried. Face-consistent 3-trees are grown by
//! insertion sequences with every choice of apex-to-middle direction.
//! Sizes above [`EXHAUSTIVE_SEARCH_LIMIT`] are sampled with a seeded RNG.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::generators::gen_up3tree;
use crate::graph::{Dag, Edge};
use crate::recognition::classify::is_maximal_outerplanar;
use crate::recognition::planarity::{st_upward_check, upward_planar_small, EXHAUSTIVE_UPWARD_LIMIT};
use crate::recognition::three_tree::peel_3tree;
use crate::sat::{verify_at_least, SolveError, SolverConfig, Verdict};
use crate::layout::StackLayout;

/// Largest size enumerated exhaustively.
pub const EXHAUSTIVE_SEARCH_LIMIT: usize = 7;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum ClassFilter {
    /// Maximal outerplanar, one source, one sink, upward planar.
    SsSinkUpwardOdag,
    /// Maximal outerplanar and upward planar.
    UpwardOdag,
    FaceConsistent3Tree,
}

impl ClassFilter {
    pub const ALL: [ClassFilter; 3] = [
        ClassFilter::SsSinkUpwardOdag,
        ClassFilter::UpwardOdag,
        ClassFilter::FaceConsistent3Tree,
    ];

    pub fn name(self) -> &'static str {
        match self {
            ClassFilter::SsSinkUpwardOdag => "ss-sink-upward-odag",
            ClassFilter::UpwardOdag => "upward-odag",
            ClassFilter::FaceConsistent3Tree => "face-consistent-3tree",
        }
    }

    /// Whether `g` belongs to the class.
    pub fn accepts(self, g: &Dag) -> Result<bool, SearchError> {
        Ok(match self {
            ClassFilter::SsSinkUpwardOdag => {
                g.sources().len() == 1
                    && g.sinks().len() == 1
                    && is_maximal_outerplanar(g)
                    && st_upward_check(g).unwrap_or(false)
            }
            ClassFilter::UpwardOdag => {
                is_maximal_outerplanar(g)
                    && upward_planar_small(g).map_err(|_| SearchError::TooLargeForFilter {
                        filter: self,
                        n: g.n(),
                    })?
            }
            ClassFilter::FaceConsistent3Tree => peel_3tree(g).is_ok_and(|d| d.face_consistent),
        })
    }
}

impl fmt::Display for ClassFilter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for ClassFilter {
    type Err = SearchError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let lower = s.to_ascii_lowercase();
        ClassFilter::ALL
            .into_iter()
            .find(|c| c.name() == lower)
            .ok_or_else(|| SearchError::UnknownFilter(s.to_string()))
    }
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error("unknown class filter {0:?}")]
    UnknownFilter(String),
    #[error("filter {filter} is limited to small graphs, got n = {n}")]
    TooLargeForFilter { filter: ClassFilter, n: usize },
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone)]
pub struct SearchConfig {
    pub filter: ClassFilter,
    pub n_max: usize,
    pub target_k: usize,
    /// Maximum number of class members handed to the solver.
    pub budget: Option<usize>,
    pub seed: u64,
    /// Samples per size above the exhaustive limit.
    pub samples_per_size: usize,
    pub solver: SolverConfig,
}

impl SearchConfig {
    pub fn new(filter: ClassFilter, n_max: usize, target_k: usize) -> Self {
        SearchConfig {
            filter,
            n_max,
            target_k,
            budget: None,
            seed: 0,
            samples_per_size: 2000,
            solver: SolverConfig::default(),
        }
    }
}

#[derive(Debug, Clone)]
pub struct Witness {
    pub graph: Dag,
    /// Layout with `target_k` pages, when the solver found one.
    pub layout: Option<StackLayout>,
}

#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub witness: Option<Witness>,
    /// Class members checked with the solver.
    pub examined: usize,
    pub budget_exhausted: bool,
}

/// Returns the first class member (smallest size first, then enumeration
/// order) whose stack number is at least `target_k`.
pub fn search_witness(cfg: &SearchConfig) -> Result<SearchOutcome, SearchError> {
    if cfg.filter == ClassFilter::UpwardOdag && cfg.n_max > EXHAUSTIVE_UPWARD_LIMIT {
        return Err(SearchError::TooLargeForFilter {
            filter: cfg.filter,
            n: cfg.n_max,
        });
    }
    let mut examined = 0;
    let mut seen: HashSet<Vec<(usize, usize)>> = HashSet::new();
    let min_n = if cfg.filter == ClassFilter::FaceConsistent3Tree { 3 } else { 2 };
    for n in min_n..=cfg.n_max {
        for g in candidates(cfg.filter, n, cfg) {
            if cfg.filter != ClassFilter::FaceConsistent3Tree && !seen.insert(dihedral_key(&g)) {
                continue;
            }
            if !cfg.filter.accepts(&g)? {
                continue;
            }
            if cfg.budget.is_some_and(|b| examined >= b) {
                return Ok(SearchOutcome {
                    witness: None,
                    examined,
                    budget_exhausted: true,
                });
            }
            examined += 1;
            if let Verdict::AtLeast { witness } = verify_at_least(&g, cfg.target_k, &cfg.solver)? {
                return Ok(SearchOutcome {
                    witness: Some(Witness {
                        graph: g,
                        layout: witness,
                    }),
                    examined,
                    budget_exhausted: false,
                });
            }
        }
    }
    Ok(SearchOutcome {
        witness: None,
        examined,
        budget_exhausted: false,
    })
}

fn candidates(filter: ClassFilter, n: usize, cfg: &SearchConfig) -> Box<dyn Iterator<Item = Dag>> {
    let exhaustive = n <= EXHAUSTIVE_SEARCH_LIMIT;
    match (filter, exhaustive) {
        (ClassFilter::FaceConsistent3Tree, true) => Box::new(face_consistent_3trees(n).into_iter()),
        (ClassFilter::FaceConsistent3Tree, false) => {
            let seed = cfg.seed;
            Box::new((0..cfg.samples_per_size as u64).map(move |i| {
                gen_up3tree(n, seed.wrapping_mul(1_000_003).wrapping_add(i)).expect("n >= 3")
            }))
        }
        (_, true) => Box::new(
            mop_topologies(n)
                .into_iter()
                .flat_map(move |t| all_acyclic_orientations(n, &t)),
        ),
        (_, false) => {
            let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed ^ (n as u64) << 32);
            let count = cfg.samples_per_size;
            Box::new((0..count).map(move |_| {
                let t = random_triangulation(n, &mut rng);
                sample_orientation(n, &t, &mut rng)
            }))
        }
    }
}

/// Undirected edges of every triangulated `n`-gon (outer cycle `0..n` in
/// order), one per dihedral class.
pub fn mop_topologies(n: usize) -> Vec<Vec<(usize, usize)>> {
    if n < 2 {
        return Vec::new();
    }
    if n == 2 {
        return vec![vec![(0, 1)]];
    }
    let cycle: Vec<(usize, usize)> = (0..n).map(|i| ordered(i, (i + 1) % n)).collect();
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for chords in triangulations(0, n - 1) {
        let mut edges = cycle.clone();
        edges.extend(chords);
        edges.sort_unstable();
        let key = (0..2 * n)
            .map(|sym| {
                let mut e: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(a, b)| ordered(dihedral(n, sym, a), dihedral(n, sym, b)))
                    .collect();
                e.sort_unstable();
                e
            })
            .min()
            .expect("nonempty group");
        if seen.insert(key) {
            out.push(edges);
        }
    }
    out
}

fn ordered(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

fn dihedral(n: usize, sym: usize, v: usize) -> usize {
    if sym < n {
        (v + sym) % n
    } else {
        (sym - n + n - v) % n
    }
}

/// Chord sets of all triangulations of the polygon on `i..=j`.
fn triangulations(i: usize, j: usize) -> Vec<Vec<(usize, usize)>> {
    if j - i < 2 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in i + 1..j {
        let left = triangulations(i, k);
        let right = triangulations(k, j);
        for l in &left {
            for r in &right {
                let mut c = l.clone();
                c.extend_from_slice(r);
                if k - i > 1 {
                    c.push((i, k));
                }
                if j - k > 1 {
                    c.push((k, j));
                }
                out.push(c);
            }
        }
    }
    out
}

fn random_triangulation(n: usize, rng: &mut ChaCha8Rng) -> Vec<(usize, usize)> {
    let mut edges: Vec<(usize, usize)> = (0..n).map(|i| ordered(i, (i + 1) % n)).collect();
    if n == 2 {
        return vec![(0, 1)];
    }
    let mut stack = vec![(0, n - 1)];
    while let Some((i, j)) = stack.pop() {
        if j - i < 2 {
            continue;
        }
        let k = rng.random_range(i + 1..j);
        if k - i > 1 {
            edges.push((i, k));
        }
        if j - k > 1 {
            edges.push((k, j));
        }
        stack.push((i, k));
        stack.push((k, j));
    }
    edges.sort_unstable();
    edges
}

/// Every acyclic orientation of `edges`, by bitmask (bit `i` reverses edge `i`).
pub fn all_acyclic_orientations(n: usize, edges: &[(usize, usize)]) -> Vec<Dag> {
    let m = edges.len();
    (0u64..1 << m)
        .filter_map(|mask| {
            let directed = edges
                .iter()
                .enumerate()
                .map(|(i, &(a, b))| if mask >> i & 1 == 1 { Edge::new(b, a) } else { Edge::new(a, b) })
                .collect();
            Dag::new(n, directed).ok()
        })
        .collect()
}

/// Orientation along a uniformly random vertex permutation.
pub fn sample_orientation(n: usize, edges: &[(usize, usize)], rng: &mut ChaCha8Rng) -> Dag {
    let mut rank: Vec<usize> = (0..n).collect();
    rank.shuffle(rng);
    let directed = edges
        .iter()
        .map(|&(a, b)| if rank[a] < rank[b] { Edge::new(a, b) } else { Edge::new(b, a) })
        .collect();
    Dag::new(n, directed).expect("orientation along a permutation is acyclic")
}

/// `count` orientations of `edges` sampled from a seeded RNG.
pub fn sample_orientations(n: usize, edges: &[(usize, usize)], count: usize, seed: u64) -> Vec<Dag> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count).map(|_| sample_orientation(n, edges, &mut rng)).collect()
}

/// Every face-consistent 3-tree DAG built from `0 -> 1 -> 2`, `0 -> 2` by
/// inserting vertices `3..n` in order.
pub fn face_consistent_3trees(n: usize) -> Vec<Dag> {
    let mut out = Vec::new();
    if n < 3 {
        return out;
    }
    let edges = vec![Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 2)];
    let mut stack = vec![(edges, vec![(0usize, 1usize, 2usize)])];
    while let Some((edges, faces)) = stack.pop() {
        let x = edges.len() / 3 + 2;
        if x == n {
            out.push(Dag::new(n, edges).expect("insertions keep a DAG"));
            continue;
        }
        for (fi, &(a, b, c)) in faces.iter().enumerate().rev() {
            for to_middle in [false, true] {
                let mut e = edges.clone();
                let mut f = faces.clone();
                f.swap_remove(fi);
                e.push(Edge::new(a, x));
                if to_middle {
                    e.push(Edge::new(x, b));
                    f.extend([(a, x, c), (a, x, b), (x, b, c)]);
                } else {
                    e.push(Edge::new(b, x));
                    f.extend([(a, x, c), (a, b, x), (b, x, c)]);
                }
                e.push(Edge::new(x, c));
                stack.push((e, f));
            }
        }
    }
    out
}

/// Canonical directed edge list under the dihedral relabellings of `0..n`.
fn dihedral_key(g: &Dag) -> Vec<(usize, usize)> {
    let n = g.n();
    (0..2 * n)
        .map(|sym| {
            let mut e: Vec<(usize, usize)> = g
                .edges()
                .iter()
                .map(|e| (dihedral(n, sym, e.source), dihedral(n, sym, e.target)))
                .collect();
            e.sort_unstable();
            e
        })
        .min()
        .unwrap_or_default()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn topology_counts() {
        // Triangulated n-gons up to rotation and reflection: 1, 1, 1, 3, 4.
        let counts: Vec<usize> = (3..=8).map(|n| mop_topologies(n).len()).collect();
        assert_eq!(counts, vec![1, 1, 1, 3, 4, 12]);
        for n in 3..=8 {
            for t in mop_topologies(n) {
                assert_eq!(t.len(), 2 * n - 3);
            }
        }
    }

    #[test]
    fn triangle_orientations() {
        let t = mop_topologies(3).pop().unwrap();
        assert_eq!(all_acyclic_orientations(3, &t).len(), 6);
    }

    #[test]
    fn three_tree_enumeration() {
        assert_eq!(face_consistent_3trees(3).len(), 1);
        assert_eq!(face_consistent_3trees(4).len(), 2);
        // 3 faces after the first insertion, 2 directions each.
        assert_eq!(face_consistent_3trees(5).len(), 2 * 6);
        for g in face_consistent_3trees(6) {
            assert!(ClassFilter::FaceConsistent3Tree.accepts(&g).unwrap());
        }
    }

    #[test]
    fn filter_names() {
        for f in ClassFilter::ALL {
            assert_eq!(f.name().parse::<ClassFilter>().unwrap(), f);
        }
        assert!("SS-SINK-UPWARD-ODAG".parse::<ClassFilter>().is_ok());
    }

    #[test]
    fn target_one_returns_first_member() {
        let out = search_witness(&SearchConfig::new(ClassFilter::SsSinkUpwardOdag, 4, 1)).unwrap();
        let w = out.witness.unwrap();
        assert_eq!(w.graph.n(), 2);
        assert_eq!(out.examined, 1);
    }

    #[test]
    fn budget_stops_search() {
        let mut cfg = SearchConfig::new(ClassFilter::FaceConsistent3Tree, 6, 9);
        cfg.budget = Some(3);
        let out = search_witness(&cfg).unwrap();
        assert!(out.witness.is_none());
        assert!(out.budget_exhausted);
        assert_eq!(out.examined, 3);
    }
}
