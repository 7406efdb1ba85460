//! Decomposition of planar 3-tree DAGs by simplicial degree-3 elimination.

use std::collections::{BTreeSet, HashMap, HashSet};

use thiserror::Error;

use crate::graph::{Dag, Edge};

/// A triangle labelled by its orientation: `source -> middle -> sink` and
/// `source -> sink`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct OrientedTriangle {
    pub source: usize,
    pub middle: usize,
    pub sink: usize,
}

impl OrientedTriangle {
    /// Orients the triangle on `a, b, c` from the edges of `g`.
    pub fn of(g: &Dag, a: usize, b: usize, c: usize) -> Option<Self> {
        let vs = [a, b, c];
        let out_deg = |v: usize| vs.iter().filter(|&&w| w != v && g.has_edge(v, w)).count();
        let in_deg = |v: usize| vs.iter().filter(|&&w| w != v && g.has_edge(w, v)).count();
        if vs.iter().any(|&v| out_deg(v) + in_deg(v) != 2) {
            return None;
        }
        let source = *vs.iter().find(|&&v| out_deg(v) == 2)?;
        let sink = *vs.iter().find(|&&v| in_deg(v) == 2)?;
        let middle = *vs.iter().find(|&&v| v != source && v != sink)?;
        Some(OrientedTriangle {
            source,
            middle,
            sink,
        })
    }

    pub fn key(&self) -> [usize; 3] {
        let mut k = [self.source, self.middle, self.sink];
        k.sort_unstable();
        k
    }
}

/// Insertion of `apex` into the face `host`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Insertion {
    pub host: OrientedTriangle,
    pub apex: usize,
    /// Directed edges between the apex and the host's source, middle, sink.
    pub edges: [Edge; 3],
}

impl Insertion {
    /// `(host.source, apex)` and `(apex, host.sink)` are both present.
    pub fn is_face_consistent(&self) -> bool {
        self.edges[0] == Edge::new(self.host.source, self.apex)
            && self.edges[2] == Edge::new(self.apex, self.host.sink)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ThreeTreeDecomposition {
    pub outer: OrientedTriangle,
    /// In construction order (reverse of elimination).
    pub insertions: Vec<Insertion>,
    pub face_consistent: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ThreeTreeError {
    #[error("graph needs at least 3 vertices, has {0}")]
    TooSmall(usize),
    #[error("expected {expected} edges for a planar 3-tree, found {found}")]
    EdgeCount { expected: usize, found: usize },
    #[error("no simplicial degree-3 vertex with {0} vertices left")]
    Stuck(usize),
    #[error("remaining triangle {0:?} is not a triangle of the graph")]
    BadRemainder([usize; 3]),
    #[error("insertion of {0} targets {1:?}, which is not a face")]
    NotAFace(usize, [usize; 3]),
}

impl ThreeTreeDecomposition {
    pub fn replay_edges(&self) -> Vec<Edge> {
        let o = self.outer;
        let mut edges = vec![
            Edge::new(o.source, o.middle),
            Edge::new(o.middle, o.sink),
            Edge::new(o.source, o.sink),
        ];
        for ins in &self.insertions {
            edges.extend_from_slice(&ins.edges);
        }
        edges
    }

    /// Apex inserted into each face, keyed by the sorted vertex triple.
    pub fn apex_of_face(&self) -> HashMap<[usize; 3], usize> {
        self.insertions
            .iter()
            .map(|ins| (ins.host.key(), ins.apex))
            .collect()
    }
}

/// Eliminates simplicial degree-3 vertices (lowest id first) until a
/// triangle remains, then records the insertions in construction order.
///
/// When the graph has a unique source `s` and unique sink `t` that are
/// adjacent, those two and one common neighbour `m` are kept as the outer
/// triangle; each `m` is tried in increasing id order and the first
/// face-consistent decomposition wins. Otherwise (or if none is consistent)
/// the plain lowest-id elimination is returned with its flag.
pub fn peel_3tree(g: &Dag) -> Result<ThreeTreeDecomposition, ThreeTreeError> {
    let n = g.n();
    if n < 3 {
        return Err(ThreeTreeError::TooSmall(n));
    }
    let expected = 3 * n - 6;
    if g.m() != expected {
        return Err(ThreeTreeError::EdgeCount {
            expected,
            found: g.m(),
        });
    }
    let (sources, sinks) = (g.sources(), g.sinks());
    let mut first_ok: Option<ThreeTreeDecomposition> = None;
    if let ([s], [t]) = (sources.as_slice(), sinks.as_slice()) {
        if g.has_edge(*s, *t) {
            let mut common: Vec<usize> = g
                .out_neighbors(*s)
                .iter()
                .copied()
                .filter(|&m| g.has_edge(m, *t))
                .collect();
            common.sort_unstable();
            for m in common {
                if let Ok(dec) = eliminate(g, &[*s, m, *t]) {
                    if dec.face_consistent {
                        return Ok(dec);
                    }
                    first_ok.get_or_insert(dec);
                }
            }
        }
    }
    match eliminate(g, &[]) {
        Ok(dec) => Ok(dec),
        Err(e) => first_ok.ok_or(e),
    }
}

fn eliminate(g: &Dag, keep: &[usize]) -> Result<ThreeTreeDecomposition, ThreeTreeError> {
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut alive = vec![true; n];
    let kept: HashSet<usize> = keep.iter().copied().collect();
    let is_simplicial = |adj: &[BTreeSet<usize>], v: usize| {
        if adj[v].len() != 3 {
            return false;
        }
        let w: Vec<usize> = adj[v].iter().copied().collect();
        adj[w[0]].contains(&w[1]) && adj[w[0]].contains(&w[2]) && adj[w[1]].contains(&w[2])
    };
    let mut candidates: BTreeSet<usize> = (0..n).filter(|&v| adj[v].len() == 3).collect();
    let mut removed: Vec<(usize, [usize; 3])> = Vec::new();
    let mut remaining = n;
    while remaining > 3 {
        let v = loop {
            let Some(&v) = candidates.iter().next() else {
                return Err(ThreeTreeError::Stuck(remaining));
            };
            candidates.remove(&v);
            if alive[v] && !kept.contains(&v) && is_simplicial(&adj, v) {
                break v;
            }
        };
        let nb: Vec<usize> = adj[v].iter().copied().collect();
        removed.push((v, [nb[0], nb[1], nb[2]]));
        alive[v] = false;
        remaining -= 1;
        for &w in &nb {
            adj[w].remove(&v);
            if adj[w].len() == 3 {
                candidates.insert(w);
            }
        }
        adj[v].clear();
    }
    let rest: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let rest3 = [rest[0], rest[1], rest[2]];
    let outer =
        OrientedTriangle::of(g, rest[0], rest[1], rest[2]).ok_or(ThreeTreeError::BadRemainder(rest3))?;

    // Replay, checking that every host is a current inner face.
    let mut faces: HashSet<[usize; 3]> = HashSet::from([outer.key()]);
    let mut insertions = Vec::with_capacity(removed.len());
    for &(x, [a, b, c]) in removed.iter().rev() {
        let host = OrientedTriangle::of(g, a, b, c).expect("neighbourhood is a triangle");
        let k = host.key();
        if !faces.remove(&k) {
            return Err(ThreeTreeError::NotAFace(x, k));
        }
        for pair in [[a, b], [a, c], [b, c]] {
            let mut f = [pair[0], pair[1], x];
            f.sort_unstable();
            faces.insert(f);
        }
        let dir = |w: usize| {
            if g.has_edge(w, x) {
                Edge::new(w, x)
            } else {
                Edge::new(x, w)
            }
        };
        insertions.push(Insertion {
            host,
            apex: x,
            edges: [dir(host.source), dir(host.middle), dir(host.sink)],
        });
    }
    let face_consistent = insertions.iter().all(Insertion::is_face_consistent);
    Ok(ThreeTreeDecomposition {
        outer,
        insertions,
        face_consistent,
    })
}
