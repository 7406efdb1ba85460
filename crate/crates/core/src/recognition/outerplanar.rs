//! Stellation trees of maximal outerplanar DAGs.
//!
//! A maximal outerplanar DAG grows from a base edge by stellating outer
//! edges, each at most once. Peeling degree-2 vertices undoes that growth.

use std::collections::{BTreeSet, HashMap};
use std::fmt;

use thiserror::Error;

use crate::graph::{Dag, Edge};

/// Orientation pattern of a stellation of base `(s, t)` with apex `x`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StellationKind {
    /// `(s, x)` and `(x, t)`.
    O1,
    /// `(s, x)` and `(t, x)`: the apex is a sink of the pair.
    O2,
    /// `(x, s)` and `(x, t)`: the apex is a source of the pair.
    O3,
}

impl StellationKind {
    /// Kind seen after reversing every edge (base reversed too).
    pub fn reversed(self) -> Self {
        match self {
            StellationKind::O1 => StellationKind::O1,
            StellationKind::O2 => StellationKind::O3,
            StellationKind::O3 => StellationKind::O2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            StellationKind::O1 => "O1",
            StellationKind::O2 => "O2",
            StellationKind::O3 => "O3",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "O1" => Some(StellationKind::O1),
            "O2" => Some(StellationKind::O2),
            "O3" => Some(StellationKind::O3),
            _ => None,
        }
    }

    /// Classifies the triangle on directed base `base` with apex `x` in `g`.
    pub fn of(g: &Dag, base: Edge, x: usize) -> Option<Self> {
        let (s, t) = (base.source, base.target);
        match (g.has_edge(s, x), g.has_edge(x, t), g.has_edge(t, x), g.has_edge(x, s)) {
            (true, true, _, _) => Some(StellationKind::O1),
            (true, _, true, _) => Some(StellationKind::O2),
            (_, true, _, true) => Some(StellationKind::O3),
            _ => None,
        }
    }
}

/// One stellation: `base` (directed as in the graph) gets apex `apex`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StellationOp {
    pub kind: StellationKind,
    pub base: Edge,
    pub apex: usize,
    pub parent: Option<usize>,
    /// Stellations of `{base.source, apex}` and `{base.target, apex}`.
    pub children: [Option<usize>; 2],
}

impl StellationOp {
    /// Directed edge between the apex and `base.source` or `base.target`.
    pub fn side_edge(&self, side: usize) -> Edge {
        let end = if side == 0 { self.base.source } else { self.base.target };
        match (self.kind, side) {
            (StellationKind::O1, 0) | (StellationKind::O2, _) => Edge::new(end, self.apex),
            (StellationKind::O1, _) | (StellationKind::O3, _) => Edge::new(self.apex, end),
        }
    }
}

/// Stellation tree rooted at the base edge.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConstructionSequence {
    pub n: usize,
    pub base_edge: Edge,
    pub root: Option<usize>,
    pub nodes: Vec<StellationOp>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PeelError {
    #[error("base edge {0} is not in the graph")]
    BaseNotInGraph(Edge),
    #[error("no removable degree-2 vertex with {0} vertices left")]
    Stuck(usize),
    #[error("edge {{{0}, {1}}} would be stellated twice")]
    StellatedTwice(usize, usize),
    #[error("remainder after peeling is not the base edge")]
    BadRemainder,
    #[error("malformed sequence line {0}: {1}")]
    Malformed(usize, String),
}

fn key(a: usize, b: usize) -> (usize, usize) {
    (a.min(b), a.max(b))
}

/// Reverse construction from `base`: repeatedly remove the lowest-numbered
/// degree-2 vertex other than the base endpoints whose two neighbours are
/// adjacent.
pub fn peel_outerplanar(g: &Dag, base: Edge) -> Result<ConstructionSequence, PeelError> {
    if !g.has_edge(base.source, base.target) {
        return Err(PeelError::BaseNotInGraph(base));
    }
    let n = g.n();
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let protected = |v: usize| v == base.source || v == base.target;
    let mut candidates: BTreeSet<usize> =
        (0..n).filter(|&v| !protected(v) && adj[v].len() == 2).collect();
    // (edge key) -> (apex) in peel order
    let mut peeled: Vec<(usize, usize, usize)> = Vec::new();
    let mut stellated: HashMap<(usize, usize), usize> = HashMap::new();

    while remaining > 2 {
        let v = loop {
            let Some(&v) = candidates.iter().next() else {
                return Err(PeelError::Stuck(remaining));
            };
            candidates.remove(&v);
            if alive[v] && adj[v].len() == 2 {
                let mut it = adj[v].iter();
                let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
                if adj[a].contains(&b) {
                    break v;
                }
            }
        };
        let mut it = adj[v].iter();
        let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
        if stellated.insert(key(a, b), peeled.len()).is_some() {
            return Err(PeelError::StellatedTwice(a, b));
        }
        peeled.push((a, b, v));
        alive[v] = false;
        remaining -= 1;
        adj[a].remove(&v);
        adj[b].remove(&v);
        adj[v].clear();
        for w in [a, b] {
            if !protected(w) && adj[w].len() == 2 {
                candidates.insert(w);
            }
        }
    }
    if !(alive[base.source] && alive[base.target])
        || adj[base.source].len() != 1
        || !adj[base.source].contains(&base.target)
    {
        return Err(PeelError::BadRemainder);
    }
    // Vertices never peeled other than the base endpoints mean a disconnected input.
    if (0..n).any(|v| alive[v] && !protected(v)) {
        return Err(PeelError::BadRemainder);
    }

    // Build the tree top-down in reverse peel order.
    let mut nodes: Vec<StellationOp> = Vec::with_capacity(peeled.len());
    let mut node_of_edge: HashMap<(usize, usize), usize> = HashMap::new();
    let mut parent_slot: HashMap<(usize, usize), (usize, usize)> = HashMap::new();
    for &(a, b, x) in peeled.iter().rev() {
        let k = key(a, b);
        let base_dir = if g.has_edge(a, b) { Edge::new(a, b) } else { Edge::new(b, a) };
        let kind = StellationKind::of(g, base_dir, x).expect("acyclic triangle");
        let id = nodes.len();
        let parent = parent_slot.get(&k).copied();
        nodes.push(StellationOp {
            kind,
            base: base_dir,
            apex: x,
            parent: parent.map(|(p, _)| p),
            children: [None, None],
        });
        if let Some((p, side)) = parent {
            nodes[p].children[side] = Some(id);
        } else if k != key(base.source, base.target) {
            return Err(PeelError::BadRemainder);
        }
        node_of_edge.insert(k, id);
        parent_slot.insert(key(base_dir.source, x), (id, 0));
        parent_slot.insert(key(base_dir.target, x), (id, 1));
    }
    let root = node_of_edge.get(&key(base.source, base.target)).copied();
    Ok(ConstructionSequence {
        n,
        base_edge: base,
        root,
        nodes,
    })
}

impl ConstructionSequence {
    /// Edge set produced by replaying the stellations from the base edge.
    pub fn replay_edges(&self) -> Vec<Edge> {
        let mut edges = vec![self.base_edge];
        for node in &self.nodes {
            edges.push(node.side_edge(0));
            edges.push(node.side_edge(1));
        }
        edges
    }

    pub fn kinds(&self) -> impl Iterator<Item = StellationKind> + '_ {
        self.nodes.iter().map(|n| n.kind)
    }

    /// True if every node has at most one child.
    pub fn is_path(&self) -> bool {
        self.nodes
            .iter()
            .all(|n| n.children.iter().filter(|c| c.is_some()).count() <= 1)
    }

    /// The debugging text format, one line per node in id order:
    /// `<kind> base=<u>,<v> apex=<x> parent=<idx>` (root has `parent=-1`).
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        for node in &self.nodes {
            let parent = node.parent.map_or("-1".to_string(), |p| p.to_string());
            s.push_str(&format!(
                "{} base={},{} apex={} parent={}\n",
                node.kind.name(),
                node.base.source,
                node.base.target,
                node.apex,
                parent
            ));
        }
        s
    }

    /// Reads the debugging format back, recomputing child links. The base
    /// edge is the root's base; `n` is taken from the largest id seen.
    pub fn from_text(text: &str, base_edge: Edge) -> Result<Self, PeelError> {
        let mut nodes: Vec<StellationOp> = Vec::new();
        let mut n = base_edge.source.max(base_edge.target) + 1;
        for (i, line) in text.lines().enumerate().filter(|(_, l)| !l.trim().is_empty()) {
            let bad = || PeelError::Malformed(i + 1, line.to_string());
            let toks: Vec<&str> = line.split_whitespace().collect();
            if toks.len() != 4 {
                return Err(bad());
            }
            let kind = StellationKind::parse(toks[0]).ok_or_else(bad)?;
            let (u, v) = toks[1]
                .strip_prefix("base=")
                .and_then(|b| b.split_once(','))
                .ok_or_else(bad)?;
            let u: usize = u.parse().map_err(|_| bad())?;
            let v: usize = v.parse().map_err(|_| bad())?;
            let apex: usize = toks[2]
                .strip_prefix("apex=")
                .and_then(|x| x.parse().ok())
                .ok_or_else(bad)?;
            let parent: i64 = toks[3]
                .strip_prefix("parent=")
                .and_then(|x| x.parse().ok())
                .ok_or_else(bad)?;
            n = n.max(u + 1).max(v + 1).max(apex + 1);
            nodes.push(StellationOp {
                kind,
                base: Edge::new(u, v),
                apex,
                parent: usize::try_from(parent).ok(),
                children: [None, None],
            });
        }
        for id in 0..nodes.len() {
            if let Some(p) = nodes[id].parent {
                let bad = || PeelError::Malformed(id + 1, "parent does not share the base".into());
                let pn = nodes.get(p).ok_or_else(bad)?;
                let k = key(nodes[id].base.source, nodes[id].base.target);
                let side = if k == key(pn.base.source, pn.apex) {
                    0
                } else if k == key(pn.base.target, pn.apex) {
                    1
                } else {
                    return Err(bad());
                };
                nodes[p].children[side] = Some(id);
            }
        }
        let root = nodes.iter().position(|n| n.parent.is_none());
        Ok(ConstructionSequence {
            n,
            base_edge,
            root,
            nodes,
        })
    }
}

impl fmt::Display for ConstructionSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

/// Edges lying on exactly one triangle (the outer cycle of a maximal
/// outerplanar graph with at least three vertices). A lone edge counts as outer.
pub fn outer_edges(g: &Dag) -> Vec<Edge> {
    if g.n() == 2 && g.m() == 1 {
        return g.edges().to_vec();
    }
    let adj: Vec<BTreeSet<usize>> = (0..g.n()).map(|v| g.neighbors(v).collect()).collect();
    g.edges()
        .iter()
        .copied()
        .filter(|e| adj[e.source].intersection(&adj[e.target]).count() == 1)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sorted(mut e: Vec<Edge>) -> Vec<Edge> {
        e.sort();
        e
    }

    #[test]
    fn single_edge_gives_empty_tree() {
        let g = Dag::from_pairs(2, &[(0, 1)]).unwrap();
        let seq = peel_outerplanar(&g, Edge::new(0, 1)).unwrap();
        assert!(seq.nodes.is_empty());
        assert_eq!(seq.root, None);
    }

    #[test]
    fn transitive_triangle_is_one_o1() {
        let g = Dag::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let seq = peel_outerplanar(&g, Edge::new(0, 2)).unwrap();
        assert_eq!(seq.nodes.len(), 1);
        assert_eq!(seq.nodes[0].kind, StellationKind::O1);
        assert_eq!(seq.nodes[0].apex, 1);
        // Same triangle from another base reads as O2.
        let seq = peel_outerplanar(&g, Edge::new(0, 1)).unwrap();
        assert_eq!(seq.nodes[0].kind, StellationKind::O2);
    }

    #[test]
    fn replay_reconstructs_fan() {
        // Fan from 0 over the path 1-2-3-4.
        let g = Dag::from_pairs(5, &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (2, 3), (3, 4)])
            .unwrap();
        let seq = peel_outerplanar(&g, Edge::new(0, 1)).unwrap();
        assert_eq!(seq.nodes.len(), 3);
        assert_eq!(sorted(seq.replay_edges()), sorted(g.edges().to_vec()));
        assert!(seq.is_path());
        let text = seq.to_text();
        let back = ConstructionSequence::from_text(&text, seq.base_edge).unwrap();
        assert_eq!(back, seq);
    }

    #[test]
    fn rejects_inner_base_and_non_outerplanar() {
        // Two triangles sharing the chord (0, 2).
        let g = Dag::from_pairs(4, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 2)]).unwrap();
        assert!(matches!(
            peel_outerplanar(&g, Edge::new(0, 2)),
            Err(PeelError::StellatedTwice(0, 2))
        ));
        assert!(peel_outerplanar(&g, Edge::new(0, 1)).is_ok());
        // K4 is not outerplanar.
        let k4 = Dag::from_pairs(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert!(peel_outerplanar(&k4, Edge::new(0, 1)).is_err());
        // Base not in graph.
        assert!(matches!(
            peel_outerplanar(&g, Edge::new(1, 0)),
            Err(PeelError::BaseNotInGraph(_))
        ));
    }

    #[test]
    fn outer_edges_of_two_triangles() {
        let g = Dag::from_pairs(4, &[(0, 1), (1, 2), (0, 2), (0, 3), (3, 2)]).unwrap();
        assert_eq!(
            sorted(outer_edges(&g)),
            sorted(vec![Edge::new(0, 1), Edge::new(1, 2), Edge::new(0, 3), Edge::new(3, 2)])
        );
    }
}
