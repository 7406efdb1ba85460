//! Planarity-based upward tests.
//!
//! Planarity itself is delegated to the left-right planarity test from
//! `rustworkx-core`.

use rustworkx_core::petgraph::graph::UnGraph;
use rustworkx_core::planar::is_planar;
use thiserror::Error;

use crate::graph::{Dag, Edge};

/// Undirected planarity of the vertex set `0..n` with `edges`.
pub fn is_planar_undirected(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut ug = UnGraph::<(), ()>::with_capacity(n, edges.len());
    for _ in 0..n {
        ug.add_node(());
    }
    for &(u, v) in edges {
        ug.add_edge((u as u32).into(), (v as u32).into(), ());
    }
    is_planar(&ug)
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum UpwardCheckError {
    #[error("st check needs exactly one source and one sink, found {sources} and {sinks}")]
    NotSingleSourceSink { sources: usize, sinks: usize },
    #[error("exhaustive upward test limited to {limit} vertices, graph has {n}")]
    TooLarge { n: usize, limit: usize },
}

/// Upward planarity of a single-source single-sink DAG: the graph plus the
/// edge `(s, t)` must be planar.
pub fn st_upward_check(g: &Dag) -> Result<bool, UpwardCheckError> {
    let (sources, sinks) = (g.sources(), g.sinks());
    if sources.len() != 1 || sinks.len() != 1 {
        return Err(UpwardCheckError::NotSingleSourceSink {
            sources: sources.len(),
            sinks: sinks.len(),
        });
    }
    let (s, t) = (sources[0], sinks[0]);
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.source, e.target)).collect();
    if !g.adjacent(s, t) {
        edges.push((s, t));
    }
    Ok(is_planar_undirected(g.n(), &edges))
}

/// Largest input accepted by [`upward_planar_small`].
pub const EXHAUSTIVE_UPWARD_LIMIT: usize = 9;

/// Exhaustive upward planarity for tiny DAGs.
///
/// A DAG is upward planar iff it is a spanning subgraph of a planar
/// single-source single-sink DAG whose source-sink pair can be joined
/// planarly. This searches all such edge augmentations, pruning on cycles
/// and on non-planarity (both are preserved by adding edges).
pub fn upward_planar_small(g: &Dag) -> Result<bool, UpwardCheckError> {
    let n = g.n();
    if n > EXHAUSTIVE_UPWARD_LIMIT {
        return Err(UpwardCheckError::TooLarge {
            n,
            limit: EXHAUSTIVE_UPWARD_LIMIT,
        });
    }
    if n <= 1 {
        return Ok(true);
    }
    let mut edges: Vec<(usize, usize)> = g.edges().iter().map(|e| (e.source, e.target)).collect();
    if !is_planar_undirected(n, &edges) {
        return Ok(false);
    }
    let free: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .filter(|&(u, v)| !g.adjacent(u, v))
        .collect();
    let budget = (3 * n).saturating_sub(6).saturating_sub(edges.len());
    Ok(augment(n, &mut edges, &free, 0, budget))
}

fn augment(
    n: usize,
    edges: &mut Vec<(usize, usize)>,
    free: &[(usize, usize)],
    from: usize,
    budget: usize,
) -> bool {
    if is_st_planar(n, edges) {
        return true;
    }
    if budget == 0 {
        return false;
    }
    for i in from..free.len() {
        let (u, v) = free[i];
        for (a, b) in [(u, v), (v, u)] {
            edges.push((a, b));
            let ok = is_acyclic(n, edges)
                && is_planar_undirected(n, edges)
                && augment(n, edges, free, i + 1, budget - 1);
            edges.pop();
            if ok {
                return true;
            }
        }
    }
    false
}

fn is_st_planar(n: usize, edges: &[(usize, usize)]) -> bool {
    let mut indeg = vec![0; n];
    let mut outdeg = vec![0; n];
    for &(u, v) in edges {
        outdeg[u] += 1;
        indeg[v] += 1;
    }
    let sources: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let sinks: Vec<usize> = (0..n).filter(|&v| outdeg[v] == 0).collect();
    if sources.len() != 1 || sinks.len() != 1 {
        return false;
    }
    let (s, t) = (sources[0], sinks[0]);
    let mut with_st = edges.to_vec();
    if !edges.iter().any(|&(a, b)| (a, b) == (s, t)) {
        with_st.push((s, t));
    }
    is_planar_undirected(n, &with_st)
}

fn is_acyclic(n: usize, edges: &[(usize, usize)]) -> bool {
    crate::graph::validate_dag(n, &edges.iter().map(|&p| Edge::from(p)).collect::<Vec<_>>())
        .is_ok()
}
