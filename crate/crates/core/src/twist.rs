//! Maximum twists under a fixed linear extension.
//!
//! A twist is a set of pairwise crossing edges. Every twist spans the gap
//! between its last source and its first target, and among the edges spanning
//! one gap a twist is exactly a chain that increases in both source and target
//! position. So the maximum twist is the best longest-increasing-subsequence
//! over all gaps.

use std::collections::HashSet;

use crate::graph::{Dag, Edge};
use crate::order::{require_linear_extension, LinearOrder, OrderError};

/// A set of pairwise crossing edges; `edges` are sorted by source position.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct TwistCertificate {
    pub edges: Vec<Edge>,
}

impl TwistCertificate {
    pub fn k(&self) -> usize {
        self.edges.len()
    }

    /// Checks the twist definition against `order`.
    pub fn is_valid(&self, order: &LinearOrder) -> bool {
        let e = &self.edges;
        for w in e.windows(2) {
            if order.position(w[0].source) >= order.position(w[1].source)
                || order.position(w[0].target) >= order.position(w[1].target)
            {
                return false;
            }
        }
        if let (Some(last), Some(first)) = (e.last(), e.first()) {
            if order.position(last.source) >= order.position(first.target) {
                return false;
            }
        }
        let mut seen = HashSet::new();
        e.iter()
            .all(|x| seen.insert(x.source) && seen.insert(x.target))
    }
}

/// Maximum twist over all edges of `g`.
pub fn max_twist(g: &Dag, order: &LinearOrder) -> Result<TwistCertificate, OrderError> {
    max_twist_of_subset(g, order, |_| true)
}

/// Maximum twist over the edges accepted by `pred`.
pub fn max_twist_of_subset<F>(
    g: &Dag,
    order: &LinearOrder,
    pred: F,
) -> Result<TwistCertificate, OrderError>
where
    F: Fn(Edge) -> bool,
{
    require_linear_extension(g, order)?;
    let spans: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .filter(|&&e| pred(e))
        .map(|e| (order.position(e.source), order.position(e.target)))
        .collect();
    let best = max_twist_positions(&spans, order.len());
    Ok(TwistCertificate {
        edges: best
            .into_iter()
            .map(|(a, b)| Edge::new(order.vertex_at(a), order.vertex_at(b)))
            .collect(),
    })
}

/// Core routine over `(source_pos, target_pos)` pairs with `source < target`.
pub(crate) fn max_twist_positions(spans: &[(usize, usize)], n: usize) -> Vec<(usize, usize)> {
    if spans.is_empty() {
        return Vec::new();
    }
    let mut sorted: Vec<(usize, usize)> = spans.to_vec();
    // Ties on the source go by descending target so a strict chain never takes
    // two edges out of the same vertex.
    sorted.sort_by(|x, y| x.0.cmp(&y.0).then(y.1.cmp(&x.1)));

    // Spanning counts per gap, via a difference array.
    let mut diff = vec![0isize; n + 1];
    for &(a, b) in &sorted {
        diff[a] += 1;
        diff[b] -= 1;
    }
    let mut best: Vec<(usize, usize)> = vec![sorted[0]];
    let mut spanning = 0isize;
    let mut buf = Vec::new();
    for (gap, d) in diff.iter().enumerate().take(n.saturating_sub(1)) {
        spanning += d;
        if (spanning as usize) <= best.len() {
            continue;
        }
        buf.clear();
        buf.extend(sorted.iter().copied().filter(|&(a, b)| a <= gap && gap < b));
        let chain = longest_increasing_by_target(&buf);
        if chain.len() > best.len() {
            best = chain;
        }
    }
    best
}

// Patience sorting with predecessor links; strict increase in the target.
fn longest_increasing_by_target(items: &[(usize, usize)]) -> Vec<(usize, usize)> {
    let mut tails: Vec<usize> = Vec::new();
    let mut prev = vec![usize::MAX; items.len()];
    for (i, &(_, t)) in items.iter().enumerate() {
        let k = tails.partition_point(|&j| items[j].1 < t);
        if k > 0 {
            prev[i] = tails[k - 1];
        }
        if k == tails.len() {
            tails.push(i);
        } else {
            tails[k] = i;
        }
    }
    let mut out = Vec::with_capacity(tails.len());
    let mut cur = tails.last().copied().unwrap_or(usize::MAX);
    while cur != usize::MAX {
        out.push(items[cur]);
        cur = prev[cur];
    }
    out.reverse();
    out
}

/// Exhaustive maximum twist; exponential, meant as a test oracle (`m <= 20`).
///
/// Walks every edge subset whose members pairwise cross (subsets of a twist
/// are twists, so nothing else can be extended into one) and keeps the
/// largest that satisfies the twist definition.
pub fn max_twist_bruteforce(g: &Dag, order: &LinearOrder) -> Result<TwistCertificate, OrderError> {
    require_linear_extension(g, order)?;
    let edges: Vec<Edge> = g.edges().to_vec();
    let m = edges.len();
    let crosses: Vec<Vec<bool>> = (0..m)
        .map(|i| (0..m).map(|j| crate::order::edges_cross(order, edges[i], edges[j])).collect())
        .collect();
    let mut best: Vec<usize> = Vec::new();
    let mut chosen: Vec<usize> = Vec::new();
    extend(0, &mut chosen, &mut best, &crosses, &edges, order);
    let mut out: Vec<Edge> = best.into_iter().map(|i| edges[i]).collect();
    out.sort_by_key(|e| order.position(e.source));
    Ok(TwistCertificate { edges: out })
}

fn extend(
    from: usize,
    chosen: &mut Vec<usize>,
    best: &mut Vec<usize>,
    crosses: &[Vec<bool>],
    edges: &[Edge],
    order: &LinearOrder,
) {
    if chosen.len() > best.len() {
        let mut sorted: Vec<Edge> = chosen.iter().map(|&i| edges[i]).collect();
        sorted.sort_by_key(|e| order.position(e.source));
        if (TwistCertificate { edges: sorted }).is_valid(order) {
            *best = chosen.clone();
        }
    }
    for i in from..edges.len() {
        if chosen.iter().all(|&j| crosses[i][j]) {
            chosen.push(i);
            extend(i + 1, chosen, best, crosses, edges, order);
            chosen.pop();
        }
    }
}
