//! Page assignment for a fixed vertex order.

use crate::graph::Dag;
use crate::layout::StackLayout;
use crate::order::{positions_cross, require_linear_extension, LinearOrder, OrderError};
use crate::twist::max_twist;

fn spans(g: &Dag, order: &LinearOrder) -> Vec<(usize, usize)> {
    g.edges()
        .iter()
        .map(|e| (order.position(e.source), order.position(e.target)))
        .collect()
}

/// First-fit over edges sorted by source position, then target position
/// descending.
pub fn greedy_first_fit(g: &Dag, order: &LinearOrder) -> Result<StackLayout, OrderError> {
    require_linear_extension(g, order)?;
    let sp = spans(g, order);
    let mut ids: Vec<usize> = (0..g.m()).collect();
    ids.sort_by_key(|&i| (sp[i].0, std::cmp::Reverse(sp[i].1)));
    let mut pages: Vec<Vec<usize>> = Vec::new();
    let mut page_of = vec![0; g.m()];
    for i in ids {
        let p = pages
            .iter()
            .position(|page| page.iter().all(|&j| !positions_cross(sp[i], sp[j])))
            .unwrap_or_else(|| {
                pages.push(Vec::new());
                pages.len() - 1
            });
        pages[p].push(i);
        page_of[i] = p;
    }
    Ok(StackLayout::new(order.clone(), page_of))
}

/// Crossing-conflict adjacency lists over edge ids.
pub(crate) fn conflict_graph(g: &Dag, order: &LinearOrder) -> Vec<Vec<usize>> {
    let sp = spans(g, order);
    let m = g.m();
    let mut adj = vec![Vec::new(); m];
    for i in 0..m {
        for j in i + 1..m {
            if positions_cross(sp[i], sp[j]) {
                adj[i].push(j);
                adj[j].push(i);
            }
        }
    }
    adj
}

/// Minimum page count for the fixed order, or `None` if it exceeds `k_max`.
pub fn min_pages_for_order(
    g: &Dag,
    order: &LinearOrder,
    k_max: usize,
) -> Result<Option<StackLayout>, OrderError> {
    let lower = max_twist(g, order)?.k();
    if g.m() == 0 {
        return Ok(Some(StackLayout::new(order.clone(), Vec::new())));
    }
    let adj = conflict_graph(g, order);
    let mut seq: Vec<usize> = (0..g.m()).collect();
    seq.sort_by_key(|&i| (std::cmp::Reverse(adj[i].len()), i));
    for k in lower.max(1)..=k_max {
        let mut color = vec![usize::MAX; g.m()];
        if color_with(&adj, &seq, 0, k, 0, &mut color) {
            return Ok(Some(StackLayout::new(order.clone(), color)));
        }
    }
    Ok(None)
}

fn color_with(
    adj: &[Vec<usize>],
    seq: &[usize],
    at: usize,
    k: usize,
    used: usize,
    color: &mut [usize],
) -> bool {
    let Some(&e) = seq.get(at) else {
        return true;
    };
    // A fresh colour is interchangeable with any other fresh one.
    for c in 0..k.min(used + 1) {
        if adj[e].iter().all(|&f| color[f] != c) {
            color[e] = c;
            if color_with(adj, seq, at + 1, k, used.max(c + 1), color) {
                return true;
            }
        }
    }
    color[e] = usize::MAX;
    false
}
