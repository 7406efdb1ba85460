//! Single-source maximal outerplanar DAGs: twist at most 3 and a 4-stack
//! layout on the same order.

use crate::graph::Dag;
use crate::layout::{validate_layout, StackLayout};
use crate::recognition::outerplanar::{ConstructionSequence, StellationKind};

use super::invariants::SINGLE_SOURCE;
use super::{
    graph_of, require_kinds, run_odag, AnnotatedOrder, ConstructError, ConstructOptions,
    LayoutClass,
};

/// Order `[s, H3, t, H4]` with twist at most 3.
pub fn order_single_source(seq: &ConstructionSequence) -> Result<AnnotatedOrder, ConstructError> {
    order_single_source_with(seq, &ConstructOptions::default())
}

pub fn order_single_source_with(
    seq: &ConstructionSequence,
    opts: &ConstructOptions,
) -> Result<AnnotatedOrder, ConstructError> {
    use StellationKind::*;
    require_kinds(seq, LayoutClass::SingleSource, &[O1, O2])?;
    run_odag(
        seq,
        LayoutClass::SingleSource,
        opts,
        SINGLE_SOURCE,
        |_| false,
        |arena, view, gp, rp| {
            let e = arena.empty();
            let [_, gs, _, g3, gx, g4] = gp;
            match view.kind {
                // rp = [_, t, _, R3, x, R4]
                O2 => {
                    let [_, rt, _, r3, _, r4] = rp;
                    let h4 = arena.cat(&[r3, g3, gx, g4, r4]);
                    [e, gs, e, e, rt, h4]
                }
                // rp = [_, x, _, R3, t, R4]
                _ => {
                    let [_, _, _, r3, rt, r4] = rp;
                    let h3 = arena.cat(&[g3, gx, g4, r3]);
                    [e, gs, e, h3, rt, r4]
                }
            }
        },
    )
}

// Stack relabelling of a child frame into its parent, indexed by child stack.
const CASE1_R: [usize; 4] = [1, 3, 2, 0];
const CASE2_R: [usize; 4] = [3, 1, 2, 0];
const SWAP34: [usize; 4] = [0, 1, 3, 2];
const IDENTITY: [usize; 4] = [0, 1, 2, 3];

fn compose(outer: [usize; 4], inner: [usize; 4]) -> [usize; 4] {
    inner.map(|i| outer[i])
}

/// 4-stack layout of `g` on the order of [`order_single_source`]; `seq` must
/// be a construction sequence of `g`.
pub fn stacks_single_source_for(g: &Dag, seq: &ConstructionSequence) -> Result<StackLayout, ConstructError> {
    let layout = stacks_single_source(seq)?;
    let h = graph_of(seq.n, seq.replay_edges())?;
    layout
        .remap_edges(&h, g)
        .filter(|_| h.m() == g.m())
        .ok_or_else(|| ConstructError::BadDecomposition("sequence does not describe the graph".into()))
}

/// 4-stack layout on the order of [`order_single_source`]. Pages are indexed
/// by the edge ids of `seq.replay_edges()`.
pub fn stacks_single_source(seq: &ConstructionSequence) -> Result<StackLayout, ConstructError> {
    let annotated = order_single_source(seq)?;
    let g = graph_of(seq.n, seq.replay_edges())?;
    let mut page_of = vec![usize::MAX; g.m()];
    let mut set = |g: &Dag, u: usize, v: usize, page: usize| {
        let id = g.edge_id(u, v).expect("edge of the construction");
        page_of[id] = page;
    };
    let base = seq.base_edge;
    set(&g, base.source, base.target, 1);
    if let Some(root) = seq.root {
        let mut stack = vec![(root, IDENTITY)];
        while let Some((idx, map)) = stack.pop() {
            let op = &seq.nodes[idx];
            for (side, &page) in map.iter().enumerate().take(2) {
                let e = op.side_edge(side);
                set(&g, e.source, e.target, page);
            }
            let [gc, rc] = op.children;
            let (r_map, frame) = match op.kind {
                StellationKind::O2 => (CASE1_R, map),
                _ => {
                    let r_case1 = rc.is_some_and(|c| seq.nodes[c].kind == StellationKind::O2);
                    (CASE2_R, if r_case1 { compose(map, SWAP34) } else { map })
                }
            };
            if let Some(c) = gc {
                stack.push((c, frame));
            }
            if let Some(c) = rc {
                stack.push((c, compose(frame, r_map)));
            }
        }
    }
    let layout = StackLayout::new(annotated.order.into_order(), page_of);
    validate_layout(&g, &layout).map_err(|e| ConstructError::InvalidLayout(e.to_string()))?;
    if layout.k > 4 {
        return Err(ConstructError::InvalidLayout(format!("{} stacks used", layout.k)));
    }
    Ok(layout)
}
