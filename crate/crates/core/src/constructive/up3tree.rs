//! Face-consistent planar 3-tree DAGs: twist at most 5.

use crate::order::THREE_TREE_LABELS;
use crate::recognition::three_tree::{OrientedTriangle, ThreeTreeDecomposition};

use super::invariants::UP3TREE;
use super::{
    check_frame, finish, flip, graph_of, post_order, AnnotatedOrder, Arena, ConstructError,
    ConstructOptions, LayoutClass, Parts,
};

struct Face {
    tri: OrientedTriangle,
    apex: Option<usize>,
    /// Faces `{s, x, t}`, `{s, x, m}`, `{x, m, t}`.
    children: Vec<usize>,
}

/// Order `[s, H1, m, H2, t]` with twist at most 5.
pub fn order_up3tree(dec: &ThreeTreeDecomposition) -> Result<AnnotatedOrder, ConstructError> {
    order_up3tree_with(dec, &ConstructOptions::default())
}

pub fn order_up3tree_with(
    dec: &ThreeTreeDecomposition,
    opts: &ConstructOptions,
) -> Result<AnnotatedOrder, ConstructError> {
    if !dec.face_consistent {
        return Err(ConstructError::NotFaceConsistent);
    }
    let edges = dec.replay_edges();
    let n = edges.iter().map(|e| e.source.max(e.target) + 1).max().unwrap_or(0);
    let g = graph_of(n, edges)?;
    let o = dec.outer;
    if !(g.has_edge(o.source, o.middle) && g.has_edge(o.middle, o.sink) && g.has_edge(o.source, o.sink)) {
        return Err(ConstructError::BadOuterTriangle(o.source, o.middle, o.sink));
    }
    let apex_of = dec.apex_of_face();
    let mut faces = vec![Face {
        tri: o,
        apex: apex_of.get(&o.key()).copied(),
        children: Vec::new(),
    }];
    let mut todo = vec![0];
    while let Some(f) = todo.pop() {
        let Some(x) = faces[f].apex else { continue };
        let OrientedTriangle { source: s, middle: m, sink: t } = faces[f].tri;
        for [a, b, c] in [[s, x, t], [s, x, m], [x, m, t]] {
            let tri = OrientedTriangle::of(&g, a, b, c)
                .ok_or_else(|| ConstructError::BadDecomposition(format!("({a}, {b}, {c}) is not a triangle")))?;
            faces.push(Face {
                tri,
                apex: apex_of.get(&tri.key()).copied(),
                children: Vec::new(),
            });
            let id = faces.len() - 1;
            faces[f].children.push(id);
            todo.push(id);
        }
    }

    let mut arena = Arena::new();
    let mut results: Vec<Option<(Parts<5>, bool)>> = vec![None; faces.len()];
    for f in post_order(0, |f| faces[f].children.clone()) {
        let face = &faces[f];
        let OrientedTriangle { source: s, middle: m, sink: t } = face.tri;
        let (parts, rev) = match face.apex {
            None => {
                let e = arena.empty();
                ([arena.leaf(s), e, arena.leaf(m), e, arena.leaf(t)], false)
            }
            Some(x) => {
                let rev = !g.has_edge(x, m);
                let mut take = |c: usize| {
                    let (p, crev) = results[c].take().expect("child frame computed");
                    if crev == rev {
                        p
                    } else {
                        flip(p)
                    }
                };
                let r = take(face.children[0]);
                let (mut gp, mut bp) = (take(face.children[1]), take(face.children[2]));
                if rev {
                    std::mem::swap(&mut gp, &mut bp);
                }
                let h1 = arena.cat(&[r[1], gp[1], gp[2], gp[3], r[3], bp[1]]);
                ([r[0], h1, bp[2], bp[3], r[4]], rev)
            }
        };
        if opts.check_frames && face.apex.is_some() {
            check_frame(&g, &arena, &parts, &THREE_TREE_LABELS, rev, UP3TREE, f + 1)?;
        }
        results[f] = Some((parts, rev));
    }
    let (parts, rev) = results[0].take().expect("root frame computed");
    let parts = if rev { flip(parts) } else { parts };
    finish(&g, &arena, &parts, &THREE_TREE_LABELS, UP3TREE, LayoutClass::Up3Tree)
}
