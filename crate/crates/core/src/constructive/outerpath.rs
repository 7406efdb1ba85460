//! Outerpath DAGs (stellation tree is a path): twist at most 4.

use crate::recognition::outerplanar::{ConstructionSequence, StellationKind};

use super::invariants::OUTERPATH;
use super::{run_odag, AnnotatedOrder, ConstructError, ConstructOptions, LayoutClass};

/// Order `[H1, s, H2, H3, t, H4]` with twist at most 4.
pub fn order_outerpath(seq: &ConstructionSequence) -> Result<AnnotatedOrder, ConstructError> {
    order_outerpath_with(seq, &ConstructOptions::default())
}

pub fn order_outerpath_with(
    seq: &ConstructionSequence,
    opts: &ConstructOptions,
) -> Result<AnnotatedOrder, ConstructError> {
    use StellationKind::*;
    if let Some(i) = seq.nodes.iter().position(|op| op.children.iter().all(Option::is_some)) {
        return Err(ConstructError::NotAPath(i));
    }
    run_odag(
        seq,
        LayoutClass::Outerpath,
        opts,
        OUTERPATH,
        |op| match op.kind {
            O2 => false,
            O3 => true,
            O1 => op.children[1].is_some(),
        },
        |arena, view, gp, rp| {
            let e = arena.empty();
            let [g1, gs, g2, g3, gx, g4] = gp;
            match view.kind {
                O2 if view.has[0] => {
                    let h4 = arena.cat(&[g3, gx, g4]);
                    [g1, gs, g2, e, rp[1], h4]
                }
                O2 => {
                    let [r1, rt, r2, r3, rx, r4] = rp;
                    let h4 = arena.cat(&[r2, r3, rx, r4]);
                    [e, gs, e, r1, rt, h4]
                }
                _ => {
                    let h2 = arena.cat(&[g2, g3, gx, g4]);
                    [g1, gs, h2, e, rp[4], e]
                }
            }
        },
    )
}
