//! Monotone maximal outerplanar DAGs (O2 and O3 only): twist at most 4.

use crate::recognition::outerplanar::{ConstructionSequence, StellationKind};

use super::invariants::MONOTONE;
use super::{require_kinds, run_odag, AnnotatedOrder, ConstructError, ConstructOptions, LayoutClass};

/// Order `[H1, s, H2, H3, t, H4]` with twist at most 4.
pub fn order_monotone(seq: &ConstructionSequence) -> Result<AnnotatedOrder, ConstructError> {
    order_monotone_with(seq, &ConstructOptions::default())
}

pub fn order_monotone_with(
    seq: &ConstructionSequence,
    opts: &ConstructOptions,
) -> Result<AnnotatedOrder, ConstructError> {
    use StellationKind::*;
    require_kinds(seq, LayoutClass::Monotone, &[O2, O3])?;
    run_odag(
        seq,
        LayoutClass::Monotone,
        opts,
        MONOTONE,
        |op| op.kind == O3,
        |arena, _, gp, rp| {
            let [g1, gs, g2, g3, _, g4] = gp;
            let [r1, rt, r2, r3, rx, r4] = rp;
            let h4 = arena.cat(&[r2, g3, r3, rx, r4, g4]);
            [g1, gs, g2, r1, rt, h4]
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::Dag;
    use crate::recognition::outerplanar::peel_outerplanar;
    use crate::twist::max_twist_bruteforce;

    #[test]
    fn single_edge() {
        let g = Dag::from_pairs(2, &[(0, 1)]).unwrap();
        let seq = peel_outerplanar(&g, (0, 1).into()).unwrap();
        assert_eq!(order_monotone(&seq).unwrap().order.order().sequence(), &[0, 1]);
    }

    #[test]
    fn o2_path_of_three() {
        // Base 0->1; 2 sink on (0,1); 3 sink on (1,2); 4 source on (1,3).
        let pairs = [(0, 1), (0, 2), (1, 2), (1, 3), (2, 3), (4, 1), (4, 3)];
        let g = Dag::from_pairs(5, &pairs).unwrap();
        let seq = peel_outerplanar(&g, (0, 1).into()).unwrap();
        let a = order_monotone_with(&seq, &ConstructOptions::checked()).unwrap();
        let brute = max_twist_bruteforce(&g, a.order.order()).unwrap();
        assert_eq!(a.twist.k(), brute.k());
        assert!(brute.k() <= 2);
    }

    #[test]
    fn rejects_o1() {
        let g = Dag::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        let seq = peel_outerplanar(&g, (0, 2).into()).unwrap();
        assert!(matches!(order_monotone(&seq), Err(ConstructError::WrongKind { .. })));
    }
}
