//! Invariants on partitioned orders, stated over edges between parts.

use crate::graph::Dag;
use crate::order::PartLabel::{self, H1, H2, H3, H4, M, S, T};
use crate::order::PartitionedOrder;
use crate::twist::max_twist_of_subset;

use super::ConstructError;

type Term = (&'static [PartLabel], &'static [PartLabel]);

#[derive(Debug, Clone, Copy)]
pub enum Invariant {
    /// The twist of edges from a part in `from` to a part in `to`, over any
    /// of the terms, is at most `bound`.
    Twist {
        name: &'static str,
        terms: &'static [Term],
        bound: usize,
    },
    /// One of the two parts is empty.
    EitherEmpty {
        name: &'static str,
        a: PartLabel,
        b: PartLabel,
    },
    /// No edge matches the terms, or the part is empty.
    NoEdgesOrEmpty {
        name: &'static str,
        terms: &'static [Term],
        part: PartLabel,
    },
}

const ALL: &[PartLabel] = &[H1, S, H2, H3, T, H4, M];
const EVERY: &[Term] = &[(ALL, ALL)];

const fn tw(name: &'static str, terms: &'static [Term], bound: usize) -> Invariant {
    Invariant::Twist { name, terms, bound }
}

pub(crate) const SINGLE_SOURCE: &[Invariant] = &[
    tw("I.1", &[(&[S, H3], &[H4])], 1),
    tw("I.2", EVERY, 3),
    Invariant::NoEdgesOrEmpty {
        name: "observation",
        terms: &[(&[S], &[H4])],
        part: H3,
    },
];

pub(crate) const MONOTONE: &[Invariant] = &[
    tw("I.1", &[(&[H1, H2], &[H3]), (&[H2], &[H4])], 0),
    tw("I.2", &[(&[H1, S], &[T, H4])], 1),
    tw("I.3", &[(&[H1], &[H2, T, H4])], 2),
    tw("I.4", &[(&[H1, S, H3], &[H4])], 2),
    tw("I.5", EVERY, 4),
];

pub(crate) const OUTERPATH: &[Invariant] = &[
    Invariant::EitherEmpty {
        name: "p:I0",
        a: H2,
        b: H3,
    },
    tw("p:I2a", &[(&[H2], &[T, H4])], 1),
    tw("p:I2b", &[(&[H1, S], &[H3])], 1),
    tw("p:I3", &[(&[H1, S, H2], &[H3, T, H4])], 2),
    tw("p:I4a", &[(&[H1], &[H2]), (&[H2], &[T, H4])], 3),
    tw("p:I4b", &[(&[H1, S], &[H3]), (&[H3], &[H4])], 3),
    tw("p:I5", &[(&[H1, S, H2, H3], &[H4])], 3),
    tw("p:I6", &[(&[H1], &[H2, H3, T, H4])], 3),
    tw("p:I7", EVERY, 4),
];

pub(crate) const UP3TREE: &[Invariant] = &[
    tw("I.1", &[(&[S, H1], &[H2, T])], 2),
    tw("I.2", EVERY, 5),
];

fn matches(terms: &[Term], a: PartLabel, b: PartLabel) -> bool {
    terms.iter().any(|(f, t)| f.contains(&a) && t.contains(&b))
}

pub(crate) fn check_all(
    g: &Dag,
    po: &PartitionedOrder,
    invs: &[Invariant],
    frame: usize,
) -> Result<(), ConstructError> {
    let labels = po.labels_by_vertex();
    for inv in invs {
        match *inv {
            Invariant::Twist { name, terms, bound } => {
                let cert = max_twist_of_subset(g, po.order(), |e| {
                    matches(terms, labels[e.source], labels[e.target])
                })
                .map_err(|e| ConstructError::BadDecomposition(e.to_string()))?;
                if cert.k() > bound {
                    return Err(ConstructError::InvariantViolated {
                        frame,
                        name,
                        found: cert.k(),
                        bound,
                    });
                }
            }
            Invariant::EitherEmpty { name, a, b } => {
                if !po.part(a).is_empty() && !po.part(b).is_empty() {
                    return Err(ConstructError::EmptinessViolated { frame, name });
                }
            }
            Invariant::NoEdgesOrEmpty { name, terms, part } => {
                let any = g
                    .edges()
                    .iter()
                    .any(|e| matches(terms, labels[e.source], labels[e.target]));
                if any && !po.part(part).is_empty() {
                    return Err(ConstructError::EmptinessViolated { frame, name });
                }
            }
        }
    }
    Ok(())
}
