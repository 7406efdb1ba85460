//! Recursive vertex orders with bounded twist for outerplanar and planar
//! 3-tree DAG classes.
//!
//! Every algorithm works bottom-up over its decomposition tree with an
//! explicit stack. A frame's result is a fixed list of parts, each a rope over
//! a shared arena, so concatenation and the reverse-graph flip are O(1).
//! Symmetric cases are solved on the reversed graph: the flip reverses the
//! part list and each part.

mod invariants;
pub mod monotone;
pub mod outerpath;
pub mod single_source;
pub mod up3tree;

use std::fmt;

use thiserror::Error;

use crate::graph::{Dag, Edge};
use crate::order::{LinearOrder, PartLabel, PartitionedOrder, ODAG_LABELS};
use crate::recognition::outerplanar::{ConstructionSequence, StellationKind};
use crate::twist::{max_twist, TwistCertificate};

pub use invariants::Invariant;
pub use monotone::order_monotone;
pub use outerpath::order_outerpath;
pub use single_source::{order_single_source, stacks_single_source, stacks_single_source_for};
pub use up3tree::order_up3tree;

/// Which construction produced an order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum LayoutClass {
    SingleSource,
    Monotone,
    Outerpath,
    Up3Tree,
}

impl LayoutClass {
    /// Proven twist bound of the construction.
    pub fn bound(self) -> usize {
        match self {
            LayoutClass::SingleSource => 3,
            LayoutClass::Monotone | LayoutClass::Outerpath => 4,
            LayoutClass::Up3Tree => 5,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            LayoutClass::SingleSource => "single-source",
            LayoutClass::Monotone => "monotone",
            LayoutClass::Outerpath => "outerpath",
            LayoutClass::Up3Tree => "up3tree",
        }
    }
}

impl fmt::Display for LayoutClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct AnnotatedOrder {
    pub order: PartitionedOrder,
    pub class: LayoutClass,
    pub bound: usize,
    /// A maximum twist of the whole order.
    pub twist: TwistCertificate,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ConstructOptions {
    /// Check every invariant of the construction at every frame. The root
    /// frame is always checked.
    pub check_frames: bool,
}

impl ConstructOptions {
    pub fn checked() -> Self {
        ConstructOptions { check_frames: true }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ConstructError {
    #[error("{class} construction does not accept {kind:?} (node {node})")]
    WrongKind {
        class: LayoutClass,
        kind: StellationKind,
        node: usize,
    },
    #[error("stellation tree is not a path: node {0} has two children")]
    NotAPath(usize),
    #[error("3-tree decomposition is not face-consistent")]
    NotFaceConsistent,
    #[error("outer triangle ({0}, {1}, {2}) does not match the edge directions")]
    BadOuterTriangle(usize, usize, usize),
    #[error("decomposition does not describe a DAG: {0}")]
    BadDecomposition(String),
    #[error("invariant {name} fails at frame {frame}: twist {found} > {bound}")]
    InvariantViolated {
        frame: usize,
        name: &'static str,
        found: usize,
        bound: usize,
    },
    #[error("invariant {name} fails at frame {frame}")]
    EmptinessViolated { frame: usize, name: &'static str },
    #[error("produced stack layout is invalid: {0}")]
    InvalidLayout(String),
}

/// Reference into the rope arena; `rev` reads the rope backwards.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) struct Rope {
    id: u32,
    rev: bool,
}

impl Rope {
    fn flipped(self) -> Rope {
        Rope {
            id: self.id,
            rev: !self.rev,
        }
    }
}

enum Node {
    Leaf(usize),
    Cat(Vec<Rope>),
}

pub(crate) struct Arena {
    nodes: Vec<Node>,
    lens: Vec<usize>,
}

impl Arena {
    pub(crate) fn new() -> Self {
        Arena {
            nodes: vec![Node::Cat(Vec::new())],
            lens: vec![0],
        }
    }

    pub(crate) fn empty(&self) -> Rope {
        Rope { id: 0, rev: false }
    }

    pub(crate) fn leaf(&mut self, v: usize) -> Rope {
        self.push(Node::Leaf(v), 1)
    }

    pub(crate) fn cat(&mut self, parts: &[Rope]) -> Rope {
        let kept: Vec<Rope> = parts.iter().copied().filter(|r| self.len(*r) > 0).collect();
        match kept.len() {
            0 => self.empty(),
            1 => kept[0],
            _ => {
                let len = kept.iter().map(|r| self.len(*r)).sum();
                self.push(Node::Cat(kept), len)
            }
        }
    }

    fn push(&mut self, node: Node, len: usize) -> Rope {
        self.nodes.push(node);
        self.lens.push(len);
        Rope {
            id: (self.nodes.len() - 1) as u32,
            rev: false,
        }
    }

    pub(crate) fn len(&self, r: Rope) -> usize {
        self.lens[r.id as usize]
    }

    pub(crate) fn flatten_into(&self, r: Rope, out: &mut Vec<usize>) {
        let mut stack = vec![r];
        while let Some(r) = stack.pop() {
            match &self.nodes[r.id as usize] {
                Node::Leaf(v) => out.push(*v),
                Node::Cat(children) => {
                    if r.rev {
                        stack.extend(children.iter().map(|c| c.flipped()));
                    } else {
                        stack.extend(children.iter().rev().copied());
                    }
                }
            }
        }
    }
}

/// Result of a frame: parts in label order.
pub(crate) type Parts<const N: usize> = [Rope; N];

/// The same frame seen on the reversed graph.
pub(crate) fn flip<const N: usize>(parts: Parts<N>) -> Parts<N> {
    let mut out = parts;
    out.reverse();
    for r in out.iter_mut() {
        *r = r.flipped();
    }
    out
}

/// Flattens a frame into its vertex sequence and part lengths.
pub(crate) fn flatten_parts<const N: usize>(arena: &Arena, parts: &Parts<N>) -> (Vec<usize>, Vec<usize>) {
    let mut seq = Vec::new();
    let mut lens = Vec::with_capacity(N);
    for r in parts {
        let before = seq.len();
        arena.flatten_into(*r, &mut seq);
        lens.push(seq.len() - before);
    }
    (seq, lens)
}

/// Checks `invs` on the subgraph induced by a frame, seen reversed if `rev`.
pub(crate) fn check_frame<const N: usize>(
    g: &Dag,
    arena: &Arena,
    parts: &Parts<N>,
    labels: &[PartLabel; N],
    rev: bool,
    invs: &[Invariant],
    frame: usize,
) -> Result<(), ConstructError> {
    let (seq, lens) = flatten_parts(arena, parts);
    let (mut h, _) = g.induced(&seq);
    if rev {
        h = h.reverse();
    }
    let order = LinearOrder::identity(seq.len());
    let po = PartitionedOrder::from_lengths(order, labels, &lens)
        .map_err(|e| ConstructError::BadDecomposition(e.to_string()))?;
    invariants::check_all(&h, &po, invs, frame)
}

/// Flattens the root frame into a partitioned order of `g`, checks the root
/// invariants and the class bound.
pub(crate) fn finish<const N: usize>(
    g: &Dag,
    arena: &Arena,
    parts: &Parts<N>,
    labels: &[PartLabel; N],
    invs: &[Invariant],
    class: LayoutClass,
) -> Result<AnnotatedOrder, ConstructError> {
    let (seq, lens) = flatten_parts(arena, parts);
    let bad = |m: String| ConstructError::BadDecomposition(m);
    let order = LinearOrder::from_sequence(seq).map_err(|e| bad(e.to_string()))?;
    let po = PartitionedOrder::from_lengths(order, labels, &lens).map_err(|e| bad(e.to_string()))?;
    invariants::check_all(g, &po, invs, 0)?;
    let twist = max_twist(g, po.order()).map_err(|e| bad(e.to_string()))?;
    let bound = class.bound();
    if twist.k() > bound {
        return Err(ConstructError::InvariantViolated {
            frame: 0,
            name: "bound",
            found: twist.k(),
            bound,
        });
    }
    Ok(AnnotatedOrder {
        order: po,
        class,
        bound,
        twist,
    })
}

/// Rebuilds the graph described by a decomposition.
pub(crate) fn graph_of(n: usize, edges: Vec<Edge>) -> Result<Dag, ConstructError> {
    Dag::new(n, edges).map_err(|e| ConstructError::BadDecomposition(e.to_string()))
}

/// Post-order over a forest given by `children`, starting at `root`.
pub(crate) fn post_order(root: usize, mut children: impl FnMut(usize) -> Vec<usize>) -> Vec<usize> {
    let mut out = Vec::new();
    let mut stack = vec![(root, false)];
    while let Some((v, expanded)) = stack.pop() {
        if expanded {
            out.push(v);
            continue;
        }
        stack.push((v, true));
        for c in children(v).into_iter().rev() {
            stack.push((c, false));
        }
    }
    out
}

/// A stellation node seen in one orientation of the graph.
#[derive(Debug, Clone, Copy)]
pub(crate) struct ViewNode {
    pub s: usize,
    pub t: usize,
    pub x: usize,
    pub kind: StellationKind,
    /// Child stellations of `{s, x}` and `{t, x}` in this view.
    pub has: [bool; 2],
}

impl ViewNode {
    fn of(op: &crate::recognition::outerplanar::StellationOp, rev: bool) -> Self {
        let (s, t) = if rev {
            (op.base.target, op.base.source)
        } else {
            (op.base.source, op.base.target)
        };
        let side = |i: usize| op.children[i ^ rev as usize].is_some();
        ViewNode {
            s,
            t,
            x: op.apex,
            kind: if rev { op.kind.reversed() } else { op.kind },
            has: [side(0), side(1)],
        }
    }
}

/// Runs an outerplanar construction. `choose_view` picks the orientation in
/// which a node is combined; `combine` builds the frame from the two child
/// frames (seen in the same orientation, leaves filled in for absent
/// children).
pub(crate) fn run_odag(
    seq: &ConstructionSequence,
    class: LayoutClass,
    opts: &ConstructOptions,
    invs: &[Invariant],
    choose_view: impl Fn(&crate::recognition::outerplanar::StellationOp) -> bool,
    mut combine: impl FnMut(&mut Arena, ViewNode, Parts<6>, Parts<6>) -> Parts<6>,
) -> Result<AnnotatedOrder, ConstructError> {
    let g = graph_of(seq.n, seq.replay_edges())?;
    let mut arena = Arena::new();
    let leaf_frame = |arena: &mut Arena, a: usize, b: usize| -> Parts<6> {
        let e = arena.empty();
        let (la, lb) = (arena.leaf(a), arena.leaf(b));
        [e, la, e, e, lb, e]
    };
    let root_parts = match seq.root {
        None => leaf_frame(&mut arena, seq.base_edge.source, seq.base_edge.target),
        Some(root) => {
            let nodes = &seq.nodes;
            let mut results: Vec<Option<(Parts<6>, bool)>> = vec![None; nodes.len()];
            for idx in post_order(root, |i| nodes[i].children.iter().flatten().copied().collect()) {
                let op = &nodes[idx];
                let rev = choose_view(op);
                let view = ViewNode::of(op, rev);
                let mut child = |side: usize, arena: &mut Arena| -> Parts<6> {
                    let end = if side == 0 { view.s } else { view.t };
                    match op.children[side ^ rev as usize] {
                        Some(c) => {
                            let (parts, crev) = results[c].take().expect("child frame computed");
                            if crev == rev {
                                parts
                            } else {
                                flip(parts)
                            }
                        }
                        None => {
                            let (a, b) = if g.has_edge(end, view.x) != rev {
                                (end, view.x)
                            } else {
                                (view.x, end)
                            };
                            leaf_frame(arena, a, b)
                        }
                    }
                };
                let gp = child(0, &mut arena);
                let rp = child(1, &mut arena);
                let parts = combine(&mut arena, view, gp, rp);
                if opts.check_frames {
                    check_frame(&g, &arena, &parts, &ODAG_LABELS, rev, invs, idx + 1)?;
                }
                results[idx] = Some((parts, rev));
            }
            let (parts, rev) = results[root].take().expect("root frame computed");
            if rev {
                flip(parts)
            } else {
                parts
            }
        }
    };
    finish(&g, &arena, &root_parts, &ODAG_LABELS, invs, class)
}

/// Rejects stellation kinds outside `allowed`.
pub(crate) fn require_kinds(
    seq: &ConstructionSequence,
    class: LayoutClass,
    allowed: &[StellationKind],
) -> Result<(), ConstructError> {
    match seq.nodes.iter().position(|op| !allowed.contains(&op.kind)) {
        Some(node) => Err(ConstructError::WrongKind {
            class,
            kind: seq.nodes[node].kind,
            node,
        }),
        None => Ok(()),
    }
}
