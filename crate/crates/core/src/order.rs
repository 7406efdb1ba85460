//! Vertex orders, linear extensions and the crossing predicate.

use std::fmt;
use std::ops::Range;

use thiserror::Error;

use crate::graph::{Dag, Edge};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OrderError {
    #[error("sequence is not a permutation of 0..{0}")]
    NotPermutation(usize),
    #[error("order covers {order} vertices but the graph has {graph}")]
    SizeMismatch { order: usize, graph: usize },
    #[error("edge {0} points backwards in the order")]
    NotLinearExtension(Edge),
}

/// A total order of the vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LinearOrder {
    seq: Vec<usize>,
    pos: Vec<usize>,
}

impl LinearOrder {
    /// Builds the order that lists `seq[0]` first, `seq[1]` second, and so on.
    pub fn from_sequence(seq: Vec<usize>) -> Result<Self, OrderError> {
        let n = seq.len();
        let mut pos = vec![usize::MAX; n];
        for (i, &v) in seq.iter().enumerate() {
            if v >= n || pos[v] != usize::MAX {
                return Err(OrderError::NotPermutation(n));
            }
            pos[v] = i;
        }
        Ok(LinearOrder { seq, pos })
    }

    pub fn identity(n: usize) -> Self {
        LinearOrder {
            seq: (0..n).collect(),
            pos: (0..n).collect(),
        }
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    /// Rank of `v`.
    pub fn position(&self, v: usize) -> usize {
        self.pos[v]
    }

    pub fn positions(&self) -> &[usize] {
        &self.pos
    }

    /// Vertex at rank `p`.
    pub fn vertex_at(&self, p: usize) -> usize {
        self.seq[p]
    }

    pub fn sequence(&self) -> &[usize] {
        &self.seq
    }

    pub fn before(&self, u: usize, v: usize) -> bool {
        self.pos[u] < self.pos[v]
    }

    pub fn reversed(&self) -> Self {
        let mut seq = self.seq.clone();
        seq.reverse();
        LinearOrder::from_sequence(seq).expect("reversal of a permutation")
    }
}

/// True iff every edge of `g` goes forward in `order`.
pub fn is_linear_extension(g: &Dag, order: &LinearOrder) -> Result<bool, OrderError> {
    check_size(g, order)?;
    Ok(g.edges().iter().all(|e| order.before(e.source, e.target)))
}

pub(crate) fn check_size(g: &Dag, order: &LinearOrder) -> Result<(), OrderError> {
    if order.len() != g.n() {
        return Err(OrderError::SizeMismatch {
            order: order.len(),
            graph: g.n(),
        });
    }
    Ok(())
}

/// Like [`is_linear_extension`] but names the first backward edge.
pub fn require_linear_extension(g: &Dag, order: &LinearOrder) -> Result<(), OrderError> {
    check_size(g, order)?;
    match g.edges().iter().find(|e| !order.before(e.source, e.target)) {
        Some(&e) => Err(OrderError::NotLinearExtension(e)),
        None => Ok(()),
    }
}

/// Whether two independent edges interleave under `order`.
///
/// Both edges are assumed to point forward, so only the patterns
/// `s_e < s_f < t_e < t_f` and its mirror are possible.
pub fn edges_cross(order: &LinearOrder, e: Edge, f: Edge) -> bool {
    if e.shares_endpoint(&f) {
        return false;
    }
    positions_cross(
        (order.position(e.source), order.position(e.target)),
        (order.position(f.source), order.position(f.target)),
    )
}

/// Crossing test on position pairs `(source, target)` with `source < target`.
#[inline]
pub(crate) fn positions_cross((a, b): (usize, usize), (c, d): (usize, usize)) -> bool {
    (a < c && c < b && b < d) || (c < a && a < d && d < b)
}

/// Part labels used by the constructive orders.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PartLabel {
    H1,
    S,
    H2,
    H3,
    T,
    H4,
    M,
}

impl PartLabel {
    pub fn is_singleton(self) -> bool {
        matches!(self, PartLabel::S | PartLabel::T | PartLabel::M)
    }

    pub fn name(self) -> &'static str {
        match self {
            PartLabel::H1 => "H1",
            PartLabel::S => "s",
            PartLabel::H2 => "H2",
            PartLabel::H3 => "H3",
            PartLabel::T => "t",
            PartLabel::H4 => "H4",
            PartLabel::M => "m",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        Some(match s {
            "H1" => PartLabel::H1,
            "s" => PartLabel::S,
            "H2" => PartLabel::H2,
            "H3" => PartLabel::H3,
            "t" => PartLabel::T,
            "H4" => PartLabel::H4,
            "m" => PartLabel::M,
            _ => return None,
        })
    }
}

/// Label sequence `[H1, s, H2, H3, t, H4]` used by the outerplanar orders.
pub const ODAG_LABELS: [PartLabel; 6] = [
    PartLabel::H1,
    PartLabel::S,
    PartLabel::H2,
    PartLabel::H3,
    PartLabel::T,
    PartLabel::H4,
];

/// Label sequence `[s, H1, m, H2, t]` used by the 3-tree order.
pub const THREE_TREE_LABELS: [PartLabel; 5] = [
    PartLabel::S,
    PartLabel::H1,
    PartLabel::M,
    PartLabel::H2,
    PartLabel::T,
];

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PartitionError {
    #[error("parts do not tile 0..{0} contiguously")]
    NotATiling(usize),
    #[error("singleton part {0} has length {1}")]
    BadSingleton(&'static str, usize),
    #[error("unknown label sequence")]
    BadLabels,
    #[error("malformed parts line: {0}")]
    Malformed(String),
}

/// A linear order cut into labelled contiguous parts.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PartitionedOrder {
    order: LinearOrder,
    parts: Vec<(PartLabel, Range<usize>)>,
}

impl PartitionedOrder {
    pub fn new(
        order: LinearOrder,
        parts: Vec<(PartLabel, Range<usize>)>,
    ) -> Result<Self, PartitionError> {
        let labels: Vec<PartLabel> = parts.iter().map(|(l, _)| *l).collect();
        if labels != ODAG_LABELS && labels != THREE_TREE_LABELS {
            return Err(PartitionError::BadLabels);
        }
        let mut next = 0;
        for (label, r) in &parts {
            if r.start != next || r.end < r.start {
                return Err(PartitionError::NotATiling(order.len()));
            }
            if label.is_singleton() && r.len() != 1 {
                return Err(PartitionError::BadSingleton(label.name(), r.len()));
            }
            next = r.end;
        }
        if next != order.len() {
            return Err(PartitionError::NotATiling(order.len()));
        }
        Ok(PartitionedOrder { order, parts })
    }

    /// Builds the tiling from part lengths in label order.
    pub fn from_lengths(
        order: LinearOrder,
        labels: &[PartLabel],
        lengths: &[usize],
    ) -> Result<Self, PartitionError> {
        let mut start = 0;
        let parts = labels
            .iter()
            .zip(lengths)
            .map(|(&l, &len)| {
                let r = start..start + len;
                start += len;
                (l, r)
            })
            .collect();
        PartitionedOrder::new(order, parts)
    }

    pub fn order(&self) -> &LinearOrder {
        &self.order
    }

    pub fn into_order(self) -> LinearOrder {
        self.order
    }

    pub fn parts(&self) -> &[(PartLabel, Range<usize>)] {
        &self.parts
    }

    pub fn range(&self, label: PartLabel) -> Option<Range<usize>> {
        self.parts
            .iter()
            .find(|(l, _)| *l == label)
            .map(|(_, r)| r.clone())
    }

    /// Vertices of a part in order.
    pub fn part(&self, label: PartLabel) -> &[usize] {
        match self.range(label) {
            Some(r) => &self.order.sequence()[r],
            None => &[],
        }
    }

    /// Part label of the vertex at position `p`.
    pub fn label_at(&self, p: usize) -> PartLabel {
        self.parts
            .iter()
            .find(|(_, r)| r.contains(&p))
            .map(|(l, _)| *l)
            .expect("parts tile the order")
    }

    /// Part label per vertex.
    pub fn labels_by_vertex(&self) -> Vec<PartLabel> {
        let mut out = vec![PartLabel::H1; self.order.len()];
        for (label, r) in &self.parts {
            for p in r.clone() {
                out[self.order.vertex_at(p)] = *label;
            }
        }
        out
    }

    /// `parts: H1=0..a s=a ...` with half-open ranges.
    pub fn parts_line(&self) -> String {
        let mut s = String::from("parts:");
        for (label, r) in &self.parts {
            if label.is_singleton() {
                s.push_str(&format!(" {}={}", label.name(), r.start));
            } else {
                s.push_str(&format!(" {}={}..{}", label.name(), r.start, r.end));
            }
        }
        s
    }

    pub fn parse_parts_line(
        order: LinearOrder,
        line: &str,
    ) -> Result<PartitionedOrder, PartitionError> {
        let bad = || PartitionError::Malformed(line.to_string());
        let body = line.trim().strip_prefix("parts:").ok_or_else(bad)?;
        let mut parts = Vec::new();
        for tok in body.split_whitespace() {
            let (name, range) = tok.split_once('=').ok_or_else(bad)?;
            let label = PartLabel::parse(name).ok_or_else(bad)?;
            let r = match range.split_once("..") {
                Some((a, b)) => {
                    a.parse::<usize>().map_err(|_| bad())?..b.parse::<usize>().map_err(|_| bad())?
                }
                None => {
                    let a = range.parse::<usize>().map_err(|_| bad())?;
                    a..a + 1
                }
            };
            parts.push((label, r));
        }
        PartitionedOrder::new(order, parts)
    }
}

impl fmt::Display for LinearOrder {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("order:")?;
        for v in &self.seq {
            write!(f, " {v}")?;
        }
        Ok(())
    }
}
