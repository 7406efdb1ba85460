//! Stack layouts: a linear extension plus an edge-to-page assignment.

use std::fmt::Write as _;
use std::io::BufRead;

use thiserror::Error;

use crate::graph::{content_lines, parse_usize, syntax, Dag, Edge, ParseError};
use crate::order::{
    check_size, positions_cross, LinearOrder, OrderError, PartitionError, PartitionedOrder,
};

/// Pages are indexed by edge id of the owning graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StackLayout {
    pub order: LinearOrder,
    pub page_of: Vec<usize>,
    pub k: usize,
}

impl StackLayout {
    /// Page count is taken as one past the largest page used.
    pub fn new(order: LinearOrder, page_of: Vec<usize>) -> Self {
        let k = page_of.iter().map(|&p| p + 1).max().unwrap_or(0);
        StackLayout { order, page_of, k }
    }

    pub fn pages_used(&self) -> usize {
        let mut used: Vec<usize> = self.page_of.clone();
        used.sort_unstable();
        used.dedup();
        used.len()
    }

    /// The layout of the reversed graph: order reversed, pages kept.
    pub fn reversed(&self) -> StackLayout {
        StackLayout {
            order: self.order.reversed(),
            page_of: self.page_of.clone(),
            k: self.k,
        }
    }

    /// Re-indexes pages from the edge ids of `from` to those of `to`, which
    /// must have the same edge set. `None` if an edge of `to` is missing.
    pub fn remap_edges(&self, from: &Dag, to: &Dag) -> Option<StackLayout> {
        let page_of = to
            .edges()
            .iter()
            .map(|e| from.edge_id(e.source, e.target).map(|id| self.page_of[id]))
            .collect::<Option<Vec<usize>>>()?;
        Some(StackLayout {
            order: self.order.clone(),
            page_of,
            k: self.k,
        })
    }

    /// Serializes as `order: ...` followed by `<u> <v> <page>` lines in edge-id order.
    pub fn to_text(&self, g: &Dag) -> String {
        let mut s = format!("{}\n", self.order);
        for (e, p) in g.edges().iter().zip(&self.page_of) {
            let _ = writeln!(s, "{} {} {}", e.source, e.target, p);
        }
        s
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LayoutViolation {
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error("layout assigns {got} pages for {expected} edges")]
    MissingEdges { expected: usize, got: usize },
    #[error("edge {edge} uses page {page} but the layout has only {k}")]
    PageOutOfRange { edge: Edge, page: usize, k: usize },
    #[error("edges {0} and {1} cross on page {2}")]
    Crossing(Edge, Edge, usize),
}

/// Accepts iff the order is a linear extension and no page holds two crossing edges.
pub fn validate_layout(g: &Dag, layout: &StackLayout) -> Result<(), LayoutViolation> {
    check_size(g, &layout.order)?;
    crate::order::require_linear_extension(g, &layout.order)?;
    if layout.page_of.len() != g.m() {
        return Err(LayoutViolation::MissingEdges {
            expected: g.m(),
            got: layout.page_of.len(),
        });
    }
    let order = &layout.order;
    let mut by_page: Vec<Vec<usize>> = vec![Vec::new(); layout.k];
    for (id, &p) in layout.page_of.iter().enumerate() {
        if p >= layout.k {
            return Err(LayoutViolation::PageOutOfRange {
                edge: g.edge(id),
                page: p,
                k: layout.k,
            });
        }
        by_page[p].push(id);
    }
    // Sweep each page in source order; a stack of open targets detects the
    // first crossing in O(m log m).
    let mut first: Option<(usize, usize, usize)> = None;
    for (p, ids) in by_page.iter().enumerate() {
        if let Some((a, b)) = first_crossing_on_page(g, order, ids) {
            let cand = (a.min(b), a.max(b), p);
            if first.is_none_or(|f| (cand.0, cand.1) < (f.0, f.1)) {
                first = Some(cand);
            }
        }
    }
    match first {
        Some((a, b, p)) => Err(LayoutViolation::Crossing(g.edge(a), g.edge(b), p)),
        None => Ok(()),
    }
}

// Returns some crossing pair among `ids`, preferring the lexicographically
// smallest pair of edge ids. Quadratic only when a crossing exists.
fn first_crossing_on_page(g: &Dag, order: &LinearOrder, ids: &[usize]) -> Option<(usize, usize)> {
    let span = |id: usize| {
        let e = g.edge(id);
        (order.position(e.source), order.position(e.target))
    };
    let mut sorted: Vec<usize> = ids.to_vec();
    sorted.sort_by_key(|&id| {
        let (a, b) = span(id);
        (a, std::cmp::Reverse(b))
    });
    // Nesting check: intervals sorted by start (ties: longer first) are
    // non-crossing iff each interval nests inside the innermost open one or
    // starts at/after its end.
    let mut open: Vec<(usize, usize)> = Vec::new();
    let mut clean = true;
    for &id in &sorted {
        let (a, b) = span(id);
        while let Some(&(_, end)) = open.last() {
            if end <= a {
                open.pop();
            } else {
                break;
            }
        }
        if let Some(&(_, end)) = open.last() {
            if b > end {
                clean = false;
                break;
            }
        }
        open.push((a, b));
    }
    if clean {
        return None;
    }
    for (i, &x) in ids.iter().enumerate() {
        for &y in &ids[i + 1..] {
            let (ex, ey) = (g.edge(x), g.edge(y));
            if !ex.shares_endpoint(&ey) && positions_cross(span(x), span(y)) {
                return Some((x, y));
            }
        }
    }
    None
}

#[derive(Debug, Error)]
pub enum LayoutParseError {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error(transparent)]
    Order(#[from] OrderError),
    #[error(transparent)]
    Parts(#[from] PartitionError),
    #[error("edge ({0}, {1}) is not in the graph")]
    UnknownEdge(usize, usize),
    #[error("edge ({0}, {1}) has no page")]
    MissingEdge(usize, usize),
}

/// A parsed layout file: the order, pages when present, and parts when present.
#[derive(Debug, Clone)]
pub struct LayoutFile {
    pub order: LinearOrder,
    pub pages: Option<Vec<usize>>,
    pub parts: Option<PartitionedOrder>,
}

/// Reads the layout text format against `g`. Edge lines may come in any
/// order; a file with only an `order:` line yields `pages = None`.
pub fn parse_layout<R: BufRead>(reader: R, g: &Dag) -> Result<LayoutFile, LayoutParseError> {
    let lines = content_lines(reader)?;
    let mut order: Option<LinearOrder> = None;
    let mut parts_line: Option<String> = None;
    let mut pages: Vec<Option<usize>> = vec![None; g.m()];
    let mut any_page = false;
    for (ln, body) in &lines {
        if let Some(rest) = body.strip_prefix("order:") {
            let seq = rest
                .split_whitespace()
                .map(|t| parse_usize(t, *ln))
                .collect::<Result<Vec<_>, _>>()?;
            order = Some(LinearOrder::from_sequence(seq)?);
        } else if body.starts_with("parts:") {
            parts_line = Some(body.clone());
        } else {
            let toks: Vec<&str> = body.split_whitespace().collect();
            if toks.len() != 3 {
                return Err(syntax(*ln, "expected `<u> <v> <page>`").into());
            }
            let u = parse_usize(toks[0], *ln)?;
            let v = parse_usize(toks[1], *ln)?;
            let p = parse_usize(toks[2], *ln)?;
            let id = g.edge_id(u, v).ok_or(LayoutParseError::UnknownEdge(u, v))?;
            pages[id] = Some(p);
            any_page = true;
        }
    }
    let order = order.ok_or_else(|| syntax(0, "missing `order:` line"))?;
    check_size(g, &order)?;
    let pages = if any_page {
        let mut out = Vec::with_capacity(g.m());
        for (id, p) in pages.into_iter().enumerate() {
            let e = g.edge(id);
            out.push(p.ok_or(LayoutParseError::MissingEdge(e.source, e.target))?);
        }
        Some(out)
    } else {
        None
    };
    let parts = match parts_line {
        Some(l) => Some(PartitionedOrder::parse_parts_line(order.clone(), &l)?),
        None => None,
    };
    Ok(LayoutFile {
        order,
        pages,
        parts,
    })
}
