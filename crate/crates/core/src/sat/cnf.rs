//! CNF encoding of "the DAG admits a k-stack layout".
//!
//! Variable `order(u, v)` for `u < v` means `u` precedes `v`; `page(e, i)`
//! puts edge `e` on page `i`. Order variables come first, numbered
//! row-major over pairs, then page variables edge by edge.

use thiserror::Error;

use crate::graph::Dag;
use crate::order::LinearOrder;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum VarKind {
    Order(usize, usize),
    Page(usize, usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EncodeError {
    #[error("page count must be at least 1")]
    NoPages,
    #[error("fixed order has {0} vertices, graph has {1}")]
    OrderSize(usize, usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EncodeOptions {
    /// Edge `j` may only use pages `0..=j`.
    pub symmetry_breaking: bool,
}

impl Default for EncodeOptions {
    fn default() -> Self {
        EncodeOptions {
            symmetry_breaking: true,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CnfFormula {
    pub num_vars: usize,
    pub clauses: Vec<Vec<i32>>,
    pub graph: Dag,
    pub k: usize,
}

impl CnfFormula {
    fn pair_count(&self) -> usize {
        let n = self.graph.n();
        n * n.saturating_sub(1) / 2
    }

    /// Variable of `order(u, v)` for `u < v`.
    pub fn order_var(&self, u: usize, v: usize) -> i32 {
        debug_assert!(u < v);
        let n = self.graph.n();
        (u * n - u * (u + 1) / 2 + (v - u - 1) + 1) as i32
    }

    /// Literal asserting that `u` precedes `v`.
    pub fn before(&self, u: usize, v: usize) -> i32 {
        if u < v {
            self.order_var(u, v)
        } else {
            -self.order_var(v, u)
        }
    }

    pub fn page_var(&self, e: usize, i: usize) -> i32 {
        (self.pair_count() + e * self.k + i + 1) as i32
    }

    /// Inverse of the variable numbering.
    pub fn var_kind(&self, var: usize) -> Option<VarKind> {
        if var == 0 || var > self.num_vars {
            return None;
        }
        let idx = var - 1;
        if idx >= self.pair_count() {
            let p = idx - self.pair_count();
            return Some(VarKind::Page(p / self.k, p % self.k));
        }
        let n = self.graph.n();
        let mut rest = idx;
        for u in 0..n {
            let row = n - u - 1;
            if rest < row {
                return Some(VarKind::Order(u, u + 1 + rest));
            }
            rest -= row;
        }
        None
    }
}

/// Encodes a `k`-page layout of `g` whose order is a linear extension.
pub fn encode(g: &Dag, k: usize) -> Result<CnfFormula, EncodeError> {
    encode_with(g, k, &EncodeOptions::default(), None)
}

/// As [`encode`]; with `fixed` every order variable is pinned by a unit
/// clause.
pub fn encode_with(
    g: &Dag,
    k: usize,
    opts: &EncodeOptions,
    fixed: Option<&LinearOrder>,
) -> Result<CnfFormula, EncodeError> {
    if k == 0 {
        return Err(EncodeError::NoPages);
    }
    let n = g.n();
    if let Some(o) = fixed {
        if o.len() != n {
            return Err(EncodeError::OrderSize(o.len(), n));
        }
    }
    let mut f = CnfFormula {
        num_vars: n * n.saturating_sub(1) / 2 + g.m() * k,
        clauses: Vec::new(),
        graph: g.clone(),
        k,
    };
    let mut clauses = Vec::new();
    // No cyclic triple in either direction.
    for u in 0..n {
        for v in u + 1..n {
            for w in v + 1..n {
                let (a, b, c) = (f.order_var(u, v), f.order_var(v, w), f.order_var(u, w));
                clauses.push(vec![-a, -b, c]);
                clauses.push(vec![a, b, -c]);
            }
        }
    }
    for e in g.edges() {
        clauses.push(vec![f.before(e.source, e.target)]);
    }
    if let Some(o) = fixed {
        for u in 0..n {
            for v in u + 1..n {
                let lit = f.order_var(u, v);
                clauses.push(vec![if o.before(u, v) { lit } else { -lit }]);
            }
        }
    }
    for j in 0..g.m() {
        clauses.push((0..k).map(|i| f.page_var(j, i)).collect());
        if opts.symmetry_breaking {
            for i in j + 1..k {
                clauses.push(vec![-f.page_var(j, i)]);
            }
        }
    }
    let edges = g.edges();
    for (x, e) in edges.iter().enumerate() {
        for (y, h) in edges.iter().enumerate().skip(x + 1) {
            if e.shares_endpoint(h) {
                continue;
            }
            let (a, b, c, d) = (e.source, e.target, h.source, h.target);
            for i in 0..k {
                let (pe, ph) = (-f.page_var(x, i), -f.page_var(y, i));
                clauses.push(vec![-f.before(a, c), -f.before(c, b), -f.before(b, d), pe, ph]);
                clauses.push(vec![-f.before(c, a), -f.before(a, d), -f.before(d, b), pe, ph]);
            }
        }
    }
    f.clauses = clauses;
    Ok(f)
}
