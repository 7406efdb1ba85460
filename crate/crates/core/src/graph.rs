//! Directed acyclic graphs over dense vertex ids and their text format.

use std::collections::HashMap;
use std::fmt;
use std::io::BufRead;

use thiserror::Error;

/// A directed edge `source -> target`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub source: usize,
    pub target: usize,
}

impl Edge {
    pub fn new(source: usize, target: usize) -> Self {
        Edge { source, target }
    }

    pub fn reversed(self) -> Self {
        Edge::new(self.target, self.source)
    }

    /// True when the two edges have an endpoint in common.
    pub fn shares_endpoint(&self, other: &Edge) -> bool {
        self.source == other.source
            || self.source == other.target
            || self.target == other.source
            || self.target == other.target
    }

    pub fn is_incident(&self, v: usize) -> bool {
        self.source == v || self.target == v
    }
}

impl fmt::Display for Edge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.source, self.target)
    }
}

impl From<(usize, usize)> for Edge {
    fn from((u, v): (usize, usize)) -> Self {
        Edge::new(u, v)
    }
}

/// Why a vertex/edge list does not describe a simple DAG.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DagViolation {
    #[error("edge {0} references a vertex outside 0..{1}")]
    VertexOutOfRange(Edge, usize),
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge between {0} and {1}")]
    DuplicateEdge(usize, usize),
    #[error("cycle {0:?}")]
    Cycle(Vec<usize>),
}

/// Checks that `edges` over vertices `0..n` form a simple acyclic digraph.
///
/// Antiparallel pairs `(u, v)`, `(v, u)` are reported as a 2-cycle, matching
/// what a reader would see first.
pub fn validate_dag(n: usize, edges: &[Edge]) -> Result<(), DagViolation> {
    let mut seen: HashMap<(usize, usize), Edge> = HashMap::with_capacity(edges.len());
    let mut out = vec![Vec::new(); n];
    for &e in edges {
        if e.source >= n || e.target >= n {
            return Err(DagViolation::VertexOutOfRange(e, n));
        }
        if e.source == e.target {
            return Err(DagViolation::SelfLoop(e.source));
        }
        let key = (e.source.min(e.target), e.source.max(e.target));
        if let Some(prev) = seen.get(&key) {
            if *prev == e {
                return Err(DagViolation::DuplicateEdge(e.source, e.target));
            }
            let (a, b) = (prev.source, prev.target);
            return Err(DagViolation::Cycle(vec![a.min(b), a.max(b)]));
        }
        seen.insert(key, e);
        out[e.source].push(e.target);
    }
    if let Some(cycle) = find_cycle(n, &out) {
        return Err(DagViolation::Cycle(cycle));
    }
    Ok(())
}

// Iterative DFS with colors; returns the vertices of one cycle, rotated so the
// smallest id comes first.
fn find_cycle(n: usize, out: &[Vec<usize>]) -> Option<Vec<usize>> {
    #[derive(Clone, Copy, PartialEq)]
    enum Color {
        White,
        Grey,
        Black,
    }
    let mut color = vec![Color::White; n];
    let mut parent = vec![usize::MAX; n];
    for root in 0..n {
        if color[root] != Color::White {
            continue;
        }
        let mut stack = vec![(root, 0usize)];
        color[root] = Color::Grey;
        while let Some(&mut (v, ref mut i)) = stack.last_mut() {
            if *i < out[v].len() {
                let w = out[v][*i];
                *i += 1;
                match color[w] {
                    Color::White => {
                        color[w] = Color::Grey;
                        parent[w] = v;
                        stack.push((w, 0));
                    }
                    Color::Grey => {
                        let mut cycle = vec![v];
                        let mut cur = v;
                        while cur != w {
                            cur = parent[cur];
                            cycle.push(cur);
                        }
                        cycle.reverse();
                        let min_at = cycle
                            .iter()
                            .enumerate()
                            .min_by_key(|(_, &x)| x)
                            .map(|(i, _)| i)
                            .unwrap_or(0);
                        cycle.rotate_left(min_at);
                        return Some(cycle);
                    }
                    Color::Black => {}
                }
            } else {
                color[v] = Color::Black;
                stack.pop();
            }
        }
    }
    None
}

/// A simple directed acyclic graph on vertices `0..n`.
///
/// The edge list keeps its input order; edge ids are indices into it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    n: usize,
    edges: Vec<Edge>,
    out: Vec<Vec<usize>>,
    inc: Vec<Vec<usize>>,
    index: HashMap<(usize, usize), usize>,
}

impl Dag {
    pub fn new(n: usize, edges: Vec<Edge>) -> Result<Self, DagViolation> {
        validate_dag(n, &edges)?;
        let mut out = vec![Vec::new(); n];
        let mut inc = vec![Vec::new(); n];
        let mut index = HashMap::with_capacity(edges.len());
        for (i, e) in edges.iter().enumerate() {
            out[e.source].push(e.target);
            inc[e.target].push(e.source);
            index.insert((e.source, e.target), i);
        }
        Ok(Dag {
            n,
            edges,
            out,
            inc,
            index,
        })
    }

    pub fn from_pairs(n: usize, pairs: &[(usize, usize)]) -> Result<Self, DagViolation> {
        Dag::new(n, pairs.iter().map(|&p| Edge::from(p)).collect())
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn edge(&self, id: usize) -> Edge {
        self.edges[id]
    }

    pub fn out_neighbors(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &[usize] {
        &self.inc[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.out[v].len() + self.inc[v].len()
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.index.contains_key(&(u, v))
    }

    /// Adjacent in either direction.
    pub fn adjacent(&self, u: usize, v: usize) -> bool {
        self.has_edge(u, v) || self.has_edge(v, u)
    }

    pub fn edge_id(&self, u: usize, v: usize) -> Option<usize> {
        self.index.get(&(u, v)).copied()
    }

    /// Undirected neighbors, out-neighbors first.
    pub fn neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.out[v].iter().chain(self.inc[v].iter()).copied()
    }

    pub fn sources(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.inc[v].is_empty()).collect()
    }

    pub fn sinks(&self) -> Vec<usize> {
        (0..self.n).filter(|&v| self.out[v].is_empty()).collect()
    }

    /// Every edge flipped; edge ids are preserved.
    pub fn reverse(&self) -> Dag {
        let edges = self.edges.iter().map(|e| e.reversed()).collect();
        Dag::new(self.n, edges).expect("reversal preserves simplicity and acyclicity")
    }

    /// Kahn's algorithm, smallest available vertex first.
    pub fn topological_order(&self) -> Vec<usize> {
        let mut indeg: Vec<usize> = (0..self.n).map(|v| self.inc[v].len()).collect();
        let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<usize>> = (0..self.n)
            .filter(|&v| indeg[v] == 0)
            .map(std::cmp::Reverse)
            .collect();
        let mut order = Vec::with_capacity(self.n);
        while let Some(std::cmp::Reverse(v)) = ready.pop() {
            order.push(v);
            for &w in &self.out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    ready.push(std::cmp::Reverse(w));
                }
            }
        }
        order
    }

    /// Subgraph induced by `vertices`, relabelled to `0..vertices.len()` in the
    /// given order. Returns the subgraph and, per new edge, the original edge id.
    pub fn induced(&self, vertices: &[usize]) -> (Dag, Vec<usize>) {
        let mut local = vec![usize::MAX; self.n];
        for (i, &v) in vertices.iter().enumerate() {
            local[v] = i;
        }
        let mut edges = Vec::new();
        let mut ids = Vec::new();
        for (id, e) in self.edges.iter().enumerate() {
            if local[e.source] != usize::MAX && local[e.target] != usize::MAX {
                edges.push(Edge::new(local[e.source], local[e.target]));
                ids.push(id);
            }
        }
        (
            Dag::new(vertices.len(), edges).expect("induced subgraph of a DAG"),
            ids,
        )
    }

    /// Serializes in the `dag <n> <m>` text format.
    pub fn to_text(&self) -> String {
        let mut s = format!("dag {} {}\n", self.n, self.m());
        for e in &self.edges {
            s.push_str(&format!("{} {}\n", e.source, e.target));
        }
        s
    }

    pub fn from_text(text: &str) -> Result<Dag, ParseError> {
        parse_graph(text.as_bytes())
    }
}

impl fmt::Display for Dag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

#[derive(Debug, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid graph: {0}")]
    Invalid(#[from] DagViolation),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub(crate) fn syntax(line: usize, msg: impl Into<String>) -> ParseError {
    ParseError::Syntax {
        line,
        msg: msg.into(),
    }
}

/// Content lines with `#` comments stripped, paired with 1-based line numbers.
pub(crate) fn content_lines<R: BufRead>(reader: R) -> Result<Vec<(usize, String)>, ParseError> {
    let mut lines = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let body = match line.find('#') {
            Some(p) => &line[..p],
            None => &line[..],
        };
        let body = body.trim();
        if !body.is_empty() {
            lines.push((i + 1, body.to_string()));
        }
    }
    Ok(lines)
}

pub(crate) fn parse_usize(tok: &str, line: usize) -> Result<usize, ParseError> {
    tok.parse()
        .map_err(|_| syntax(line, format!("expected a non-negative integer, got `{tok}`")))
}

/// Reads the graph text format: a `dag <n> <m>` header then `m` edge lines.
pub fn parse_graph<R: BufRead>(reader: R) -> Result<Dag, ParseError> {
    let lines = content_lines(reader)?;
    let mut it = lines.iter();
    let (hline, header) = it.next().ok_or_else(|| syntax(0, "empty input"))?;
    let toks: Vec<&str> = header.split_whitespace().collect();
    if toks.len() != 3 || toks[0] != "dag" {
        return Err(syntax(*hline, "expected header `dag <n> <m>`"));
    }
    let n = parse_usize(toks[1], *hline)?;
    let m = parse_usize(toks[2], *hline)?;
    let mut edges = Vec::with_capacity(m);
    for (ln, body) in it {
        let toks: Vec<&str> = body.split_whitespace().collect();
        if toks.len() != 2 {
            return Err(syntax(*ln, "expected `<u> <v>`"));
        }
        edges.push(Edge::new(parse_usize(toks[0], *ln)?, parse_usize(toks[1], *ln)?));
    }
    if edges.len() != m {
        return Err(syntax(
            *hline,
            format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Ok(Dag::new(n, edges)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn single_edge_is_valid() {
        assert!(validate_dag(2, &[Edge::new(0, 1)]).is_ok());
    }

    #[test]
    fn two_cycle_is_reported() {
        let err = validate_dag(2, &[Edge::new(0, 1), Edge::new(1, 0)]).unwrap_err();
        assert_eq!(err, DagViolation::Cycle(vec![0, 1]));
    }

    #[test]
    fn transitive_triangle_is_valid() {
        assert!(Dag::from_pairs(3, &[(0, 1), (1, 2), (0, 2)]).is_ok());
    }

    #[test]
    fn longer_cycle_names_its_vertices() {
        let err = validate_dag(4, &[(1, 2).into(), (2, 3).into(), (3, 1).into(), (0, 1).into()])
            .unwrap_err();
        assert_eq!(err, DagViolation::Cycle(vec![1, 2, 3]));
    }

    #[test]
    fn duplicates_and_loops() {
        assert_eq!(
            validate_dag(2, &[Edge::new(0, 1), Edge::new(0, 1)]).unwrap_err(),
            DagViolation::DuplicateEdge(0, 1)
        );
        assert_eq!(
            validate_dag(2, &[Edge::new(1, 1)]).unwrap_err(),
            DagViolation::SelfLoop(1)
        );
        assert!(matches!(
            validate_dag(2, &[Edge::new(0, 2)]).unwrap_err(),
            DagViolation::VertexOutOfRange(..)
        ));
    }

    #[test]
    fn reverse_is_an_involution() {
        let g = Dag::from_pairs(4, &[(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap();
        assert_eq!(g.reverse().reverse(), g);
        assert_eq!(g.reverse().sources(), g.sinks());
    }

    #[test]
    fn text_format_with_comments() {
        let text = "# a triangle\ndag 3 3\n0 1\n1 2 # long\n\n0 2\n";
        let g = Dag::from_text(text).unwrap();
        assert_eq!(g.m(), 3);
        assert_eq!(Dag::from_text(&g.to_text()).unwrap(), g);
    }

    #[test]
    fn text_format_errors() {
        assert!(matches!(
            Dag::from_text("dag 3 2\n0 1\n"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            Dag::from_text("graph 3 0\n"),
            Err(ParseError::Syntax { .. })
        ));
        assert!(matches!(
            Dag::from_text("dag 2 2\n0 1\n1 0\n"),
            Err(ParseError::Invalid(DagViolation::Cycle(_)))
        ));
    }

    #[test]
    fn topological_order_prefers_small_ids() {
        let g = Dag::from_pairs(4, &[(3, 1), (2, 1), (0, 3)]).unwrap();
        assert_eq!(g.topological_order(), vec![0, 2, 3, 1]);
    }
}
