//! Completion of biconnected outerplanar DAGs to maximal ones.
//!
//! Each inner face is fan-triangulated from its unique local source. The
//! added edges are implied by paths along the face boundary, so acyclicity is
//! preserved. Faces with several local sources are rejected, as are results
//! that fall outside the requested class.

use std::collections::{BTreeSet, HashSet};

use thiserror::Error;

use crate::graph::{Dag, Edge};
use crate::recognition::classify::{find_base, OdagClass};
use crate::recognition::outerplanar::ConstructionSequence;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AugmentError {
    #[error("augmentation is only provided for single-source and outerpath targets")]
    UnsupportedClass,
    #[error("graph is not a biconnected outerplanar graph ({0})")]
    NotBiconnectedOuterplanar(String),
    #[error("face {0:?} has {1} local sources")]
    AmbiguousFace(Vec<usize>, usize),
    #[error("completed graph is not in the requested class")]
    LeavesClass,
}

/// Unique Hamiltonian outer cycle of a biconnected outerplanar graph.
pub fn outer_cycle(g: &Dag) -> Result<Vec<usize>, AugmentError> {
    let n = g.n();
    let fail = |m: &str| AugmentError::NotBiconnectedOuterplanar(m.to_string());
    if n < 3 {
        return Err(fail("fewer than three vertices"));
    }
    let mut adj: Vec<BTreeSet<usize>> = (0..n).map(|v| g.neighbors(v).collect()).collect();
    let mut alive = vec![true; n];
    let mut remaining = n;
    let mut trail: Vec<(usize, usize, usize)> = Vec::new();
    let mut deg2: BTreeSet<usize> = (0..n).filter(|&v| adj[v].len() == 2).collect();
    if (0..n).any(|v| adj[v].len() < 2) {
        return Err(fail("vertex of degree below two"));
    }
    while remaining > 3 {
        let v = loop {
            let &v = deg2.iter().next().ok_or_else(|| fail("no degree-2 vertex"))?;
            deg2.remove(&v);
            if alive[v] && adj[v].len() == 2 {
                break v;
            }
        };
        let mut it = adj[v].iter();
        let (a, b) = (*it.next().unwrap(), *it.next().unwrap());
        adj[a].remove(&v);
        adj[b].remove(&v);
        adj[v].clear();
        alive[v] = false;
        remaining -= 1;
        // Contract v into a virtual edge when a and b are not yet adjacent.
        adj[a].insert(b);
        adj[b].insert(a);
        trail.push((v, a, b));
        for w in [a, b] {
            match adj[w].len() {
                0 | 1 => return Err(fail("cut vertex")),
                2 => {
                    deg2.insert(w);
                }
                _ => {}
            }
        }
    }
    let mut cycle: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    for &(v, a, b) in trail.iter().rev() {
        let k = cycle.len();
        let i = cycle.iter().position(|&x| x == a).unwrap();
        if cycle[(i + 1) % k] == b {
            cycle.insert(i + 1, v);
        } else if cycle[(i + k - 1) % k] == b {
            cycle.insert(i, v);
        } else {
            return Err(fail("reduction order inconsistent"));
        }
    }
    // Every edge must be a cycle edge or a chord, and chords must not cross.
    let mut pos = vec![0; n];
    for (i, &v) in cycle.iter().enumerate() {
        pos[v] = i;
    }
    let chords: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (pos[e.source].min(pos[e.target]), pos[e.source].max(pos[e.target]));
            (a, b)
        })
        .filter(|&(a, b)| b - a != 1 && !(a == 0 && b == n - 1))
        .collect();
    for (i, &(a, b)) in chords.iter().enumerate() {
        for &(c, d) in &chords[i + 1..] {
            if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                return Err(fail("crossing chords"));
            }
        }
    }
    Ok(cycle)
}

/// Inner faces as vertex lists in cyclic order.
pub fn inner_faces(g: &Dag, cycle: &[usize]) -> Vec<Vec<usize>> {
    let mut faces = Vec::new();
    let mut stack = vec![cycle.to_vec()];
    while let Some(poly) = stack.pop() {
        let k = poly.len();
        let mut split = None;
        'outer: for i in 0..k {
            for j in i + 2..k {
                if i == 0 && j == k - 1 {
                    continue;
                }
                if g.adjacent(poly[i], poly[j]) {
                    split = Some((i, j));
                    break 'outer;
                }
            }
        }
        match split {
            Some((i, j)) => {
                stack.push(poly[i..=j].to_vec());
                let mut rest = poly[j..].to_vec();
                rest.extend_from_slice(&poly[..=i]);
                stack.push(rest);
            }
            None => faces.push(poly),
        }
    }
    faces.sort();
    faces
}

/// Completes `g` to a maximal outerplanar DAG in `class` and returns it with
/// a matching construction sequence. Original edge ids are preserved; added
/// edges follow them.
pub fn augment_outerplanar(
    g: &Dag,
    class: OdagClass,
) -> Result<(Dag, ConstructionSequence), AugmentError> {
    if !matches!(class, OdagClass::SingleSource | OdagClass::Outerpath) {
        return Err(AugmentError::UnsupportedClass);
    }
    if g.n() == 2 && g.m() == 1 {
        let seq = find_base(g, class).ok_or(AugmentError::LeavesClass)?;
        return Ok((g.clone(), seq));
    }
    let cycle = outer_cycle(g)?;
    let mut edges: Vec<Edge> = g.edges().to_vec();
    let mut present: HashSet<(usize, usize)> =
        edges.iter().map(|e| (e.source, e.target)).collect();
    for face in inner_faces(g, &cycle) {
        let k = face.len();
        if k == 3 {
            continue;
        }
        let sources: Vec<usize> = (0..k)
            .filter(|&i| {
                let (prev, next) = (face[(i + k - 1) % k], face[(i + 1) % k]);
                g.has_edge(face[i], prev) && g.has_edge(face[i], next)
            })
            .collect();
        if sources.len() != 1 {
            return Err(AugmentError::AmbiguousFace(face.clone(), sources.len()));
        }
        let i = sources[0];
        let w = face[i];
        for off in 2..k - 1 {
            let y = face[(i + off) % k];
            if present.insert((w, y)) {
                edges.push(Edge::new(w, y));
            }
        }
    }
    let full = Dag::new(g.n(), edges).map_err(|_| AugmentError::LeavesClass)?;
    let seq = find_base(&full, class).ok_or(AugmentError::LeavesClass)?;
    Ok((full, seq))
}
