//! Enumeration of linear extensions by backtracking over available sources.

use std::ops::ControlFlow;

use crate::graph::Dag;
use crate::order::LinearOrder;

/// Calls `visit` on every linear extension of `g` in lexicographic order of
/// the vertex sequence. The visitor may stop early with `ControlFlow::Break`.
pub fn for_each_linear_extension<F>(g: &Dag, mut visit: F)
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    let n = g.n();
    let mut indeg: Vec<usize> = (0..n).map(|v| g.in_neighbors(v).len()).collect();
    let mut placed = vec![false; n];
    let mut seq = Vec::with_capacity(n);
    let _ = walk(g, &mut indeg, &mut placed, &mut seq, &mut visit);
}

fn walk<F>(
    g: &Dag,
    indeg: &mut [usize],
    placed: &mut [bool],
    seq: &mut Vec<usize>,
    visit: &mut F,
) -> ControlFlow<()>
where
    F: FnMut(&[usize]) -> ControlFlow<()>,
{
    if seq.len() == g.n() {
        return visit(seq);
    }
    for v in 0..g.n() {
        if placed[v] || indeg[v] != 0 {
            continue;
        }
        placed[v] = true;
        seq.push(v);
        for &w in g.out_neighbors(v) {
            indeg[w] -= 1;
        }
        let flow = walk(g, indeg, placed, seq, visit);
        for &w in g.out_neighbors(v) {
            indeg[w] += 1;
        }
        seq.pop();
        placed[v] = false;
        flow?;
    }
    ControlFlow::Continue(())
}

/// Number of linear extensions, counting stops once `limit` is reached.
pub fn count_linear_extensions(g: &Dag, limit: usize) -> usize {
    let mut count = 0;
    for_each_linear_extension(g, |_| {
        count += 1;
        if count >= limit {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    count
}

/// All linear extensions as orders; intended for small graphs.
pub fn linear_extensions(g: &Dag) -> Vec<LinearOrder> {
    let mut out = Vec::new();
    for_each_linear_extension(g, |seq| {
        out.push(LinearOrder::from_sequence(seq.to_vec()).expect("permutation"));
        ControlFlow::Continue(())
    });
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::order::is_linear_extension;

    #[test]
    fn antichain_has_all_permutations() {
        let g = Dag::from_pairs(4, &[]).unwrap();
        assert_eq!(count_linear_extensions(&g, usize::MAX), 24);
    }

    #[test]
    fn chain_has_one() {
        let g = Dag::from_pairs(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(count_linear_extensions(&g, usize::MAX), 1);
    }

    #[test]
    fn extensions_agree_with_permutation_filter() {
        let g = Dag::from_pairs(5, &[(0, 2), (1, 2), (2, 4), (3, 4)]).unwrap();
        let listed = linear_extensions(&g);
        let mut filtered = 0;
        let mut perm: Vec<usize> = (0..5).collect();
        permute(&mut perm, 0, &mut |p| {
            let o = LinearOrder::from_sequence(p.to_vec()).unwrap();
            if is_linear_extension(&g, &o).unwrap() {
                filtered += 1;
            }
        });
        assert_eq!(listed.len(), filtered);
        assert!(listed.iter().all(|o| is_linear_extension(&g, o).unwrap()));
    }

    fn permute(p: &mut Vec<usize>, i: usize, f: &mut impl FnMut(&[usize])) {
        if i == p.len() {
            f(p);
            return;
        }
        for j in i..p.len() {
            p.swap(i, j);
            permute(p, i + 1, f);
            p.swap(i, j);
        }
    }

    #[test]
    fn limit_stops_early() {
        let g = Dag::from_pairs(6, &[]).unwrap();
        assert_eq!(count_linear_extensions(&g, 10), 10);
    }
}
