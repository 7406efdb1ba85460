//! Ground-truth stack number by enumerating every linear extension.

use std::ops::ControlFlow;

use crate::extensions::for_each_linear_extension;
use crate::graph::Dag;

/// Minimum over all linear extensions of the chromatic number of the
/// crossing graph. Exponential; meant for `n <= 8`.
pub fn brute_force_stack_number(g: &Dag) -> usize {
    let m = g.m();
    if m == 0 {
        return 0;
    }
    let mut best = m;
    let mut pos = vec![0; g.n()];
    for_each_linear_extension(g, |seq| {
        for (i, &v) in seq.iter().enumerate() {
            pos[v] = i;
        }
        let sp: Vec<(usize, usize)> = g
            .edges()
            .iter()
            .map(|e| (pos[e.source], pos[e.target]))
            .collect();
        let mut conflicts = vec![Vec::new(); m];
        for i in 0..m {
            for j in 0..i {
                let ((a, b), (c, d)) = (sp[i], sp[j]);
                if (a < c && c < b && b < d) || (c < a && a < d && d < b) {
                    conflicts[i].push(j);
                }
            }
        }
        while best > 1 && colourable(&conflicts, best - 1) {
            best -= 1;
        }
        if best == 1 {
            ControlFlow::Break(())
        } else {
            ControlFlow::Continue(())
        }
    });
    best
}

/// Backtracking in edge order; each edge only conflicts with earlier ones.
fn colourable(conflicts: &[Vec<usize>], k: usize) -> bool {
    fn go(conflicts: &[Vec<usize>], k: usize, i: usize, colour: &mut Vec<usize>) -> bool {
        if i == conflicts.len() {
            return true;
        }
        let fresh = colour.iter().copied().max().map_or(0, |c| c + 1);
        for c in 0..k.min(fresh + 1) {
            if conflicts[i].iter().all(|&j| colour[j] != c) {
                colour.push(c);
                if go(conflicts, k, i + 1, colour) {
                    return true;
                }
                colour.pop();
            }
        }
        false
    }
    go(conflicts, k, 0, &mut Vec::with_capacity(conflicts.len()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert_eq!(brute_force_stack_number(&Dag::from_pairs(2, &[(0, 1)]).unwrap()), 1);
        assert_eq!(brute_force_stack_number(&Dag::from_pairs(3, &[]).unwrap()), 0);
        // Forced order 0 1 2 3 with (0,2), (1,3) crossing.
        let g = Dag::from_pairs(4, &[(0, 1), (1, 2), (2, 3), (0, 2), (1, 3)]).unwrap();
        assert_eq!(brute_force_stack_number(&g), 2);
    }
}
