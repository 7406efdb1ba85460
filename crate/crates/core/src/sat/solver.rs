//! A small CDCL solver: two watched literals, first-UIP learning, VSIDS-style
//! activities with phase saving, and Luby restarts.

/// Outcome of a solver run. Models are indexed by DIMACS variable (index 0
/// is unused).
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatOutcome {
    Sat(Vec<bool>),
    Unsat,
    Unknown,
}

type Lit = u32;

fn lit_of(l: i32) -> Lit {
    ((l.unsigned_abs() - 1) << 1) | (l < 0) as u32
}

fn var(l: Lit) -> usize {
    (l >> 1) as usize
}

struct Solver {
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    assign: Vec<i8>,
    level: Vec<usize>,
    reason: Vec<Option<usize>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    activity: Vec<f64>,
    var_inc: f64,
    phase: Vec<bool>,
    seen: Vec<bool>,
}

impl Solver {
    fn new(num_vars: usize) -> Self {
        Solver {
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assign: vec![0; num_vars],
            level: vec![0; num_vars],
            reason: vec![None; num_vars],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            activity: vec![0.0; num_vars],
            var_inc: 1.0,
            phase: vec![false; num_vars],
            seen: vec![false; num_vars],
        }
    }

    fn value(&self, l: Lit) -> i8 {
        let a = self.assign[var(l)];
        if l & 1 == 1 {
            -a
        } else {
            a
        }
    }

    fn decision_level(&self) -> usize {
        self.trail_lim.len()
    }

    fn enqueue(&mut self, l: Lit, reason: Option<usize>) {
        let v = var(l);
        self.assign[v] = if l & 1 == 1 { -1 } else { 1 };
        self.level[v] = self.decision_level();
        self.reason[v] = reason;
        self.trail.push(l);
    }

    fn attach(&mut self, clause: Vec<Lit>) -> usize {
        let id = self.clauses.len();
        self.watches[clause[0] as usize].push(id);
        self.watches[clause[1] as usize].push(id);
        self.clauses.push(clause);
        id
    }

    fn propagate(&mut self) -> Option<usize> {
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            let false_lit = p ^ 1;
            let mut ws = std::mem::take(&mut self.watches[false_lit as usize]);
            let (mut i, mut j) = (0, 0);
            let mut conflict = None;
            while i < ws.len() {
                let cid = ws[i];
                i += 1;
                let c = &mut self.clauses[cid];
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                let a = self.assign[var(first)];
                let first_val = if first & 1 == 1 { -a } else { a };
                if first_val == 1 {
                    ws[j] = cid;
                    j += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    let a = self.assign[var(c[k])];
                    let v = if c[k] & 1 == 1 { -a } else { a };
                    if v != -1 {
                        c.swap(1, k);
                        self.watches[c[1] as usize].push(cid);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                ws[j] = cid;
                j += 1;
                if first_val == -1 {
                    conflict = Some(cid);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        i += 1;
                        j += 1;
                    }
                } else {
                    self.enqueue(first, Some(cid));
                }
            }
            ws.truncate(j);
            self.watches[false_lit as usize] = ws;
            if conflict.is_some() {
                return conflict;
            }
        }
        None
    }

    fn bump(&mut self, v: usize) {
        self.activity[v] += self.var_inc;
        if self.activity[v] > 1e100 {
            for a in self.activity.iter_mut() {
                *a *= 1e-100;
            }
            self.var_inc *= 1e-100;
        }
    }

    fn analyze(&mut self, mut cid: usize) -> (Vec<Lit>, usize) {
        let mut learnt: Vec<Lit> = vec![0];
        let mut path = 0usize;
        let mut index = self.trail.len();
        let mut p: Option<Lit> = None;
        let current = self.decision_level();
        loop {
            let start = usize::from(p.is_some());
            for k in start..self.clauses[cid].len() {
                let q = self.clauses[cid][k];
                let v = var(q);
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump(v);
                    if self.level[v] == current {
                        path += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[var(self.trail[index])] {
                    break;
                }
            }
            let lit = self.trail[index];
            p = Some(lit);
            self.seen[var(lit)] = false;
            path -= 1;
            if path == 0 {
                break;
            }
            cid = self.reason[var(lit)].expect("implied literal has a reason");
        }
        learnt[0] = p.expect("conflict at positive level") ^ 1;
        for &l in &learnt[1..] {
            self.seen[var(l)] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let mut best = 1;
            for k in 2..learnt.len() {
                if self.level[var(learnt[k])] > self.level[var(learnt[best])] {
                    best = k;
                }
            }
            learnt.swap(1, best);
            back = self.level[var(learnt[1])];
        }
        self.var_inc /= 0.95;
        (learnt, back)
    }

    fn cancel_until(&mut self, lvl: usize) {
        if self.decision_level() <= lvl {
            return;
        }
        let stop = self.trail_lim[lvl];
        for &l in &self.trail[stop..] {
            let v = var(l);
            self.phase[v] = l & 1 == 0;
            self.assign[v] = 0;
            self.reason[v] = None;
        }
        self.trail.truncate(stop);
        self.trail_lim.truncate(lvl);
        self.qhead = stop;
    }

    fn pick(&self) -> Option<Lit> {
        let mut best: Option<usize> = None;
        for v in 0..self.assign.len() {
            if self.assign[v] == 0 && best.is_none_or(|b| self.activity[v] > self.activity[b]) {
                best = Some(v);
            }
        }
        best.map(|v| ((v as u32) << 1) | (!self.phase[v]) as u32)
    }
}

fn luby(mut x: u64) -> u64 {
    let (mut size, mut seq) = (1u64, 0u32);
    while size < x + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != x {
        size = (size - 1) >> 1;
        seq -= 1;
        x %= size;
    }
    1 << seq
}

/// Solves a CNF over variables `1..=num_vars`. `budget` caps the number of
/// conflicts; exceeding it yields [`SatOutcome::Unknown`].
pub fn solve_cnf(num_vars: usize, clauses: &[Vec<i32>], budget: Option<u64>) -> SatOutcome {
    let mut s = Solver::new(num_vars);
    let mut units = Vec::new();
    for c in clauses {
        let mut lits: Vec<Lit> = c.iter().map(|&l| lit_of(l)).collect();
        lits.sort_unstable();
        lits.dedup();
        if lits.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            continue;
        }
        match lits.len() {
            0 => return SatOutcome::Unsat,
            1 => units.push(lits[0]),
            _ => {
                s.attach(lits);
            }
        }
    }
    for l in units {
        match s.value(l) {
            -1 => return SatOutcome::Unsat,
            0 => s.enqueue(l, None),
            _ => {}
        }
    }
    let mut conflicts = 0u64;
    let mut restart = 0u64;
    let mut until_restart = 100 * luby(0);
    loop {
        if let Some(cid) = s.propagate() {
            conflicts += 1;
            if s.decision_level() == 0 {
                return SatOutcome::Unsat;
            }
            if budget.is_some_and(|b| conflicts > b) {
                return SatOutcome::Unknown;
            }
            let (learnt, back) = s.analyze(cid);
            s.cancel_until(back);
            if learnt.len() == 1 {
                s.enqueue(learnt[0], None);
            } else {
                let first = learnt[0];
                let id = s.attach(learnt);
                s.enqueue(first, Some(id));
            }
            until_restart = until_restart.saturating_sub(1);
            if until_restart == 0 {
                restart += 1;
                until_restart = 100 * luby(restart);
                s.cancel_until(0);
            }
        } else {
            match s.pick() {
                None => {
                    let mut model = vec![false; num_vars + 1];
                    for v in 0..num_vars {
                        model[v + 1] = s.assign[v] == 1;
                    }
                    return SatOutcome::Sat(model);
                }
                Some(l) => {
                    s.trail_lim.push(s.trail.len());
                    s.enqueue(l, None);
                }
            }
        }
    }
}

/// Whether `model` satisfies every clause.
pub fn satisfies(model: &[bool], clauses: &[Vec<i32>]) -> bool {
    clauses.iter().all(|c| {
        c.iter()
            .any(|&l| model.get(l.unsigned_abs() as usize).is_some_and(|&b| b == (l > 0)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn brute(num_vars: usize, clauses: &[Vec<i32>]) -> bool {
        (0u32..1 << num_vars).any(|mask| {
            let model: Vec<bool> = (0..=num_vars).map(|v| v > 0 && mask >> (v - 1) & 1 == 1).collect();
            satisfies(&model, clauses)
        })
    }

    #[test]
    fn luby_prefix() {
        let seq: Vec<u64> = (0..15).map(luby).collect();
        assert_eq!(seq, vec![1, 1, 2, 1, 1, 2, 4, 1, 1, 2, 1, 1, 2, 4, 8]);
    }

    #[test]
    fn trivial_cases() {
        assert!(matches!(solve_cnf(1, &[vec![1]], None), SatOutcome::Sat(m) if m[1]));
        assert_eq!(solve_cnf(1, &[vec![1], vec![-1]], None), SatOutcome::Unsat);
        assert_eq!(solve_cnf(0, &[vec![]], None), SatOutcome::Unsat);
        assert!(matches!(solve_cnf(2, &[], None), SatOutcome::Sat(_)));
    }

    #[test]
    fn pigeonhole_3_into_2_is_unsat() {
        // p(i, j): pigeon i in hole j, var 2i + j + 1.
        let p = |i: i32, j: i32| 2 * i + j + 1;
        let mut cl = Vec::new();
        for i in 0..3 {
            cl.push(vec![p(i, 0), p(i, 1)]);
        }
        for j in 0..2 {
            for a in 0..3 {
                for b in a + 1..3 {
                    cl.push(vec![-p(a, j), -p(b, j)]);
                }
            }
        }
        assert_eq!(solve_cnf(6, &cl, None), SatOutcome::Unsat);
    }

    #[test]
    fn random_3sat_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..400 {
            let nv = rng.random_range(1..=10);
            let nc = rng.random_range(1..=45);
            let clauses: Vec<Vec<i32>> = (0..nc)
                .map(|_| {
                    (0..3)
                        .map(|_| {
                            let v = rng.random_range(1..=nv) as i32;
                            if rng.random_bool(0.5) {
                                v
                            } else {
                                -v
                            }
                        })
                        .collect()
                })
                .collect();
            match solve_cnf(nv, &clauses, None) {
                SatOutcome::Sat(m) => assert!(satisfies(&m, &clauses)),
                SatOutcome::Unsat => assert!(!brute(nv, &clauses)),
                SatOutcome::Unknown => unreachable!(),
            }
        }
    }

    #[test]
    fn budget_gives_unknown() {
        // Pigeonhole 7 into 6 needs many conflicts.
        let (n, h) = (7, 6);
        let p = |i: i32, j: i32| h * i + j + 1;
        let mut cl = Vec::new();
        for i in 0..n {
            cl.push((0..h).map(|j| p(i, j)).collect());
        }
        for j in 0..h {
            for a in 0..n {
                for b in a + 1..n {
                    cl.push(vec![-p(a, j), -p(b, j)]);
                }
            }
        }
        assert_eq!(solve_cnf((n * h) as usize, &cl, Some(5)), SatOutcome::Unknown);
    }
}
