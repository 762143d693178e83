//! Conflict-driven clause learning with a static decision order.
//!
//! Variables are decided in index order and always set to false first.
//! Learned clauses are consequences of the input, so the first model found
//! is the lexicographically smallest one (variable 0 most significant,
//! false before true).

use super::circuit::Cnf;

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SatResult {
    Sat(Vec<bool>),
    Unsat,
    /// The conflict budget ran out.
    Unknown,
}

const UNASSIGNED: i8 = 0;
const NO_REASON: usize = usize::MAX;

pub struct Solver {
    num_vars: usize,
    clauses: Vec<Vec<u32>>,
    watches: Vec<Vec<usize>>,
    assigns: Vec<i8>,
    level: Vec<u32>,
    reason: Vec<usize>,
    trail: Vec<u32>,
    trail_lim: Vec<usize>,
    qhead: usize,
    decide_from: usize,
    seen: Vec<bool>,
    conflicts: u64,
    unsat: bool,
}

/// Value of a literal: 1 true, -1 false, 0 unassigned.
fn value(assigns: &[i8], lit: u32) -> i8 {
    let v = assigns[(lit >> 1) as usize];
    if lit & 1 == 1 {
        -v
    } else {
        v
    }
}

impl Solver {
    pub fn new(cnf: &Cnf) -> Self {
        let n = cnf.num_vars;
        let mut s = Solver {
            num_vars: n,
            clauses: Vec::new(),
            watches: vec![Vec::new(); 2 * n],
            assigns: vec![UNASSIGNED; n],
            level: vec![0; n],
            reason: vec![NO_REASON; n],
            trail: Vec::new(),
            trail_lim: Vec::new(),
            qhead: 0,
            decide_from: 0,
            seen: vec![false; n],
            conflicts: 0,
            unsat: false,
        };
        for c in &cnf.clauses {
            s.add_clause(c);
            if s.unsat {
                break;
            }
        }
        s
    }

    pub fn conflicts(&self) -> u64 {
        self.conflicts
    }

    fn add_clause(&mut self, lits: &[u32]) {
        let mut c: Vec<u32> = lits.to_vec();
        c.sort_unstable();
        c.dedup();
        if c.windows(2).any(|w| w[0] ^ 1 == w[1]) {
            return;
        }
        // Root-level simplification.
        if c.iter().any(|&l| value(&self.assigns, l) == 1) {
            return;
        }
        c.retain(|&l| value(&self.assigns, l) != -1);
        match c.len() {
            0 => self.unsat = true,
            1 => {
                self.enqueue(c[0], NO_REASON);
                if self.propagate().is_some() {
                    self.unsat = true;
                }
            }
            _ => {
                let id = self.clauses.len();
                self.watches[c[0] as usize].push(id);
                self.watches[c[1] as usize].push(id);
                self.clauses.push(c);
            }
        }
    }

    fn enqueue(&mut self, lit: u32, reason: usize) {
        let v = (lit >> 1) as usize;
        self.assigns[v] = if lit & 1 == 1 { -1 } else { 1 };
        self.level[v] = self.trail_lim.len() as u32;
        self.reason[v] = reason;
        self.trail.push(lit);
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
                let ci = ws[i];
                i += 1;
                let c = &mut self.clauses[ci];
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                if value(&self.assigns, first) == 1 {
                    ws[j] = ci;
                    j += 1;
                    continue;
                }
                if let Some(k) = (2..c.len()).find(|&k| value(&self.assigns, c[k]) != -1) {
                    c.swap(1, k);
                    self.watches[c[1] as usize].push(ci);
                    continue;
                }
                ws[j] = ci;
                j += 1;
                if value(&self.assigns, first) == -1 {
                    conflict = Some(ci);
                    while i < ws.len() {
                        ws[j] = ws[i];
                        j += 1;
                        i += 1;
                    }
                } else {
                    self.enqueue(first, ci);
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

    /// First-UIP learning. Returns the clause (asserting literal first) and
    /// the level to jump back to.
    fn analyze(&mut self, conflict: usize) -> (Vec<u32>, usize) {
        let current = self.trail_lim.len() as u32;
        let mut learnt = vec![0u32];
        let mut pending = 0usize;
        let mut clause = conflict;
        let mut index = self.trail.len();
        let mut skip_first = false;
        loop {
            let start = usize::from(skip_first);
            for k in start..self.clauses[clause].len() {
                let q = self.clauses[clause][k];
                let v = (q >> 1) as usize;
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    if self.level[v] == current {
                        pending += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            let p = loop {
                index -= 1;
                let lit = self.trail[index];
                if self.seen[(lit >> 1) as usize] {
                    break lit;
                }
            };
            let v = (p >> 1) as usize;
            self.seen[v] = false;
            pending -= 1;
            if pending == 0 {
                learnt[0] = p ^ 1;
                break;
            }
            clause = self.reason[v];
            skip_first = true;
        }
        for &l in &learnt[1..] {
            self.seen[(l >> 1) as usize] = false;
        }
        let mut back = 0;
        if learnt.len() > 1 {
            let (k, lvl) = learnt[1..]
                .iter()
                .enumerate()
                .map(|(k, &l)| (k + 1, self.level[(l >> 1) as usize]))
                .max_by_key(|&(_, lvl)| lvl)
                .unwrap();
            learnt.swap(1, k);
            back = lvl as usize;
        }
        (learnt, back)
    }

    fn backtrack(&mut self, level: usize) {
        if self.trail_lim.len() <= level {
            return;
        }
        let keep = self.trail_lim[level];
        for &lit in &self.trail[keep..] {
            let v = (lit >> 1) as usize;
            self.assigns[v] = UNASSIGNED;
            self.reason[v] = NO_REASON;
            self.decide_from = self.decide_from.min(v);
        }
        self.trail.truncate(keep);
        self.trail_lim.truncate(level);
        self.qhead = self.trail.len();
    }

    pub fn solve(&mut self, max_conflicts: u64) -> SatResult {
        if self.unsat {
            return SatResult::Unsat;
        }
        loop {
            if let Some(conflict) = self.propagate() {
                if self.trail_lim.is_empty() {
                    self.unsat = true;
                    return SatResult::Unsat;
                }
                self.conflicts += 1;
                if self.conflicts > max_conflicts {
                    return SatResult::Unknown;
                }
                let (learnt, back) = self.analyze(conflict);
                self.backtrack(back);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], NO_REASON);
                } else {
                    let id = self.clauses.len();
                    self.watches[learnt[0] as usize].push(id);
                    self.watches[learnt[1] as usize].push(id);
                    let lit = learnt[0];
                    self.clauses.push(learnt);
                    self.enqueue(lit, id);
                }
            } else {
                while self.decide_from < self.num_vars && self.assigns[self.decide_from] != UNASSIGNED {
                    self.decide_from += 1;
                }
                if self.decide_from == self.num_vars {
                    return SatResult::Sat(self.assigns.iter().map(|&a| a == 1).collect());
                }
                self.trail_lim.push(self.trail.len());
                self.enqueue((self.decide_from as u32) << 1 | 1, NO_REASON);
            }
        }
    }
}

/// Solves a clause set; the model, if any, is the lexicographically least.
#[cfg(test)]
pub fn solve(cnf: &Cnf, max_conflicts: u64) -> SatResult {
    Solver::new(cnf).solve(max_conflicts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    fn lit(v: i32) -> u32 {
        let var = (v.unsigned_abs() - 1) << 1;
        if v < 0 {
            var | 1
        } else {
            var
        }
    }

    fn cnf(n: usize, clauses: &[&[i32]]) -> Cnf {
        Cnf {
            num_vars: n,
            clauses: clauses.iter().map(|c| c.iter().map(|&l| lit(l)).collect()).collect(),
        }
    }

    fn brute_force(c: &Cnf) -> Option<Vec<bool>> {
        let n = c.num_vars;
        (0u64..1 << n)
            .map(|bits| (0..n).map(|v| bits >> (n - 1 - v) & 1 == 1).collect::<Vec<bool>>())
            .find(|a| {
                c.clauses
                    .iter()
                    .all(|cl| cl.iter().any(|&l| a[(l >> 1) as usize] != (l & 1 == 1)))
            })
    }

    #[test]
    fn small_cases() {
        assert_eq!(solve(&cnf(2, &[]), 10), SatResult::Sat(vec![false, false]));
        assert_eq!(solve(&cnf(1, &[&[1], &[-1]]), 10), SatResult::Unsat);
        assert_eq!(solve(&cnf(2, &[&[1, 2]]), 10), SatResult::Sat(vec![false, true]));
        assert_eq!(solve(&cnf(2, &[&[1, 2], &[-2]]), 10), SatResult::Sat(vec![true, false]));
    }

    #[test]
    fn pigeonhole_is_unsat() {
        // 4 pigeons, 3 holes: var p*3+h+1.
        let v = |p: i32, h: i32| p * 3 + h + 1;
        let mut cls: Vec<Vec<i32>> = (0..4).map(|p| (0..3).map(|h| v(p, h)).collect()).collect();
        for h in 0..3 {
            for p in 0..4 {
                for q in p + 1..4 {
                    cls.push(vec![-v(p, h), -v(q, h)]);
                }
            }
        }
        let refs: Vec<&[i32]> = cls.iter().map(Vec::as_slice).collect();
        assert_eq!(solve(&cnf(12, &refs), 10_000), SatResult::Unsat);
        assert_eq!(solve(&cnf(12, &refs), 0), SatResult::Unknown);
    }

    #[test]
    fn first_model_is_lexicographically_least() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..400 {
            let n = rng.random_range(1..=10);
            let m = rng.random_range(0..=45);
            let clauses: Vec<Vec<u32>> = (0..m)
                .map(|_| {
                    let len = rng.random_range(1..=3);
                    (0..len)
                        .map(|_| (rng.random_range(0..n as u32) << 1) | rng.random_range(0..2))
                        .collect()
                })
                .collect();
            let c = Cnf { num_vars: n, clauses };
            let expected = brute_force(&c);
            match solve(&c, u64::MAX) {
                SatResult::Sat(m) => assert_eq!(Some(m), expected),
                SatResult::Unsat => assert_eq!(None, expected),
                SatResult::Unknown => unreachable!(),
            }
        }
    }
}
