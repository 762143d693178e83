//! Hash-consed Boolean circuits and their clausal form.

use std::collections::HashMap;
use std::ops::Not;

/// A possibly negated circuit node.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Lit(u32);

impl Lit {
    pub const TRUE: Lit = Lit(0);
    pub const FALSE: Lit = Lit(1);

    fn node(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn negated(self) -> bool {
        self.0 & 1 == 1
    }
}

impl Not for Lit {
    type Output = Lit;

    fn not(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

#[derive(Debug, Clone)]
enum Node {
    Const,
    Input(u32),
    And(Box<[Lit]>),
}

/// Inputs are numbered `0..inputs`; gates are n-ary conjunctions with
/// constant folding and structural sharing.
#[derive(Debug, Clone)]
pub struct Circuit {
    nodes: Vec<Node>,
    table: HashMap<Box<[Lit]>, u32>,
    inputs: usize,
}

impl Circuit {
    pub fn new(inputs: usize) -> Self {
        let mut nodes = Vec::with_capacity(inputs + 1);
        nodes.push(Node::Const);
        nodes.extend((0..inputs as u32).map(Node::Input));
        Circuit {
            nodes,
            table: HashMap::new(),
            inputs,
        }
    }

    pub fn input(&self, i: usize) -> Lit {
        debug_assert!(i < self.inputs);
        Lit(((i + 1) as u32) << 1)
    }

    pub fn and(&mut self, lits: impl IntoIterator<Item = Lit>) -> Lit {
        let mut v: Vec<Lit> = Vec::new();
        for l in lits {
            if l == Lit::FALSE {
                return Lit::FALSE;
            }
            if l != Lit::TRUE {
                v.push(l);
            }
        }
        v.sort_unstable();
        v.dedup();
        if v.windows(2).any(|w| w[0].node() == w[1].node()) {
            return Lit::FALSE;
        }
        match v.len() {
            0 => Lit::TRUE,
            1 => v[0],
            _ => {
                let key = v.into_boxed_slice();
                if let Some(&id) = self.table.get(&key) {
                    return Lit(id << 1);
                }
                let id = self.nodes.len() as u32;
                self.nodes.push(Node::And(key.clone()));
                self.table.insert(key, id);
                Lit(id << 1)
            }
        }
    }

    pub fn or(&mut self, lits: impl IntoIterator<Item = Lit>) -> Lit {
        let negated: Vec<Lit> = lits.into_iter().map(|l| !l).collect();
        !self.and(negated)
    }

    pub fn and2(&mut self, a: Lit, b: Lit) -> Lit {
        self.and([a, b])
    }

    pub fn or2(&mut self, a: Lit, b: Lit) -> Lit {
        self.or([a, b])
    }

    pub fn implies(&mut self, a: Lit, b: Lit) -> Lit {
        self.or([!a, b])
    }

    pub fn iff(&mut self, a: Lit, b: Lit) -> Lit {
        let ab = self.implies(a, b);
        let ba = self.implies(b, a);
        self.and2(ab, ba)
    }

    /// At least `k` of `lits` are true, as a sequential counter.
    pub fn at_least(&mut self, k: usize, lits: &[Lit]) -> Lit {
        if k == 0 {
            return Lit::TRUE;
        }
        if k > lits.len() {
            return Lit::FALSE;
        }
        // ge[j]: at least j of the literals seen so far.
        let mut ge = vec![Lit::FALSE; k + 1];
        ge[0] = Lit::TRUE;
        for &l in lits {
            for j in (1..=k).rev() {
                let step = self.and2(l, ge[j - 1]);
                ge[j] = self.or2(ge[j], step);
            }
        }
        ge[k]
    }

    /// Evaluates a literal under an input assignment.
    #[cfg(test)]
    pub fn eval(&self, l: Lit, inputs: &[bool]) -> bool {
        let mut memo: HashMap<usize, bool> = HashMap::new();
        self.eval_node(l.node(), inputs, &mut memo) ^ l.negated()
    }

    #[cfg(test)]
    fn eval_node(&self, id: usize, inputs: &[bool], memo: &mut HashMap<usize, bool>) -> bool {
        if let Some(&v) = memo.get(&id) {
            return v;
        }
        let v = match &self.nodes[id] {
            Node::Const => true,
            Node::Input(i) => inputs[*i as usize],
            Node::And(ls) => ls
                .iter()
                .all(|l| self.eval_node(l.node(), inputs, memo) ^ l.negated()),
        };
        memo.insert(id, v);
        v
    }

    /// Clausal form asserting every root. Inputs keep their index as
    /// variable; gates get fresh variables after them. `None` if a root is
    /// the constant false.
    pub fn to_cnf(&self, roots: &[Lit]) -> Option<Cnf> {
        if roots.contains(&Lit::FALSE) {
            return None;
        }
        let mut reachable = vec![false; self.nodes.len()];
        let mut stack: Vec<usize> = roots.iter().map(|l| l.node()).collect();
        while let Some(id) = stack.pop() {
            if std::mem::replace(&mut reachable[id], true) {
                continue;
            }
            if let Node::And(ls) = &self.nodes[id] {
                stack.extend(ls.iter().map(|l| l.node()));
            }
        }
        let mut var = vec![u32::MAX; self.nodes.len()];
        let mut next = self.inputs as u32;
        let mut clauses = Vec::new();
        let sat = |var: &[u32], l: Lit| var[l.node()] << 1 | l.negated() as u32;
        // Children always precede their gate, so index order is topological.
        for id in 0..self.nodes.len() {
            if !reachable[id] {
                continue;
            }
            match &self.nodes[id] {
                Node::Const => {}
                Node::Input(i) => var[id] = *i,
                Node::And(ls) => {
                    var[id] = next;
                    next += 1;
                    let g = var[id] << 1;
                    let mut big = vec![g];
                    for &l in ls.iter() {
                        let c = sat(&var, l);
                        clauses.push(vec![g ^ 1, c]);
                        big.push(c ^ 1);
                    }
                    clauses.push(big);
                }
            }
        }
        for &r in roots {
            if r != Lit::TRUE {
                clauses.push(vec![sat(&var, r)]);
            }
        }
        Some(Cnf {
            num_vars: next as usize,
            clauses,
        })
    }
}

/// Clauses over variables `0..num_vars`; literal `2v` is `v`, `2v+1` is `¬v`.
#[derive(Debug, Clone, Default)]
pub struct Cnf {
    pub num_vars: usize,
    pub clauses: Vec<Vec<u32>>,
}
