//! Grounding over a fixed finite domain.
//!
//! Primary variables, in canonical order: `σ(s, π)` for every standpoint
//! `s` (sorted) and precisification `π`; then per precisification the
//! concept bits `A(x)` (names sorted, elements ascending) and role bits
//! `r(x, y)`; finally, for every individual `a`, the ladder `a ≥ 1, …,
//! a ≥ n-1`. Lexicographic order on this vector is the search order.

use std::collections::{BTreeMap, HashMap};

use crate::model::{Concept, Formula, Name, RoleInclusion, Role, Signature, StandpointExpr, TBoxAxiom};

use super::circuit::{Circuit, Lit};
use super::interp::{PlainInterpretation, Relation, StandpointStructure};
use super::OracleError;

#[derive(Debug, Clone)]
pub struct Layout {
    pub n: usize,
    pub m: usize,
    pub standpoints: Vec<String>,
    pub concepts: Vec<Name>,
    pub roles: Vec<Name>,
    pub individuals: Vec<Name>,
    concept_index: BTreeMap<Name, usize>,
    role_index: BTreeMap<Name, usize>,
    individual_index: BTreeMap<Name, usize>,
    standpoint_index: BTreeMap<String, usize>,
}

impl Layout {
    /// `m` precisifications over `n` elements; `m = 1` and no standpoints
    /// describes a plain interpretation.
    pub fn new(sig: &Signature, n: usize, m: usize, with_standpoints: bool) -> Self {
        let standpoints: Vec<String> = if with_standpoints {
            sig.standpoints.iter().filter(|s| *s != "*").cloned().collect()
        } else {
            Vec::new()
        };
        let concepts: Vec<Name> = sig.concepts.iter().cloned().collect();
        let roles: Vec<Name> = sig.roles.iter().cloned().collect();
        let individuals: Vec<Name> = sig.individuals.iter().cloned().collect();
        let index = |v: &[Name]| v.iter().cloned().enumerate().map(|(i, x)| (x, i)).collect();
        Layout {
            n,
            m,
            concept_index: index(&concepts),
            role_index: index(&roles),
            individual_index: index(&individuals),
            standpoint_index: standpoints.iter().cloned().enumerate().map(|(i, s)| (s, i)).collect(),
            standpoints,
            concepts,
            roles,
            individuals,
        }
    }

    fn sigma_size(&self) -> usize {
        self.standpoints.len() * self.m
    }

    fn layer_size(&self) -> usize {
        self.concepts.len() * self.n + self.roles.len() * self.n * self.n
    }

    /// Number of primary variables.
    pub fn bits(&self) -> usize {
        self.sigma_size() + self.m * self.layer_size() + self.individuals.len() * (self.n - 1)
    }

    fn sigma_var(&self, s: usize, pi: usize) -> usize {
        s * self.m + pi
    }

    fn concept_var(&self, pi: usize, a: usize, x: usize) -> usize {
        self.sigma_size() + pi * self.layer_size() + a * self.n + x
    }

    fn role_var(&self, pi: usize, r: usize, x: usize, y: usize) -> usize {
        self.sigma_size() + pi * self.layer_size() + self.concepts.len() * self.n + (r * self.n + x) * self.n + y
    }

    /// Variable for `a ≥ k`, `1 ≤ k < n`.
    fn ladder_var(&self, a: usize, k: usize) -> usize {
        self.sigma_size() + self.m * self.layer_size() + a * (self.n - 1) + (k - 1)
    }

    fn individual_value(&self, bits: &[bool], a: usize) -> usize {
        (1..self.n).take_while(|&k| bits[self.ladder_var(a, k)]).count()
    }

    /// True if every individual ladder is monotone.
    pub fn ladders_valid(&self, bits: &[bool]) -> bool {
        (0..self.individuals.len())
            .all(|a| (2..self.n).all(|k| !bits[self.ladder_var(a, k)] || bits[self.ladder_var(a, k - 1)]))
    }

    pub fn decode_layer(&self, bits: &[bool], pi: usize) -> PlainInterpretation {
        let n = self.n;
        let mut i = PlainInterpretation::new(n);
        for (a, name) in self.concepts.iter().enumerate() {
            let set = (0..n)
                .filter(|&x| bits[self.concept_var(pi, a, x)])
                .fold(0, |acc, x| acc | 1 << x);
            i.concepts.insert(name.clone(), set);
        }
        for (r, name) in self.roles.iter().enumerate() {
            let mut rel = Relation::empty(n);
            for x in 0..n {
                for y in 0..n {
                    if bits[self.role_var(pi, r, x, y)] {
                        rel.insert(x, y);
                    }
                }
            }
            i.roles.insert(name.clone(), rel);
        }
        for (a, name) in self.individuals.iter().enumerate() {
            i.individuals.insert(name.clone(), self.individual_value(bits, a));
        }
        i
    }

    pub fn decode_structure(&self, bits: &[bool]) -> StandpointStructure {
        let sigma = self
            .standpoints
            .iter()
            .enumerate()
            .map(|(s, name)| {
                let set = (0..self.m)
                    .filter(|&pi| bits[self.sigma_var(s, pi)])
                    .fold(0, |acc, pi| acc | 1 << pi);
                (name.clone(), set)
            })
            .collect();
        StandpointStructure {
            domain_size: self.n,
            precisifications: self.m,
            sigma,
            gamma: (0..self.m).map(|pi| self.decode_layer(bits, pi)).collect(),
        }
    }
}

/// Builds circuit literals for concepts, axioms and formulas.
pub struct Grounder<'l> {
    pub circuit: Circuit,
    layout: &'l Layout,
    roots: Vec<Lit>,
    /// Keyed by address; the `'l` borrows keep the trees alive.
    cache: HashMap<(*const Concept, usize, usize), Lit>,
}

impl<'l> Grounder<'l> {
    pub fn new(layout: &'l Layout) -> Self {
        let mut g = Grounder {
            circuit: Circuit::new(layout.bits()),
            layout,
            roots: Vec::new(),
            cache: HashMap::new(),
        };
        for a in 0..layout.individuals.len() {
            for k in 2..layout.n {
                let hi = g.circuit.input(layout.ladder_var(a, k));
                let lo = g.circuit.input(layout.ladder_var(a, k - 1));
                let c = g.circuit.implies(hi, lo);
                g.roots.push(c);
            }
        }
        g
    }

    pub fn assert(&mut self, l: Lit) {
        self.roots.push(l);
    }

    pub fn roots(&self) -> &[Lit] {
        &self.roots
    }

    fn lookup<'a>(index: &'a BTreeMap<Name, usize>, kind: &'static str, n: &Name) -> Result<usize, OracleError> {
        index.get(n).copied().ok_or_else(|| OracleError::unknown(kind, n))
    }

    fn edge(&mut self, pi: usize, r: &Role, x: usize, y: usize) -> Result<Lit, OracleError> {
        let l = self.layout;
        Ok(match r {
            Role::Universal => Lit::TRUE,
            Role::Named(n) => self.circuit.input(l.role_var(pi, Self::lookup(&l.role_index, "role", n)?, x, y)),
            Role::Inverse(n) => self.circuit.input(l.role_var(pi, Self::lookup(&l.role_index, "role", n)?, y, x)),
        })
    }

    /// `a = x` for an individual.
    fn individual_is(&mut self, a: &Name, x: usize) -> Result<Lit, OracleError> {
        let l = self.layout;
        let i = Self::lookup(&l.individual_index, "individual", a)?;
        let ge = |g: &mut Self, k: usize| {
            if k == 0 {
                Lit::TRUE
            } else if k >= l.n {
                Lit::FALSE
            } else {
                g.circuit.input(l.ladder_var(i, k))
            }
        };
        let lo = ge(self, x);
        let hi = ge(self, x + 1);
        Ok(self.circuit.and2(lo, !hi))
    }

    /// `x ∈ C` in layer `pi`.
    pub fn concept(&mut self, pi: usize, c: &'l Concept, x: usize) -> Result<Lit, OracleError> {
        let key = (c as *const Concept, pi, x);
        if let Some(&l) = self.cache.get(&key) {
            return Ok(l);
        }
        let n = self.layout.n;
        let lit = match c {
            Concept::Named(a) => {
                let i = Self::lookup(&self.layout.concept_index, "concept", a)?;
                self.circuit.input(self.layout.concept_var(pi, i, x))
            }
            Concept::Nominal(a) => self.individual_is(a, x)?,
            Concept::Top => Lit::TRUE,
            Concept::Bottom => Lit::FALSE,
            Concept::Not(d) => !self.concept(pi, d, x)?,
            Concept::And(a, b) => {
                let (a, b) = (self.concept(pi, a, x)?, self.concept(pi, b, x)?);
                self.circuit.and2(a, b)
            }
            Concept::Or(a, b) => {
                let (a, b) = (self.concept(pi, a, x)?, self.concept(pi, b, x)?);
                self.circuit.or2(a, b)
            }
            Concept::Some(r, d) => {
                let parts = self.successor_lits(pi, r, d, x)?;
                self.circuit.or(parts)
            }
            Concept::All(r, d) => {
                let mut parts = Vec::with_capacity(n);
                for y in 0..n {
                    let e = self.edge(pi, r, x, y)?;
                    let dy = self.concept(pi, d, y)?;
                    parts.push(self.circuit.implies(e, dy));
                }
                self.circuit.and(parts)
            }
            Concept::SelfRestriction(r) => self.edge(pi, r, x, x)?,
            Concept::AtLeast(k, r, d) => {
                let parts = self.successor_lits(pi, r, d, x)?;
                self.circuit.at_least(*k as usize, &parts)
            }
            Concept::AtMost(k, r, d) => {
                let parts = self.successor_lits(pi, r, d, x)?;
                !self.circuit.at_least(*k as usize + 1, &parts)
            }
        };
        self.cache.insert(key, lit);
        Ok(lit)
    }

    /// `(x, y) ∈ r ∧ y ∈ D` for every `y`.
    fn successor_lits(&mut self, pi: usize, r: &Role, d: &'l Concept, x: usize) -> Result<Vec<Lit>, OracleError> {
        (0..self.layout.n)
            .map(|y| {
                let e = self.edge(pi, r, x, y)?;
                let dy = self.concept(pi, d, y)?;
                Ok(self.circuit.and2(e, dy))
            })
            .collect()
    }

    pub fn tbox(&mut self, pi: usize, a: &'l TBoxAxiom) -> Result<Lit, OracleError> {
        let mut parts = Vec::new();
        for x in 0..self.layout.n {
            match a {
                TBoxAxiom::SubClassOf(c, d) => {
                    let (c, d) = (self.concept(pi, c, x)?, self.concept(pi, d, x)?);
                    parts.push(self.circuit.implies(c, d));
                }
                TBoxAxiom::Equivalent(c, d) => {
                    let (c, d) = (self.concept(pi, c, x)?, self.concept(pi, d, x)?);
                    parts.push(self.circuit.iff(c, d));
                }
            }
        }
        Ok(self.circuit.and(parts))
    }

    pub fn ria(&mut self, pi: usize, ria: &RoleInclusion) -> Result<Lit, OracleError> {
        let n = self.layout.n;
        let k = ria.chain.len();
        let head = Role::Named(ria.head.clone());
        let mut parts = Vec::new();
        // Every path x0 -r1-> x1 … -rk-> xk needs (x0, xk) in the head.
        let mut path = vec![0usize; k + 1];
        loop {
            let mut body = Vec::with_capacity(k);
            for (i, r) in ria.chain.iter().enumerate() {
                body.push(self.edge(pi, r, path[i], path[i + 1])?);
            }
            let body = self.circuit.and(body);
            let h = self.edge(pi, &head, path[0], path[k])?;
            parts.push(self.circuit.implies(body, h));
            // Next tuple in lexicographic order.
            let mut j = k + 1;
            loop {
                if j == 0 {
                    return Ok(self.circuit.and(parts));
                }
                j -= 1;
                path[j] += 1;
                if path[j] < n {
                    break;
                }
                path[j] = 0;
            }
        }
    }

    fn sigma(&mut self, e: &StandpointExpr, pi: usize) -> Result<Lit, OracleError> {
        Ok(match e {
            StandpointExpr::Star => Lit::TRUE,
            StandpointExpr::Named(s) => {
                let i = *self.layout.standpoint_index.get(s).ok_or_else(|| OracleError::UnknownName {
                    kind: "standpoint",
                    name: s.clone(),
                })?;
                self.circuit.input(self.layout.sigma_var(i, pi))
            }
            StandpointExpr::Union(a, b) => {
                let (a, b) = (self.sigma(a, pi)?, self.sigma(b, pi)?);
                self.circuit.or2(a, b)
            }
            StandpointExpr::Intersection(a, b) => {
                let (a, b) = (self.sigma(a, pi)?, self.sigma(b, pi)?);
                self.circuit.and2(a, b)
            }
            StandpointExpr::Minus(a, b) => {
                let (a, b) = (self.sigma(a, pi)?, self.sigma(b, pi)?);
                self.circuit.and2(a, !b)
            }
        })
    }

    /// Satisfaction of a reference-free formula at `pi`.
    pub fn formula(&mut self, pi: usize, f: &'l Formula) -> Result<Lit, OracleError> {
        Ok(match f {
            Formula::Atom(a) => self.tbox(pi, a)?,
            Formula::Ref(n) => return Err(OracleError::UnresolvedRef(n.clone())),
            Formula::Not(g) => !self.formula(pi, g)?,
            Formula::And(a, b) => {
                let (a, b) = (self.formula(pi, a)?, self.formula(pi, b)?);
                self.circuit.and2(a, b)
            }
            Formula::Or(a, b) => {
                let (a, b) = (self.formula(pi, a)?, self.formula(pi, b)?);
                self.circuit.or2(a, b)
            }
            Formula::Box(e, g) => {
                let mut parts = Vec::new();
                for q in 0..self.layout.m {
                    let (s, h) = (self.sigma(e, q)?, self.formula(q, g)?);
                    parts.push(self.circuit.implies(s, h));
                }
                self.circuit.and(parts)
            }
            Formula::Diamond(e, g) => {
                let mut parts = Vec::new();
                for q in 0..self.layout.m {
                    let (s, h) = (self.sigma(e, q)?, self.formula(q, g)?);
                    parts.push(self.circuit.and2(s, h));
                }
                self.circuit.or(parts)
            }
        })
    }
}
