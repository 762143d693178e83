//! Finite interpretations and direct evaluation of the semantics.

use std::collections::BTreeMap;
use std::fmt;

use crate::model::{Concept, Formula, Name, PlainAxiom, PlainKb, Role, RoleInclusion, StandpointExpr, StandpointKb, TBoxAxiom};
use crate::normalizer::resolve_refs;

use super::OracleError;

/// A subset of the domain `{0..n-1}` as a bitmask.
pub type ElementSet = u64;

/// Largest supported domain.
pub const MAX_DOMAIN: usize = 64;

/// The full set over `n` elements.
pub fn full_set(n: usize) -> ElementSet {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterates the members of a set in ascending order.
pub fn members(mut s: ElementSet) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        if s == 0 {
            return None;
        }
        let i = s.trailing_zeros() as usize;
        s &= s - 1;
        Some(i)
    })
}

/// A binary relation over `{0..n-1}`, stored as successor sets.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Relation {
    rows: Vec<ElementSet>,
}

impl Relation {
    pub fn empty(n: usize) -> Self {
        Relation { rows: vec![0; n] }
    }

    pub fn full(n: usize) -> Self {
        Relation {
            rows: vec![full_set(n); n],
        }
    }

    pub fn from_pairs(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Self {
        let mut r = Relation::empty(n);
        for (x, y) in pairs {
            r.insert(x, y);
        }
        r
    }

    pub fn insert(&mut self, x: usize, y: usize) {
        self.rows[x] |= 1 << y;
    }

    pub fn contains(&self, x: usize, y: usize) -> bool {
        self.rows[x] >> y & 1 == 1
    }

    pub fn successors(&self, x: usize) -> ElementSet {
        self.rows[x]
    }

    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(x, &row)| members(row).map(move |y| (x, y)))
    }

    pub fn converse(&self) -> Relation {
        let mut out = Relation::empty(self.rows.len());
        for (x, y) in self.pairs() {
            out.insert(y, x);
        }
        out
    }

    /// `self ∘ other`: pairs `(x, z)` with `(x, y) ∈ self` and `(y, z) ∈ other`.
    pub fn compose(&self, other: &Relation) -> Relation {
        let rows = self
            .rows
            .iter()
            .map(|&row| members(row).fold(0, |acc, y| acc | other.rows[y]))
            .collect();
        Relation { rows }
    }

    pub fn is_subset(&self, other: &Relation) -> bool {
        self.rows.iter().zip(&other.rows).all(|(a, b)| a & !b == 0)
    }

    pub fn is_empty(&self) -> bool {
        self.rows.iter().all(|&r| r == 0)
    }
}

/// A plain interpretation over `{0..domain_size-1}`. The universal role has
/// no stored extension.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainInterpretation {
    pub domain_size: usize,
    pub concepts: BTreeMap<Name, ElementSet>,
    pub roles: BTreeMap<Name, Relation>,
    pub individuals: BTreeMap<Name, usize>,
}

impl PlainInterpretation {
    pub fn new(domain_size: usize) -> Self {
        PlainInterpretation {
            domain_size,
            concepts: BTreeMap::new(),
            roles: BTreeMap::new(),
            individuals: BTreeMap::new(),
        }
    }

    pub fn domain(&self) -> ElementSet {
        full_set(self.domain_size)
    }

    pub fn role(&self, r: &Role) -> Result<Relation, OracleError> {
        match r {
            Role::Universal => Ok(Relation::full(self.domain_size)),
            Role::Named(n) => self.named_role(n).cloned(),
            Role::Inverse(n) => Ok(self.named_role(n)?.converse()),
        }
    }

    fn named_role(&self, n: &Name) -> Result<&Relation, OracleError> {
        self.roles.get(n).ok_or_else(|| OracleError::unknown("role", n))
    }
}

/// `D = ⟨Δ, Π, σ, γ⟩` with `Π = {0..precisifications-1}`. `σ(*)` is always
/// `Π` and is not stored; all `γ(π)` share the domain and the individuals.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandpointStructure {
    pub domain_size: usize,
    pub precisifications: usize,
    pub sigma: BTreeMap<String, ElementSet>,
    pub gamma: Vec<PlainInterpretation>,
}

impl StandpointStructure {
    /// `σ(e)`, extended to expressions by the set operations.
    pub fn sigma_of(&self, e: &StandpointExpr) -> Result<ElementSet, OracleError> {
        Ok(match e {
            StandpointExpr::Star => full_set(self.precisifications),
            StandpointExpr::Named(s) => *self.sigma.get(s).ok_or_else(|| OracleError::UnknownName {
                kind: "standpoint",
                name: s.clone(),
            })?,
            StandpointExpr::Union(a, b) => self.sigma_of(a)? | self.sigma_of(b)?,
            StandpointExpr::Intersection(a, b) => self.sigma_of(a)? & self.sigma_of(b)?,
            StandpointExpr::Minus(a, b) => self.sigma_of(a)? & !self.sigma_of(b)?,
        })
    }
}

/// The extension of a concept.
pub fn eval_concept(i: &PlainInterpretation, c: &Concept) -> Result<ElementSet, OracleError> {
    let n = i.domain_size;
    let all = i.domain();
    let over_domain = |f: &dyn Fn(usize) -> bool| (0..n).filter(|&x| f(x)).fold(0, |acc, x| acc | 1 << x);
    Ok(match c {
        Concept::Named(a) => *i.concepts.get(a).ok_or_else(|| OracleError::unknown("concept", a))?,
        Concept::Nominal(a) => {
            let e = *i.individuals.get(a).ok_or_else(|| OracleError::unknown("individual", a))?;
            1 << e
        }
        Concept::Top => all,
        Concept::Bottom => 0,
        Concept::Not(d) => all & !eval_concept(i, d)?,
        Concept::And(a, b) => eval_concept(i, a)? & eval_concept(i, b)?,
        Concept::Or(a, b) => eval_concept(i, a)? | eval_concept(i, b)?,
        Concept::Some(r, d) => {
            let (r, d) = (i.role(r)?, eval_concept(i, d)?);
            over_domain(&|x| r.successors(x) & d != 0)
        }
        Concept::All(r, d) => {
            let (r, d) = (i.role(r)?, eval_concept(i, d)?);
            over_domain(&|x| r.successors(x) & !d == 0)
        }
        Concept::SelfRestriction(r) => {
            let r = i.role(r)?;
            over_domain(&|x| r.contains(x, x))
        }
        Concept::AtMost(k, r, d) => {
            let (r, d) = (i.role(r)?, eval_concept(i, d)?);
            over_domain(&|x| (r.successors(x) & d).count_ones() <= *k)
        }
        Concept::AtLeast(k, r, d) => {
            let (r, d) = (i.role(r)?, eval_concept(i, d)?);
            over_domain(&|x| (r.successors(x) & d).count_ones() >= *k)
        }
    })
}

pub fn holds_tbox(i: &PlainInterpretation, a: &TBoxAxiom) -> Result<bool, OracleError> {
    Ok(match a {
        TBoxAxiom::SubClassOf(c, d) => eval_concept(i, c)? & !eval_concept(i, d)? == 0,
        TBoxAxiom::Equivalent(c, d) => eval_concept(i, c)? == eval_concept(i, d)?,
    })
}

pub fn holds_ria(i: &PlainInterpretation, ria: &RoleInclusion) -> Result<bool, OracleError> {
    let mut chain = ria.chain.iter();
    let first = chain.next().map_or_else(|| Ok(Relation::empty(i.domain_size)), |r| i.role(r))?;
    let composed = chain.try_fold(first, |acc, r| Ok::<_, OracleError>(acc.compose(&i.role(r)?)))?;
    Ok(composed.is_subset(&i.role(&Role::Named(ria.head.clone()))?))
}

pub fn holds_axiom(i: &PlainInterpretation, a: &PlainAxiom) -> Result<bool, OracleError> {
    match a {
        PlainAxiom::TBox(t) => holds_tbox(i, t),
        PlainAxiom::Ria(r) => holds_ria(i, r),
    }
}

/// True if every axiom of the plain knowledge base holds.
pub fn plain_kb_holds(i: &PlainInterpretation, kb: &PlainKb) -> Result<bool, OracleError> {
    for a in &kb.axioms {
        if !holds_axiom(i, a)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Satisfaction of a reference-free formula at precisification `pi`.
pub fn holds_formula(d: &StandpointStructure, pi: usize, f: &Formula) -> Result<bool, OracleError> {
    Ok(match f {
        Formula::Atom(a) => holds_tbox(&d.gamma[pi], a)?,
        Formula::Ref(n) => return Err(OracleError::UnresolvedRef(n.clone())),
        Formula::Not(g) => !holds_formula(d, pi, g)?,
        Formula::And(a, b) => holds_formula(d, pi, a)? && holds_formula(d, pi, b)?,
        Formula::Or(a, b) => holds_formula(d, pi, a)? || holds_formula(d, pi, b)?,
        Formula::Box(e, g) => {
            for q in members(d.sigma_of(e)?) {
                if !holds_formula(d, q, g)? {
                    return Ok(false);
                }
            }
            true
        }
        Formula::Diamond(e, g) => {
            for q in members(d.sigma_of(e)?) {
                if holds_formula(d, q, g)? {
                    return Ok(true);
                }
            }
            false
        }
    })
}

/// Every plain axiom, role inclusion and formula holds at every
/// precisification. References are resolved against the named axioms.
pub fn kb_holds(d: &StandpointStructure, kb: &StandpointKb) -> Result<bool, OracleError> {
    let kb = resolve_refs(kb).map_err(|e| match e {
        crate::normalizer::NormalizeError::UnresolvedRef(n) => OracleError::UnresolvedRef(n),
        other => OracleError::Normalize(other),
    })?;
    for pi in 0..d.precisifications {
        let g = &d.gamma[pi];
        for a in &kb.axioms {
            if !holds_tbox(g, a)? {
                return Ok(false);
            }
        }
        for r in &kb.rias {
            if !holds_ria(g, r)? {
                return Ok(false);
            }
        }
        for f in &kb.formulas {
            if !holds_formula(d, pi, f)? {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

fn fmt_set(f: &mut fmt::Formatter<'_>, s: ElementSet) -> fmt::Result {
    f.write_str("{")?;
    for (k, x) in members(s).enumerate() {
        if k > 0 {
            f.write_str(",")?;
        }
        write!(f, "{x}")?;
    }
    f.write_str("}")
}

impl fmt::Display for PlainInterpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "domain size {}", self.domain_size)?;
        for (a, e) in &self.individuals {
            writeln!(f, "  {a} = {e}")?;
        }
        for (a, s) in &self.concepts {
            write!(f, "  {a} = ")?;
            fmt_set(f, *s)?;
            writeln!(f)?;
        }
        for (r, rel) in &self.roles {
            write!(f, "  {r} = {{")?;
            for (k, (x, y)) in rel.pairs().enumerate() {
                if k > 0 {
                    f.write_str(",")?;
                }
                write!(f, "({x},{y})")?;
            }
            writeln!(f, "}}")?;
        }
        Ok(())
    }
}

impl fmt::Display for StandpointStructure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "domain size {}, {} precisification(s)",
            self.domain_size, self.precisifications
        )?;
        for (s, set) in &self.sigma {
            write!(f, "σ({s}) = ")?;
            fmt_set(f, *set)?;
            writeln!(f)?;
        }
        for (pi, g) in self.gamma.iter().enumerate() {
            writeln!(f, "precisification {pi}:")?;
            for (a, s) in &g.concepts {
                if *s != 0 {
                    write!(f, "  {a} = ")?;
                    fmt_set(f, *s)?;
                    writeln!(f)?;
                }
            }
            for (r, rel) in &g.roles {
                if !rel.is_empty() {
                    write!(f, "  {r} = {{")?;
                    for (k, (x, y)) in rel.pairs().enumerate() {
                        if k > 0 {
                            f.write_str(",")?;
                        }
                        write!(f, "({x},{y})")?;
                    }
                    writeln!(f, "}}")?;
                }
            }
        }
        if let Some(g) = self.gamma.first() {
            for (a, e) in &g.individuals {
                writeln!(f, "{a} = {e}")?;
            }
        }
        Ok(())
    }
}
