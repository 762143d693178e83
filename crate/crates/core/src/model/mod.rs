//! Syntactic domain types: SROIQ expressions and axioms, standpoint
//! expressions, Boolean standpoint formulas and knowledge bases.

mod roles;
mod signature;

use std::fmt;

use indexmap::IndexMap;
use thiserror::Error;

pub use roles::{validate_plain_roles, validate_roles, RoleValidationReport};
pub use signature::{signature_of, Signature};

/// Separator reserved for name mangling. Input names may not contain it.
pub const RESERVED_SEPARATOR: &str = "__";

/// Namespace of the OWL vocabulary.
pub const OWL_NS: &str = "http://www.w3.org/2002/07/owl#";

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Error)]
pub enum ModelError {
    #[error("role order has a cycle through `{0}`")]
    CyclicRoleOrder(String),
    #[error("malformed role inclusion for `{head}`: head occurs inside the chain {chain}")]
    MalformedRia { head: String, chain: String },
    #[error("role `{0}` is non-simple but used in a Self or number restriction")]
    NonSimpleInRestriction(String),
    #[error("inverse of non-simple role `{0}`")]
    NonSimpleInverse(String),
    #[error("invalid {kind} name `{name}`")]
    BadName { kind: &'static str, name: String },
    #[error("name `{0}` contains the reserved separator `__`")]
    ReservedName(String),
}

/// The four kinds of names that can occur in a standpoint knowledge base.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum EntityKind {
    Concept,
    Role,
    Individual,
    Standpoint,
}

impl EntityKind {
    pub fn label(self) -> &'static str {
        match self {
            EntityKind::Concept => "concept",
            EntityKind::Role => "role",
            EntityKind::Individual => "individual",
            EntityKind::Standpoint => "standpoint",
        }
    }
}

/// A concept, role or individual name: a namespace IRI plus a local part.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Name {
    pub base: String,
    pub local: String,
}

impl Name {
    pub fn new(base: impl Into<String>, local: impl Into<String>) -> Self {
        Name {
            base: base.into(),
            local: local.into(),
        }
    }

    /// Builds a name, rejecting empty locals and locals that contain `__`.
    pub fn checked(
        kind: EntityKind,
        base: impl Into<String>,
        local: impl Into<String>,
    ) -> Result<Self, ModelError> {
        let local = local.into();
        if local.is_empty() {
            return Err(ModelError::BadName {
                kind: kind.label(),
                name: local,
            });
        }
        if local.contains(RESERVED_SEPARATOR) {
            return Err(ModelError::ReservedName(local));
        }
        Ok(Name::new(base, local))
    }

    /// Splits a full IRI at its last `#` or `/`.
    pub fn from_iri(iri: &str) -> Self {
        match iri.rfind(['#', '/']) {
            Some(i) => Name::new(&iri[..=i], &iri[i + 1..]),
            None => Name::new("", iri),
        }
    }

    pub fn iri(&self) -> String {
        format!("{}{}", self.base, self.local)
    }

    pub fn rebased(&self, base: &str) -> Self {
        Name::new(base, self.local.clone())
    }
}

impl fmt::Display for Name {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.local)
    }
}

/// A name together with the kind of entity it denotes.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EntityName {
    pub kind: EntityKind,
    pub name: Name,
}

/// Checks a standpoint name attribute: letters followed by digits, or `*`.
pub fn is_valid_standpoint_name(s: &str) -> bool {
    s == "*" || letters_then_digits(s)
}

/// Checks an axiom name without its leading `§`.
pub fn is_valid_axiom_name(s: &str) -> bool {
    letters_then_digits(s)
}

fn letters_then_digits(s: &str) -> bool {
    let letters = s.bytes().take_while(u8::is_ascii_alphabetic).count();
    letters > 0 && s.bytes().skip(letters).all(|b| b.is_ascii_digit())
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Role {
    Named(Name),
    /// Inverse of a simple role name.
    Inverse(Name),
    Universal,
}

impl Role {
    pub fn named(base: &str, local: &str) -> Self {
        Role::Named(Name::new(base, local))
    }

    /// The underlying role name, if any.
    pub fn name(&self) -> Option<&Name> {
        match self {
            Role::Named(n) | Role::Inverse(n) => Some(n),
            Role::Universal => None,
        }
    }

    pub fn map_names(&self, f: &mut impl FnMut(&Name) -> Name) -> Role {
        match self {
            Role::Named(n) => Role::Named(f(n)),
            Role::Inverse(n) => Role::Inverse(f(n)),
            Role::Universal => Role::Universal,
        }
    }
}

impl fmt::Display for Role {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Role::Named(n) => write!(f, "{n}"),
            Role::Inverse(n) => write!(f, "{n}⁻"),
            Role::Universal => f.write_str("u"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Concept {
    Named(Name),
    Nominal(Name),
    Top,
    Bottom,
    Not(Box<Concept>),
    And(Box<Concept>, Box<Concept>),
    Or(Box<Concept>, Box<Concept>),
    All(Role, Box<Concept>),
    Some(Role, Box<Concept>),
    SelfRestriction(Role),
    AtMost(u32, Role, Box<Concept>),
    AtLeast(u32, Role, Box<Concept>),
}

impl Concept {
    pub fn named(base: &str, local: &str) -> Self {
        Concept::Named(Name::new(base, local))
    }

    pub fn not(c: Concept) -> Self {
        Concept::Not(Box::new(c))
    }

    pub fn and(c: Concept, d: Concept) -> Self {
        Concept::And(Box::new(c), Box::new(d))
    }

    pub fn or(c: Concept, d: Concept) -> Self {
        Concept::Or(Box::new(c), Box::new(d))
    }

    pub fn all(r: Role, c: Concept) -> Self {
        Concept::All(r, Box::new(c))
    }

    pub fn some(r: Role, c: Concept) -> Self {
        Concept::Some(r, Box::new(c))
    }

    pub fn at_most(n: u32, r: Role, c: Concept) -> Self {
        Concept::AtMost(n, r, Box::new(c))
    }

    pub fn at_least(n: u32, r: Role, c: Concept) -> Self {
        Concept::AtLeast(n, r, Box::new(c))
    }

    /// Left-folded conjunction; `⊤` for an empty iterator.
    pub fn and_all(items: impl IntoIterator<Item = Concept>) -> Self {
        items
            .into_iter()
            .reduce(Concept::and)
            .unwrap_or(Concept::Top)
    }

    /// Left-folded disjunction; `⊥` for an empty iterator.
    pub fn or_all(items: impl IntoIterator<Item = Concept>) -> Self {
        items
            .into_iter()
            .reduce(Concept::or)
            .unwrap_or(Concept::Bottom)
    }

    /// Rewrites every concept, role and individual name.
    pub fn map_names(&self, f: &mut impl FnMut(EntityKind, &Name) -> Name) -> Concept {
        let mut role = |r: &Role| r.map_names(&mut |n| f(EntityKind::Role, n));
        match self {
            Concept::Named(n) => Concept::Named(f(EntityKind::Concept, n)),
            Concept::Nominal(n) => Concept::Nominal(f(EntityKind::Individual, n)),
            Concept::Top => Concept::Top,
            Concept::Bottom => Concept::Bottom,
            Concept::Not(c) => Concept::not(c.map_names(f)),
            Concept::And(c, d) => Concept::and(c.map_names(f), d.map_names(f)),
            Concept::Or(c, d) => Concept::or(c.map_names(f), d.map_names(f)),
            Concept::All(r, c) => {
                let r = role(r);
                Concept::all(r, c.map_names(f))
            }
            Concept::Some(r, c) => {
                let r = role(r);
                Concept::some(r, c.map_names(f))
            }
            Concept::SelfRestriction(r) => Concept::SelfRestriction(role(r)),
            Concept::AtMost(n, r, c) => {
                let r = role(r);
                Concept::at_most(*n, r, c.map_names(f))
            }
            Concept::AtLeast(n, r, c) => {
                let r = role(r);
                Concept::at_least(*n, r, c.map_names(f))
            }
        }
    }

    /// Visits this expression and all of its subexpressions, outermost first.
    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Concept)) {
        visit(self);
        match self {
            Concept::Named(_)
            | Concept::Nominal(_)
            | Concept::Top
            | Concept::Bottom
            | Concept::SelfRestriction(_) => {}
            Concept::Not(c)
            | Concept::All(_, c)
            | Concept::Some(_, c)
            | Concept::AtMost(_, _, c)
            | Concept::AtLeast(_, _, c) => c.walk(visit),
            Concept::And(c, d) | Concept::Or(c, d) => {
                c.walk(visit);
                d.walk(visit);
            }
        }
    }
}

impl fmt::Display for Concept {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Concept::Named(n) => write!(f, "{n}"),
            Concept::Nominal(n) => write!(f, "{{{n}}}"),
            Concept::Top => f.write_str("⊤"),
            Concept::Bottom => f.write_str("⊥"),
            Concept::Not(c) => write!(f, "¬{c}"),
            Concept::And(c, d) => write!(f, "({c} ⊓ {d})"),
            Concept::Or(c, d) => write!(f, "({c} ⊔ {d})"),
            Concept::All(r, c) => write!(f, "∀{r}.{c}"),
            Concept::Some(r, c) => write!(f, "∃{r}.{c}"),
            Concept::SelfRestriction(r) => write!(f, "∃{r}.Self"),
            Concept::AtMost(n, r, c) => write!(f, "≤{n} {r}.{c}"),
            Concept::AtLeast(n, r, c) => write!(f, "≥{n} {r}.{c}"),
        }
    }
}

/// Subclass or equivalence axiom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TBoxAxiom {
    SubClassOf(Concept, Concept),
    Equivalent(Concept, Concept),
}

impl TBoxAxiom {
    pub fn sub(c: Concept, d: Concept) -> Self {
        TBoxAxiom::SubClassOf(c, d)
    }

    pub fn equiv(c: Concept, d: Concept) -> Self {
        TBoxAxiom::Equivalent(c, d)
    }

    pub fn concepts(&self) -> [&Concept; 2] {
        match self {
            TBoxAxiom::SubClassOf(c, d) | TBoxAxiom::Equivalent(c, d) => [c, d],
        }
    }

    pub fn map_names(&self, f: &mut impl FnMut(EntityKind, &Name) -> Name) -> TBoxAxiom {
        match self {
            TBoxAxiom::SubClassOf(c, d) => TBoxAxiom::SubClassOf(c.map_names(f), d.map_names(f)),
            TBoxAxiom::Equivalent(c, d) => TBoxAxiom::Equivalent(c.map_names(f), d.map_names(f)),
        }
    }
}

impl fmt::Display for TBoxAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TBoxAxiom::SubClassOf(c, d) => write!(f, "{c} ⊑ {d}"),
            TBoxAxiom::Equivalent(c, d) => write!(f, "{c} ≡ {d}"),
        }
    }
}

/// Role inclusion `r1 ∘ … ∘ rn ⊑ head`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RoleInclusion {
    pub chain: Vec<Role>,
    pub head: Name,
}

impl RoleInclusion {
    pub fn new(chain: Vec<Role>, head: Name) -> Self {
        RoleInclusion { chain, head }
    }

    pub fn map_names(&self, f: &mut impl FnMut(&Name) -> Name) -> RoleInclusion {
        RoleInclusion {
            chain: self.chain.iter().map(|r| r.map_names(f)).collect(),
            head: f(&self.head),
        }
    }
}

impl fmt::Display for RoleInclusion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let chain: Vec<String> = self.chain.iter().map(Role::to_string).collect();
        write!(f, "{} ⊑ {}", chain.join(" ∘ "), self.head)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum PlainAxiom {
    TBox(TBoxAxiom),
    Ria(RoleInclusion),
}

impl From<TBoxAxiom> for PlainAxiom {
    fn from(a: TBoxAxiom) -> Self {
        PlainAxiom::TBox(a)
    }
}

impl From<RoleInclusion> for PlainAxiom {
    fn from(a: RoleInclusion) -> Self {
        PlainAxiom::Ria(a)
    }
}

impl fmt::Display for PlainAxiom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            PlainAxiom::TBox(a) => a.fmt(f),
            PlainAxiom::Ria(a) => a.fmt(f),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum StandpointExpr {
    Star,
    Named(String),
    Union(Box<StandpointExpr>, Box<StandpointExpr>),
    Intersection(Box<StandpointExpr>, Box<StandpointExpr>),
    Minus(Box<StandpointExpr>, Box<StandpointExpr>),
}

impl StandpointExpr {
    /// `*` becomes [`StandpointExpr::Star`], anything else a named standpoint.
    pub fn name(s: &str) -> Self {
        if s == "*" {
            StandpointExpr::Star
        } else {
            StandpointExpr::Named(s.to_owned())
        }
    }

    pub fn union(a: StandpointExpr, b: StandpointExpr) -> Self {
        StandpointExpr::Union(Box::new(a), Box::new(b))
    }

    pub fn intersection(a: StandpointExpr, b: StandpointExpr) -> Self {
        StandpointExpr::Intersection(Box::new(a), Box::new(b))
    }

    pub fn minus(a: StandpointExpr, b: StandpointExpr) -> Self {
        StandpointExpr::Minus(Box::new(a), Box::new(b))
    }

    /// Named standpoints occurring in the expression (excluding `*`).
    pub fn names<'a>(&'a self, out: &mut impl FnMut(&'a str)) {
        match self {
            StandpointExpr::Star => {}
            StandpointExpr::Named(s) => out(s),
            StandpointExpr::Union(a, b)
            | StandpointExpr::Intersection(a, b)
            | StandpointExpr::Minus(a, b) => {
                a.names(out);
                b.names(out);
            }
        }
    }
}

impl fmt::Display for StandpointExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            StandpointExpr::Star => f.write_str("*"),
            StandpointExpr::Named(s) => f.write_str(s),
            StandpointExpr::Union(a, b) => write!(f, "({a} ∪ {b})"),
            StandpointExpr::Intersection(a, b) => write!(f, "({a} ∩ {b})"),
            StandpointExpr::Minus(a, b) => write!(f, "({a} \\ {b})"),
        }
    }
}

/// Boolean combination of (possibly modalised) TBox axioms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Atom(TBoxAxiom),
    /// Reference to a named standpoint axiom, stored without the `§`.
    Ref(String),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Box(StandpointExpr, Box<Formula>),
    Diamond(StandpointExpr, Box<Formula>),
}

impl Formula {
    pub fn atom(a: TBoxAxiom) -> Self {
        Formula::Atom(a)
    }

    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Self {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Self {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn boxed(e: StandpointExpr, f: Formula) -> Self {
        Formula::Box(e, Box::new(f))
    }

    pub fn diamond(e: StandpointExpr, f: Formula) -> Self {
        Formula::Diamond(e, Box::new(f))
    }

    /// Number of nested modalities along the deepest path.
    pub fn modal_depth(&self) -> usize {
        match self {
            Formula::Atom(_) | Formula::Ref(_) => 0,
            Formula::Not(f) => f.modal_depth(),
            Formula::And(a, b) | Formula::Or(a, b) => a.modal_depth().max(b.modal_depth()),
            Formula::Box(_, f) | Formula::Diamond(_, f) => 1 + f.modal_depth(),
        }
    }

    pub fn walk<'a>(&'a self, visit: &mut impl FnMut(&'a Formula)) {
        visit(self);
        match self {
            Formula::Atom(_) | Formula::Ref(_) => {}
            Formula::Not(f) | Formula::Box(_, f) | Formula::Diamond(_, f) => f.walk(visit),
            Formula::And(a, b) | Formula::Or(a, b) => {
                a.walk(visit);
                b.walk(visit);
            }
        }
    }

    /// All atoms, in left-to-right order.
    pub fn atoms(&self) -> Vec<&TBoxAxiom> {
        let mut out = Vec::new();
        self.walk(&mut |f| {
            if let Formula::Atom(a) = f {
                out.push(a);
            }
        });
        out
    }

    /// True if the shape is producible by the annotation grammar: modalities
    /// wrap only atoms and negation wraps only atoms, references or modalities.
    pub fn is_parser_shaped(&self) -> bool {
        match self {
            Formula::Atom(_) | Formula::Ref(_) => true,
            Formula::Not(f) => matches!(
                **f,
                Formula::Atom(_) | Formula::Ref(_) | Formula::Box(..) | Formula::Diamond(..)
            ) && f.is_parser_shaped(),
            Formula::And(a, b) | Formula::Or(a, b) => a.is_parser_shaped() && b.is_parser_shaped(),
            Formula::Box(_, f) | Formula::Diamond(_, f) => matches!(**f, Formula::Atom(_)),
        }
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Formula::Atom(a) => write!(f, "[{a}]"),
            Formula::Ref(n) => write!(f, "§{n}"),
            Formula::Not(g) => write!(f, "¬{g}"),
            Formula::And(a, b) => write!(f, "({a} ∧ {b})"),
            Formula::Or(a, b) => write!(f, "({a} ∨ {b})"),
            Formula::Box(e, g) => write!(f, "□_{e}{g}"),
            Formula::Diamond(e, g) => write!(f, "◇_{e}{g}"),
        }
    }
}

/// Names introduced by `Declaration(...)` axioms.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Declarations {
    pub concepts: Vec<Name>,
    pub roles: Vec<Name>,
    pub individuals: Vec<Name>,
}

/// A sentential standpoint knowledge base.
///
/// `axioms` are the unannotated TBox axioms, which hold implicitly under
/// `□_*`. `named` holds the annotated axioms that carry a `§name` and are
/// only used through references in `formulas`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StandpointKb {
    pub ontology_iri: String,
    /// Namespace used for unprefixed names (the `:` prefix).
    pub namespace: String,
    pub rias: Vec<RoleInclusion>,
    pub axioms: Vec<TBoxAxiom>,
    pub formulas: Vec<Formula>,
    pub named: IndexMap<String, Formula>,
    pub declarations: Declarations,
}

impl StandpointKb {
    pub fn new(ontology_iri: impl Into<String>) -> Self {
        let ontology_iri = ontology_iri.into();
        let namespace = format!("{ontology_iri}#");
        StandpointKb {
            ontology_iri,
            namespace,
            rias: Vec::new(),
            axioms: Vec::new(),
            formulas: Vec::new(),
            named: IndexMap::new(),
            declarations: Declarations::default(),
        }
    }

    /// Every TBox axiom the KB mentions, including those inside formulas and
    /// named standpoint axioms.
    pub fn all_tbox_axioms(&self) -> impl Iterator<Item = &TBoxAxiom> {
        self.axioms.iter().chain(
            self.formulas
                .iter()
                .chain(self.named.values())
                .flat_map(Formula::atoms),
        )
    }
}

/// Output of the translation: plain SROIQ axioms over mangled names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PlainKb {
    pub ontology_iri: String,
    pub namespace: String,
    pub axioms: Vec<PlainAxiom>,
    pub declarations: Declarations,
}

impl PlainKb {
    pub fn new(ontology_iri: impl Into<String>) -> Self {
        let ontology_iri = ontology_iri.into();
        let namespace = format!("{ontology_iri}#");
        PlainKb {
            ontology_iri,
            namespace,
            axioms: Vec::new(),
            declarations: Declarations::default(),
        }
    }

    pub fn rias(&self) -> impl Iterator<Item = &RoleInclusion> {
        self.axioms.iter().filter_map(|a| match a {
            PlainAxiom::Ria(r) => Some(r),
            PlainAxiom::TBox(_) => None,
        })
    }

    pub fn tbox(&self) -> impl Iterator<Item = &TBoxAxiom> {
        self.axioms.iter().filter_map(|a| match a {
            PlainAxiom::TBox(t) => Some(t),
            PlainAxiom::Ria(_) => None,
        })
    }
}
