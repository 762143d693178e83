//! Functional-style output.
//!
//! Names in the document's default namespace are abbreviated as `:local`;
//! everything else is written as a full IRI. Standpoint formulas are written
//! back as `standpointLabel` annotations.

use std::fmt::Write as _;

use crate::frontend::STANDPOINT_LABEL;
use crate::model::{
    Concept, Formula, Name, PlainAxiom, PlainKb, Role, RoleInclusion, Signature, StandpointExpr, StandpointKb,
    TBoxAxiom, OWL_NS,
};
use crate::model::signature_of;

/// Renders names relative to a default namespace.
#[derive(Debug, Clone, Copy)]
pub struct Emitter<'a> {
    namespace: &'a str,
}

const MANCHESTER_RESERVED: &[&str] = &[
    "and", "or", "not", "some", "only", "min", "max", "exactly", "Self", "inverse", "Thing", "Nothing",
];

fn abbreviable(local: &str) -> bool {
    let mut chars = local.chars();
    matches!(chars.next(), Some(c) if c.is_alphabetic() || c == '_')
        && local.chars().all(|c| c.is_alphanumeric() || matches!(c, '_' | '-' | '.'))
        && !MANCHESTER_RESERVED.contains(&local)
}

impl<'a> Emitter<'a> {
    pub fn new(namespace: &'a str) -> Self {
        Emitter { namespace }
    }

    fn name(&self, n: &Name) -> String {
        if n.base == self.namespace && abbreviable(&n.local) {
            format!(":{}", n.local)
        } else {
            format!("<{}>", n.iri())
        }
    }

    fn manchester_name(&self, n: &Name) -> String {
        if n.base == self.namespace && abbreviable(&n.local) {
            n.local.clone()
        } else {
            format!("<{}>", n.iri())
        }
    }

    pub fn role(&self, r: &Role) -> String {
        match r {
            Role::Named(n) => self.name(n),
            Role::Inverse(n) => format!("ObjectInverseOf({})", self.name(n)),
            Role::Universal => "owl:topObjectProperty".to_owned(),
        }
    }

    pub fn concept(&self, c: &Concept) -> String {
        let mut out = String::new();
        self.write_concept(&mut out, c);
        out
    }

    fn write_concept(&self, out: &mut String, c: &Concept) {
        match c {
            Concept::Named(n) => out.push_str(&self.name(n)),
            Concept::Nominal(a) => {
                let _ = write!(out, "ObjectOneOf({})", self.name(a));
            }
            Concept::Top => out.push_str("owl:Thing"),
            Concept::Bottom => out.push_str("owl:Nothing"),
            Concept::Not(d) => {
                out.push_str("ObjectComplementOf(");
                self.write_concept(out, d);
                out.push(')');
            }
            Concept::And(..) | Concept::Or(..) => {
                let (kw, parts) = match c {
                    Concept::And(..) => ("ObjectIntersectionOf", left_spine(c, and_parts)),
                    _ => ("ObjectUnionOf", left_spine(c, or_parts)),
                };
                out.push_str(kw);
                out.push('(');
                for (i, p) in parts.iter().enumerate() {
                    if i > 0 {
                        out.push(' ');
                    }
                    self.write_concept(out, p);
                }
                out.push(')');
            }
            Concept::All(r, d) => self.restriction(out, "ObjectAllValuesFrom", None, r, Some(d)),
            Concept::Some(r, d) => self.restriction(out, "ObjectSomeValuesFrom", None, r, Some(d)),
            Concept::SelfRestriction(r) => self.restriction(out, "ObjectHasSelf", None, r, None),
            Concept::AtMost(n, r, d) => self.restriction(out, "ObjectMaxCardinality", Some(*n), r, Some(d)),
            Concept::AtLeast(n, r, d) => self.restriction(out, "ObjectMinCardinality", Some(*n), r, Some(d)),
        }
    }

    fn restriction(&self, out: &mut String, kw: &str, n: Option<u32>, r: &Role, filler: Option<&Concept>) {
        out.push_str(kw);
        out.push('(');
        if let Some(n) = n {
            let _ = write!(out, "{n} ");
        }
        out.push_str(&self.role(r));
        if let Some(d) = filler {
            out.push(' ');
            self.write_concept(out, d);
        }
        out.push(')');
    }

    pub fn tbox(&self, a: &TBoxAxiom, annotation: Option<&str>) -> String {
        let ann = annotation.map_or(String::new(), |a| format!("{a} "));
        match a {
            TBoxAxiom::SubClassOf(c, d) => format!("SubClassOf({ann}{} {})", self.concept(c), self.concept(d)),
            TBoxAxiom::Equivalent(c, d) => {
                format!("EquivalentClasses({ann}{} {})", self.concept(c), self.concept(d))
            }
        }
    }

    pub fn ria(&self, ria: &RoleInclusion) -> String {
        let head = self.name(&ria.head);
        match ria.chain.as_slice() {
            [single] => format!("SubObjectPropertyOf({} {head})", self.role(single)),
            chain => {
                let chain: Vec<String> = chain.iter().map(|r| self.role(r)).collect();
                format!("SubObjectPropertyOf(ObjectPropertyChain({}) {head})", chain.join(" "))
            }
        }
    }

    pub fn axiom(&self, a: &PlainAxiom) -> String {
        match a {
            PlainAxiom::TBox(t) => self.tbox(t, None),
            PlainAxiom::Ria(r) => self.ria(r),
        }
    }

    /// Manchester rendering, as used inside label payloads.
    pub fn manchester(&self, c: &Concept) -> String {
        self.manchester_at(c, Level::Or)
    }

    fn manchester_at(&self, c: &Concept, level: Level) -> String {
        let (own, text) = match c {
            Concept::Named(n) => (Level::Atom, self.manchester_name(n)),
            Concept::Nominal(a) => (Level::Atom, format!("{{{}}}", self.manchester_name(a))),
            Concept::Top => (Level::Atom, "owl:Thing".to_owned()),
            Concept::Bottom => (Level::Atom, "owl:Nothing".to_owned()),
            Concept::Or(..) => {
                let parts: Vec<String> = left_spine(c, or_parts)
                    .into_iter()
                    .enumerate()
                    .map(|(i, p)| self.manchester_at(p, if i == 0 { Level::Or } else { Level::And }))
                    .collect();
                (Level::Or, parts.join(" or "))
            }
            Concept::And(..) => {
                let parts: Vec<String> = left_spine(c, and_parts)
                    .into_iter()
                    .enumerate()
                    .map(|(i, p)| self.manchester_at(p, if i == 0 { Level::And } else { Level::Unary }))
                    .collect();
                (Level::And, parts.join(" and "))
            }
            Concept::Not(d) => (Level::Unary, format!("not {}", self.manchester_at(d, Level::Unary))),
            Concept::Some(r, d) => (
                Level::Unary,
                format!("{} some {}", self.manchester_role(r), self.manchester_at(d, Level::Unary)),
            ),
            Concept::All(r, d) => (
                Level::Unary,
                format!("{} only {}", self.manchester_role(r), self.manchester_at(d, Level::Unary)),
            ),
            Concept::SelfRestriction(r) => (Level::Unary, format!("{} Self", self.manchester_role(r))),
            Concept::AtLeast(n, r, d) => (
                Level::Unary,
                format!("{} min {n} {}", self.manchester_role(r), self.manchester_at(d, Level::Unary)),
            ),
            Concept::AtMost(n, r, d) => (
                Level::Unary,
                format!("{} max {n} {}", self.manchester_role(r), self.manchester_at(d, Level::Unary)),
            ),
        };
        if own < level {
            format!("({text})")
        } else {
            text
        }
    }

    fn manchester_role(&self, r: &Role) -> String {
        match r {
            Role::Named(n) => self.manchester_name(n),
            Role::Inverse(n) => format!("inverse ({})", self.manchester_name(n)),
            Role::Universal => "owl:topObjectProperty".to_owned(),
        }
    }

    /// XML payload of a formula, wrapped in `<booleanCombination>`.
    pub fn formula_xml(&self, f: &Formula) -> String {
        let mut out = String::from("<booleanCombination>");
        self.write_formula(&mut out, f);
        out.push_str("</booleanCombination>");
        out
    }

    fn write_formula(&self, out: &mut String, f: &Formula) {
        match f {
            Formula::Atom(a) => self.write_std_axiom(out, a),
            Formula::Ref(n) => {
                let _ = write!(out, "<standpointAxiom name=\"§{n}\"/>");
            }
            Formula::Not(g) => {
                out.push_str("<NOT>");
                self.write_formula(out, g);
                out.push_str("</NOT>");
            }
            Formula::And(..) | Formula::Or(..) => {
                let (tag, parts) = match f {
                    Formula::And(..) => ("AND", formula_spine(f, true)),
                    _ => ("OR", formula_spine(f, false)),
                };
                let _ = write!(out, "<{tag}>");
                for p in parts {
                    self.write_formula(out, p);
                }
                let _ = write!(out, "</{tag}>");
            }
            Formula::Box(e, g) | Formula::Diamond(e, g) => {
                let tag = if matches!(f, Formula::Box(..)) { "Box" } else { "Diamond" };
                let _ = write!(out, "<{tag}>");
                write_sp_expr(out, e);
                self.write_formula(out, g);
                let _ = write!(out, "</{tag}>");
            }
        }
    }

    fn write_std_axiom(&self, out: &mut String, a: &TBoxAxiom) {
        let (tag, [c, d]) = match a {
            TBoxAxiom::SubClassOf(..) => ("subClassOf", a.concepts()),
            TBoxAxiom::Equivalent(..) => ("equivalentClasses", a.concepts()),
        };
        let _ = write!(
            out,
            "<{tag}><LHS>{}</LHS><RHS>{}</RHS></{tag}>",
            xml_escape(&self.manchester(c)),
            xml_escape(&self.manchester(d))
        );
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
enum Level {
    Or,
    And,
    Unary,
    Atom,
}

fn and_parts(c: &Concept) -> Option<(&Concept, &Concept)> {
    match c {
        Concept::And(a, b) => Some((a, b)),
        _ => None,
    }
}

fn or_parts(c: &Concept) -> Option<(&Concept, &Concept)> {
    match c {
        Concept::Or(a, b) => Some((a, b)),
        _ => None,
    }
}

/// Flattens the left spine only, so that parsing the n-ary form (which
/// folds to the left) gives back the same tree.
fn left_spine<'c>(c: &'c Concept, split: fn(&Concept) -> Option<(&Concept, &Concept)>) -> Vec<&'c Concept> {
    let mut parts = Vec::new();
    let mut cur = c;
    while let Some((a, b)) = split(cur) {
        parts.push(b);
        cur = a;
    }
    parts.push(cur);
    parts.reverse();
    parts
}

fn formula_spine(f: &Formula, and: bool) -> Vec<&Formula> {
    let mut parts = Vec::new();
    let mut cur = f;
    loop {
        match (cur, and) {
            (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
                parts.push(&**b);
                cur = a;
            }
            _ => break,
        }
    }
    parts.push(cur);
    parts.reverse();
    parts
}

fn write_sp_expr(out: &mut String, e: &StandpointExpr) {
    match e {
        StandpointExpr::Star => out.push_str("<Standpoint name=\"*\"/>"),
        StandpointExpr::Named(s) => {
            let _ = write!(out, "<Standpoint name=\"{}\"/>", xml_escape(s));
        }
        StandpointExpr::Union(..) | StandpointExpr::Intersection(..) => {
            let union = matches!(e, StandpointExpr::Union(..));
            let mut parts = Vec::new();
            let mut cur = e;
            loop {
                match (cur, union) {
                    (StandpointExpr::Union(a, b), true) | (StandpointExpr::Intersection(a, b), false) => {
                        parts.push(&**b);
                        cur = a;
                    }
                    _ => break,
                }
            }
            parts.push(cur);
            parts.reverse();
            let tag = if union { "UNION" } else { "INTERSECTION" };
            let _ = write!(out, "<{tag}>");
            for p in parts {
                write_sp_expr(out, p);
            }
            let _ = write!(out, "</{tag}>");
        }
        StandpointExpr::Minus(a, b) => {
            out.push_str("<MINUS>");
            write_sp_expr(out, a);
            write_sp_expr(out, b);
            out.push_str("</MINUS>");
        }
    }
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;").replace('<', "&lt;").replace('>', "&gt;").replace('"', "&quot;")
}

fn literal(s: &str) -> String {
    format!("\"{}\"", s.replace('\\', "\\\\").replace('"', "\\\""))
}

/// Renders a class expression with `:` abbreviating nothing; every name is
/// written as a full IRI.
pub fn serialize_concept(c: &Concept) -> String {
    Emitter::new("").concept(c)
}

/// A knowledge base that can be written out.
pub enum KbRef<'a> {
    Plain(&'a PlainKb),
    Standpoint(&'a StandpointKb),
}

impl<'a> From<&'a PlainKb> for KbRef<'a> {
    fn from(kb: &'a PlainKb) -> Self {
        KbRef::Plain(kb)
    }
}

impl<'a> From<&'a StandpointKb> for KbRef<'a> {
    fn from(kb: &'a StandpointKb) -> Self {
        KbRef::Standpoint(kb)
    }
}

/// `(tag, e, a)` for `□_e a` or `◇_e a` with `a` a plain axiom.
fn modal_atom(f: &Formula) -> Option<(&'static str, &StandpointExpr, &TBoxAxiom)> {
    let (tag, e, g) = match f {
        Formula::Box(e, g) => ("Box", e, g),
        Formula::Diamond(e, g) => ("Diamond", e, g),
        _ => return None,
    };
    match &**g {
        Formula::Atom(a) => Some((tag, e, a)),
        _ => None,
    }
}

fn labelled_axiom(em: &Emitter, name: Option<&str>, f: &Formula) -> String {
    let Some((tag, e, atom)) = modal_atom(f) else {
        panic!("named axiom §{} is not a modality over an axiom", name.unwrap_or_default());
    };
    let mut payload = match name {
        Some(name) => format!("<standpointAxiom name=\"§{name}\"><{tag}>"),
        None => format!("<standpointAxiom><{tag}>"),
    };
    write_sp_expr(&mut payload, e);
    let _ = write!(payload, "</{tag}></standpointAxiom>");
    let ann = format!("Annotation(:{STANDPOINT_LABEL} {})", literal(&payload));
    em.tbox(atom, Some(&ann))
}

fn header(out: &mut String, namespace: &str, iri: &str) {
    let _ = writeln!(out, "Prefix(:=<{namespace}>)");
    let _ = writeln!(out, "Prefix(owl:=<{OWL_NS}>)");
    let _ = writeln!(out);
    let _ = writeln!(out, "Ontology(<{iri}>");
}

fn declarations(out: &mut String, em: &Emitter, sig: &Signature) {
    let groups = [
        ("Class", &sig.concepts),
        ("ObjectProperty", &sig.roles),
        ("NamedIndividual", &sig.individuals),
    ];
    for (kw, names) in groups {
        let mut rendered: Vec<String> = names.iter().map(|n| em.name(n)).collect();
        rendered.sort();
        for n in rendered {
            let _ = writeln!(out, "Declaration({kw}({n}))");
        }
    }
}

/// Writes a knowledge base as a functional-style document. Output depends
/// only on the knowledge base.
///
/// For standpoint knowledge bases a formula that is a single modality over
/// an axiom is written as a `standpointAxiom` label on that axiom, like the
/// named axioms; every other formula becomes an ontology-level
/// `booleanCombination` label.
///
/// # Panics
///
/// If a named axiom is not a single modality over a plain axiom, the only
/// shape the label grammar can carry.
pub fn serialize_kb<'a>(kb: impl Into<KbRef<'a>>) -> String {
    let mut out = String::new();
    match kb.into() {
        KbRef::Plain(kb) => {
            let em = Emitter::new(&kb.namespace);
            header(&mut out, &kb.namespace, &kb.ontology_iri);
            declarations(&mut out, &em, &Signature::of_plain(kb));
            for a in &kb.axioms {
                let _ = writeln!(out, "{}", em.axiom(a));
            }
        }
        KbRef::Standpoint(kb) => {
            let em = Emitter::new(&kb.namespace);
            header(&mut out, &kb.namespace, &kb.ontology_iri);
            let (labelled, combined): (Vec<&Formula>, Vec<&Formula>) =
                kb.formulas.iter().partition(|f| modal_atom(f).is_some());
            for f in combined {
                let _ = writeln!(out, "Annotation(:{STANDPOINT_LABEL} {})", literal(&em.formula_xml(f)));
            }
            if !kb.formulas.is_empty() || !kb.named.is_empty() {
                let _ = writeln!(out, "Declaration(AnnotationProperty(:{STANDPOINT_LABEL}))");
            }
            declarations(&mut out, &em, &signature_of(kb));
            for a in &kb.axioms {
                let _ = writeln!(out, "{}", em.tbox(a, None));
            }
            for f in labelled {
                let _ = writeln!(out, "{}", labelled_axiom(&em, None, f));
            }
            for (name, f) in &kb.named {
                let _ = writeln!(out, "{}", labelled_axiom(&em, Some(name), f));
            }
            for r in &kb.rias {
                let _ = writeln!(out, "{}", em.ria(r));
            }
        }
    }
    out.push_str(")\n");
    out
}
