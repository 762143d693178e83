//! Input side: the functional-style ontology document, `standpointLabel`
//! payloads, Manchester class expressions and the simple query syntax.

mod assemble;
mod functional;
mod label;
mod manchester;
mod query;

use std::collections::BTreeMap;

use thiserror::Error;

use crate::model::{Declarations, EntityKind, ModelError, Name, PlainAxiom, OWL_NS};

pub use assemble::{assemble_kb, assemble_plain};
pub use functional::{parse_document, parse_document_with};
pub use label::{parse_formula_xml, parse_standpoint_label, LabeledConstruct, SpOperator};
pub use manchester::parse_manchester_class;
pub use query::parse_simple_query;

/// Local name of the annotation property carrying standpoint constructs.
pub const STANDPOINT_LABEL: &str = "standpointLabel";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum FrontendError {
    #[error("syntax error at {line}:{col}: expected {expected}, found `{found}`")]
    Syntax {
        line: usize,
        col: usize,
        expected: String,
        found: String,
    },
    #[error("unsupported construct `{0}`")]
    Unsupported(String),
    #[error("malformed XML in standpoint label: {0}")]
    Xml(String),
    #[error("standpoint label violates the annotation grammar: {0}")]
    Grammar(String),
    #[error("invalid {kind} name `{name}`")]
    BadName { kind: &'static str, name: String },
    #[error("unknown prefix `{0}`")]
    UnknownPrefix(String),
    #[error("duplicate standpoint axiom name `§{0}`")]
    DuplicateAxiomName(String),
    #[error("standpoint annotation on a role axiom at line {0}")]
    SpAxiomOnRia(usize),
    #[error("annotation at {line}:{col} (payload {payload:?}): {source}")]
    InAnnotation {
        line: usize,
        col: usize,
        payload: String,
        source: Box<FrontendError>,
    },
    #[error(transparent)]
    Model(#[from] ModelError),
}

/// Prefix table used to resolve abbreviated names.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Prefixes {
    map: BTreeMap<String, String>,
    policy: NamePolicy,
}

/// Whether entity names may contain the reserved separator `__`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum NamePolicy {
    /// Reject reserved names (standpoint input).
    #[default]
    Strict,
    /// Accept them (reading translated output back).
    AllowReserved,
}

impl Default for Prefixes {
    fn default() -> Self {
        let map = [
            ("owl", OWL_NS),
            ("rdf", "http://www.w3.org/1999/02/22-rdf-syntax-ns#"),
            ("rdfs", "http://www.w3.org/2000/01/rdf-schema#"),
            ("xsd", "http://www.w3.org/2001/XMLSchema#"),
        ]
        .into_iter()
        .map(|(k, v)| (k.to_owned(), v.to_owned()))
        .collect();
        Prefixes {
            map,
            policy: NamePolicy::Strict,
        }
    }
}

impl Prefixes {
    pub fn with_default(namespace: &str) -> Self {
        let mut p = Prefixes::default();
        p.insert("", namespace);
        p
    }

    pub fn with_policy(mut self, policy: NamePolicy) -> Self {
        self.policy = policy;
        self
    }

    fn name(&self, kind: EntityKind, base: &str, local: &str) -> Result<Name, FrontendError> {
        match self.policy {
            NamePolicy::Strict => Ok(Name::checked(kind, base, local)?),
            NamePolicy::AllowReserved if local.is_empty() => Err(FrontendError::BadName {
                kind: kind.label(),
                name: local.to_owned(),
            }),
            NamePolicy::AllowReserved => Ok(Name::new(base, local)),
        }
    }

    pub fn insert(&mut self, prefix: &str, iri: &str) {
        self.map.insert(prefix.to_owned(), iri.to_owned());
    }

    pub fn get(&self, prefix: &str) -> Option<&str> {
        self.map.get(prefix).map(String::as_str)
    }

    /// Namespace of the empty prefix.
    pub fn default_namespace(&self) -> Option<&str> {
        self.get("")
    }

    /// Resolves `pfx:local`, `:local` or a bare `local` (default namespace).
    pub fn resolve(&self, kind: EntityKind, text: &str) -> Result<Name, FrontendError> {
        let (prefix, local) = text.split_once(':').unwrap_or(("", text));
        let base = self
            .get(prefix)
            .ok_or_else(|| FrontendError::UnknownPrefix(prefix.to_owned()))?;
        self.name(kind, base, local)
    }

    pub fn resolve_iri(&self, kind: EntityKind, iri: &str) -> Result<Name, FrontendError> {
        let n = Name::from_iri(iri);
        self.name(kind, &n.base, &n.local)
    }
}

/// An annotation `(property local name, literal)` with its source position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Annotation {
    pub property: String,
    pub value: String,
    pub line: usize,
    pub col: usize,
}

impl Annotation {
    pub fn is_standpoint_label(&self) -> bool {
        self.property == STANDPOINT_LABEL
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawAxiom {
    pub axiom: PlainAxiom,
    pub annotations: Vec<Annotation>,
    pub line: usize,
}

/// A parsed document before standpoint annotations are interpreted.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub prefixes: Prefixes,
    pub ontology_iri: String,
    pub annotations: Vec<Annotation>,
    pub declarations: Declarations,
    pub axioms: Vec<RawAxiom>,
}
