//! Bounded model finding and direct evaluation of the semantics.
//!
//! Searches ground the problem over a fixed domain into a Boolean circuit
//! and solve it with a clause-learning solver that decides variables in a
//! fixed order, false first. The first model found is therefore the first
//! interpretation in the canonical enumeration order, exactly what a plain
//! enumeration with the same order would return. Every witness is checked
//! against the direct evaluator before it is returned.

mod circuit;
mod ground;
mod interp;
pub mod naive;
mod sat;
mod search;

use thiserror::Error;

use crate::model::Name;
use crate::normalizer::NormalizeError;
use crate::translator::TranslateError;

pub use interp::{
    eval_concept, full_set, holds_axiom, holds_formula, holds_ria, holds_tbox, kb_holds, members, plain_kb_holds,
    ElementSet, PlainInterpretation, Relation, StandpointStructure, MAX_DOMAIN,
};
pub use search::{
    check_entailment_bounded, equisatisfiability, equisatisfiability_batch, find_plain_model, find_plain_model_with,
    find_standpoint_model, find_standpoint_model_with, Agreement, SearchLimits, Verdict,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum OracleError {
    #[error("unknown {kind} `{name}`")]
    UnknownName { kind: &'static str, name: String },
    #[error("unresolved reference `§{0}`")]
    UnresolvedRef(String),
    #[error(transparent)]
    Normalize(#[from] NormalizeError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error("domain size {0} exceeds the supported maximum of {MAX_DOMAIN}")]
    DomainTooLarge(usize),
    #[error("search space of {bits} bits exceeds the limit of {limit} bits")]
    SearchSpaceTooLarge { bits: usize, limit: usize },
    #[error("search gave up after {conflicts} conflicts")]
    BudgetExhausted { conflicts: u64 },
    #[error("internal error: candidate model failed verification")]
    WitnessRejected,
}

impl OracleError {
    fn unknown(kind: &'static str, n: &Name) -> Self {
        OracleError::UnknownName { kind, name: n.iri() }
    }
}
