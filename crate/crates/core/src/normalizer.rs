//! Reference resolution, sharpening desugaring, negation normal form and
//! the precisification bound.

use indexmap::IndexMap;
use thiserror::Error;

use crate::model::{Concept, Formula, StandpointExpr, StandpointKb, TBoxAxiom};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum NormalizeError {
    #[error("reference to undefined standpoint axiom `§{0}`")]
    UnresolvedRef(String),
    #[error("standpoint modality nested inside another: {0}")]
    NestedModality(String),
}

/// Replaces every `§name` reference in the formulas by a copy of the named
/// axiom. The named table is kept unchanged.
pub fn resolve_refs(kb: &StandpointKb) -> Result<StandpointKb, NormalizeError> {
    let formulas = kb
        .formulas
        .iter()
        .map(|f| substitute(f, &kb.named))
        .collect::<Result<_, _>>()?;
    Ok(StandpointKb {
        formulas,
        ..kb.clone()
    })
}

fn substitute(f: &Formula, named: &IndexMap<String, Formula>) -> Result<Formula, NormalizeError> {
    Ok(match f {
        Formula::Ref(n) => named
            .get(n)
            .cloned()
            .ok_or_else(|| NormalizeError::UnresolvedRef(n.clone()))?,
        Formula::Atom(_) => f.clone(),
        Formula::Not(g) => Formula::not(substitute(g, named)?),
        Formula::And(a, b) => Formula::and(substitute(a, named)?, substitute(b, named)?),
        Formula::Or(a, b) => Formula::or(substitute(a, named)?, substitute(b, named)?),
        Formula::Box(e, g) => Formula::boxed(e.clone(), substitute(g, named)?),
        Formula::Diamond(e, g) => Formula::diamond(e.clone(), substitute(g, named)?),
    })
}

/// `e1 ⪯ e2` as `□_{e1\e2}[⊤ ⊑ ⊥]`.
pub fn desugar_sharpening(e1: StandpointExpr, e2: StandpointExpr) -> Formula {
    Formula::boxed(
        StandpointExpr::minus(e1, e2),
        Formula::atom(TBoxAxiom::sub(Concept::Top, Concept::Bottom)),
    )
}

/// Pushes negation inward until it sits only directly above subclass atoms.
///
/// Modalities are dualised, Boolean connectives handled by De Morgan, and a
/// negated equivalence becomes the disjunction of its two negated
/// inclusions. Positive equivalences are left intact.
pub fn to_nnf(f: &Formula) -> Formula {
    nnf(f, false)
}

fn nnf(f: &Formula, negated: bool) -> Formula {
    match f {
        Formula::Atom(a) if !negated => Formula::Atom(a.clone()),
        Formula::Atom(TBoxAxiom::SubClassOf(..)) => Formula::not(f.clone()),
        Formula::Atom(TBoxAxiom::Equivalent(c, d)) => Formula::or(
            Formula::not(Formula::atom(TBoxAxiom::sub(c.clone(), d.clone()))),
            Formula::not(Formula::atom(TBoxAxiom::sub(d.clone(), c.clone()))),
        ),
        Formula::Ref(_) if negated => Formula::not(f.clone()),
        Formula::Ref(_) => f.clone(),
        Formula::Not(g) => nnf(g, !negated),
        Formula::And(a, b) if negated => Formula::or(nnf(a, true), nnf(b, true)),
        Formula::And(a, b) => Formula::and(nnf(a, false), nnf(b, false)),
        Formula::Or(a, b) if negated => Formula::and(nnf(a, true), nnf(b, true)),
        Formula::Or(a, b) => Formula::or(nnf(a, false), nnf(b, false)),
        Formula::Box(e, g) if negated => Formula::diamond(e.clone(), nnf(g, true)),
        Formula::Box(e, g) => Formula::boxed(e.clone(), nnf(g, false)),
        Formula::Diamond(e, g) if negated => Formula::boxed(e.clone(), nnf(g, true)),
        Formula::Diamond(e, g) => Formula::diamond(e.clone(), nnf(g, false)),
    }
}

/// True if negation occurs only directly above subclass atoms.
pub fn is_nnf(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) | Formula::Ref(_) => true,
        Formula::Not(g) => matches!(**g, Formula::Atom(TBoxAxiom::SubClassOf(..))),
        Formula::And(a, b) | Formula::Or(a, b) => is_nnf(a) && is_nnf(b),
        Formula::Box(_, g) | Formula::Diamond(_, g) => is_nnf(g),
    }
}

/// Number of precisifications the translation materialises: the number of
/// diamonds across all (NNF) formulas, and at least one.
pub fn count_precisifications(kb: &StandpointKb) -> usize {
    let diamonds: usize = kb
        .formulas
        .iter()
        .map(|f| {
            let mut n = 0;
            f.walk(&mut |g| {
                if matches!(g, Formula::Diamond(..)) {
                    n += 1;
                }
            });
            n
        })
        .sum();
    diamonds.max(1)
}

/// Resolves references, rewrites every formula to NNF and rejects nested
/// modalities. Named axioms are left as they are.
pub fn normalize_kb(kb: &StandpointKb) -> Result<StandpointKb, NormalizeError> {
    let mut kb = resolve_refs(kb)?;
    for f in &mut kb.formulas {
        if f.modal_depth() > 1 {
            return Err(NormalizeError::NestedModality(f.to_string()));
        }
        *f = to_nnf(f);
    }
    Ok(kb)
}
