use crate::model::{Formula, PlainAxiom, PlainKb, StandpointKb};
use crate::normalizer::desugar_sharpening;

use super::{parse_standpoint_label, Annotation, FrontendError, LabeledConstruct, Prefixes, RawDocument, SpOperator};

fn label(a: &Annotation, prefixes: &Prefixes) -> Result<LabeledConstruct, FrontendError> {
    parse_standpoint_label(&a.value, prefixes).map_err(|e| in_annotation(a, e))
}

fn in_annotation(a: &Annotation, e: FrontendError) -> FrontendError {
    FrontendError::InAnnotation {
        line: a.line,
        col: a.col,
        payload: a.value.clone(),
        source: Box::new(e),
    }
}

/// Interprets the `standpointLabel` annotations of a parsed document.
///
/// Ontology-level labels become formulas (sharpenings are desugared);
/// axiom-level labels put the annotated axiom under a modality. Named
/// standpoint axioms are only reachable through references.
pub fn assemble_kb(doc: &RawDocument) -> Result<StandpointKb, FrontendError> {
    let mut kb = StandpointKb::new(doc.ontology_iri.clone());
    if let Some(ns) = doc.prefixes.default_namespace() {
        kb.namespace = ns.to_owned();
    }
    kb.declarations = doc.declarations.clone();

    for a in doc.annotations.iter().filter(|a| a.is_standpoint_label()) {
        match label(a, &doc.prefixes)? {
            LabeledConstruct::BoolComb(f) => kb.formulas.push(f),
            LabeledConstruct::Sharpening(e1, e2) => kb.formulas.push(desugar_sharpening(e1, e2)),
            LabeledConstruct::SpAxiom { .. } => {
                return Err(in_annotation(
                    a,
                    FrontendError::Grammar("a standpointAxiom label must annotate an axiom".into()),
                ))
            }
        }
    }

    for raw in &doc.axioms {
        let labels: Vec<&Annotation> = raw.annotations.iter().filter(|a| a.is_standpoint_label()).collect();
        let tbox = match &raw.axiom {
            PlainAxiom::Ria(ria) => {
                if !labels.is_empty() {
                    return Err(FrontendError::SpAxiomOnRia(raw.line));
                }
                kb.rias.push(ria.clone());
                continue;
            }
            PlainAxiom::TBox(t) => t,
        };
        if labels.is_empty() {
            kb.axioms.push(tbox.clone());
            continue;
        }
        for a in labels {
            let LabeledConstruct::SpAxiom { name, operator, expr } = label(a, &doc.prefixes)? else {
                return Err(in_annotation(
                    a,
                    FrontendError::Grammar(
                        "only standpointAxiom labels may annotate an axiom".into(),
                    ),
                ));
            };
            let atom = Formula::atom(tbox.clone());
            let f = match operator {
                SpOperator::Box => Formula::boxed(expr, atom),
                SpOperator::Diamond => Formula::diamond(expr, atom),
            };
            match name {
                Some(name) => {
                    if kb.named.contains_key(&name) {
                        return Err(FrontendError::DuplicateAxiomName(name));
                    }
                    kb.named.insert(name, f);
                }
                None => kb.formulas.push(f),
            }
        }
    }
    Ok(kb)
}

/// Builds a plain knowledge base from a document without standpoint labels.
pub fn assemble_plain(doc: &RawDocument) -> Result<PlainKb, FrontendError> {
    let labelled = doc
        .annotations
        .iter()
        .chain(doc.axioms.iter().flat_map(|a| &a.annotations))
        .find(|a| a.is_standpoint_label());
    if let Some(a) = labelled {
        return Err(in_annotation(
            a,
            FrontendError::Unsupported("standpoint labels in a plain ontology".into()),
        ));
    }
    let mut kb = PlainKb::new(doc.ontology_iri.clone());
    if let Some(ns) = doc.prefixes.default_namespace() {
        kb.namespace = ns.to_owned();
    }
    kb.declarations = doc.declarations.clone();
    kb.axioms = doc.axioms.iter().map(|a| a.axiom.clone()).collect();
    Ok(kb)
}
