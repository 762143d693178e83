//! Merging a plain source ontology into a standpoint ontology.

use standpoint::model::{EntityKind, Formula, Name, PlainAxiom, PlainKb, StandpointExpr, StandpointKb, OWL_NS};

/// Namespace that receives the source vocabulary for standpoint `s`.
pub fn import_namespace(input_iri: &str, standpoint: &str) -> String {
    let segment = if standpoint == "*" { "STAR" } else { standpoint };
    format!("{}/imported/{segment}#", input_iri.trim_end_matches(['/', '#']))
}

/// Adds every class axiom of `source` to `kb` under `□_standpoint`, and its
/// role inclusions unannotated. Source names move to [`import_namespace`].
pub fn import(kb: &StandpointKb, source: &PlainKb, standpoint: &str) -> StandpointKb {
    let ns = import_namespace(&kb.ontology_iri, standpoint);
    let mut rebase = |n: &Name| {
        if n.base == OWL_NS {
            n.clone()
        } else {
            Name::new(ns.clone(), n.local.clone())
        }
    };
    let e = StandpointExpr::name(standpoint);
    let mut out = kb.clone();
    for a in &source.axioms {
        match a {
            PlainAxiom::TBox(t) => {
                let t = t.map_names(&mut |_: EntityKind, n: &Name| rebase(n));
                out.formulas.push(Formula::boxed(e.clone(), Formula::atom(t)));
            }
            PlainAxiom::Ria(r) => out.rias.push(r.map_names(&mut rebase)),
        }
    }
    let decl = &source.declarations;
    out.declarations.concepts.extend(decl.concepts.iter().map(&mut rebase));
    out.declarations.roles.extend(decl.roles.iter().map(&mut rebase));
    out.declarations.individuals.extend(decl.individuals.iter().map(&mut rebase));
    out
}
