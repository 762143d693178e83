//! Translation of sentential standpoint knowledge bases into plain SROIQ.
//!
//! Every precisification `π < p` gets its own copy of the vocabulary
//! (`A__π`, `r__π`). Membership of `π` in a standpoint `s` is the nullary
//! predicate `∀u.SP__s__π`, and Boolean combinations of axioms are encoded
//! with the universal role. Individuals are shared by all copies.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::model::{
    signature_of, Concept, EntityKind, EntityName, Formula, ModelError, Name, PlainAxiom, PlainKb, Role,
    RoleInclusion, StandpointExpr, StandpointKb, TBoxAxiom, RESERVED_SEPARATOR,
};
use crate::normalizer::count_precisifications;
use crate::par::{self, Parallelism};

/// Local-name prefix of the standpoint predicates.
pub const STANDPOINT_PREFIX: &str = "SP";
/// IRI-safe token for the universal standpoint `*`.
pub const STAR_TOKEN: &str = "STAR";

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error("standpoint modality nested inside another: {0}")]
    NestedModality(String),
    #[error("formula is not in negation normal form: {0}")]
    NotNormalized(String),
    #[error("unresolved reference `§{0}`")]
    UnresolvedRef(String),
    #[error("{given} precisifications requested but the knowledge base needs {required}")]
    BoundTooSmall { required: usize, given: usize },
}

/// Maps a name to its copy at precisification `index`, under `namespace`.
///
/// Concepts and roles become `n__π`, standpoints `SP__s__π` (with `*`
/// written as `STAR`); individuals keep their local name.
pub fn mangle(name: &EntityName, index: usize, namespace: &str) -> Result<EntityName, TranslateError> {
    let local = &name.name.local;
    if name.kind != EntityKind::Standpoint && local.contains(RESERVED_SEPARATOR) {
        return Err(ModelError::ReservedName(local.clone()).into());
    }
    let (kind, local) = match name.kind {
        EntityKind::Concept | EntityKind::Role => (name.kind, format!("{local}{RESERVED_SEPARATOR}{index}")),
        EntityKind::Individual => (name.kind, local.clone()),
        EntityKind::Standpoint => {
            let token = if local == "*" { STAR_TOKEN } else { local.as_str() };
            (
                EntityKind::Concept,
                format!("{STANDPOINT_PREFIX}{RESERVED_SEPARATOR}{token}{RESERVED_SEPARATOR}{index}"),
            )
        }
    };
    Ok(EntityName {
        kind,
        name: Name::new(namespace, local),
    })
}

fn standpoint_concept(s: &str, index: usize, namespace: &str) -> Concept {
    let e = EntityName {
        kind: EntityKind::Standpoint,
        name: Name::new("", s),
    };
    // Standpoint names never contain the separator.
    Concept::Named(mangle(&e, index, namespace).expect("standpoint names are valid").name)
}

/// `∀u.SP__s__π` for names, lifted through the set operators.
pub fn trans_e(index: usize, e: &StandpointExpr, namespace: &str) -> Concept {
    match e {
        StandpointExpr::Star => Concept::all(Role::Universal, standpoint_concept("*", index, namespace)),
        StandpointExpr::Named(s) => Concept::all(Role::Universal, standpoint_concept(s, index, namespace)),
        StandpointExpr::Intersection(a, b) => {
            Concept::and(trans_e(index, a, namespace), trans_e(index, b, namespace))
        }
        StandpointExpr::Union(a, b) => Concept::or(trans_e(index, a, namespace), trans_e(index, b, namespace)),
        StandpointExpr::Minus(a, b) => Concept::and(
            trans_e(index, a, namespace),
            Concept::not(trans_e(index, b, namespace)),
        ),
    }
}

/// Output local names for every input entity. Entities that share a local
/// name but live in different namespaces are kept apart by a suffix derived
/// from their namespace.
#[derive(Debug, Clone)]
pub struct Rebase {
    namespace: String,
    locals: BTreeMap<(EntityKind, Name), String>,
}

impl Rebase {
    pub fn new(kb: &StandpointKb, namespace: impl Into<String>) -> Self {
        let sig = signature_of(kb);
        let mut locals = BTreeMap::new();
        let groups = [
            (EntityKind::Concept, &sig.concepts),
            (EntityKind::Role, &sig.roles),
            (EntityKind::Individual, &sig.individuals),
        ];
        for (kind, names) in groups {
            let mut by_local: BTreeMap<&str, Vec<&Name>> = BTreeMap::new();
            for n in names {
                by_local.entry(n.local.as_str()).or_default().push(n);
            }
            let mut used: BTreeSet<String> = names.iter().map(|n| n.local.clone()).collect();
            for (local, mut group) in by_local {
                // The KB's own namespace keeps the plain local name.
                group.sort_by_key(|n| (n.base != kb.namespace, n.base.clone()));
                locals.insert((kind, group[0].clone()), local.to_owned());
                for n in &group[1..] {
                    let tag = namespace_tag(&n.base);
                    let sep = if local.ends_with('_') { "" } else { "_" };
                    let mut candidate = format!("{local}{sep}{tag}");
                    let mut k = 2;
                    while used.contains(&candidate) {
                        candidate = format!("{local}{sep}{tag}{k}");
                        k += 1;
                    }
                    used.insert(candidate.clone());
                    locals.insert((kind, (*n).clone()), candidate);
                }
            }
        }
        Rebase {
            namespace: namespace.into(),
            locals,
        }
    }

    pub fn namespace(&self) -> &str {
        &self.namespace
    }

    fn local(&self, kind: EntityKind, n: &Name) -> String {
        self.locals
            .get(&(kind, n.clone()))
            .cloned()
            .unwrap_or_else(|| n.local.clone())
    }

    fn rename(&self, kind: EntityKind, n: &Name, index: usize) -> Name {
        let e = EntityName {
            kind,
            name: Name::new("", self.local(kind, n)),
        };
        // Input names were validated by the parser; the rebase suffixes never
        // introduce the separator.
        mangle(&e, index, &self.namespace)
            .expect("rebased names are free of the reserved separator")
            .name
    }

    /// The concept with every name replaced by its copy at `index`.
    pub fn concept_at(&self, c: &Concept, index: usize) -> Concept {
        c.map_names(&mut |kind, n| self.rename(kind, n, index))
    }

    pub fn tbox_at(&self, a: &TBoxAxiom, index: usize) -> TBoxAxiom {
        a.map_names(&mut |kind, n| self.rename(kind, n, index))
    }

    pub fn ria_at(&self, ria: &RoleInclusion, index: usize) -> RoleInclusion {
        ria.map_names(&mut |n| self.rename(EntityKind::Role, n, index))
    }
}

fn namespace_tag(base: &str) -> String {
    let segment = base
        .trim_end_matches(['#', '/'])
        .rsplit(['/', '#'])
        .next()
        .unwrap_or("");
    let tag: String = segment.chars().filter(char::is_ascii_alphanumeric).collect();
    if tag.is_empty() {
        "ns".to_owned()
    } else {
        tag
    }
}

/// The formula translation `trans(π, φ)` for a formula in negation normal
/// form whose modalities are not nested.
pub fn trans(
    index: usize,
    f: &Formula,
    precisifications: usize,
    rebase: &Rebase,
) -> Result<Concept, TranslateError> {
    trans_inner(index, f, precisifications, rebase, false)
}

fn trans_inner(
    index: usize,
    f: &Formula,
    p: usize,
    rebase: &Rebase,
    in_modality: bool,
) -> Result<Concept, TranslateError> {
    let ns = rebase.namespace();
    Ok(match f {
        Formula::Atom(TBoxAxiom::SubClassOf(c, d)) => Concept::all(
            Role::Universal,
            Concept::or(
                Concept::not(rebase.concept_at(c, index)),
                rebase.concept_at(d, index),
            ),
        ),
        Formula::Atom(TBoxAxiom::Equivalent(c, d)) => Concept::and(
            trans_inner(index, &Formula::atom(TBoxAxiom::sub(c.clone(), d.clone())), p, rebase, in_modality)?,
            trans_inner(index, &Formula::atom(TBoxAxiom::sub(d.clone(), c.clone())), p, rebase, in_modality)?,
        ),
        Formula::Not(g) => match &**g {
            Formula::Atom(TBoxAxiom::SubClassOf(c, d)) => Concept::some(
                Role::Universal,
                Concept::and(
                    rebase.concept_at(c, index),
                    Concept::not(rebase.concept_at(d, index)),
                ),
            ),
            _ => return Err(TranslateError::NotNormalized(f.to_string())),
        },
        Formula::And(a, b) => Concept::and(
            trans_inner(index, a, p, rebase, in_modality)?,
            trans_inner(index, b, p, rebase, in_modality)?,
        ),
        Formula::Or(a, b) => Concept::or(
            trans_inner(index, a, p, rebase, in_modality)?,
            trans_inner(index, b, p, rebase, in_modality)?,
        ),
        Formula::Box(e, g) => {
            if in_modality {
                return Err(TranslateError::NestedModality(f.to_string()));
            }
            let parts = (0..p)
                .map(|k| {
                    Ok(Concept::or(
                        Concept::not(trans_e(k, e, ns)),
                        trans_inner(k, g, p, rebase, true)?,
                    ))
                })
                .collect::<Result<Vec<_>, TranslateError>>()?;
            Concept::and_all(parts)
        }
        Formula::Diamond(e, g) => {
            if in_modality {
                return Err(TranslateError::NestedModality(f.to_string()));
            }
            let parts = (0..p)
                .map(|k| Ok(Concept::and(trans_e(k, e, ns), trans_inner(k, g, p, rebase, true)?)))
                .collect::<Result<Vec<_>, TranslateError>>()?;
            Concept::or_all(parts)
        }
        Formula::Ref(n) => return Err(TranslateError::UnresolvedRef(n.clone())),
    })
}

#[derive(Debug, Clone, Default)]
pub struct TranslateOptions {
    /// Output ontology IRI; defaults to the input IRI with `/translated`.
    pub output_iri: Option<String>,
    /// Number of precisifications; defaults to the computed bound and may
    /// not be smaller than it.
    pub precisifications: Option<usize>,
    pub parallelism: Parallelism,
}

/// Translates a normalised knowledge base (references resolved, formulas in
/// NNF) with default options.
pub fn translate_kb(kb: &StandpointKb) -> Result<PlainKb, TranslateError> {
    translate_kb_with(kb, &TranslateOptions::default())
}

/// Emits, in order: the `⊤ ⊑ ∀u.SP__STAR__π` axioms; `⊤ ⊑ trans(π, φ)` for
/// every formula and `π` (identical copies collapsed); the per-`π` copies of
/// the plain axioms; the per-`π` copies of the role inclusions.
pub fn translate_kb_with(kb: &StandpointKb, options: &TranslateOptions) -> Result<PlainKb, TranslateError> {
    let required = count_precisifications(kb);
    let p = match options.precisifications {
        Some(given) if given < required => return Err(TranslateError::BoundTooSmall { required, given }),
        Some(given) => given,
        None => required,
    };
    let output_iri = options
        .output_iri
        .clone()
        .unwrap_or_else(|| format!("{}/translated", kb.ontology_iri));
    let mut out = PlainKb::new(output_iri);
    let rebase = Rebase::new(kb, out.namespace.clone());
    let ns = out.namespace.clone();

    for k in 0..p {
        out.axioms
            .push(TBoxAxiom::sub(Concept::Top, trans_e(k, &StandpointExpr::Star, &ns)).into());
    }

    let per_formula = par::map(&kb.formulas, options.parallelism, |f| {
        let mut seen = Vec::new();
        for k in 0..p {
            let c = trans(k, f, p, &rebase)?;
            if !seen.contains(&c) {
                seen.push(c);
            }
        }
        Ok::<_, TranslateError>(seen)
    });
    for group in per_formula {
        for c in group? {
            out.axioms.push(TBoxAxiom::sub(Concept::Top, c).into());
        }
    }

    for a in &kb.axioms {
        for k in 0..p {
            out.axioms.push(rebase.tbox_at(a, k).into());
        }
    }
    for ria in &kb.rias {
        for k in 0..p {
            out.axioms.push(PlainAxiom::Ria(rebase.ria_at(ria, k)));
        }
    }

    let sig = signature_of(kb);
    for k in 0..p {
        out.declarations
            .concepts
            .extend(sig.concepts.iter().map(|n| rebase.rename(EntityKind::Concept, n, k)));
        out.declarations
            .concepts
            .extend(sig.standpoints.iter().map(|s| match standpoint_concept(s, k, &ns) {
                Concept::Named(n) => n,
                _ => unreachable!(),
            }));
        out.declarations
            .roles
            .extend(sig.roles.iter().map(|n| rebase.rename(EntityKind::Role, n, k)));
    }
    out.declarations
        .individuals
        .extend(sig.individuals.iter().map(|n| rebase.rename(EntityKind::Individual, n, 0)));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const NS: &str = "http://ex.org/o#";
    const OUT: &str = "http://ex.org/o/translated#";

    fn a(s: &str) -> Concept {
        Concept::named(NS, s)
    }

    fn o(s: &str) -> Concept {
        Concept::named(OUT, s)
    }

    fn u_all(c: Concept) -> Concept {
        Concept::all(Role::Universal, c)
    }

    fn kb() -> StandpointKb {
        StandpointKb::new("http://ex.org/o")
    }

    #[test]
    fn mangling() {
        let c = EntityName {
            kind: EntityKind::Concept,
            name: Name::new(NS, "Forest"),
        };
        assert_eq!(mangle(&c, 0, OUT).unwrap().name, Name::new(OUT, "Forest__0"));
        let star = EntityName {
            kind: EntityKind::Standpoint,
            name: Name::new(NS, "*"),
        };
        let m = mangle(&star, 2, OUT).unwrap();
        assert_eq!(m.name, Name::new(OUT, "SP__STAR__2"));
        assert_eq!(m.kind, EntityKind::Concept);
        let bad = EntityName {
            kind: EntityKind::Concept,
            name: Name::new(NS, "A__x"),
        };
        assert!(matches!(
            mangle(&bad, 0, OUT),
            Err(TranslateError::Model(ModelError::ReservedName(_)))
        ));
        let ind = EntityName {
            kind: EntityKind::Individual,
            name: Name::new(NS, "a"),
        };
        assert_eq!(mangle(&ind, 3, OUT).unwrap().name, Name::new(OUT, "a"));
    }

    #[test]
    fn clashing_locals_are_disambiguated() {
        let mut k = kb();
        k.axioms.push(TBoxAxiom::sub(
            a("Forest"),
            Concept::named("http://ex.org/o/imported/LC#", "Forest"),
        ));
        let r = Rebase::new(&k, OUT);
        assert_eq!(r.concept_at(&a("Forest"), 0), o("Forest__0"));
        assert_eq!(
            r.concept_at(&Concept::named("http://ex.org/o/imported/LC#", "Forest"), 1),
            o("Forest_LC__1")
        );
    }

    #[test]
    fn empty_kb_floor() {
        let out = translate_kb(&kb()).unwrap();
        assert_eq!(
            out.axioms,
            vec![TBoxAxiom::sub(Concept::Top, u_all(o("SP__STAR__0"))).into()]
        );
        assert_eq!(out.ontology_iri, "http://ex.org/o/translated");
    }

    #[test]
    fn rias_are_copied_per_precisification() {
        let mut k = kb();
        k.rias.push(RoleInclusion::new(
            vec![Role::named(NS, "r"), Role::named(NS, "t")],
            Name::new(NS, "w"),
        ));
        let out = translate_kb_with(
            &k,
            &TranslateOptions {
                precisifications: Some(2),
                ..Default::default()
            },
        )
        .unwrap();
        let r = |s: &str| Role::named(OUT, s);
        assert_eq!(
            out.axioms,
            vec![
                TBoxAxiom::sub(Concept::Top, u_all(o("SP__STAR__0"))).into(),
                TBoxAxiom::sub(Concept::Top, u_all(o("SP__STAR__1"))).into(),
                PlainAxiom::Ria(RoleInclusion::new(vec![r("r__0"), r("t__0")], Name::new(OUT, "w__0"))),
                PlainAxiom::Ria(RoleInclusion::new(vec![r("r__1"), r("t__1")], Name::new(OUT, "w__1"))),
            ]
        );
    }

    #[test]
    fn diamond_and_plain_axiom() {
        let mut k = kb();
        k.formulas.push(Formula::diamond(
            StandpointExpr::name("s"),
            Formula::atom(TBoxAxiom::sub(a("A"), a("B"))),
        ));
        k.axioms.push(TBoxAxiom::sub(a("A"), a("C")));
        let out = translate_kb(&k).unwrap();
        assert_eq!(
            out.axioms,
            vec![
                TBoxAxiom::sub(Concept::Top, u_all(o("SP__STAR__0"))).into(),
                TBoxAxiom::sub(
                    Concept::Top,
                    Concept::and(
                        u_all(o("SP__s__0")),
                        u_all(Concept::or(Concept::not(o("A__0")), o("B__0")))
                    )
                )
                .into(),
                TBoxAxiom::sub(o("A__0"), o("C__0")).into(),
            ]
        );
    }

    #[test]
    fn bound_too_small() {
        let mut k = kb();
        k.formulas.push(Formula::diamond(
            StandpointExpr::Star,
            Formula::atom(TBoxAxiom::sub(a("A"), a("B"))),
        ));
        k.formulas.push(k.formulas[0].clone());
        let opts = TranslateOptions {
            precisifications: Some(1),
            ..Default::default()
        };
        assert_eq!(
            translate_kb_with(&k, &opts),
            Err(TranslateError::BoundTooSmall { required: 2, given: 1 })
        );
    }

    #[test]
    fn non_modal_formula_is_emitted_per_precisification() {
        let mut k = kb();
        k.formulas.push(Formula::or(
            Formula::atom(TBoxAxiom::sub(a("A"), a("B"))),
            Formula::diamond(StandpointExpr::name("s"), Formula::atom(TBoxAxiom::sub(a("A"), a("C")))),
        ));
        k.formulas.push(Formula::diamond(
            StandpointExpr::name("s"),
            Formula::atom(TBoxAxiom::sub(a("B"), a("C"))),
        ));
        let out = translate_kb(&k).unwrap();
        // 2 STAR axioms + 2 copies of the first formula + 1 of the second
        assert_eq!(out.axioms.len(), 5);
    }

    #[test]
    fn unnormalised_input_is_rejected() {
        let r = Rebase::new(&kb(), OUT);
        let f = Formula::not(Formula::boxed(
            StandpointExpr::Star,
            Formula::atom(TBoxAxiom::sub(a("A"), a("B"))),
        ));
        assert!(matches!(trans(0, &f, 1, &r), Err(TranslateError::NotNormalized(_))));
        let nested = Formula::boxed(
            StandpointExpr::Star,
            Formula::diamond(StandpointExpr::Star, Formula::atom(TBoxAxiom::sub(a("A"), a("B")))),
        );
        assert!(matches!(trans(0, &nested, 1, &r), Err(TranslateError::NestedModality(_))));
    }
}
