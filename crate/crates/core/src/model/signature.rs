use std::collections::BTreeSet;

use super::{Concept, Formula, Name, PlainKb, Role, RoleInclusion, StandpointExpr, StandpointKb, TBoxAxiom};

/// Names occurring in a knowledge base, grouped by kind.
///
/// Standpoint names always contain `*`. The universal role is not listed
/// among the roles.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Signature {
    pub concepts: BTreeSet<Name>,
    pub roles: BTreeSet<Name>,
    pub individuals: BTreeSet<Name>,
    pub standpoints: BTreeSet<String>,
}

impl Default for Signature {
    fn default() -> Self {
        Signature {
            concepts: BTreeSet::new(),
            roles: BTreeSet::new(),
            individuals: BTreeSet::new(),
            standpoints: BTreeSet::from(["*".to_owned()]),
        }
    }
}

impl Signature {
    pub fn add_role(&mut self, r: &Role) {
        if let Some(n) = r.name() {
            self.roles.insert(n.clone());
        }
    }

    pub fn add_concept(&mut self, c: &Concept) {
        c.walk(&mut |c| match c {
            Concept::Named(n) => {
                self.concepts.insert(n.clone());
            }
            Concept::Nominal(n) => {
                self.individuals.insert(n.clone());
            }
            Concept::All(r, _)
            | Concept::Some(r, _)
            | Concept::SelfRestriction(r)
            | Concept::AtMost(_, r, _)
            | Concept::AtLeast(_, r, _) => {
                if let Some(n) = r.name() {
                    self.roles.insert(n.clone());
                }
            }
            _ => {}
        });
    }

    pub fn add_tbox(&mut self, a: &TBoxAxiom) {
        for c in a.concepts() {
            self.add_concept(c);
        }
    }

    pub fn add_ria(&mut self, ria: &RoleInclusion) {
        for r in &ria.chain {
            self.add_role(r);
        }
        self.roles.insert(ria.head.clone());
    }

    pub fn add_standpoint_expr(&mut self, e: &StandpointExpr) {
        e.names(&mut |s| {
            self.standpoints.insert(s.to_owned());
        });
    }

    pub fn add_formula(&mut self, f: &Formula) {
        f.walk(&mut |g| match g {
            Formula::Atom(a) => self.add_tbox(a),
            Formula::Box(e, _) | Formula::Diamond(e, _) => self.add_standpoint_expr(e),
            _ => {}
        });
    }

    pub fn union(mut self, other: &Signature) -> Signature {
        self.concepts.extend(other.concepts.iter().cloned());
        self.roles.extend(other.roles.iter().cloned());
        self.individuals.extend(other.individuals.iter().cloned());
        self.standpoints.extend(other.standpoints.iter().cloned());
        self
    }

    pub fn of_plain(kb: &PlainKb) -> Signature {
        let mut sig = Signature::default();
        for a in &kb.axioms {
            match a {
                super::PlainAxiom::TBox(t) => sig.add_tbox(t),
                super::PlainAxiom::Ria(r) => sig.add_ria(r),
            }
        }
        sig.concepts.extend(kb.declarations.concepts.iter().cloned());
        sig.roles.extend(kb.declarations.roles.iter().cloned());
        sig.individuals.extend(kb.declarations.individuals.iter().cloned());
        sig
    }
}

/// Exact set of names occurring in `kb`, closed under its declarations.
pub fn signature_of(kb: &StandpointKb) -> Signature {
    let mut sig = Signature::default();
    for ria in &kb.rias {
        sig.add_ria(ria);
    }
    for a in &kb.axioms {
        sig.add_tbox(a);
    }
    for f in kb.formulas.iter().chain(kb.named.values()) {
        sig.add_formula(f);
    }
    sig.concepts.extend(kb.declarations.concepts.iter().cloned());
    sig.roles.extend(kb.declarations.roles.iter().cloned());
    sig.individuals.extend(kb.declarations.individuals.iter().cloned());
    sig
}

#[cfg(test)]
mod tests {
    use super::*;

    const NS: &str = "http://ex.org/o#";

    fn n(s: &str) -> Name {
        Name::new(NS, s)
    }

    #[test]
    fn empty_kb() {
        let sig = signature_of(&StandpointKb::new("http://ex.org/o"));
        assert!(sig.concepts.is_empty() && sig.roles.is_empty() && sig.individuals.is_empty());
        assert_eq!(sig.standpoints, BTreeSet::from(["*".to_owned()]));
    }

    #[test]
    fn ria_only() {
        let mut kb = StandpointKb::new("http://ex.org/o");
        kb.rias.push(RoleInclusion::new(
            vec![Role::Named(n("r")), Role::Named(n("t"))],
            n("w"),
        ));
        let sig = signature_of(&kb);
        assert_eq!(sig.roles, BTreeSet::from([n("r"), n("t"), n("w")]));
    }

    #[test]
    fn names_inside_modalities_and_named_axioms() {
        let mut kb = StandpointKb::new("http://ex.org/o");
        let atom = Formula::atom(TBoxAxiom::sub(
            Concept::Nominal(n("a")),
            Concept::some(Role::Inverse(n("r")), Concept::Named(n("A"))),
        ));
        kb.named.insert(
            "ax1".into(),
            Formula::diamond(
                StandpointExpr::minus(StandpointExpr::name("s"), StandpointExpr::name("t")),
                atom,
            ),
        );
        let sig = signature_of(&kb);
        assert_eq!(sig.concepts, BTreeSet::from([n("A")]));
        assert_eq!(sig.roles, BTreeSet::from([n("r")]));
        assert_eq!(sig.individuals, BTreeSet::from([n("a")]));
        assert_eq!(
            sig.standpoints,
            BTreeSet::from(["*".to_owned(), "s".to_owned(), "t".to_owned()])
        );
    }
}
