use std::collections::BTreeSet;

use super::{Concept, ModelError, Name, PlainKb, Role, RoleInclusion, StandpointKb};

/// Simple/non-simple partition of the roles and the inferred strict order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RoleValidationReport {
    pub simple: BTreeSet<Name>,
    /// Always contains [`Role::Universal`].
    pub non_simple: BTreeSet<Role>,
    /// Transitive closure of `(r_i, head)` over all chain elements distinct
    /// from the head.
    pub order: BTreeSet<(Role, Name)>,
}

impl RoleValidationReport {
    pub fn is_simple(&self, name: &Name) -> bool {
        !self.non_simple.contains(&Role::Named(name.clone()))
    }
}

/// Infers role simplicity and `≺` from the RIAs and checks the SROIQ side
/// conditions. Errors are reported in a canonical order, so the result does
/// not depend on the order of the axioms.
pub fn validate_roles(kb: &StandpointKb) -> Result<RoleValidationReport, ModelError> {
    let concepts = kb.all_tbox_axioms().flat_map(|a| a.concepts());
    check(&kb.rias, concepts, kb.declarations.roles.iter())
}

/// [`validate_roles`] for a translated knowledge base.
pub fn validate_plain_roles(kb: &PlainKb) -> Result<RoleValidationReport, ModelError> {
    let rias: Vec<RoleInclusion> = kb.rias().cloned().collect();
    let concepts = kb.tbox().flat_map(|a| a.concepts());
    check(&rias, concepts, kb.declarations.roles.iter())
}

fn check<'a>(
    rias: &[RoleInclusion],
    concepts: impl Iterator<Item = &'a Concept>,
    declared: impl Iterator<Item = &'a Name>,
) -> Result<RoleValidationReport, ModelError> {
    let mut errors = Vec::new();
    let mut non_simple = BTreeSet::from([Role::Universal]);
    let mut all_roles: BTreeSet<Name> = declared.cloned().collect();
    let mut order = BTreeSet::new();

    for ria in rias {
        let head = Role::Named(ria.head.clone());
        all_roles.insert(ria.head.clone());
        if ria.chain != [head.clone()] {
            non_simple.insert(head.clone());
        }
        for r in &ria.chain {
            if let Some(n) = r.name() {
                all_roles.insert(n.clone());
            }
            if *r != head {
                order.insert((r.clone(), ria.head.clone()));
            }
        }
        if !ria_shape_ok(ria) {
            errors.push(ModelError::MalformedRia {
                head: ria.head.local.clone(),
                chain: ria
                    .chain
                    .iter()
                    .map(Role::to_string)
                    .collect::<Vec<_>>()
                    .join(" ∘ "),
            });
        }
    }

    // Transitive closure; the relation is tiny at desk scale.
    loop {
        let mut added = Vec::new();
        for (a, b) in &order {
            for (c, d) in &order {
                if *c == Role::Named(b.clone()) && !order.contains(&(a.clone(), d.clone())) {
                    added.push((a.clone(), d.clone()));
                }
            }
        }
        if added.is_empty() {
            break;
        }
        order.extend(added);
    }
    for (a, b) in &order {
        if *a == Role::Named(b.clone()) {
            errors.push(ModelError::CyclicRoleOrder(b.local.clone()));
        }
    }

    let is_non_simple = |n: &Name| non_simple.contains(&Role::Named(n.clone()));
    let check_inverse = |r: &Role, errors: &mut Vec<ModelError>| {
        if let Role::Inverse(n) = r {
            if is_non_simple(n) {
                errors.push(ModelError::NonSimpleInverse(n.local.clone()));
            }
        }
    };
    for ria in rias {
        for r in &ria.chain {
            check_inverse(r, &mut errors);
        }
    }
    for c in concepts {
        c.walk(&mut |c| {
            let (role, restricted) = match c {
                Concept::SelfRestriction(r) | Concept::AtMost(_, r, _) | Concept::AtLeast(_, r, _) => {
                    (r, true)
                }
                Concept::All(r, _) | Concept::Some(r, _) => (r, false),
                _ => return,
            };
            if let Some(n) = role.name() {
                all_roles.insert(n.clone());
            }
            check_inverse(role, &mut errors);
            if restricted {
                match role {
                    Role::Universal => errors.push(ModelError::NonSimpleInRestriction(
                        "owl:topObjectProperty".into(),
                    )),
                    Role::Named(n) | Role::Inverse(n) if is_non_simple(n) => {
                        errors.push(ModelError::NonSimpleInRestriction(n.local.clone()))
                    }
                    _ => {}
                }
            }
        });
    }

    if let Some(first) = errors.into_iter().min() {
        return Err(first);
    }
    let simple = all_roles.into_iter().filter(|n| !is_non_simple(n)).collect();
    Ok(RoleValidationReport {
        simple,
        non_simple,
        order,
    })
}

/// The head may occur in the chain only as `r∘r`, as the first or last
/// element of a longer chain, or as the trivial `r ⊑ r`.
fn ria_shape_ok(ria: &RoleInclusion) -> bool {
    let head = Role::Named(ria.head.clone());
    let positions: Vec<usize> = ria
        .chain
        .iter()
        .enumerate()
        .filter(|(_, r)| **r == head)
        .map(|(i, _)| i)
        .collect();
    let k = ria.chain.len();
    match positions.as_slice() {
        [] => k > 0,
        [0] | [_] if k == 1 => true,
        [0, 1] => k == 2,
        [0] => true,
        [i] => *i == k - 1,
        _ => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{Concept, TBoxAxiom};

    const NS: &str = "http://ex.org/o#";

    fn n(s: &str) -> Name {
        Name::new(NS, s)
    }

    fn r(s: &str) -> Role {
        Role::Named(n(s))
    }

    fn kb_with(rias: Vec<RoleInclusion>, axioms: Vec<TBoxAxiom>) -> StandpointKb {
        let mut kb = StandpointKb::new("http://ex.org/o");
        kb.rias = rias;
        kb.axioms = axioms;
        kb
    }

    #[test]
    fn single_chain() {
        let kb = kb_with(vec![RoleInclusion::new(vec![r("r"), r("t")], n("w"))], vec![]);
        let rep = validate_roles(&kb).unwrap();
        assert_eq!(rep.non_simple, BTreeSet::from([r("w"), Role::Universal]));
        assert_eq!(rep.order, BTreeSet::from([(r("r"), n("w")), (r("t"), n("w"))]));
        assert_eq!(rep.simple, BTreeSet::from([n("r"), n("t")]));
    }

    #[test]
    fn two_cycle() {
        let kb = kb_with(
            vec![
                RoleInclusion::new(vec![r("r"), r("t")], n("w")),
                RoleInclusion::new(vec![r("w"), r("v")], n("r")),
            ],
            vec![],
        );
        assert!(matches!(validate_roles(&kb), Err(ModelError::CyclicRoleOrder(_))));
    }

    #[test]
    fn non_simple_in_number_restriction() {
        let kb = kb_with(
            vec![RoleInclusion::new(vec![r("r"), r("t")], n("w"))],
            vec![TBoxAxiom::sub(
                Concept::at_least(2, r("w"), Concept::named(NS, "A")),
                Concept::Top,
            )],
        );
        assert_eq!(
            validate_roles(&kb),
            Err(ModelError::NonSimpleInRestriction("w".into()))
        );
    }

    #[test]
    fn universal_role_in_self_restriction() {
        let kb = kb_with(
            vec![],
            vec![TBoxAxiom::sub(Concept::SelfRestriction(Role::Universal), Concept::Top)],
        );
        assert!(matches!(
            validate_roles(&kb),
            Err(ModelError::NonSimpleInRestriction(_))
        ));
    }

    #[test]
    fn table_shapes() {
        let ok = [
            vec![r("w"), r("w")],
            vec![r("a"), r("b"), r("w")],
            vec![r("w"), r("a"), r("b")],
            vec![r("w")],
        ];
        for chain in ok {
            let kb = kb_with(vec![RoleInclusion::new(chain.clone(), n("w"))], vec![]);
            assert!(validate_roles(&kb).is_ok(), "{chain:?}");
        }
        let bad = [
            vec![r("a"), r("w"), r("b")],
            vec![r("w"), r("a"), r("w")],
            vec![r("w"), r("w"), r("w")],
        ];
        for chain in bad {
            let kb = kb_with(vec![RoleInclusion::new(chain.clone(), n("w"))], vec![]);
            assert!(
                matches!(validate_roles(&kb), Err(ModelError::MalformedRia { .. })),
                "{chain:?}"
            );
        }
    }

    #[test]
    fn transitivity_keeps_role_non_simple_but_acyclic() {
        let kb = kb_with(vec![RoleInclusion::new(vec![r("r"), r("r")], n("r"))], vec![]);
        let rep = validate_roles(&kb).unwrap();
        assert!(!rep.is_simple(&n("r")));
        assert!(rep.order.is_empty());
    }

    #[test]
    fn inverse_of_non_simple() {
        let kb = kb_with(
            vec![RoleInclusion::new(vec![r("r"), r("r")], n("r"))],
            vec![TBoxAxiom::sub(
                Concept::some(Role::Inverse(n("r")), Concept::Top),
                Concept::Top,
            )],
        );
        assert_eq!(validate_roles(&kb), Err(ModelError::NonSimpleInverse("r".into())));
    }
}
