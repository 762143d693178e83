use standpoint::model::{Concept, Formula, Name, PlainAxiom, PlainKb, Role, StandpointExpr, StandpointKb, TBoxAxiom};
use standpoint::oracle::{
    self, check_entailment_bounded, find_plain_model, find_standpoint_model, find_standpoint_model_with, Relation,
    SearchLimits, Verdict,
};
use standpoint::par::Parallelism;
use standpoint::random::{random_kbs, Fragment};
use standpoint::normalizer::normalize_kb;
use standpoint::translator::translate_kb;

const NS: &str = "http://example.org/t#";

fn a() -> Concept {
    Concept::named(NS, "A")
}

fn a_name() -> Name {
    Name::new(NS, "A")
}

fn r() -> Role {
    Role::named(NS, "r")
}

fn plain(axioms: Vec<TBoxAxiom>) -> PlainKb {
    let mut kb = PlainKb::new("http://example.org/t");
    kb.axioms = axioms.into_iter().map(PlainAxiom::from).collect();
    kb
}

fn s() -> StandpointExpr {
    StandpointExpr::name("s")
}

#[test]
fn contradiction_has_no_plain_model() {
    let kb = plain(vec![TBoxAxiom::sub(Concept::Top, a()), TBoxAxiom::sub(a(), Concept::Bottom)]);
    for n in 1..=4 {
        assert_eq!(find_plain_model(&kb, n).unwrap(), None);
    }
}

#[test]
fn existential_forces_a_loop_on_one_element() {
    let kb = plain(vec![TBoxAxiom::sub(Concept::Top, Concept::some(r(), a()))]);
    let m = find_plain_model(&kb, 1).unwrap().expect("model");
    assert_eq!(m.domain_size, 1);
    assert_eq!(m.concepts[&a_name()], 0b1);
    assert_eq!(m.roles[r().name().unwrap()], Relation::from_pairs(1, [(0, 0)]));
}

#[test]
fn empty_concept_model() {
    let kb = plain(vec![TBoxAxiom::sub(a(), Concept::Bottom)]);
    let m = find_plain_model(&kb, 3).unwrap().expect("model");
    assert_eq!(m.domain_size, 1);
    assert_eq!(m.concepts[&a_name()], 0);
}

#[test]
fn impossible_diamond() {
    let mut kb = StandpointKb::new("http://example.org/t");
    kb.formulas
        .push(Formula::diamond(s(), Formula::atom(TBoxAxiom::sub(Concept::Top, Concept::Bottom))));
    assert_eq!(find_standpoint_model(&kb, 2, 3).unwrap(), None);
}

#[test]
fn conflicting_diamonds_need_two_precisifications() {
    let mut kb = StandpointKb::new("http://example.org/t");
    kb.formulas
        .push(Formula::diamond(s(), Formula::atom(TBoxAxiom::sub(a(), Concept::Bottom))));
    kb.formulas
        .push(Formula::diamond(s(), Formula::atom(TBoxAxiom::sub(Concept::Top, a()))));
    assert_eq!(find_standpoint_model(&kb, 2, 1).unwrap(), None);
    let d = find_standpoint_model(&kb, 2, 2).unwrap().expect("model");
    assert_eq!((d.domain_size, d.precisifications), (1, 2));
    assert_eq!(d.sigma["s"], 0b11);
    assert!(oracle::kb_holds(&d, &kb).unwrap());

    kb.axioms.push(TBoxAxiom::sub(Concept::Top, a()));
    assert_eq!(find_standpoint_model(&kb, 2, 3).unwrap(), None);
}

#[test]
fn tautology_is_entailed() {
    let mut kb = StandpointKb::new("http://example.org/t");
    kb.axioms.push(TBoxAxiom::sub(a(), Concept::some(r(), a())));
    let q = Formula::boxed(StandpointExpr::Star, Formula::atom(TBoxAxiom::sub(Concept::Top, Concept::Top)));
    assert_eq!(
        check_entailment_bounded(&kb, &q, 2, 2, &SearchLimits::default()),
        Verdict::EntailedWithinBounds
    );
}

#[test]
fn empty_standpoint_refutes_diamond() {
    let kb = StandpointKb::new("http://example.org/t");
    let q = Formula::diamond(s(), Formula::atom(TBoxAxiom::sub(a(), a())));
    match check_entailment_bounded(&kb, &q, 2, 2, &SearchLimits::default()) {
        Verdict::NotEntailed(d) => assert_eq!(d.sigma["s"], 0),
        v => panic!("unexpected {v:?}"),
    }
}

#[test]
fn guards_report_inconclusive() {
    let mut kb = StandpointKb::new("http://example.org/t");
    kb.axioms.push(TBoxAxiom::sub(a(), Concept::some(r(), a())));
    let limits = SearchLimits {
        max_bits: 1,
        ..SearchLimits::default()
    };
    let q = Formula::atom(TBoxAxiom::sub(a(), Concept::Bottom));
    assert!(matches!(
        check_entailment_bounded(&kb, &q, 2, 1, &limits),
        Verdict::Inconclusive(oracle::OracleError::SearchSpaceTooLarge { .. })
    ));
    assert!(matches!(
        find_plain_model(&plain(vec![]), oracle::MAX_DOMAIN + 1),
        Err(oracle::OracleError::DomainTooLarge(_))
    ));
}

fn small() -> Fragment {
    Fragment {
        concepts: 2,
        max_formulas: 2,
        ..Fragment::default()
    }
}

#[test]
fn solver_search_matches_enumeration() {
    let fragment = Fragment {
        standpoints: 1,
        ..small()
    };
    for kb in random_kbs(3, 40, &fragment) {
        let kb = normalize_kb(&kb).unwrap();
        let mut expected = None;
        'grid: for n in 1..=2 {
            for m in 1..=2 {
                if let Some(d) = oracle::naive::standpoint_model(&kb, n, m).unwrap() {
                    expected = Some(d);
                    break 'grid;
                }
            }
        }
        for mode in [Parallelism::Sequential, Parallelism::Parallel] {
            let limits = SearchLimits {
                parallelism: mode,
                ..SearchLimits::default()
            };
            assert_eq!(find_standpoint_model_with(&kb, 2, 2, &limits).unwrap(), expected, "{kb:?}");
        }
    }
}

#[test]
fn plain_search_matches_enumeration() {
    let mut checked = 0;
    for kb in random_kbs(5, 60, &small()) {
        let t = translate_kb(&normalize_kb(&kb).unwrap()).unwrap();
        let mut expected = None;
        let mut skipped = false;
        for n in 1..=2 {
            match oracle::naive::plain_model(&t, n) {
                Ok(Some(i)) => {
                    expected = Some(i);
                    break;
                }
                Ok(None) => {}
                Err(_) => {
                    skipped = true;
                    break;
                }
            }
        }
        if skipped {
            continue;
        }
        checked += 1;
        assert_eq!(find_plain_model(&t, 2).unwrap(), expected);
    }
    assert!(checked >= 20, "only {checked} cases within the enumeration limit");
}

#[test]
fn witnesses_satisfy_the_knowledge_base() {
    for kb in random_kbs(9, 80, &Fragment::default()) {
        if let Some(d) = find_standpoint_model(&kb, 3, 3).unwrap() {
            assert!(oracle::kb_holds(&d, &kb).unwrap());
        }
    }
}
