//! End-to-end acceptance checks. Each criterion prints one PASS/FAIL line;
//! the test fails if any of them does.

use std::collections::BTreeMap;
use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use standpoint::frontend::{assemble_kb, assemble_plain, parse_document, parse_document_with, NamePolicy};
use standpoint::model::{Concept, Formula, Name, PlainAxiom, PlainKb, Role, RoleInclusion, StandpointExpr, StandpointKb, TBoxAxiom};
use standpoint::normalizer::{count_precisifications, normalize_kb};
use standpoint::oracle::{
    equisatisfiability_batch, eval_concept, find_plain_model, find_standpoint_model, holds_ria, PlainInterpretation,
    Relation, SearchLimits,
};
use standpoint::random::{random_kbs, Fragment};
use standpoint::serializer::serialize_kb;
use standpoint::translator::{trans, trans_e, translate_kb, translate_kb_with, Rebase, TranslateOptions};

const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/../core/tests/fixtures");
const NS: &str = "http://example.org/t#";
const OUT: &str = "http://example.org/t/translated#";

type Outcome = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Outcome {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Outcome {
    let took = start.elapsed();
    ensure(took < limit, || format!("took {took:?}, limit {limit:?}"))
}

fn fixture(name: &str) -> String {
    std::fs::read_to_string(Path::new(FIXTURES).join(name)).unwrap()
}

fn forest() -> StandpointKb {
    assemble_kb(&parse_document(&fixture("forest.ofn")).unwrap()).unwrap()
}

fn c1_forest() -> Outcome {
    let start = Instant::now();
    let kb = normalize_kb(&forest()).map_err(|e| e.to_string())?;
    let p = count_precisifications(&kb);
    ensure(p == 1, || format!("p = {p}"))?;
    let plain = translate_kb(&kb).map_err(|e| e.to_string())?;
    let i = find_plain_model(&plain, 1).map_err(|e| e.to_string())?;
    ensure(i.is_some(), || "no plain model with one element".into())?;
    let d = find_standpoint_model(&kb, 1, 1).map_err(|e| e.to_string())?;
    ensure(d.is_some(), || "no standpoint structure at (1, 1)".into())?;
    within(start, Duration::from_secs(1))
}

fn n(local: &str) -> Concept {
    Concept::named(NS, local)
}

fn o(local: &str) -> Concept {
    Concept::named(OUT, local)
}

fn u_all(c: Concept) -> Concept {
    Concept::all(Role::Universal, c)
}

fn u_some(c: Concept) -> Concept {
    Concept::some(Role::Universal, c)
}

fn sub(c: &str, d: &str) -> Formula {
    Formula::atom(TBoxAxiom::sub(n(c), n(d)))
}

/// `∀u.(¬C__π ⊔ D__π)`
fn gci_at(c: &str, d: &str, k: usize) -> Concept {
    u_all(Concept::or(Concept::not(o(&format!("{c}__{k}"))), o(&format!("{d}__{k}"))))
}

fn sp(s: &str, k: usize) -> Concept {
    u_all(o(&format!("SP__{s}__{k}")))
}

fn c2_trans() -> Outcome {
    let start = Instant::now();
    let rebase = Rebase::new(&StandpointKb::new("http://example.org/t"), OUT);
    let named = StandpointExpr::name;
    let at = |k: usize, f: &Formula, p: usize| trans(k, f, p, &rebase).map_err(|e| e.to_string());
    let mut cases: Vec<(&str, Concept, Concept)> = vec![
        ("trans_e name", trans_e(0, &named("LU"), OUT), sp("LU", 0)),
        ("trans_e star", trans_e(2, &StandpointExpr::Star, OUT), sp("STAR", 2)),
        (
            "trans_e union",
            trans_e(1, &StandpointExpr::union(named("LC"), named("LU")), OUT),
            Concept::or(sp("LC", 1), sp("LU", 1)),
        ),
        (
            "trans_e intersection",
            trans_e(0, &StandpointExpr::intersection(named("LC"), named("LU")), OUT),
            Concept::and(sp("LC", 0), sp("LU", 0)),
        ),
        (
            "trans_e minus",
            trans_e(0, &StandpointExpr::minus(named("s"), named("s")), OUT),
            Concept::and(sp("s", 0), Concept::not(sp("s", 0))),
        ),
    ];
    cases.push(("gci", at(0, &sub("C", "D"), 1)?, gci_at("C", "D", 0)));
    cases.push((
        "negated gci",
        at(0, &Formula::not(sub("C", "D")), 1)?,
        u_some(Concept::and(o("C__0"), Concept::not(o("D__0")))),
    ));
    cases.push((
        "equivalence",
        at(0, &Formula::atom(TBoxAxiom::equiv(n("A"), n("B"))), 1)?,
        Concept::and(gci_at("A", "B", 0), gci_at("B", "A", 0)),
    ));
    cases.push((
        "and",
        at(0, &Formula::and(sub("A", "B"), sub("B", "C")), 1)?,
        Concept::and(gci_at("A", "B", 0), gci_at("B", "C", 0)),
    ));
    cases.push((
        "or",
        at(1, &Formula::or(sub("A", "B"), Formula::not(sub("B", "C"))), 2)?,
        Concept::or(
            gci_at("A", "B", 1),
            u_some(Concept::and(o("B__1"), Concept::not(o("C__1")))),
        ),
    ));
    cases.push((
        "diamond",
        at(0, &Formula::diamond(named("s"), sub("A", "B")), 2)?,
        Concept::or(
            Concept::and(sp("s", 0), gci_at("A", "B", 0)),
            Concept::and(sp("s", 1), gci_at("A", "B", 1)),
        ),
    ));
    cases.push((
        "box",
        at(1, &Formula::boxed(named("LC"), sub("A", "B")), 2)?,
        Concept::and(
            Concept::or(Concept::not(sp("LC", 0)), gci_at("A", "B", 0)),
            Concept::or(Concept::not(sp("LC", 1)), gci_at("A", "B", 1)),
        ),
    ));
    for (rule, got, want) in &cases {
        ensure(got == want, || format!("{rule}: got {got}, want {want}"))?;
    }

    // Whole-KB example: one diamond and one plain axiom at p = 1.
    let mut kb = StandpointKb::new("http://example.org/t");
    kb.formulas.push(Formula::diamond(named("s"), sub("A", "B")));
    kb.axioms.push(TBoxAxiom::sub(n("A"), n("C")));
    let plain = translate_kb(&kb).map_err(|e| e.to_string())?;
    let want: Vec<PlainAxiom> = vec![
        TBoxAxiom::sub(Concept::Top, sp("STAR", 0)).into(),
        TBoxAxiom::sub(Concept::Top, Concept::and(sp("s", 0), gci_at("A", "B", 0))).into(),
        TBoxAxiom::sub(o("A__0"), o("C__0")).into(),
    ];
    ensure(plain.axioms == want, || format!("translate_kb: got {:?}", plain.axioms))?;

    // Role inclusions are copied per precisification.
    let mut kb = StandpointKb::new("http://example.org/t");
    let r = |l: &str| Role::named(NS, l);
    kb.rias.push(RoleInclusion::new(vec![r("r"), r("t")], Name::new(NS, "w")));
    let opts = TranslateOptions {
        precisifications: Some(2),
        ..TranslateOptions::default()
    };
    let plain = translate_kb_with(&kb, &opts).map_err(|e| e.to_string())?;
    let ro = |l: &str| Role::named(OUT, l);
    let want: Vec<PlainAxiom> = vec![
        TBoxAxiom::sub(Concept::Top, sp("STAR", 0)).into(),
        TBoxAxiom::sub(Concept::Top, sp("STAR", 1)).into(),
        PlainAxiom::Ria(RoleInclusion::new(vec![ro("r__0"), ro("t__0")], Name::new(OUT, "w__0"))),
        PlainAxiom::Ria(RoleInclusion::new(vec![ro("r__1"), ro("t__1")], Name::new(OUT, "w__1"))),
    ];
    ensure(plain.axioms == want, || format!("role inclusions: got {:?}", plain.axioms))?;

    let empty = translate_kb(&StandpointKb::new("http://example.org/t")).map_err(|e| e.to_string())?;
    let want: Vec<PlainAxiom> = vec![TBoxAxiom::sub(Concept::Top, sp("STAR", 0)).into()];
    ensure(empty.axioms == want, || format!("empty: got {:?}", empty.axioms))?;
    within(start, Duration::from_secs(1))
}

fn c3_equisatisfiability() -> Outcome {
    let start = Instant::now();
    let kbs = random_kbs(20_240_601, 200, &Fragment::default());
    let results = equisatisfiability_batch(&kbs, 3, &SearchLimits::default());
    let mut satisfiable = 0;
    for (k, r) in results.iter().enumerate() {
        let a = r.as_ref().map_err(|e| format!("kb {k}: {e}"))?;
        ensure(a.precisifications <= 3, || format!("kb {k}: p = {}", a.precisifications))?;
        ensure(a.agrees(), || format!("kb {k} disagrees: {a:?}\n{}", serialize_kb(&kbs[k])))?;
        satisfiable += usize::from(a.standpoint);
    }
    println!("  {} knowledge bases, {satisfiable} satisfiable, {:?}", kbs.len(), start.elapsed());
    within(start, Duration::from_secs(300))
}

/// Diamonds in positive and boxes in negative position, counted on the
/// formula as written.
fn polar_modalities(f: &Formula, positive: bool, named: &BTreeMap<String, Formula>) -> usize {
    match f {
        Formula::Atom(_) => 0,
        Formula::Ref(r) => named.get(r).map_or(0, |g| polar_modalities(g, positive, named)),
        Formula::Not(g) => polar_modalities(g, !positive, named),
        Formula::And(a, b) | Formula::Or(a, b) => {
            polar_modalities(a, positive, named) + polar_modalities(b, positive, named)
        }
        Formula::Box(_, g) => usize::from(!positive) + polar_modalities(g, positive, named),
        Formula::Diamond(_, g) => usize::from(positive) + polar_modalities(g, positive, named),
    }
}

fn axiom_count(kb: &StandpointKb, p: usize) -> Result<usize, String> {
    let opts = TranslateOptions {
        precisifications: Some(p),
        ..TranslateOptions::default()
    };
    Ok(translate_kb_with(kb, &opts).map_err(|e| e.to_string())?.axioms.len())
}

fn c4_precisification_bound() -> Outcome {
    let start = Instant::now();
    let fragment = Fragment {
        max_precisifications: 6,
        ..Fragment::default()
    };
    for (k, raw) in random_kbs(7, 300, &fragment).iter().enumerate() {
        let named: BTreeMap<String, Formula> = raw.named.iter().map(|(k, v)| (k.clone(), v.clone())).collect();
        let expected = raw
            .formulas
            .iter()
            .map(|f| polar_modalities(f, true, &named))
            .sum::<usize>()
            .max(1);
        let kb = normalize_kb(raw).map_err(|e| e.to_string())?;
        let p = count_precisifications(&kb);
        ensure(p == expected, || format!("kb {k}: p = {p}, polarity count {expected}"))?;

        // Scale the bound by 1, 2 and 4 and fit a line through the sizes.
        let xs: Vec<f64> = [1, 2, 4].iter().map(|s| (s * p) as f64).collect();
        let ys = xs
            .iter()
            .map(|&x| axiom_count(&kb, x as usize).map(|c| c as f64))
            .collect::<Result<Vec<_>, _>>()?;
        let mx = xs.iter().sum::<f64>() / 3.0;
        let my = ys.iter().sum::<f64>() / 3.0;
        let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| (x - mx) * (y - my)).sum();
        let sxx: f64 = xs.iter().map(|x| (x - mx).powi(2)).sum();
        let slope = sxy / sxx;
        let deviation = xs
            .iter()
            .zip(&ys)
            .map(|(x, y)| (y - (my + slope * (x - mx))).abs() / y)
            .fold(0.0, f64::max);
        ensure(deviation < 1e-9, || format!("kb {k}: sizes {ys:?} at {xs:?}, deviation {deviation}"))?;
    }
    within(start, Duration::from_secs(10))
}

fn c5_query_verdicts() -> Outcome {
    let start = Instant::now();
    let forest = Path::new(FIXTURES).join("forest.ofn");
    let query = |q: &str| {
        Command::new(env!("CARGO_BIN_EXE_standpoint"))
            .arg("query")
            .arg(&forest)
            .args(["--simple", q, "--domain-bound", "2", "--prec-bound", "2"])
            .output()
            .expect("binary runs")
    };
    for (q, code, needle) in [
        ("[LU](Forest sub Land)", 0, "ENTAILED_WITHIN_BOUNDS"),
        ("<LC>(Forest sub Forest)", 3, "σ(LC) = {}"),
        ("[*](Forest sub Forest)", 0, "ENTAILED_WITHIN_BOUNDS"),
    ] {
        let out = query(q);
        let err = String::from_utf8_lossy(&out.stderr);
        ensure(out.status.code() == Some(code) && err.contains(needle), || {
            format!("{q}: exit {:?}\n{err}", out.status.code())
        })?;
    }
    within(start, Duration::from_secs(30))
}

fn sorted(kb: &StandpointKb) -> Vec<Formula> {
    let mut f = kb.formulas.clone();
    f.sort();
    f
}

fn c6_round_trip() -> Outcome {
    let once = forest();
    let twice = assemble_kb(&parse_document(&serialize_kb(&once)).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    let thrice = assemble_kb(&parse_document(&serialize_kb(&twice)).map_err(|e| e.to_string())?)
        .map_err(|e| e.to_string())?;
    ensure(sorted(&once) == sorted(&twice), || "forest formulas changed".into())?;
    ensure(once.axioms == twice.axioms && once.rias == twice.rias, || "forest axioms changed".into())?;
    ensure(twice == thrice, || "forest is not a fixed point".into())?;

    let read_plain = |text: &str| -> Result<PlainKb, String> {
        let doc = parse_document_with(text, NamePolicy::AllowReserved).map_err(|e| e.to_string())?;
        assemble_plain(&doc).map_err(|e| e.to_string())
    };
    let source = read_plain(&fixture("landcover_source.ofn"))?;
    let again = read_plain(&serialize_kb(&source))?;
    ensure(source.axioms == again.axioms, || "source axioms changed".into())?;
    ensure(again == read_plain(&serialize_kb(&again))?, || "source is not a fixed point".into())?;

    let kb = normalize_kb(&once).map_err(|e| e.to_string())?;
    let a = serialize_kb(&translate_kb(&kb).map_err(|e| e.to_string())?);
    let b = serialize_kb(&translate_kb(&kb).map_err(|e| e.to_string())?);
    ensure(a == b, || "translated output differs between runs".into())?;
    let translated = read_plain(&a)?;
    ensure(a == serialize_kb(&translated), || "translated output does not re-serialize".into())
}

fn c7_semantics() -> Outcome {
    let start = Instant::now();
    let mut i = PlainInterpretation::new(2);
    i.concepts.insert(Name::new(NS, "A"), 0b01);
    i.concepts.insert(Name::new(NS, "B"), 0b11);
    i.individuals.insert(Name::new(NS, "a"), 1);
    // r = {(0,0), (0,1)}, t = {(1,0)}
    i.roles.insert(Name::new(NS, "r"), Relation::from_pairs(2, [(0, 0), (0, 1)]));
    i.roles.insert(Name::new(NS, "t"), Relation::from_pairs(2, [(1, 0)]));
    i.roles.insert(Name::new(NS, "w"), Relation::empty(2));
    let r = Role::named(NS, "r");
    let t_inv = Role::Inverse(Name::new(NS, "t"));
    let cases = [
        ("name", n("A"), 0b01),
        ("nominal", Concept::Nominal(Name::new(NS, "a")), 0b10),
        ("top", Concept::Top, 0b11),
        ("bottom", Concept::Bottom, 0b00),
        ("not", Concept::not(n("A")), 0b10),
        ("and", Concept::and(n("A"), Concept::not(n("B"))), 0b00),
        ("or", Concept::or(n("A"), Concept::Nominal(Name::new(NS, "a"))), 0b11),
        ("all", Concept::all(r.clone(), n("A")), 0b10),
        ("some", Concept::some(r.clone(), Concept::not(n("A"))), 0b01),
        ("self", Concept::SelfRestriction(r.clone()), 0b01),
        ("at most", Concept::at_most(1, r.clone(), Concept::Top), 0b10),
        ("at least", Concept::at_least(2, r.clone(), n("B")), 0b01),
        ("inverse", Concept::some(t_inv.clone(), Concept::Top), 0b01),
        ("inverse self", Concept::SelfRestriction(t_inv), 0b00),
    ];
    for (name, c, want) in cases {
        let got = eval_concept(&i, &c).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{name}: got {got:02b}, want {want:02b}"))?;
    }

    let ria = |chain: &[&str], head: &str| {
        RoleInclusion::new(chain.iter().map(|l| Role::named(NS, l)).collect(), Name::new(NS, head))
    };
    let mut j = PlainInterpretation::new(2);
    j.roles.insert(Name::new(NS, "r"), Relation::from_pairs(2, [(0, 1)]));
    j.roles.insert(Name::new(NS, "t"), Relation::from_pairs(2, [(1, 0)]));
    j.roles.insert(Name::new(NS, "w"), Relation::empty(2));
    j.roles.insert(Name::new(NS, "v"), Relation::from_pairs(2, [(0, 0)]));
    let ria_cases = [
        ("r∘t ⊑ w, w empty", ria(&["r", "t"], "w"), false),
        ("r∘t ⊑ v", ria(&["r", "t"], "v"), true),
        ("t∘r ⊑ v", ria(&["t", "r"], "v"), false),
        ("r ⊑ r", ria(&["r"], "r"), true),
        ("r∘t∘r ⊑ r", ria(&["r", "t", "r"], "r"), true),
        ("v∘v ⊑ v", ria(&["v", "v"], "v"), true),
    ];
    for (name, a, want) in ria_cases {
        let got = holds_ria(&j, &a).map_err(|e| e.to_string())?;
        ensure(got == want, || format!("{name}: got {got}, want {want}"))?;
    }
    within(start, Duration::from_secs(1))
}

#[test]
fn acceptance() {
    let criteria: [(&str, fn() -> Outcome); 7] = [
        ("1 forest example end to end", c1_forest),
        ("2 translation rules", c2_trans),
        ("3 bounded equisatisfiability", c3_equisatisfiability),
        ("4 precisification bound and linear growth", c4_precisification_bound),
        ("5 query verdicts", c5_query_verdicts),
        ("6 round trip and determinism", c6_round_trip),
        ("7 semantics micro-suite", c7_semantics),
    ];
    let mut failed = Vec::new();
    for (name, run) in criteria {
        let start = Instant::now();
        match run() {
            Ok(()) => println!("PASS criterion {name} ({:.2?})", start.elapsed()),
            Err(e) => {
                println!("FAIL criterion {name}: {e}");
                failed.push(name);
            }
        }
    }
    assert!(failed.is_empty(), "failed: {failed:?}");
}
