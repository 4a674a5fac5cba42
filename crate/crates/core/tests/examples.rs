use std::collections::BTreeSet;

use rasp_core::properties::{
    check_cm, check_mm, check_scm, epistemic_unfounded, is_wfn_founded, unfounded_sets, Witness,
    DEFAULT_PAIR_BOUND,
};
use rasp_core::semantics::{
    answer_sets, di_answer_sets, equilibrium_answer_sets, flp_answer_sets, g91_world_views,
    gl_answer_sets, is_two_valued_stable, rational_answer_sets, rational_world_views,
    stable_fixpoint, Limits, SemanticsId, ThreeValuedInterp,
};
use rasp_core::syntax::{ground, parse_formula};
use rasp_core::wellsupport::{ws_check_atomic, ws_check_epistemic, ws_check_normal, ws_heads, Pruning};
use rasp_core::{parse_program, Atom, EpistemicModel, Interpretation, Program};

fn load(name: &str) -> Program {
    let path = format!("{}/../../programs/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).unwrap();
    ground(&parse_program(&text).unwrap()).unwrap()
}

fn i(names: &[&str]) -> Interpretation {
    Interpretation::from_names(names.iter().copied())
}

fn em(sets: &[&[&str]]) -> EpistemicModel {
    EpistemicModel::new(sets.iter().map(|s| i(s))).unwrap()
}

fn pairs(o: &BTreeSet<(Atom, Atom)>) -> BTreeSet<(String, String)> {
    o.iter().map(|(q, p)| (q.to_string(), p.to_string())).collect()
}

#[test]
fn strategic_companies() {
    let p = load("strategic.lp");
    let expected = i(&["g1", "g2", "c1", "c2"]);
    assert_eq!(rational_answer_sets(&p).unwrap(), std::slice::from_ref(&expected));
    assert!(!gl_answer_sets(&p).unwrap().contains(&expected));
    assert!(unfounded_sets(&p, &expected)
        .unwrap()
        .contains(&BTreeSet::from([Atom::new("c2")])));
}

#[test]
fn constraint_monotonicity_fails() {
    let base = load("strategic_base.lp");
    let with = load("strategic_constrained.lp");
    assert_eq!(rational_answer_sets(&base).unwrap(), [i(&["g1", "g2", "c1"])]);
    assert_eq!(
        rational_answer_sets(&with).unwrap(),
        [i(&["g1", "g2", "c1", "c2"])]
    );
    let c = with.rules().last().unwrap().clone();
    let r = check_cm(&base, &c, &SemanticsId::Rational).unwrap();
    assert!(!r.holds);
    assert_eq!(
        r.witness,
        Some(Witness::AnswerSet(i(&["g1", "g2", "c1", "c2"])))
    );
}

#[test]
fn non_minimal_answer_set() {
    let p = load("strategic_nonminimal.lp");
    assert_eq!(
        rational_answer_sets(&p).unwrap(),
        [i(&["g1", "g2", "c1", "c2", "c3"])]
    );
    let r = check_mm(&p, &SemanticsId::Rational).unwrap();
    assert!(!r.holds);
    assert_eq!(
        r.witness,
        Some(Witness::NotMinimal {
            answer_set: i(&["g1", "g2", "c1", "c2", "c3"]),
            smaller: i(&["g1", "g2", "c2", "c3"]),
        })
    );
}

#[test]
fn subjective_constraint() {
    let p = load("strategic_subjective.lp");
    let w = rational_world_views(&p).unwrap();
    assert_eq!(w.len(), 1);
    assert_eq!(w[0].model, em(&[&["g1", "g2", "c1", "c2"]]));
    assert!(w[0].phi.is_empty());
    assert!(!is_wfn_founded(&p, &w[0].model, DEFAULT_PAIR_BOUND).unwrap());
    let found = epistemic_unfounded(&p, &w[0].model, 1).unwrap();
    assert!(found.iter().any(|s| s.len() == 1
        && s[0].x == BTreeSet::from([Atom::new("c2")])
        && s[0].i == i(&["g1", "g2", "c1", "c2"])));

    let base = load("strategic_base.lp");
    let c = p.rules().last().unwrap().clone();
    let r = check_scm(&base, &c, &SemanticsId::Rational).unwrap();
    assert!(!r.holds);
    assert_eq!(
        r.witness,
        Some(Witness::WorldView(em(&[&["g1", "g2", "c1", "c2"]])))
    );
}

#[test]
fn may_and_know() {
    let may = load("may_p.lp");
    assert!(ws_check_epistemic(&may, &em(&[&["p"]])).unwrap().is_some());
    assert!(ws_check_epistemic(&may, &em(&[&[]])).unwrap().is_some());
    let v = rational_world_views(&may).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].model, em(&[&["p"]]));
    assert_eq!(g91_world_views(&may).unwrap().len(), 2);

    let know = load("know_p.lp");
    assert!(ws_check_epistemic(&know, &em(&[&["p"]])).unwrap().is_none());
    assert!(ws_check_epistemic(&know, &em(&[&[]])).unwrap().is_some());
    let v = rational_world_views(&know).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].model, em(&[&[]]));
    assert_eq!(g91_world_views(&know).unwrap().len(), 2);
}

#[test]
fn orders_and_stages() {
    let p = load("support.lp");
    let o = ws_check_atomic(&p, &i(&["p", "q"])).unwrap().unwrap();
    assert_eq!(pairs(&o.pairs), BTreeSet::from([("q".into(), "p".into())]));

    let p = load("formula_heads.lp");
    let w = ws_check_normal(&p, &i(&["c", "d", "e"])).unwrap().unwrap();
    assert_eq!(
        pairs(&w.order.pairs),
        BTreeSet::from([("e".into(), "d".into()), ("c".into(), "d".into())])
    );
    let f = |s: &str| parse_formula(s).unwrap();
    let stage1 = vec![f("e | d"), f("e | ~d"), f("a | (~b & c)")];
    let mut stage2 = stage1.clone();
    stage2.push(f("a | d"));
    let mut stage3 = stage2.clone();
    stage3.push(f("(a | ~b) & (a | c)"));
    let got: Vec<BTreeSet<_>> = w
        .lfp_stages
        .iter()
        .map(|t| t.iter().cloned().collect())
        .collect();
    let want: Vec<BTreeSet<_>> = [vec![], stage1, stage2, stage3]
        .into_iter()
        .map(|v| v.into_iter().collect())
        .collect();
    assert_eq!(got, want);
    assert_eq!(ws_heads(&p, &i(&["c", "d", "e"]), Pruning::On).unwrap().len(), 4);
}

#[test]
fn variant_heads() {
    let p = load("strategic_variant.lp");
    assert_eq!(
        rational_answer_sets(&p).unwrap(),
        [i(&["g1", "g2", "c2", "c3"])]
    );
    assert_eq!(
        di_answer_sets(&p, &SemanticsId::Wj).unwrap(),
        [i(&["g1", "g2", "c1", "c2", "c3"])]
    );
    assert_eq!(
        di_answer_sets(&p, &SemanticsId::GlNlp).unwrap(),
        [i(&["g1", "g2", "c1", "c2", "c3"])]
    );
}

#[test]
fn tautological_body() {
    let p = load("tautology_body.lp");
    let p2 = p.signature().iter().next().unwrap().clone();
    let full: Interpretation = [p2].into_iter().collect();
    assert_eq!(rational_answer_sets(&p).unwrap(), std::slice::from_ref(&full));
    assert!(!is_two_valued_stable(&p, &full).unwrap());
    let fix = stable_fixpoint(&p, &ThreeValuedInterp::two_valued(&full)).unwrap();
    assert_eq!(fix, ThreeValuedInterp::new(Interpretation::new(), full.clone()));
    assert!(!equilibrium_answer_sets(&p).unwrap().contains(&full));
}

#[test]
fn aggregate_translation() {
    let p = load("aggregate.lp");
    let target: Interpretation = p
        .signature()
        .iter()
        .filter(|a| a.to_string() != "p(2)")
        .cloned()
        .collect();
    assert_eq!(target.len(), 2);
    assert!(flp_answer_sets(&p).unwrap().contains(&target));
    assert!(ws_check_normal(&p, &target).unwrap().is_none());
    assert!(!rational_answer_sets(&p).unwrap().contains(&target));
}

#[test]
fn double_negation_and_subsumption() {
    let p = load("double_negation.lp");
    assert_eq!(equilibrium_answer_sets(&p).unwrap(), [i(&["p"])]);
    assert!(rational_answer_sets(&p).unwrap().is_empty());

    let p = load("subsumption.lp");
    assert_eq!(rational_answer_sets(&p).unwrap(), [i(&["a", "b"])]);
    assert!(equilibrium_answer_sets(&p).unwrap().is_empty());
}

#[test]
fn minimality_of_guesses() {
    let p = load("mutual_may.lp");
    let v = rational_world_views(&p).unwrap();
    assert_eq!(v.len(), 1);
    assert_eq!(v[0].model, em(&[&["p"], &["q"]]));
    let g: Vec<_> = g91_world_views(&p).unwrap().into_iter().map(|w| w.model).collect();
    assert_eq!(g.len(), 2);
    assert!(g.contains(&em(&[&["p"], &["q"]])));
    assert!(g.contains(&em(&[&[]])));
}

#[test]
fn hamiltonian_cycle() {
    let p = load("hamiltonian.lp");
    assert_eq!(p.signature().len(), 20);
    let got = rational_answer_sets(&p).unwrap();
    assert_eq!(got.len(), 1);
    let names: BTreeSet<String> = got[0].iter().map(|a| a.to_string()).collect();
    let want: BTreeSet<String> = [
        "node(a)", "node(b)", "node(c)", "edge(a,c)", "edge(b,a)", "edge(b,c)", "edge(c,b)",
        "in(a,c)", "in(c,b)", "in(b,a)", "path(a,c)", "path(c,b)", "path(b,a)", "path(a,b)",
        "path(c,a)", "path(b,c)", "path(a,a)", "path(b,b)", "path(c,c)",
    ]
    .into_iter()
    .map(String::from)
    .collect();
    assert_eq!(names, want);
}

#[test]
fn atom_cap() {
    let p = load("hamiltonian.lp");
    let err = answer_sets(&p, &SemanticsId::Rational, Limits { max_atoms: 10 }).unwrap_err();
    assert_eq!(err, rasp_core::Error::TooManyAtoms { count: 20, max: 10 });
}
