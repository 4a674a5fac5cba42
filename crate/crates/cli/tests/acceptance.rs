//! End-to-end acceptance checks. Prints one PASS/FAIL line per criterion and
//! exits nonzero if any criterion fails.

use std::collections::BTreeSet;
use std::process::Command;

use rasp_core::devtools::suites;
use rasp_core::properties::{
    check_cm, check_mm, check_scm, epistemic_unfounded, is_wfn_founded, unfounded_sets, Witness,
    DEFAULT_PAIR_BOUND,
};
use rasp_core::semantics::{
    di_answer_sets, equilibrium_answer_sets, flp_answer_sets, g91_world_views, gl_answer_sets,
    is_two_valued_stable, rational_answer_sets, rational_world_views, stable_fixpoint,
    SemanticsId, ThreeValuedInterp,
};
use rasp_core::syntax::{ground, parse_formula};
use rasp_core::wellsupport::{ws_check_atomic, ws_check_epistemic, ws_check_normal};
use rasp_core::{parse_program, Atom, EpistemicModel, Interpretation, Program};
use serde_json::Value;

type Check = Result<(), String>;
type Criterion = (&'static str, fn() -> Check);

fn path(name: &str) -> String {
    format!("{}/../../programs/{name}", env!("CARGO_MANIFEST_DIR"))
}

fn load(name: &str) -> Program {
    let text = std::fs::read_to_string(path(name)).expect("fixture exists");
    ground(&parse_program(&text).expect("fixture parses")).expect("fixture grounds")
}

fn i(names: &[&str]) -> Interpretation {
    Interpretation::from_names(names.iter().copied())
}

fn em(sets: &[&[&str]]) -> EpistemicModel {
    EpistemicModel::new(sets.iter().map(|s| i(s))).expect("non-empty")
}

fn ensure(cond: bool, msg: impl Into<String>) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg.into())
    }
}

fn eq<T: PartialEq + std::fmt::Debug>(got: T, want: T, what: &str) -> Check {
    ensure(got == want, format!("{what}: got {got:?}, want {want:?}"))
}

fn ok<T, E: std::fmt::Display>(r: Result<T, E>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn rasp(args: &[&str]) -> Result<(i32, Value), String> {
    let out = Command::new(env!("CARGO_BIN_EXE_rasp"))
        .args(args)
        .output()
        .map_err(|e| e.to_string())?;
    let code = out.status.code().unwrap_or(-1);
    let v = serde_json::from_slice(&out.stdout)
        .map_err(|e| format!("bad JSON from rasp {args:?}: {e}"))?;
    Ok((code, v))
}

fn c1() -> Check {
    let p = load("strategic.lp");
    let want = i(&["g1", "g2", "c1", "c2"]);
    eq(ok(rational_answer_sets(&p))?, vec![want.clone()], "rational")?;
    ensure(
        !ok(gl_answer_sets(&p))?.contains(&want),
        "GL answer sets contain the expected set",
    )
}

fn c2() -> Check {
    let base = load("strategic_base.lp");
    let with = load("strategic_constrained.lp");
    let want = i(&["g1", "g2", "c1", "c2"]);
    eq(ok(rational_answer_sets(&with))?, vec![want.clone()], "with constraint")?;
    eq(
        ok(rational_answer_sets(&base))?,
        vec![i(&["g1", "g2", "c1"])],
        "without constraint",
    )?;
    let c = with.rules().last().expect("rule").clone();
    let r = ok(check_cm(&base, &c, &SemanticsId::Rational))?;
    ensure(!r.holds, "CM reported as holding")?;
    eq(r.witness, Some(Witness::AnswerSet(want)), "CM witness")
}

fn c3() -> Check {
    let p = load("strategic.lp");
    let x = ok(unfounded_sets(&p, &i(&["g1", "g2", "c1", "c2"])))?;
    ensure(
        x.contains(&BTreeSet::from([Atom::new("c2")])),
        format!("{{c2}} not among unfounded sets {x:?}"),
    )
}

fn c4() -> Check {
    let p = load("strategic_nonminimal.lp");
    let want = i(&["g1", "g2", "c1", "c2", "c3"]);
    eq(ok(rational_answer_sets(&p))?, vec![want.clone()], "rational")?;
    let r = ok(check_mm(&p, &SemanticsId::Rational))?;
    ensure(!r.holds, "MM reported as holding")?;
    eq(
        r.witness,
        Some(Witness::NotMinimal {
            answer_set: want,
            smaller: i(&["g1", "g2", "c2", "c3"]),
        }),
        "MM witness",
    )
}

fn c5() -> Check {
    let p = load("strategic_subjective.lp");
    let w = ok(rational_world_views(&p))?;
    let view = em(&[&["g1", "g2", "c1", "c2"]]);
    eq(w.len(), 1, "world view count")?;
    eq(&w[0].model, &view, "world view")?;
    ensure(w[0].phi.is_empty(), "phi should be empty")?;
    ensure(
        !ok(is_wfn_founded(&p, &view, DEFAULT_PAIR_BOUND))?,
        "world view reported founded",
    )?;
    let s = ok(epistemic_unfounded(&p, &view, DEFAULT_PAIR_BOUND))?;
    ensure(
        s.iter().any(|s| {
            s.len() == 1
                && s[0].x == BTreeSet::from([Atom::new("c2")])
                && s[0].i == i(&["g1", "g2", "c1", "c2"])
        }),
        "missing unfounded pair <{c2}, {g1,g2,c1,c2}>",
    )?;
    let base = load("strategic_base.lp");
    let c = p.rules().last().expect("rule").clone();
    let r = ok(check_scm(&base, &c, &SemanticsId::Rational))?;
    ensure(!r.holds, "SCM reported as holding")
}

fn c6() -> Check {
    let may = load("may_p.lp");
    ensure(ok(ws_check_epistemic(&may, &em(&[&["p"]])))?.is_some(), "{{p}} rejected")?;
    ensure(ok(ws_check_epistemic(&may, &em(&[&[]])))?.is_some(), "{{}} rejected")?;
    let v = ok(rational_world_views(&may))?;
    eq(v.iter().map(|w| w.model.clone()).collect(), vec![em(&[&["p"]])], "M p views")?;
    eq(ok(g91_world_views(&may))?.len(), 2, "G91 views of M p")?;

    let know = load("know_p.lp");
    ensure(ok(ws_check_epistemic(&know, &em(&[&["p"]])))?.is_none(), "{{p}} accepted")?;
    ensure(ok(ws_check_epistemic(&know, &em(&[&[]])))?.is_some(), "{{}} rejected")?;
    let v = ok(rational_world_views(&know))?;
    eq(v.iter().map(|w| w.model.clone()).collect(), vec![em(&[&[]])], "K p views")?;
    eq(ok(g91_world_views(&know))?.len(), 2, "G91 views of K p")?;

    let (code, json) = rasp(&["worldviews", &path("may_p.lp"), "--json"])?;
    eq(code, 0, "exit code")?;
    eq(
        json["world_views"].clone(),
        serde_json::json!([{ "phi": ["~p"], "models": [["p"]] }]),
        "worldviews JSON",
    )
}

fn c7() -> Check {
    let p = load("support.lp");
    let o = ok(ws_check_atomic(&p, &i(&["p", "q"])))?.ok_or("not well-supported")?;
    eq(
        o.pairs,
        BTreeSet::from([(Atom::new("q"), Atom::new("p"))]),
        "atomic order",
    )?;

    let p = load("formula_heads.lp");
    let w = ok(ws_check_normal(&p, &i(&["c", "d", "e"])))?.ok_or("not well-supported")?;
    eq(
        w.order.pairs,
        BTreeSet::from([
            (Atom::new("e"), Atom::new("d")),
            (Atom::new("c"), Atom::new("d")),
        ]),
        "normal order",
    )?;
    let f = |s: &str| parse_formula(s).expect("formula");
    let s1 = [f("e | d"), f("e | ~d"), f("a | (~b & c)")];
    let want: Vec<BTreeSet<_>> = vec![
        BTreeSet::new(),
        s1.iter().cloned().collect(),
        s1.iter().cloned().chain([f("a | d")]).collect(),
        s1.iter()
            .cloned()
            .chain([f("a | d"), f("(a | ~b) & (a | c)")])
            .collect(),
    ];
    let got: Vec<BTreeSet<_>> = w
        .lfp_stages
        .iter()
        .map(|t| t.iter().cloned().collect())
        .collect();
    eq(got, want, "lfp stages")?;

    let (code, json) = rasp(&["check-ws", &path("formula_heads.lp"), "--model", "c,d,e", "--json"])?;
    eq(code, 0, "exit code")?;
    eq(
        json["witnesses"][0]["order"].clone(),
        serde_json::json!([["c", "d"], ["e", "d"]]),
        "check-ws order",
    )
}

fn c8() -> Check {
    let p = load("strategic_variant.lp");
    eq(
        ok(rational_answer_sets(&p))?,
        vec![i(&["g1", "g2", "c2", "c3"])],
        "rational",
    )?;
    eq(
        ok(di_answer_sets(&p, &SemanticsId::Wj))?,
        vec![i(&["g1", "g2", "c1", "c2", "c3"])],
        "DI_WJ",
    )?;
    let (code, json) = rasp(&[
        "compare",
        &path("strategic_variant.lp"),
        "--semantics",
        "RATIONAL,DI_WJ",
        "--json",
    ])?;
    eq(code, 10, "compare exit code")?;
    eq(json["agree"].clone(), Value::Bool(false), "agreement flag")?;
    eq(
        json["disagreements"].clone(),
        serde_json::json!([["RATIONAL", "DI_WJ"]]),
        "disagreement row",
    )
}

fn c9() -> Check {
    let p = load("tautology_body.lp");
    let full: Interpretation = p.signature().iter().cloned().collect();
    eq(full.len(), 1, "signature")?;
    eq(ok(rational_answer_sets(&p))?, vec![full.clone()], "rational")?;
    ensure(!ok(is_two_valued_stable(&p, &full))?, "two-valued stable")?;
    eq(
        stable_fixpoint(&p, &ThreeValuedInterp::two_valued(&full)),
        Some(ThreeValuedInterp::new(Interpretation::new(), full.clone())),
        "stable revision fixpoint",
    )?;
    ensure(
        !ok(equilibrium_answer_sets(&p))?.contains(&full),
        "equilibrium contains {p(2)}",
    )?;

    let p = load("aggregate.lp");
    let target: Interpretation = p
        .signature()
        .iter()
        .filter(|a| a.to_string() != "p(2)")
        .cloned()
        .collect();
    ensure(ok(flp_answer_sets(&p))?.contains(&target), "FLP misses {p(-1),p(1)}")?;
    ensure(ok(ws_check_normal(&p, &target))?.is_none(), "ws check accepts {p(-1),p(1)}")?;
    ensure(
        !ok(rational_answer_sets(&p))?.contains(&target),
        "rational contains {p(-1),p(1)}",
    )
}

fn c10() -> Check {
    let p = load("double_negation.lp");
    eq(ok(equilibrium_answer_sets(&p))?, vec![i(&["p"])], "equilibrium")?;
    eq(ok(rational_answer_sets(&p))?, vec![], "rational")?;
    let p = load("subsumption.lp");
    eq(ok(rational_answer_sets(&p))?, vec![i(&["a", "b"])], "rational")?;
    eq(ok(equilibrium_answer_sets(&p))?, vec![], "equilibrium")
}

fn c11() -> Check {
    let p = load("mutual_may.lp");
    let r: Vec<_> = ok(rational_world_views(&p))?.into_iter().map(|w| w.model).collect();
    eq(r, vec![em(&[&["p"], &["q"]])], "rational world views")?;
    let g: BTreeSet<_> = ok(g91_world_views(&p))?.into_iter().map(|w| w.model).collect();
    eq(g, BTreeSet::from([em(&[&["p"], &["q"]]), em(&[&[]])]), "G91 world views")
}

fn c12() -> Check {
    let (code, json) = rasp(&["solve", &path("hamiltonian.lp"), "--json"])?;
    eq(code, 0, "exit code")?;
    let sets = json["answer_sets"].as_array().ok_or("no answer_sets")?;
    eq(sets.len(), 1, "answer set count")?;
    let got: BTreeSet<&str> = sets[0]
        .as_array()
        .ok_or("not an array")?
        .iter()
        .filter_map(Value::as_str)
        .collect();
    let want = BTreeSet::from([
        "node(a)", "node(b)", "node(c)", "edge(a,c)", "edge(b,a)", "edge(b,c)", "edge(c,b)",
        "in(a,c)", "in(c,b)", "in(b,a)", "path(a,c)", "path(c,b)", "path(b,a)", "path(a,b)",
        "path(c,a)", "path(b,c)", "path(a,a)", "path(b,b)", "path(c,c)",
    ]);
    eq(got, want, "answer set")
}

fn c13() -> Check {
    let mut counts = Vec::new();
    for (name, r) in [
        ("fages", suites::fages(500, 11)),
        ("fixpoints", suites::fixpoints(300, 12)),
        ("gl_subset", suites::gl_subset(500, 13)),
        ("normal_equal", suites::normal_equal(500, 14)),
        ("world_views", suites::world_views(200, 15)),
    ] {
        counts.push(format!("{name} {}", r.map_err(|e| format!("{name}: {e}"))?));
    }
    println!("    oracle programs: {}", counts.join(", "));
    Ok(())
}

fn main() {
    let criteria: [Criterion; 13] = [
        ("strategic companies answer set", c1),
        ("constraint monotonicity counterexample", c2),
        ("unfounded set {c2}", c3),
        ("non-minimal answer set", c4),
        ("subjective constraint and foundedness", c5),
        ("M p and K p world views", c6),
        ("orders and fixpoint stages", c7),
        ("variant heads vs DI", c8),
        ("three-valued and FLP comparisons", c9),
        ("double negation and subsumption", c10),
        ("minimal guesses vs G91", c11),
        ("Hamiltonian cycle", c12),
        ("oracle suites", c13),
    ];
    let mut failed = 0;
    for (k, (name, check)) in criteria.iter().enumerate() {
        let n = k + 1;
        match std::panic::catch_unwind(check) {
            Ok(Ok(())) => println!("criterion {n:2} PASS  {name}"),
            Ok(Err(e)) => {
                failed += 1;
                println!("criterion {n:2} FAIL  {name}: {e}");
            }
            Err(_) => {
                failed += 1;
                println!("criterion {n:2} FAIL  {name}: panicked");
            }
        }
    }
    println!("{} of {} criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
