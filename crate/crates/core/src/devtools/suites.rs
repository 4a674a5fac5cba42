//! Randomized and exhaustive cross-checks between the library and the
//! reference implementations in [`super::oracle`]. Each suite returns the
//! number of programs checked, or a description of the first disagreement.

use std::collections::BTreeSet;

use rand::Rng;

use super::oracle::{self, Brute};
use super::{all_simple_normal, rng};
use crate::logic::{
    is_antichain, is_epistemic_model, is_model, program_models, Interpretation,
};
use crate::semantics::{
    answer_sets, rational_world_views, se16_world_views, Limits, SemanticsId, WorldView,
};
use crate::syntax::Program;
use crate::wellsupport::{
    ws_check_atomic, ws_check_disjunctive, ws_check_normal, ws_heads, Pruning,
};

pub type SuiteResult = Result<usize, String>;

fn fail(p: &Program, what: impl std::fmt::Display) -> String {
    format!("{what}\nprogram:\n{p}")
}

fn run(p: &Program, sem: SemanticsId) -> Result<Vec<Interpretation>, String> {
    answer_sets(p, &sem, Limits::default()).map_err(|e| fail(p, format!("{sem}: {e}")))
}

fn set(v: &[Interpretation]) -> BTreeSet<Interpretation> {
    v.iter().cloned().collect()
}

/// Output invariants: every answer set is a model, the list is in canonical
/// order without duplicates, and an antichain wherever answer sets are known
/// to be minimal models.
pub fn check_answer_sets(
    p: &Program,
    sem: &SemanticsId,
    sets: &[Interpretation],
) -> Result<(), String> {
    if let Some(bad) = sets.iter().find(|i| !is_model(i, p)) {
        return Err(fail(p, format!("{sem} returned non-model {bad}")));
    }
    let keys: Vec<_> = sets.iter().map(|i| i.canonical_key(p.signature())).collect();
    if keys.windows(2).any(|w| w[0] >= w[1]) {
        return Err(fail(p, format!("{sem} output not canonical")));
    }
    let minimal = match sem {
        SemanticsId::Flp => true,
        SemanticsId::Gl | SemanticsId::Equilibrium => p.is_simple(),
        _ => false,
    };
    if minimal && !is_antichain(sets) {
        return Err(fail(p, format!("{sem} output is not an antichain")));
    }
    Ok(())
}

/// World-view invariants: each model is an epistemic model, `phi` is the
/// set of true epistemic negations, and no returned guess is strictly
/// below another candidate's.
pub fn check_world_views(p: &Program, views: &[WorldView]) -> Result<(), String> {
    let ep = p.ep_negations();
    for w in views {
        if !is_epistemic_model(&w.model, p) {
            return Err(fail(p, format!("world view {} is not an epistemic model", w.model)));
        }
        let phi: BTreeSet<_> = ep.iter().filter(|f| w.model.ep_not_holds(f)).cloned().collect();
        if phi != w.phi {
            return Err(fail(p, format!("wrong phi for world view {}", w.model)));
        }
    }
    Ok(())
}

fn library_models(p: &Program, b: &Brute) -> Result<Vec<Interpretation>, String> {
    let got = program_models(p).map_err(|e| fail(p, e))?;
    let want = b.models(p);
    if set(&got) != set(&want) {
        return Err(fail(p, "model enumeration disagrees with truth table"));
    }
    Ok(want)
}

fn fages_one(p: &Program) -> Result<(), String> {
    let b = Brute::new(p);
    let models = library_models(p, &b)?;
    let mut supported = BTreeSet::new();
    for m in &models {
        let fages = oracle::fages_well_supported(p, m);
        let atomic = ws_check_atomic(p, m).map_err(|e| fail(p, e))?;
        if let Some(o) = &atomic {
            if !o.is_acyclic() {
                return Err(fail(p, format!("cyclic order for {m}")));
            }
        }
        let normal = ws_check_normal(p, m).map_err(|e| fail(p, e))?.is_some();
        if fages != atomic.is_some() || fages != normal {
            return Err(fail(
                p,
                format!("{m}: fages {fages}, atomic {}, lfp {normal}", atomic.is_some()),
            ));
        }
        if fages {
            supported.insert(m.clone());
        }
    }
    let rational = run(p, SemanticsId::Rational)?;
    check_answer_sets(p, &SemanticsId::Rational, &rational)?;
    if set(&rational) != supported {
        return Err(fail(p, "rational answer sets differ from Fages-supported models"));
    }
    Ok(())
}

/// Fages equivalence on every simple normal program with at most three
/// rules over three atoms, then on `random` larger ones.
pub fn fages(random: usize, seed: u64) -> SuiteResult {
    let mut count = 0;
    for p in all_simple_normal(3, 3) {
        fages_one(&p)?;
        count += 1;
    }
    let mut r = rng(seed);
    for _ in 0..random {
        let n = r.gen_range(4..=6);
        let rules = r.gen_range(3..=8);
        fages_one(&super::random_simple(&mut r, n, rules, 1))?;
        count += 1;
    }
    Ok(count)
}

/// Fixpoint characterizations against order search: atom-head programs with
/// formula bodies, normal programs with formula heads, and disjunctive
/// programs through head selections.
pub fn fixpoints(count: usize, seed: u64) -> SuiteResult {
    let mut r = rng(seed);
    for _ in 0..count {
        let n = r.gen_range(2..=5);
        let rules = r.gen_range(2..=5);
        let p = super::random_atomic_head(&mut r, n, rules, 2);
        let b = Brute::new(&p);
        for m in library_models(&p, &b)? {
            let want = oracle::atomic_well_supported(&b, &p, &m);
            let atomic = ws_check_atomic(&p, &m).map_err(|e| fail(&p, e))?.is_some();
            let lfp = ws_check_normal(&p, &m).map_err(|e| fail(&p, e))?.is_some();
            if want != atomic || want != lfp {
                return Err(fail(
                    &p,
                    format!("{m}: order search {want}, atomic {atomic}, lfp {lfp}"),
                ));
            }
        }
    }
    for _ in 0..count {
        let n = r.gen_range(2..=4);
        let rules = r.gen_range(2..=4);
        let p = super::random_normal(&mut r, n, rules, 2);
        let b = Brute::new(&p);
        for m in library_models(&p, &b)? {
            let sets = oracle::well_supported_head_sets(&b, &p, &m);
            let heads: BTreeSet<_> = ws_heads(&p, &m, Pruning::Off)
                .map_err(|e| fail(&p, e))?
                .iter()
                .cloned()
                .collect();
            if sets.len() != 1 || sets[0].0 != heads {
                return Err(fail(&p, format!("{m}: well-supported head sets differ from lfp")));
            }
            let want = oracle::normal_well_supported(&b, &p, &m);
            let got = ws_check_normal(&p, &m).map_err(|e| fail(&p, e))?;
            if let Some(w) = &got {
                if !w.order.is_acyclic() || !w.head_order.is_acyclic() {
                    return Err(fail(&p, format!("{m}: cyclic witness")));
                }
            }
            if want != got.is_some() {
                return Err(fail(&p, format!("{m}: order search {want}, lfp {}", got.is_some())));
            }
        }
    }
    for _ in 0..count {
        let n = r.gen_range(2..=4);
        let rules = r.gen_range(2..=4);
        let p = super::random_disjunctive(&mut r, n, rules, 1, 2);
        let b = Brute::new(&p);
        for m in library_models(&p, &b)? {
            let want = oracle::disjunctive_well_supported(&b, &p, &m);
            let got = ws_check_disjunctive(&p, &m).map_err(|e| fail(&p, e))?.is_some();
            if want != got {
                return Err(fail(&p, format!("{m}: selection search {want}, library {got}")));
            }
        }
        let rational = run(&p, SemanticsId::Rational)?;
        check_answer_sets(&p, &SemanticsId::Rational, &rational)?;
        if set(&rational) != oracle::rational(&p) {
            return Err(fail(&p, "rational answer sets differ from exhaustive search"));
        }
    }
    Ok(3 * count)
}

/// GL answer sets are rational answer sets; FLP and equilibrium agree with
/// GL on simple programs.
pub fn gl_subset(count: usize, seed: u64) -> SuiteResult {
    let mut r = rng(seed);
    for _ in 0..count {
        let n = r.gen_range(2..=6);
        let rules = r.gen_range(2..=7);
        let p = super::random_simple(&mut r, n, rules, 3);
        let gl = run(&p, SemanticsId::Gl)?;
        let rational = run(&p, SemanticsId::Rational)?;
        let flp = run(&p, SemanticsId::Flp)?;
        let eq = run(&p, SemanticsId::Equilibrium)?;
        for (sem, sets) in [
            (SemanticsId::Gl, &gl),
            (SemanticsId::Rational, &rational),
            (SemanticsId::Flp, &flp),
            (SemanticsId::Equilibrium, &eq),
        ] {
            check_answer_sets(&p, &sem, sets)?;
        }
        if !set(&gl).is_subset(&set(&rational)) {
            return Err(fail(&p, "GL answer set that is not rational"));
        }
        if flp != gl || eq != gl {
            return Err(fail(&p, "FLP or equilibrium differs from GL"));
        }
    }
    Ok(count)
}

/// On normal programs GL_NLP (simple case), WJ and DI_WJ coincide with the
/// rational semantics.
pub fn normal_equal(count: usize, seed: u64) -> SuiteResult {
    let mut r = rng(seed);
    for k in 0..count {
        let p = if k % 2 == 0 {
            let n = r.gen_range(2..=6);
            let rules = r.gen_range(2..=7);
            super::random_simple(&mut r, n, rules, 1)
        } else {
            let n = r.gen_range(2..=5);
            let rules = r.gen_range(2..=5);
            super::random_normal(&mut r, n, rules, 2)
        };
        let rational = run(&p, SemanticsId::Rational)?;
        let mut others = vec![SemanticsId::Wj, SemanticsId::DiWj];
        if p.is_simple() {
            others.push(SemanticsId::GlNlp);
        }
        check_answer_sets(&p, &SemanticsId::Rational, &rational)?;
        for sem in others {
            let got = run(&p, sem.clone())?;
            check_answer_sets(&p, &sem, &got)?;
            if got != rational {
                return Err(fail(&p, format!("{sem} differs from RATIONAL")));
            }
        }
    }
    Ok(count)
}

/// Guess-and-check world views over the rational base agree with the
/// direct world-view enumeration and with exhaustive search over
/// collections of interpretations.
pub fn world_views(count: usize, seed: u64) -> SuiteResult {
    let mut r = rng(seed);
    for _ in 0..count {
        let rules = r.gen_range(2..=4);
        let p = super::random_epistemic(&mut r, 3, rules, 3);
        let direct = rational_world_views(&p).map_err(|e| fail(&p, e))?;
        let se16 = se16_world_views(&p, &SemanticsId::Rational).map_err(|e| fail(&p, e))?;
        check_world_views(&p, &direct)?;
        if direct != se16 {
            return Err(fail(&p, "SE16(RATIONAL) differs from rational world views"));
        }
        let got: BTreeSet<_> = direct.into_iter().map(|w| (w.model, w.phi)).collect();
        if got != oracle::world_views(&p) {
            return Err(fail(&p, "world views differ from exhaustive search"));
        }
    }
    Ok(count)
}
