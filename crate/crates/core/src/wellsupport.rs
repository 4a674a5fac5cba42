//! Well-supportedness: the one-step provability operator, its least fixpoint
//! and the order-constructing checks for atomic-head, normal, disjunctive and
//! epistemic programs.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::logic::{entails, equivalent, is_epistemic_model, is_model, satisfies};
use crate::logic::{EpistemicModel, Interpretation, Theory};
use crate::reducts::{disjunctive_reduct, enumerate_selections, epistemic_reduct, HeadSelection};
use crate::syntax::{Atom, Formula, Program, Rule};

/// Strict order on atoms; a pair `(q, p)` means `q` precedes `p`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PartialOrder {
    pub pairs: BTreeSet<(Atom, Atom)>,
}

/// Strict order on rule heads; a pair `(f, h)` means `f` precedes `h`.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct HeadOrder {
    pub pairs: BTreeSet<(Formula, Formula)>,
}

fn acyclic<T: Ord>(pairs: &BTreeSet<(T, T)>) -> bool {
    // Kahn's algorithm over the nodes that occur in some pair.
    let mut indeg: BTreeMap<&T, usize> = BTreeMap::new();
    for (a, b) in pairs {
        indeg.entry(a).or_default();
        *indeg.entry(b).or_default() += 1;
    }
    let mut ready: Vec<&T> = indeg.iter().filter(|(_, d)| **d == 0).map(|(n, _)| *n).collect();
    let mut seen = 0;
    while let Some(n) = ready.pop() {
        seen += 1;
        for (_, b) in pairs.iter().filter(|(a, _)| a == n) {
            let d = indeg.get_mut(b).expect("node registered");
            *d -= 1;
            if *d == 0 {
                ready.push(b);
            }
        }
    }
    seen == indeg.len()
}

impl PartialOrder {
    pub fn is_acyclic(&self) -> bool {
        acyclic(&self.pairs)
    }

    pub fn precedes(&self, q: &Atom, p: &Atom) -> bool {
        self.pairs.contains(&(q.clone(), p.clone()))
    }
}

impl HeadOrder {
    pub fn is_acyclic(&self) -> bool {
        acyclic(&self.pairs)
    }
}

/// Evidence that an interpretation is well-supported.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WsWitness {
    pub order: PartialOrder,
    pub head_order: HeadOrder,
    /// Head selection used, for disjunctive programs.
    pub selection: Option<HeadSelection>,
    /// Stages of the least fixpoint without equivalence pruning.
    pub lfp_stages: Vec<Theory>,
    /// Stages computed with equivalence pruning.
    pub pruned_stages: Vec<Theory>,
}

/// Whether heads logically equivalent to an already derived head are dropped.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Pruning {
    Off,
    On,
}

/// Heads of the rules whose body is entailed by `o` together with `n`.
pub fn t_operator(p: &Program, o: &Theory, n: &Theory) -> Result<Theory> {
    p.require_epistemic_free()?;
    p.require_normal()?;
    let premises: Vec<&Formula> = o.iter().chain(n.iter()).collect();
    let mut out = Theory::new();
    for r in p.rules() {
        if entails(premises.iter().copied(), &r.body) {
            if r.heads[0] == Formula::Bot {
                return Err(Error::BotDerived);
            }
            out.insert(r.heads[0].clone());
        }
    }
    Ok(out)
}

/// Iterates the operator from the empty theory and returns every stage up
/// to and including the fixpoint.
pub fn lfp_t(p: &Program, n: &Theory, pruning: Pruning) -> Result<Vec<Theory>> {
    p.require_epistemic_free()?;
    p.require_normal()?;
    let rules: Vec<&Rule> = p.rules().iter().collect();
    let neg: Vec<Formula> = n.iter().cloned().collect();
    match pruning {
        Pruning::Off => plain_stages(&rules, &neg),
        Pruning::On => Ok(run_pruned(&rules, &neg, None)?.stages),
    }
}

fn plain_stages(rules: &[&Rule], neg: &[Formula]) -> Result<Vec<Theory>> {
    let mut stages = vec![Theory::new()];
    loop {
        let cur = stages.last().expect("non-empty");
        let premises: Vec<&Formula> = cur.iter().chain(neg).collect();
        let mut next = cur.clone();
        for r in rules {
            if !cur.contains(&r.heads[0]) && entails(premises.iter().copied(), &r.body) {
                if r.heads[0] == Formula::Bot {
                    return Err(Error::BotDerived);
                }
                next.insert(r.heads[0].clone());
            }
        }
        if next.len() == cur.len() {
            return Ok(stages);
        }
        stages.push(next);
    }
}

struct Pruned {
    stages: Vec<Theory>,
    order: PartialOrder,
    head_order: HeadOrder,
}

/// The pruned fixpoint computation. When `track` holds the interpretation,
/// the atom and head orders are built along the way.
fn run_pruned(rules: &[&Rule], neg: &[Formula], track: Option<&Interpretation>) -> Result<Pruned> {
    let mut remaining: Vec<&Rule> = rules.to_vec();
    let mut stages = vec![Theory::new()];
    let mut order = PartialOrder::default();
    let mut head_order = HeadOrder::default();
    let mut entailed: BTreeSet<Atom> = BTreeSet::new();
    while !remaining.is_empty() {
        let cur = stages.last().expect("non-empty");
        let premises: Vec<&Formula> = cur.iter().chain(neg).collect();
        let (fired, rest): (Vec<&Rule>, Vec<&Rule>) = remaining
            .iter()
            .partition(|r| entails(premises.iter().copied(), &r.body));
        if fired.is_empty() {
            break;
        }
        let mut next = cur.clone();
        for r in &fired {
            if r.heads[0] == Formula::Bot {
                return Err(Error::BotDerived);
            }
            next.insert(r.heads[0].clone());
        }
        remaining = rest
            .into_iter()
            .filter(|r2| !fired.iter().any(|r| equivalent(&r.heads[0], &r2.heads[0])))
            .collect();
        if let Some(i) = track {
            for r in &fired {
                for f in cur.iter() {
                    head_order.pairs.insert((f.clone(), r.heads[0].clone()));
                }
            }
            let next_premises: Vec<&Formula> = next.iter().chain(neg).collect();
            let newly: Vec<&Atom> = i
                .iter()
                .filter(|a| {
                    !entailed.contains(*a)
                        && entails(next_premises.iter().copied(), &Formula::Atom((*a).clone()))
                })
                .collect();
            for p in &newly {
                for q in &entailed {
                    order.pairs.insert((q.clone(), (*p).clone()));
                }
            }
            entailed.extend(newly.into_iter().cloned());
        }
        stages.push(next);
    }
    Ok(Pruned {
        stages,
        order,
        head_order,
    })
}

fn neg_theory(i: &Interpretation, p: &Program) -> Vec<Formula> {
    i.negative_literals(p.signature())
}

fn require_model(p: &Program, i: &Interpretation) -> Result<()> {
    if is_model(i, p) {
        Ok(())
    } else {
        Err(Error::NotModel)
    }
}

fn satisfied_rules<'a>(p: &'a Program, i: &Interpretation) -> Vec<&'a Rule> {
    p.rules().iter().filter(|r| satisfies(i, &r.body)).collect()
}

/// Algorithm for normal programs with atomic heads: a rule fires once its
/// body is entailed by the atoms derived so far plus the false atoms; `i` is
/// well-supported iff exactly its atoms are derived.
pub fn ws_check_atomic(p: &Program, i: &Interpretation) -> Result<Option<PartialOrder>> {
    p.require_epistemic_free()?;
    p.require_normal()?;
    p.require_atomic_head()?;
    require_model(p, i)?;
    let neg = neg_theory(i, p);
    let mut remaining = satisfied_rules(p, i);
    let mut derived: Vec<Formula> = Vec::new();
    let mut order = PartialOrder::default();
    loop {
        let premises: Vec<&Formula> = derived.iter().chain(&neg).collect();
        let (fired, rest): (Vec<&Rule>, Vec<&Rule>) = remaining
            .iter()
            .partition(|r| entails(premises.iter().copied(), &r.body));
        let mut added: Vec<Formula> = Vec::new();
        for r in fired {
            let head = r.heads[0].clone();
            if added.contains(&head) {
                continue;
            }
            if let Formula::Atom(p) = &head {
                for q in &derived {
                    if let Formula::Atom(q) = q {
                        order.pairs.insert((q.clone(), p.clone()));
                    }
                }
            }
            added.push(head);
        }
        remaining = rest
            .into_iter()
            .filter(|r| !added.contains(&r.heads[0]))
            .collect();
        if added.is_empty() || remaining.is_empty() {
            derived.extend(added);
            break;
        }
        derived.extend(added);
    }
    let derived: BTreeSet<Atom> = derived
        .into_iter()
        .filter_map(|f| match f {
            Formula::Atom(a) => Some(a),
            _ => None,
        })
        .collect();
    if derived == *i.atoms() {
        assert!(order.is_acyclic(), "constructed order has a cycle");
        Ok(Some(order))
    } else {
        Ok(None)
    }
}

/// Cheap well-supportedness test for a normal program; no witness.
pub(crate) fn is_ws_normal(p: &Program, i: &Interpretation) -> bool {
    let neg = neg_theory(i, p);
    let rules = satisfied_rules(p, i);
    let Ok(run) = run_pruned(&rules, &neg, None) else {
        return false;
    };
    let last = run.stages.last().expect("non-empty");
    let goal = Formula::conj(i.iter().map(|a| Formula::Atom(a.clone())));
    entails(last.iter().chain(&neg), &goal)
}

/// Algorithm for normal programs with arbitrary formulas. Returns a witness
/// iff the fixpoint together with the false atoms entails every atom of `i`.
pub fn ws_check_normal(p: &Program, i: &Interpretation) -> Result<Option<WsWitness>> {
    p.require_epistemic_free()?;
    p.require_normal()?;
    require_model(p, i)?;
    if !is_ws_normal(p, i) {
        return Ok(None);
    }
    let neg = neg_theory(i, p);
    let rules = satisfied_rules(p, i);
    let run = run_pruned(&rules, &neg, Some(i))?;
    let all: Vec<&Rule> = p.rules().iter().collect();
    let lfp_stages = plain_stages(&all, &neg)?;
    assert!(run.order.is_acyclic() && run.head_order.is_acyclic());
    Ok(Some(WsWitness {
        order: run.order,
        head_order: run.head_order,
        selection: None,
        lfp_stages,
        pruned_stages: run.stages,
    }))
}

/// The set of well-supported rule heads: the fixpoint for `¬I⁻`.
pub fn ws_heads(p: &Program, i: &Interpretation, pruning: Pruning) -> Result<Theory> {
    p.require_epistemic_free()?;
    p.require_normal()?;
    require_model(p, i)?;
    let n: Theory = neg_theory(i, p).into_iter().collect();
    let stages = lfp_t(p, &n, pruning)?;
    Ok(stages.into_iter().last().expect("non-empty"))
}

/// Whether some head selection makes `i` well-supported.
pub(crate) fn is_ws_disjunctive(p: &Program, i: &Interpretation) -> bool {
    enumerate_selections(p, i).any(|sel| {
        disjunctive_reduct(p, i, &sel).is_ok_and(|red| is_ws_normal(&red, i))
    })
}

/// First selection, in canonical order, under which the reduct is
/// well-supported.
pub fn ws_check_disjunctive(p: &Program, i: &Interpretation) -> Result<Option<WsWitness>> {
    Ok(ws_all_witnesses(p, i, Some(1))?.into_iter().next())
}

/// Witnesses for every passing selection, up to `limit`.
pub fn ws_all_witnesses(
    p: &Program,
    i: &Interpretation,
    limit: Option<usize>,
) -> Result<Vec<WsWitness>> {
    p.require_epistemic_free()?;
    require_model(p, i)?;
    let mut out = Vec::new();
    for sel in enumerate_selections(p, i) {
        if limit.is_some_and(|l| out.len() >= l) {
            break;
        }
        let red = disjunctive_reduct(p, i, &sel)?;
        if let Some(mut w) = ws_check_normal(&red, i)? {
            w.selection = Some(sel);
            out.push(w);
        }
    }
    Ok(out)
}

/// Every member of `a` is well-supported in the epistemic reduct by `a`.
/// Witnesses are chosen independently per member.
pub fn ws_check_epistemic(
    p: &Program,
    a: &EpistemicModel,
) -> Result<Option<BTreeMap<Interpretation, WsWitness>>> {
    if !is_epistemic_model(a, p) {
        return Err(Error::NotEpistemicModel);
    }
    let red = epistemic_reduct(p, a)?;
    let mut out = BTreeMap::new();
    for i in a.iter() {
        match ws_check_disjunctive(&red.program, i)? {
            Some(w) => {
                out.insert(i.clone(), w);
            }
            None => return Ok(None),
        }
    }
    Ok(Some(out))
}
