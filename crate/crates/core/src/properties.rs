//! Checkers for minimality, foundedness and constraint monotonicity.

use std::collections::BTreeSet;
use std::fmt;

use crate::error::{Error, Result};
use crate::logic::{
    ep_satisfies, is_minimal_model, minimal_models, satisfies, sort_canonical, EpistemicModel,
    Interpretation,
};
use crate::semantics::{answer_sets, world_views, Limits, SemanticsId, WorldView};
use crate::syntax::{Atom, Formula, Program, Rule};

/// Default bound on the number of pairs in an epistemic unfounded set.
pub const DEFAULT_PAIR_BOUND: usize = 2;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Property {
    /// Answer sets are minimal models.
    Mm,
    /// Answer sets contain no unfounded set.
    Fn,
    /// World views are founded.
    Wfn,
    /// Constraint monotonicity.
    Cm,
    /// Subjective constraint monotonicity.
    Scm,
}

impl fmt::Display for Property {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Property::Mm => "MM",
            Property::Fn => "FN",
            Property::Wfn => "WFN",
            Property::Cm => "CM",
            Property::Scm => "SCM",
        })
    }
}

impl std::str::FromStr for Property {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Property, String> {
        match s.trim().to_ascii_uppercase().as_str() {
            "MM" => Ok(Property::Mm),
            "FN" => Ok(Property::Fn),
            "WFN" => Ok(Property::Wfn),
            "CM" => Ok(Property::Cm),
            "SCM" => Ok(Property::Scm),
            _ => Err(format!("unknown property {s:?}")),
        }
    }
}

/// One element of an epistemic unfounded set.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct UnfoundedPair {
    pub x: BTreeSet<Atom>,
    pub i: Interpretation,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UnfoundedWitness {
    Atoms(BTreeSet<Atom>),
    Pairs(Vec<UnfoundedPair>),
}

/// Counterexample attached to a failed property.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Witness {
    /// An answer set and a model strictly below it.
    NotMinimal {
        answer_set: Interpretation,
        smaller: Interpretation,
    },
    /// An answer set and an unfounded set of it.
    Unfounded {
        answer_set: Interpretation,
        x: BTreeSet<Atom>,
    },
    /// A world view and an unfounded set of pairs.
    UnfoundedView {
        view: EpistemicModel,
        pairs: Vec<UnfoundedPair>,
    },
    /// An answer set with the constraint that is not an answer set without it.
    AnswerSet(Interpretation),
    /// A world view with the constraint that is not a world view without it.
    WorldView(EpistemicModel),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropertyReport {
    pub property: Property,
    pub holds: bool,
    pub witness: Option<Witness>,
}

impl PropertyReport {
    fn new(property: Property, witness: Option<Witness>) -> PropertyReport {
        PropertyReport {
            property,
            holds: witness.is_none(),
            witness,
        }
    }
}

fn head_atoms(r: &Rule) -> BTreeSet<Atom> {
    r.heads
        .iter()
        .filter_map(|h| match h {
            Formula::Atom(a) => Some(a.clone()),
            _ => None,
        })
        .collect()
}

fn positive_body(r: &Rule) -> BTreeSet<Atom> {
    r.body
        .conjuncts()
        .into_iter()
        .filter_map(|c| match c {
            Formula::Atom(a) => Some(a.clone()),
            _ => None,
        })
        .collect()
}

fn nonempty_subsets(atoms: &[Atom]) -> impl Iterator<Item = BTreeSet<Atom>> + '_ {
    (1u64..1 << atoms.len()).map(move |mask| {
        atoms
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, a)| a.clone())
            .collect()
    })
}

fn is_unfounded_simple(p: &Program, i: &Interpretation, x: &BTreeSet<Atom>) -> bool {
    !p.rules().iter().any(|r| {
        let head = head_atoms(r);
        !head.is_disjoint(x)
            && satisfies(i, &r.body)
            && positive_body(r).is_disjoint(x)
            && head.iter().all(|a| x.contains(a) || !i.contains(a))
    })
}

/// All nonempty `X` within `i` that are unfounded with respect to `i`.
pub fn unfounded_sets(p: &Program, i: &Interpretation) -> Result<Vec<BTreeSet<Atom>>> {
    p.require_simple()?;
    let atoms: Vec<Atom> = i.iter().cloned().collect();
    Ok(nonempty_subsets(&atoms)
        .filter(|x| is_unfounded_simple(p, i, x))
        .collect())
}

/// Body literals of the double-negation fragment.
#[derive(Debug, Clone)]
struct FragmentRule {
    heads: BTreeSet<Atom>,
    body: Formula,
    pos_ob: BTreeSet<Atom>,
    pos_sub: BTreeSet<Atom>,
}

fn objective_literal(f: &Formula) -> bool {
    match f {
        Formula::Atom(_) => true,
        Formula::Not(g) => match g.as_ref() {
            Formula::Atom(_) => true,
            Formula::Not(h) => matches!(h.as_ref(), Formula::Atom(_)),
            _ => false,
        },
        _ => false,
    }
}

/// Counts leading negations and returns the inner `L` of `not L`.
fn subjective_literal(f: &Formula) -> Option<(usize, &Formula)> {
    let mut k = 0;
    let mut g = f;
    while let Formula::Not(inner) = g {
        k += 1;
        g = inner;
    }
    match g {
        Formula::EpNot(l) if k <= 3 && objective_literal(l) => Some((k, l.as_ref())),
        _ => None,
    }
}

fn fragment(p: &Program) -> Result<Vec<FragmentRule>> {
    let mut out = Vec::new();
    for r in p.rules() {
        if !r.is_constraint() && !r.heads.iter().all(|h| matches!(h, Formula::Atom(_))) {
            return Err(Error::Fragment(r.id));
        }
        let mut pos_ob = BTreeSet::new();
        let mut pos_sub = BTreeSet::new();
        for c in r.body.conjuncts() {
            if matches!(c, Formula::Top) {
                continue;
            }
            if objective_literal(c) {
                if let Formula::Atom(a) = c {
                    pos_ob.insert(a.clone());
                }
                continue;
            }
            match subjective_literal(c) {
                Some((1, Formula::Atom(a))) => {
                    pos_sub.insert(a.clone());
                }
                Some(_) => {}
                None => return Err(Error::Fragment(r.id)),
            }
        }
        out.push(FragmentRule {
            heads: head_atoms(r),
            body: r.body.clone(),
            pos_ob,
            pos_sub,
        });
    }
    Ok(out)
}

fn pair_is_unfounded(
    rules: &[FragmentRule],
    w: &EpistemicModel,
    pair: &UnfoundedPair,
    s: &[UnfoundedPair],
) -> bool {
    !rules.iter().any(|r| {
        !r.heads.is_disjoint(&pair.x)
            && ep_satisfies(w, &pair.i, &r.body)
            && r.pos_ob.is_disjoint(&pair.x)
            && r.heads.iter().all(|a| pair.x.contains(a) || !pair.i.contains(a))
            && s.iter().all(|q| r.pos_sub.is_disjoint(&q.x))
    })
}

fn is_unfounded_set(rules: &[FragmentRule], w: &EpistemicModel, s: &[UnfoundedPair]) -> bool {
    s.iter().all(|pair| pair_is_unfounded(rules, w, pair, s))
}

/// Unfounded sets of pairs `<X, I>` with `I` in `w` and `X` meeting `I`,
/// searched up to `bound` pairs. Sets with an unfounded proper subset are
/// not reported.
pub fn epistemic_unfounded(
    p: &Program,
    w: &EpistemicModel,
    bound: usize,
) -> Result<Vec<Vec<UnfoundedPair>>> {
    let rules = fragment(p)?;
    let sig: Vec<Atom> = p.signature().iter().cloned().collect();
    let mut pairs = Vec::new();
    for i in w.iter() {
        for x in nonempty_subsets(&sig) {
            if x.iter().any(|a| i.contains(a)) {
                pairs.push(UnfoundedPair { x, i: i.clone() });
            }
        }
    }
    let mut found: Vec<Vec<UnfoundedPair>> = Vec::new();
    let mut chosen = Vec::new();
    search(&rules, w, &pairs, 0, bound, &mut chosen, &mut found);
    Ok(found)
}

fn search(
    rules: &[FragmentRule],
    w: &EpistemicModel,
    pairs: &[UnfoundedPair],
    start: usize,
    bound: usize,
    chosen: &mut Vec<UnfoundedPair>,
    found: &mut Vec<Vec<UnfoundedPair>>,
) {
    if chosen.len() == bound {
        return;
    }
    for k in start..pairs.len() {
        chosen.push(pairs[k].clone());
        let covered = found
            .iter()
            .any(|s| s.iter().all(|q| chosen.contains(q)));
        if !covered {
            if is_unfounded_set(rules, w, chosen) {
                found.push(chosen.clone());
            } else {
                search(rules, w, pairs, k + 1, bound, chosen, found);
            }
        }
        chosen.pop();
    }
}

/// `w` has no unfounded set of at most `bound` pairs.
pub fn is_wfn_founded(p: &Program, w: &EpistemicModel, bound: usize) -> Result<bool> {
    Ok(first_epistemic_unfounded(p, w, bound)?.is_none())
}

fn first_epistemic_unfounded(
    p: &Program,
    w: &EpistemicModel,
    bound: usize,
) -> Result<Option<Vec<UnfoundedPair>>> {
    Ok(epistemic_unfounded(p, w, bound)?.into_iter().next())
}

fn require_constraint(c: &Rule) -> Result<()> {
    if c.is_constraint() {
        Ok(())
    } else {
        Err(Error::NotConstraint)
    }
}

/// Every answer set under `sem` is a minimal model.
pub fn check_mm(p: &Program, sem: &SemanticsId) -> Result<PropertyReport> {
    check_mm_with(p, sem, Limits::default())
}

pub fn check_mm_with(p: &Program, sem: &SemanticsId, limits: Limits) -> Result<PropertyReport> {
    let sets = answer_sets(p, sem, limits)?;
    let mut witness = None;
    for a in sets {
        if is_minimal_model(&a, p) {
            continue;
        }
        let mut below: Vec<Interpretation> = minimal_models(p)?
            .into_iter()
            .filter(|m| m.is_proper_subset(&a))
            .collect();
        sort_canonical(&mut below, p.signature());
        witness = Some(Witness::NotMinimal {
            answer_set: a,
            smaller: below.swap_remove(0),
        });
        break;
    }
    Ok(PropertyReport::new(Property::Mm, witness))
}

/// No answer set under `sem` has an unfounded set. Simple programs only.
pub fn check_fn(p: &Program, sem: &SemanticsId) -> Result<PropertyReport> {
    check_fn_with(p, sem, Limits::default())
}

pub fn check_fn_with(p: &Program, sem: &SemanticsId, limits: Limits) -> Result<PropertyReport> {
    p.require_simple()?;
    let mut witness = None;
    for a in answer_sets(p, sem, limits)? {
        if let Some(x) = unfounded_sets(p, &a)?.into_iter().next() {
            witness = Some(Witness::Unfounded { answer_set: a, x });
            break;
        }
    }
    Ok(PropertyReport::new(Property::Fn, witness))
}

/// Every world view under `sem` is founded, searching unfounded sets of up
/// to `bound` pairs.
pub fn check_wfn(p: &Program, sem: &SemanticsId, bound: usize) -> Result<PropertyReport> {
    check_wfn_with(p, sem, bound, Limits::default())
}

pub fn check_wfn_with(
    p: &Program,
    sem: &SemanticsId,
    bound: usize,
    limits: Limits,
) -> Result<PropertyReport> {
    fragment(p)?;
    let mut witness = None;
    for v in world_views(p, sem, limits)? {
        if let Some(pairs) = first_epistemic_unfounded(p, &v.model, bound)? {
            witness = Some(Witness::UnfoundedView {
                view: v.model,
                pairs,
            });
            break;
        }
    }
    Ok(PropertyReport::new(Property::Wfn, witness))
}

/// Answer sets of `p` plus the constraint `c` are answer sets of `p` that
/// satisfy `c`.
pub fn check_cm(p: &Program, c: &Rule, sem: &SemanticsId) -> Result<PropertyReport> {
    check_cm_with(p, c, sem, Limits::default())
}

pub fn check_cm_with(
    p: &Program,
    c: &Rule,
    sem: &SemanticsId,
    limits: Limits,
) -> Result<PropertyReport> {
    require_constraint(c)?;
    p.require_epistemic_free()?;
    let allowed: Vec<Interpretation> = answer_sets(p, sem, limits)?
        .into_iter()
        .filter(|i| !satisfies(i, &c.body))
        .collect();
    let witness = answer_sets(&p.with_rule(c.clone()), sem, limits)?
        .into_iter()
        .find(|i| !allowed.contains(i))
        .map(Witness::AnswerSet);
    Ok(PropertyReport::new(Property::Cm, witness))
}

fn view_satisfies(w: &WorldView, c: &Rule) -> bool {
    w.model.iter().all(|i| !ep_satisfies(&w.model, i, &c.body))
}

/// World views of `p` plus the subjective constraint `c` are world views of
/// `p` that satisfy `c`.
pub fn check_scm(p: &Program, c: &Rule, sem: &SemanticsId) -> Result<PropertyReport> {
    check_scm_with(p, c, sem, Limits::default())
}

pub fn check_scm_with(
    p: &Program,
    c: &Rule,
    sem: &SemanticsId,
    limits: Limits,
) -> Result<PropertyReport> {
    require_constraint(c)?;
    let allowed: Vec<EpistemicModel> = world_views(p, sem, limits)?
        .into_iter()
        .filter(|w| view_satisfies(w, c))
        .map(|w| w.model)
        .collect();
    let witness = world_views(&p.with_rule(c.clone()), sem, limits)?
        .into_iter()
        .map(|w| w.model)
        .find(|m| !allowed.contains(m))
        .map(Witness::WorldView);
    Ok(PropertyReport::new(Property::Scm, witness))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    fn set(names: &[&str]) -> BTreeSet<Atom> {
        names.iter().map(|n| Atom::new(n)).collect()
    }

    #[test]
    fn fact_has_no_unfounded_set() {
        let p = parse_program("p.").unwrap();
        assert!(unfounded_sets(&p, &Interpretation::from_names(["p"]))
            .unwrap()
            .is_empty());
    }

    #[test]
    fn positive_loop_is_unfounded() {
        let p = parse_program("p :- q. q :- p.").unwrap();
        let got = unfounded_sets(&p, &Interpretation::from_names(["p", "q"])).unwrap();
        assert!(got.contains(&set(&["p", "q"])));
    }

    #[test]
    fn epistemic_foundedness() {
        let w = EpistemicModel::new([Interpretation::from_names(["p"])]).unwrap();
        let fact = parse_program("p.").unwrap();
        assert!(is_wfn_founded(&fact, &w, DEFAULT_PAIR_BOUND).unwrap());
        let pos = parse_program("p :- p.").unwrap();
        assert!(!is_wfn_founded(&pos, &w, DEFAULT_PAIR_BOUND).unwrap());
        let dneg = parse_program("p :- ~~p.").unwrap();
        assert!(is_wfn_founded(&dneg, &w, DEFAULT_PAIR_BOUND).unwrap());
        let know = parse_program("p :- K p.").unwrap();
        assert!(!is_wfn_founded(&know, &w, DEFAULT_PAIR_BOUND).unwrap());
    }

    #[test]
    fn outside_fragment() {
        let p = parse_program("p :- q | r.").unwrap();
        let w = EpistemicModel::new([Interpretation::new()]).unwrap();
        assert!(matches!(
            epistemic_unfounded(&p, &w, 1),
            Err(Error::Fragment(_))
        ));
    }

    #[test]
    fn cm_needs_constraint() {
        let p = parse_program("p.").unwrap();
        let not_c = parse_program("q.").unwrap().rules()[0].clone();
        assert_eq!(
            check_cm(&p, &not_c, &SemanticsId::Rational),
            Err(Error::NotConstraint)
        );
    }

    #[test]
    fn mm_holds_vacuously() {
        let p = parse_program("p :- ~p.").unwrap();
        let r = check_mm(&p, &SemanticsId::Rational).unwrap();
        assert!(r.holds && r.witness.is_none());
    }
}
