//! Program transformations relative to an interpretation, an epistemic model
//! or a guess of epistemic negations, plus head selections for disjunctive
//! rules.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::{Error, Result};
use crate::logic::{equivalent, eval, satisfies, EpistemicModel, Interpretation};
use crate::syntax::{Formula, Program, Rule, RuleId};

/// Gelfond-Lifschitz reduct of a simple program.
pub fn gl_reduct(p: &Program, i: &Interpretation) -> Result<Program> {
    p.require_simple()?;
    let mut rules = Vec::new();
    for r in p.rules() {
        let mut pos = Vec::new();
        let mut blocked = false;
        for c in r.body.conjuncts() {
            match c.as_literal() {
                Some((a, true)) => pos.push(Formula::Atom(a.clone())),
                Some((a, false)) => blocked |= i.contains(a),
                None => {}
            }
        }
        if !blocked {
            rules.push(Rule {
                id: r.id,
                heads: r.heads.clone(),
                body: Formula::conj(pos),
                guards: Vec::new(),
            });
        }
    }
    Ok(p.derive(rules))
}

/// FLP reduct: the rules whose body `i` satisfies.
pub fn flp_reduct(p: &Program, i: &Interpretation) -> Result<Program> {
    p.require_epistemic_free()?;
    let rules = p
        .rules()
        .iter()
        .filter(|r| satisfies(i, &r.body))
        .cloned()
        .collect();
    Ok(p.derive(rules))
}

/// Ferraris reduct of a classical formula.
pub fn ferraris_reduct(f: &Formula, i: &Interpretation) -> Formula {
    match f {
        Formula::Top => Formula::Top,
        Formula::Bot => Formula::Bot,
        Formula::Atom(_) => {
            if satisfies(i, f) {
                f.clone()
            } else {
                Formula::Bot
            }
        }
        Formula::Not(g) => {
            if satisfies(i, g) {
                Formula::Bot
            } else {
                Formula::Top
            }
        }
        Formula::Iff(a, b) => {
            let both = Formula::and(
                Formula::implies((**a).clone(), (**b).clone()),
                Formula::implies((**b).clone(), (**a).clone()),
            );
            ferraris_reduct(&both, i)
        }
        Formula::And(a, b) | Formula::Or(a, b) | Formula::Implies(a, b) => {
            if !satisfies(i, f) {
                return Formula::Bot;
            }
            let (x, y) = (ferraris_reduct(a, i), ferraris_reduct(b, i));
            match f {
                Formula::And(..) => Formula::and(x, y),
                Formula::Or(..) => Formula::or(x, y),
                _ => Formula::implies(x, y),
            }
        }
        Formula::EpNot(_) => panic!("epistemic negation in Ferraris reduct"),
    }
}

/// Result of reducing an epistemic program by an epistemic model.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EpistemicReduct {
    pub program: Program,
    /// The formulas `F` whose epistemic negation holds in the model.
    pub phi: BTreeSet<Formula>,
}

fn replace_ep(p: &Program, phi: &BTreeSet<Formula>) -> Program {
    let mut sub = |g: &Formula| match g {
        Formula::EpNot(inner) => Some(if phi.contains(inner.as_ref()) {
            Formula::Top
        } else {
            Formula::not(inner.as_ref().clone())
        }),
        _ => None,
    };
    let rules = p
        .rules()
        .iter()
        .map(|r| Rule {
            id: r.id,
            heads: r.heads.iter().map(|h| h.map(&mut sub)).collect(),
            body: r.body.map(&mut sub),
            guards: r.guards.clone(),
        })
        .collect();
    p.derive(rules)
}

/// Replaces `not F` by `Top` when it holds in `a` and by `~F` otherwise.
pub fn epistemic_reduct(p: &Program, a: &EpistemicModel) -> Result<EpistemicReduct> {
    if !crate::logic::is_epistemic_model(a, p) {
        return Err(Error::NotEpistemicModel);
    }
    let phi: BTreeSet<Formula> = p
        .ep_negations()
        .into_iter()
        .filter(|f| a.ep_not_holds(f))
        .collect();
    Ok(EpistemicReduct {
        program: replace_ep(p, &phi),
        phi,
    })
}

/// Reduct by a guess `phi` of the epistemic negations taken to be true.
pub fn se16_reduct(p: &Program, phi: &BTreeSet<Formula>) -> Result<Program> {
    let ep = p.ep_negations();
    if phi.iter().any(|f| !ep.contains(f)) {
        return Err(Error::PhiNotSubset);
    }
    Ok(replace_ep(p, phi))
}

/// If `f` is a modal literal, i.e. negations over `not L` with `L` an
/// objective literal, returns `L`.
pub(crate) fn modal_literal(f: &Formula) -> Option<&Formula> {
    let mut g = f;
    while let Formula::Not(inner) = g {
        g = inner;
    }
    match g {
        Formula::EpNot(l) if l.as_literal().is_some() => Some(l),
        _ => None,
    }
}

fn is_specification_rule(r: &Rule) -> bool {
    let heads_ok =
        r.is_constraint() || r.heads.iter().all(|h| matches!(h, Formula::Atom(_)));
    heads_ok
        && r.body.conjuncts().iter().all(|c| {
            matches!(c, Formula::Top) || c.as_literal().is_some() || modal_literal(c).is_some()
        })
}

pub(crate) fn require_specification(p: &Program) -> Result<()> {
    match p.rules().iter().find(|r| !is_specification_rule(r)) {
        Some(r) => Err(Error::NotSpecification(r.id)),
        None => Ok(()),
    }
}

/// Modal reduct with `not L` decided by `truth`.
pub(crate) fn g91_reduct_with(p: &Program, truth: &dyn Fn(&Formula) -> bool) -> Program {
    let none = Interpretation::new();
    let mut rules = Vec::new();
    for r in p.rules() {
        let mut keep = Vec::new();
        let mut dropped = false;
        for c in r.body.conjuncts() {
            if modal_literal(c).is_some() {
                dropped |= !eval(c, &none, truth);
            } else if !matches!(c, Formula::Top) {
                keep.push(c.clone());
            }
        }
        if !dropped {
            rules.push(Rule {
                id: r.id,
                heads: r.heads.clone(),
                body: Formula::conj(keep),
                guards: Vec::new(),
            });
        }
    }
    p.derive(rules)
}

/// Gelfond's modal reduct: drop rules with a modal literal false in `a`,
/// then delete the remaining modal literals.
pub fn g91_modal_reduct(p: &Program, a: &EpistemicModel) -> Result<Program> {
    require_specification(p)?;
    Ok(g91_reduct_with(p, &|l| a.ep_not_holds(l)))
}

/// Choice for one rule: an index into its heads, or `Bot` when no head is
/// satisfied.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum HeadChoice {
    Index(usize),
    Bot,
}

/// A choice of one satisfied head for each rule whose body is satisfied.
pub type HeadSelection = BTreeMap<RuleId, HeadChoice>;

/// Choices per rule: distinct satisfied heads, by first occurrence.
fn choice_points(p: &Program, i: &Interpretation) -> Vec<(RuleId, Vec<HeadChoice>)> {
    p.rules()
        .iter()
        .filter(|r| satisfies(i, &r.body))
        .map(|r| {
            let mut seen: Vec<&Formula> = Vec::new();
            let mut choices = Vec::new();
            for (k, h) in r.heads.iter().enumerate() {
                if satisfies(i, h) && !seen.contains(&h) {
                    seen.push(h);
                    choices.push(HeadChoice::Index(k));
                }
            }
            if choices.is_empty() {
                choices.push(HeadChoice::Bot);
            }
            (r.id, choices)
        })
        .collect()
}

/// Lazy odometer over head selections; the first rule varies slowest.
pub struct Selections {
    points: Vec<(RuleId, Vec<HeadChoice>)>,
    counter: Vec<usize>,
    done: bool,
}

impl Iterator for Selections {
    type Item = HeadSelection;

    fn next(&mut self) -> Option<HeadSelection> {
        if self.done {
            return None;
        }
        let sel = self
            .points
            .iter()
            .zip(&self.counter)
            .map(|((id, cs), &k)| (*id, cs[k]))
            .collect();
        self.done = true;
        for pos in (0..self.points.len()).rev() {
            self.counter[pos] += 1;
            if self.counter[pos] < self.points[pos].1.len() {
                self.done = false;
                break;
            }
            self.counter[pos] = 0;
        }
        Some(sel)
    }
}

/// All head selections for the rules whose body `i` satisfies.
pub fn enumerate_selections(p: &Program, i: &Interpretation) -> Selections {
    let points = choice_points(p, i);
    Selections {
        counter: vec![0; points.len()],
        points,
        done: false,
    }
}

/// Keeps the rules whose body `i` satisfies, each with its selected head.
pub fn disjunctive_reduct(
    p: &Program,
    i: &Interpretation,
    sel: &HeadSelection,
) -> Result<Program> {
    p.require_epistemic_free()?;
    let mut rules = Vec::new();
    let mut used = 0;
    for r in p.rules() {
        if !satisfies(i, &r.body) {
            continue;
        }
        let head = match sel.get(&r.id) {
            Some(HeadChoice::Index(k)) if *k < r.heads.len() && satisfies(i, &r.heads[*k]) => {
                r.heads[*k].clone()
            }
            _ => return Err(Error::SelectionMismatch(r.id)),
        };
        used += 1;
        rules.push(Rule {
            id: r.id,
            heads: vec![head],
            body: r.body.clone(),
            guards: Vec::new(),
        });
    }
    if used != sel.len() {
        let extra = sel
            .keys()
            .find(|id| !rules.iter().any(|r| r.id == **id))
            .copied()
            .unwrap_or(RuleId(0));
        return Err(Error::SelectionMismatch(extra));
    }
    Ok(p.derive(rules))
}

/// Heads match up to logical equivalence in both directions.
pub fn variant_heads(r1: &Rule, r2: &Rule) -> bool {
    let covers = |a: &[Formula], b: &[Formula]| {
        a.iter().all(|e| b.iter().any(|f| equivalent(e, f)))
    };
    covers(&r1.heads, &r2.heads) && covers(&r2.heads, &r1.heads)
}

/// Selections that pick logically equivalent heads for rules with variant
/// heads (among the rules whose body `i` satisfies).
pub fn enumerate_variant_selections<'a>(
    p: &'a Program,
    i: &Interpretation,
) -> impl Iterator<Item = HeadSelection> + 'a {
    let active: Vec<&Rule> = p.rules().iter().filter(|r| satisfies(i, &r.body)).collect();
    let mut pairs = Vec::new();
    for (x, r1) in active.iter().enumerate() {
        for r2 in &active[x + 1..] {
            if variant_heads(r1, r2) {
                pairs.push((*r1, *r2));
            }
        }
    }
    enumerate_selections(p, i).filter(move |sel| {
        pairs.iter().all(|(r1, r2)| match (sel[&r1.id], sel[&r2.id]) {
            (HeadChoice::Index(a), HeadChoice::Index(b)) => equivalent(&r1.heads[a], &r2.heads[b]),
            (x, y) => x == y,
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::{parse_formula, parse_program};

    fn interp(names: &[&str]) -> Interpretation {
        Interpretation::from_names(names.iter().copied())
    }

    #[test]
    fn gl_reduct_drops_and_strips() {
        let p = parse_program("a :- ~b. b :- ~a & c. c.").unwrap();
        let r = gl_reduct(&p, &interp(&["a", "c"])).unwrap();
        let text: Vec<String> = r.rules().iter().map(|r| r.to_string()).collect();
        assert_eq!(text, ["a.", "c."]);
        assert!(gl_reduct(&parse_program("a :- ~~b.").unwrap(), &interp(&[])).is_err());
    }

    #[test]
    fn ferraris_on_double_negation() {
        let f = parse_formula("~~p -> p").unwrap();
        let r = ferraris_reduct(&f, &interp(&["p"]));
        assert_eq!(r, Formula::implies(Formula::Top, Formula::atom("p")));
        let g = parse_formula("p <-> q").unwrap();
        assert_eq!(ferraris_reduct(&g, &interp(&["p"])), Formula::Bot);
    }

    #[test]
    fn epistemic_reduct_keeps_double_negation() {
        let p = parse_program("p :- K p.").unwrap();
        let a = EpistemicModel::new([interp(&["p"])]).unwrap();
        let red = epistemic_reduct(&p, &a).unwrap();
        assert!(red.phi.is_empty());
        assert_eq!(red.program.rules()[0].to_string(), "p :- ~~p.");
    }

    #[test]
    fn se16_rejects_foreign_phi() {
        let p = parse_program("p :- not q.").unwrap();
        let phi: BTreeSet<_> = [Formula::atom("p")].into();
        assert_eq!(se16_reduct(&p, &phi).unwrap_err(), Error::PhiNotSubset);
    }

    #[test]
    fn selections_in_canonical_order() {
        let p = parse_program("a ; b. c ; a :- a.").unwrap();
        let sels: Vec<Vec<HeadChoice>> = enumerate_selections(&p, &interp(&["a", "b", "c"]))
            .map(|s| s.into_values().collect())
            .collect();
        use HeadChoice::Index as I;
        assert_eq!(
            sels,
            vec![vec![I(0), I(0)], vec![I(0), I(1)], vec![I(1), I(0)], vec![I(1), I(1)]]
        );
    }

    #[test]
    fn duplicate_heads_collapse() {
        let p = parse_program("a ; a ; b.").unwrap();
        assert_eq!(enumerate_selections(&p, &interp(&["a"])).count(), 1);
    }

    #[test]
    fn reduct_rejects_bad_selection() {
        let p = parse_program("a ; b.").unwrap();
        let sel: HeadSelection = [(RuleId(1), HeadChoice::Index(1))].into();
        assert_eq!(
            disjunctive_reduct(&p, &interp(&["a"]), &sel).unwrap_err(),
            Error::SelectionMismatch(RuleId(1))
        );
    }

    #[test]
    fn variant_selection_is_consistent() {
        let p = parse_program("a ; b. b ; a. c :- a.").unwrap();
        let i = interp(&["a", "b"]);
        assert_eq!(enumerate_selections(&p, &i).count(), 4);
        assert_eq!(enumerate_variant_selections(&p, &i).count(), 2);
    }

    #[test]
    fn g91_reduct_drops_false_modal_literals() {
        let p = parse_program("p :- M p. q :- ~K p & r.").unwrap();
        let a = EpistemicModel::new([interp(&[])]).unwrap();
        let red = g91_modal_reduct(&p, &a).unwrap();
        let text: Vec<String> = red.rules().iter().map(|r| r.to_string()).collect();
        assert_eq!(text, ["q :- r."]);
    }
}
