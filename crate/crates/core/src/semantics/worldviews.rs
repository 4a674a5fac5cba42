//! World views of epistemic programs.

use std::collections::BTreeSet;

use crate::error::Result;
use crate::logic::{is_epistemic_model, EpistemicModel, Interpretation};
use crate::reducts::{g91_reduct_with, require_specification, se16_reduct};
use crate::syntax::{Formula, Program};

use super::{answer_sets, Limits, SemanticsId};

/// An epistemic model together with the formulas `F` whose epistemic
/// negation `not F` holds in it.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct WorldView {
    pub model: EpistemicModel,
    pub phi: BTreeSet<Formula>,
}

const UNLIMITED: Limits = Limits {
    max_atoms: usize::MAX,
};

fn sort_views(views: &mut [WorldView]) {
    views.sort_by(|a, b| a.phi.cmp(&b.phi).then_with(|| a.model.cmp(&b.model)));
}

fn subsets(items: &[Formula]) -> impl Iterator<Item = BTreeSet<Formula>> + '_ {
    (0u64..1 << items.len()).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(k, _)| mask >> k & 1 == 1)
            .map(|(_, f)| f.clone())
            .collect()
    })
}

/// Guess-and-check over subsets of the epistemic negations, keeping the
/// candidates with a maximal guess.
fn guess_and_check(
    p: &Program,
    base: &dyn Fn(&Program) -> Result<Vec<Interpretation>>,
) -> Result<Vec<WorldView>> {
    let ep = p.ep_negations();
    let mut candidates = Vec::new();
    for phi in subsets(&ep) {
        let reduct = se16_reduct(p, &phi)?;
        let Some(model) = EpistemicModel::new(base(&reduct)?) else {
            continue;
        };
        if ep.iter().all(|f| model.ep_not_holds(f) == phi.contains(f)) {
            candidates.push(WorldView { model, phi });
        }
    }
    let mut out: Vec<WorldView> = candidates
        .iter()
        .filter(|c| {
            !candidates
                .iter()
                .any(|d| c.phi.len() < d.phi.len() && c.phi.is_subset(&d.phi))
        })
        .cloned()
        .collect();
    debug_assert!(out.iter().all(|w| is_epistemic_model(&w.model, p)));
    sort_views(&mut out);
    Ok(out)
}

/// Rational world views.
pub fn rational_world_views(p: &Program) -> Result<Vec<WorldView>> {
    super::world_views(p, &SemanticsId::Rational, Limits::default())
}

pub(super) fn rational_impl(p: &Program) -> Result<Vec<WorldView>> {
    guess_and_check(p, &|r| answer_sets(r, &SemanticsId::Rational, UNLIMITED))
}

/// Guess-and-check world views over an answer-set semantics `base`.
pub fn se16_world_views(p: &Program, base: &SemanticsId) -> Result<Vec<WorldView>> {
    super::world_views(p, &SemanticsId::Se16(Box::new(base.clone())), Limits::default())
}

pub(super) fn se16_impl(p: &Program, base: &SemanticsId) -> Result<Vec<WorldView>> {
    if !base.is_answer_set_semantics() {
        return Err(crate::Error::BaseMismatch(base.to_string()));
    }
    guess_and_check(p, &|r| answer_sets(r, base, UNLIMITED))
}

/// World views of an epistemic specification under the modal reduct.
pub fn g91_world_views(p: &Program) -> Result<Vec<WorldView>> {
    super::world_views(p, &SemanticsId::G91, Limits::default())
}

pub(super) fn g91_impl(p: &Program) -> Result<Vec<WorldView>> {
    require_specification(p)?;
    let ep = p.ep_negations();
    let mut out: Vec<WorldView> = Vec::new();
    for guess in subsets(&ep) {
        let reduct = g91_reduct_with(p, &|l| guess.contains(l));
        let Some(model) = EpistemicModel::new(answer_sets(&reduct, &SemanticsId::Gl, UNLIMITED)?)
        else {
            continue;
        };
        if ep.iter().all(|f| model.ep_not_holds(f) == guess.contains(f))
            && !out.iter().any(|w| w.model == model)
        {
            out.push(WorldView { model, phi: guess });
        }
    }
    sort_views(&mut out);
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    fn models(views: &[WorldView]) -> Vec<String> {
        views.iter().map(|w| w.model.to_string()).collect()
    }

    #[test]
    fn may_and_know() {
        let may = parse_program("p :- M p.").unwrap();
        let v = rational_world_views(&may).unwrap();
        assert_eq!(models(&v), ["{p}"]);
        assert_eq!(v[0].phi.iter().map(|f| f.to_string()).collect::<Vec<_>>(), ["~p"]);

        let know = parse_program("p :- K p.").unwrap();
        let v = rational_world_views(&know).unwrap();
        assert_eq!(models(&v), ["{}"]);
        assert_eq!(v[0].phi.iter().map(|f| f.to_string()).collect::<Vec<_>>(), ["p"]);

        assert_eq!(g91_world_views(&may).unwrap().len(), 2);
        assert_eq!(g91_world_views(&know).unwrap().len(), 2);
    }

    #[test]
    fn se16_rational_agrees() {
        let p = parse_program("p :- M p. q :- ~p.").unwrap();
        assert_eq!(
            rational_world_views(&p).unwrap(),
            se16_world_views(&p, &SemanticsId::Rational).unwrap()
        );
    }

    #[test]
    fn objective_program_has_one_view() {
        let p = parse_program("a ; b.").unwrap();
        let v = rational_world_views(&p).unwrap();
        assert_eq!(v.len(), 1);
        assert_eq!(v[0].model.len(), 2);
        assert!(v[0].phi.is_empty());
    }
}
