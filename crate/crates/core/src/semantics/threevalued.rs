//! Three-valued fixpoint semantics for normal programs with atom heads.

use std::collections::HashSet;

use crate::error::Result;
use crate::logic::{program_models, sort_canonical, Interpretation};
use crate::syntax::{Formula, Program};

/// Truth values ordered `False < Undefined < True`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum TruthValue {
    False,
    Undefined,
    True,
}

impl TruthValue {
    pub fn negate(self) -> TruthValue {
        match self {
            TruthValue::False => TruthValue::True,
            TruthValue::Undefined => TruthValue::Undefined,
            TruthValue::True => TruthValue::False,
        }
    }
}

/// `i1` holds the true atoms, `i2` the atoms that are not false.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ThreeValuedInterp {
    pub i1: Interpretation,
    pub i2: Interpretation,
}

impl ThreeValuedInterp {
    pub fn new(i1: Interpretation, i2: Interpretation) -> ThreeValuedInterp {
        ThreeValuedInterp { i1, i2 }
    }

    pub fn two_valued(i: &Interpretation) -> ThreeValuedInterp {
        ThreeValuedInterp::new(i.clone(), i.clone())
    }
}

/// Kleene evaluation. `F -> G` is read as `~F | G`.
///
/// Panics on epistemic negation.
pub fn three_valued_eval(tv: &ThreeValuedInterp, f: &Formula) -> TruthValue {
    use TruthValue::*;
    match f {
        Formula::Top => True,
        Formula::Bot => False,
        Formula::Atom(a) => {
            if tv.i1.contains(a) {
                True
            } else if tv.i2.contains(a) {
                Undefined
            } else {
                False
            }
        }
        Formula::Not(g) => three_valued_eval(tv, g).negate(),
        Formula::And(a, b) => three_valued_eval(tv, a).min(three_valued_eval(tv, b)),
        Formula::Or(a, b) => three_valued_eval(tv, a).max(three_valued_eval(tv, b)),
        Formula::Implies(a, b) => three_valued_eval(tv, a)
            .negate()
            .max(three_valued_eval(tv, b)),
        Formula::Iff(a, b) => {
            let (x, y) = (three_valued_eval(tv, a), three_valued_eval(tv, b));
            x.negate().max(y).min(y.negate().max(x))
        }
        Formula::EpNot(_) => panic!("three-valued evaluation of an epistemic formula"),
    }
}

fn heads_where(p: &Program, tv: &ThreeValuedInterp, min: TruthValue) -> Interpretation {
    p.rules()
        .iter()
        .filter(|r| three_valued_eval(tv, &r.body) >= min)
        .filter_map(|r| match &r.heads[0] {
            Formula::Atom(a) => Some(a.clone()),
            _ => None,
        })
        .collect()
}

/// One application of the three-valued immediate consequence operator.
pub fn phi_op(p: &Program, tv: &ThreeValuedInterp) -> ThreeValuedInterp {
    ThreeValuedInterp::new(
        heads_where(p, tv, TruthValue::True),
        heads_where(p, tv, TruthValue::Undefined),
    )
}

fn iterate(start: Interpretation, step: impl Fn(&Interpretation) -> Interpretation) -> Interpretation {
    let mut seen = HashSet::new();
    let mut x = start;
    loop {
        let next = step(&x);
        if next == x || !seen.insert(x.clone()) {
            return next;
        }
        x = next;
    }
}

/// `(St_down(i2), St_up(i1))`.
pub fn stable_revision(p: &Program, tv: &ThreeValuedInterp) -> ThreeValuedInterp {
    let down = iterate(Interpretation::new(), |x| {
        phi_op(p, &ThreeValuedInterp::new(x.clone(), tv.i2.clone())).i1
    });
    let up = iterate(tv.i1.clone(), |x| {
        phi_op(p, &ThreeValuedInterp::new(tv.i1.clone(), x.clone())).i2
    });
    ThreeValuedInterp::new(down, up)
}

/// Iterates the stable revision from `tv`. `None` if it cycles without
/// reaching a fixpoint.
pub fn stable_fixpoint(p: &Program, tv: &ThreeValuedInterp) -> Option<ThreeValuedInterp> {
    let mut seen = HashSet::new();
    let mut x = tv.clone();
    loop {
        let next = stable_revision(p, &x);
        if next == x {
            return Some(x);
        }
        if !seen.insert(x) {
            return None;
        }
        x = next;
    }
}

pub fn is_two_valued_stable(p: &Program, i: &Interpretation) -> Result<bool> {
    p.require_epistemic_free()?;
    p.require_normal()?;
    p.require_atomic_head()?;
    let tv = ThreeValuedInterp::two_valued(i);
    Ok(stable_fixpoint(p, &tv).as_ref() == Some(&tv))
}

/// Two-valued stable models.
pub fn three_valued_answer_sets(p: &Program) -> Result<Vec<Interpretation>> {
    super::answer_sets(p, &super::SemanticsId::ThreeValued, super::Limits::default())
}

pub(super) fn answer_sets_impl(p: &Program) -> Result<Vec<Interpretation>> {
    p.require_epistemic_free()?;
    p.require_normal()?;
    p.require_atomic_head()?;
    let mut out = Vec::new();
    for m in program_models(p)? {
        let tv = ThreeValuedInterp::two_valued(&m);
        if stable_fixpoint(p, &tv).as_ref() == Some(&tv) {
            out.push(m);
        }
    }
    sort_canonical(&mut out, p.signature());
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    #[test]
    fn tautological_body_is_not_stable() {
        let p = parse_program("p(2) :- ~p(2) | p(2).").unwrap();
        let i: Interpretation = p.signature().iter().cloned().collect();
        let fix = stable_fixpoint(&p, &ThreeValuedInterp::two_valued(&i)).unwrap();
        assert!(fix.i1.is_empty());
        assert_eq!(fix.i2, i);
        assert!(!is_two_valued_stable(&p, &i).unwrap());
    }

    #[test]
    fn fact_is_stable() {
        let p = parse_program("p.").unwrap();
        assert!(is_two_valued_stable(&p, &Interpretation::from_names(["p"])).unwrap());
    }

    #[test]
    fn negated_undefined() {
        let tv = ThreeValuedInterp::new(Interpretation::new(), Interpretation::from_names(["p"]));
        let f = crate::syntax::parse_formula("~p").unwrap();
        assert_eq!(three_valued_eval(&tv, &f), TruthValue::Undefined);
    }

    #[test]
    fn even_loop() {
        let p = parse_program("p :- ~q. q :- ~p.").unwrap();
        let got = three_valued_answer_sets(&p).unwrap();
        assert_eq!(got.len(), 2);
    }
}
