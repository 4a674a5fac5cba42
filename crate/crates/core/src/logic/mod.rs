//! Classical and epistemic satisfaction, entailment and model enumeration.

pub mod sat;

use std::collections::BTreeSet;
use std::fmt;

use indexmap::IndexSet;

use crate::syntax::{Atom, Formula, Program};
use sat::{Dpll, SatBackend};

/// A set of true atoms; everything else is false.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Interpretation(BTreeSet<Atom>);

impl Interpretation {
    pub fn new() -> Interpretation {
        Interpretation::default()
    }

    pub fn from_names<'a, I: IntoIterator<Item = &'a str>>(names: I) -> Interpretation {
        Interpretation(names.into_iter().map(Atom::new).collect())
    }

    pub fn contains(&self, a: &Atom) -> bool {
        self.0.contains(a)
    }

    pub fn atoms(&self) -> &BTreeSet<Atom> {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = &Atom> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn insert(&mut self, a: Atom) -> bool {
        self.0.insert(a)
    }

    pub fn is_subset(&self, other: &Interpretation) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn is_proper_subset(&self, other: &Interpretation) -> bool {
        self.0.len() < other.0.len() && self.0.is_subset(&other.0)
    }

    /// `~a` for every atom of `signature` outside the interpretation.
    pub fn negative_literals(&self, signature: &BTreeSet<Atom>) -> Vec<Formula> {
        signature
            .iter()
            .filter(|a| !self.0.contains(*a))
            .map(|a| Formula::not(Formula::Atom(a.clone())))
            .collect()
    }

    /// Canonical rank: bit `i` is set when the `i`-th atom of `signature`
    /// (in sorted order) is true. Only meaningful when the rank fits.
    pub fn canonical_key(&self, signature: &BTreeSet<Atom>) -> Vec<bool> {
        let mut key: Vec<bool> = signature.iter().map(|a| self.0.contains(a)).collect();
        key.reverse();
        key
    }
}

impl FromIterator<Atom> for Interpretation {
    fn from_iter<I: IntoIterator<Item = Atom>>(iter: I) -> Self {
        Interpretation(iter.into_iter().collect())
    }
}

impl From<BTreeSet<Atom>> for Interpretation {
    fn from(s: BTreeSet<Atom>) -> Self {
        Interpretation(s)
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{a}")?;
        }
        f.write_str("}")
    }
}

/// Sorts interpretations into canonical order relative to `signature`.
pub fn sort_canonical(items: &mut [Interpretation], signature: &BTreeSet<Atom>) {
    items.sort_by_cached_key(|i| i.canonical_key(signature));
}

/// A non-empty collection of interpretations.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EpistemicModel(BTreeSet<Interpretation>);

impl EpistemicModel {
    /// Returns `None` for an empty collection.
    pub fn new<I: IntoIterator<Item = Interpretation>>(items: I) -> Option<EpistemicModel> {
        let set: BTreeSet<_> = items.into_iter().collect();
        (!set.is_empty()).then_some(EpistemicModel(set))
    }

    pub fn iter(&self) -> impl Iterator<Item = &Interpretation> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn contains(&self, i: &Interpretation) -> bool {
        self.0.contains(i)
    }

    /// `not F` holds in the model iff some member falsifies `F`.
    pub fn ep_not_holds(&self, f: &Formula) -> bool {
        self.0.iter().any(|j| !satisfies(j, f))
    }
}

impl fmt::Display for EpistemicModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, i) in self.0.iter().enumerate() {
            if k > 0 {
                f.write_str(";")?;
            }
            write!(f, "{i}")?;
        }
        Ok(())
    }
}

/// An insertion-ordered set of formulas; equality ignores order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Theory(IndexSet<Formula>);

impl Theory {
    pub fn new() -> Theory {
        Theory::default()
    }

    pub fn insert(&mut self, f: Formula) -> bool {
        self.0.insert(f)
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.0.contains(f)
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> {
        self.0.iter()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_subset(&self, other: &Theory) -> bool {
        self.0.iter().all(|f| other.0.contains(f))
    }
}

impl FromIterator<Formula> for Theory {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        Theory(iter.into_iter().collect())
    }
}

impl fmt::Display for Theory {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, g) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(", ")?;
            }
            write!(f, "{g}")?;
        }
        f.write_str("}")
    }
}

/// Evaluates `f` with atoms looked up in `i` and each `not G` decided by `ep`.
pub fn eval(f: &Formula, i: &Interpretation, ep: &dyn Fn(&Formula) -> bool) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Atom(a) => i.contains(a),
        Formula::Not(g) => !eval(g, i, ep),
        Formula::And(a, b) => eval(a, i, ep) && eval(b, i, ep),
        Formula::Or(a, b) => eval(a, i, ep) || eval(b, i, ep),
        Formula::Implies(a, b) => !eval(a, i, ep) || eval(b, i, ep),
        Formula::Iff(a, b) => eval(a, i, ep) == eval(b, i, ep),
        Formula::EpNot(g) => ep(g),
    }
}

/// Classical satisfaction.
///
/// # Panics
/// If `f` contains epistemic negation.
pub fn satisfies(i: &Interpretation, f: &Formula) -> bool {
    eval(f, i, &|_| panic!("epistemic negation in classical evaluation"))
}

/// Satisfaction of an epistemic formula by `i` relative to `a`.
pub fn ep_satisfies(a: &EpistemicModel, i: &Interpretation, f: &Formula) -> bool {
    eval(f, i, &|g| a.ep_not_holds(g))
}

/// `premises |= goal` using the default backend.
pub fn entails<'a, I>(premises: I, goal: &Formula) -> bool
where
    I: IntoIterator<Item = &'a Formula>,
{
    entails_with(&Dpll, premises, goal)
}

pub fn entails_with<'a, I>(backend: &dyn SatBackend, premises: I, goal: &Formula) -> bool
where
    I: IntoIterator<Item = &'a Formula>,
{
    let pos: Vec<&Formula> = premises.into_iter().collect();
    !backend.satisfiable(&pos, &[goal])
}

pub fn satisfiable<'a, I>(formulas: I) -> bool
where
    I: IntoIterator<Item = &'a Formula>,
{
    let pos: Vec<&Formula> = formulas.into_iter().collect();
    Dpll.satisfiable(&pos, &[])
}

/// Logical equivalence of two classical formulas.
pub fn equivalent(f: &Formula, g: &Formula) -> bool {
    f == g || !Dpll.satisfiable(&[], &[&Formula::iff(f.clone(), g.clone())])
}

/// All models over `signature` of the given formulas, in canonical order.
pub fn models<'a, I>(formulas: I, signature: &BTreeSet<Atom>) -> Vec<Interpretation>
where
    I: IntoIterator<Item = &'a Formula>,
{
    models_with(&Dpll, formulas, signature)
}

pub fn models_with<'a, I>(
    backend: &dyn SatBackend,
    formulas: I,
    signature: &BTreeSet<Atom>,
) -> Vec<Interpretation>
where
    I: IntoIterator<Item = &'a Formula>,
{
    let pos: Vec<&Formula> = formulas.into_iter().collect();
    let vars: Vec<Atom> = signature.iter().cloned().collect();
    let mut out: Vec<Interpretation> = backend
        .models(&pos, &vars)
        .into_iter()
        .map(|bits| {
            vars.iter()
                .zip(bits)
                .filter(|(_, b)| *b)
                .map(|(a, _)| a.clone())
                .collect()
        })
        .collect();
    sort_canonical(&mut out, signature);
    out
}

/// `i` is a model of the formulas and no proper subset of `i` is.
pub fn is_minimal_model_of<'a, I>(i: &Interpretation, formulas: I) -> bool
where
    I: IntoIterator<Item = &'a Formula> + Clone,
{
    if !formulas.clone().into_iter().all(|f| satisfies(i, f)) {
        return false;
    }
    if i.is_empty() {
        return true;
    }
    let mut atoms = BTreeSet::new();
    for f in formulas.clone() {
        f.collect_atoms(&mut atoms);
    }
    let fixed: Vec<Formula> = atoms
        .into_iter()
        .filter(|a| !i.contains(a))
        .map(|a| Formula::not(Formula::Atom(a)))
        .collect();
    let shrink = Formula::conj(i.iter().map(|a| Formula::Atom(a.clone())));
    let mut pos: Vec<&Formula> = formulas.into_iter().collect();
    pos.extend(fixed.iter());
    !Dpll.satisfiable(&pos, &[&shrink])
}

/// The rule `body -> heads` as classical formulas, one per rule.
pub fn program_formulas(p: &Program) -> Vec<Formula> {
    p.rules().iter().map(|r| r.as_formula()).collect()
}

/// Whether `i` satisfies every rule of an epistemic-free program.
pub fn is_model(i: &Interpretation, p: &Program) -> bool {
    p.rules()
        .iter()
        .all(|r| !satisfies(i, &r.body) || r.heads.iter().any(|h| satisfies(i, h)))
}

/// All models of an epistemic-free program, in canonical order.
pub fn program_models(p: &Program) -> crate::Result<Vec<Interpretation>> {
    p.require_epistemic_free()?;
    let fs = program_formulas(p);
    Ok(models(fs.iter(), p.signature()))
}

pub fn is_minimal_model(i: &Interpretation, p: &Program) -> bool {
    let fs = program_formulas(p);
    is_minimal_model_of(i, fs.iter())
}

/// Subset-minimal models of an epistemic-free program, in canonical order.
pub fn minimal_models(p: &Program) -> crate::Result<Vec<Interpretation>> {
    let all = program_models(p)?;
    Ok(minimal_elements(&all))
}

/// The subset-minimal members of `items`, keeping their relative order.
pub fn minimal_elements(items: &[Interpretation]) -> Vec<Interpretation> {
    items
        .iter()
        .filter(|i| !items.iter().any(|j| j.is_proper_subset(i)))
        .cloned()
        .collect()
}

/// No member is a proper subset of another.
pub fn is_antichain(items: &[Interpretation]) -> bool {
    items
        .iter()
        .all(|i| !items.iter().any(|j| j.is_proper_subset(i)))
}

/// Every member of `a` satisfies every rule of `p` relative to `a`.
pub fn is_epistemic_model(a: &EpistemicModel, p: &Program) -> bool {
    a.iter().all(|i| {
        p.rules().iter().all(|r| {
            !ep_satisfies(a, i, &r.body) || r.heads.iter().any(|h| ep_satisfies(a, i, h))
        })
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    #[test]
    fn canonical_order_two_atoms() {
        let p = parse_program("p | q.").unwrap();
        let ms = program_models(&p).unwrap();
        let text: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(text, ["{p}", "{q}", "{p, q}"]);
    }

    #[test]
    fn minimal_models_of_disjunction() {
        let p = parse_program("a ; b. c :- a.").unwrap();
        let ms = minimal_models(&p).unwrap();
        let text: Vec<String> = ms.iter().map(|m| m.to_string()).collect();
        assert_eq!(text, ["{b}", "{a, c}"]);
        assert!(is_minimal_model(&ms[0], &p));
        assert!(!is_minimal_model(&Interpretation::from_names(["a", "b", "c"]), &p));
    }

    #[test]
    fn epistemic_model_check() {
        let p = parse_program("p :- M p.").unwrap();
        let a = EpistemicModel::new([Interpretation::from_names(["p"])]).unwrap();
        assert!(is_epistemic_model(&a, &p));
        let b = EpistemicModel::new([Interpretation::new()]).unwrap();
        assert!(is_epistemic_model(&b, &p));
        let c = EpistemicModel::new([Interpretation::new(), Interpretation::from_names(["p"])])
            .unwrap();
        assert!(!is_epistemic_model(&c, &p));
    }

    #[test]
    fn equivalence() {
        let f = crate::syntax::parse_formula("(a | ~b) & (a | c)").unwrap();
        let g = crate::syntax::parse_formula("a | ~b & c").unwrap();
        assert!(equivalent(&f, &g));
        assert!(!equivalent(&f, &Formula::atom("a")));
    }
}
