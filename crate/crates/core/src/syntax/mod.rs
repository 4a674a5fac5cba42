//! Abstract syntax for (epistemic) logic programs, plus parsing, printing and
//! grounding.
//!
//! A single [`Formula`] type covers both classical and epistemic formulas; the
//! [`Formula::EpNot`] variant is the epistemic negation `not F`. The modal
//! operators are sugar: `K F` is stored as `~not F` and `M F` as `not ~F`.

mod ground;
mod parser;
mod print;

use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexSet;

pub use ground::ground;
pub use parser::{parse_formula, parse_program};

/// Ground or non-ground argument of an atom.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Sym(Arc<str>),
    Int(i64),
    Var(Arc<str>),
}

impl Term {
    pub fn sym(s: &str) -> Term {
        Term::Sym(s.into())
    }

    pub fn var(s: &str) -> Term {
        Term::Var(s.into())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }
}

#[derive(Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
struct AtomData {
    name: Box<str>,
    args: Box<[Term]>,
}

/// Propositional or first-order atom. Cloning is cheap.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom(Arc<AtomData>);

impl Atom {
    pub fn new(name: &str) -> Atom {
        Atom::with_args(name, Vec::new())
    }

    pub fn with_args(name: &str, args: Vec<Term>) -> Atom {
        Atom(Arc::new(AtomData {
            name: name.into(),
            args: args.into(),
        }))
    }

    pub fn name(&self) -> &str {
        &self.0.name
    }

    pub fn args(&self) -> &[Term] {
        &self.0.args
    }

    pub fn is_ground(&self) -> bool {
        !self.0.args.iter().any(Term::is_var)
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Formula over atoms with the usual connectives and epistemic negation.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Formula {
    Top,
    Bot,
    Atom(Atom),
    Not(Box<Formula>),
    And(Box<Formula>, Box<Formula>),
    Or(Box<Formula>, Box<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    /// Epistemic negation `not F`.
    EpNot(Box<Formula>),
}

impl Formula {
    pub fn atom(name: &str) -> Formula {
        Formula::Atom(Atom::new(name))
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Formula {
        Formula::Not(Box::new(f))
    }

    pub fn and(a: Formula, b: Formula) -> Formula {
        Formula::And(Box::new(a), Box::new(b))
    }

    pub fn or(a: Formula, b: Formula) -> Formula {
        Formula::Or(Box::new(a), Box::new(b))
    }

    pub fn implies(a: Formula, b: Formula) -> Formula {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Formula {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn ep_not(f: Formula) -> Formula {
        Formula::EpNot(Box::new(f))
    }

    /// `K F`, i.e. `~not F`.
    pub fn know(f: Formula) -> Formula {
        Formula::not(Formula::ep_not(f))
    }

    /// `M F`, i.e. `not ~F`.
    pub fn may(f: Formula) -> Formula {
        Formula::ep_not(Formula::not(f))
    }

    /// Left-nested conjunction; `Top` for an empty list.
    pub fn conj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::and)
            .unwrap_or(Formula::Top)
    }

    /// Left-nested disjunction; `Bot` for an empty list.
    pub fn disj<I: IntoIterator<Item = Formula>>(items: I) -> Formula {
        items
            .into_iter()
            .reduce(Formula::or)
            .unwrap_or(Formula::Bot)
    }

    pub fn is_epistemic_free(&self) -> bool {
        let mut free = true;
        self.visit(&mut |f| {
            if matches!(f, Formula::EpNot(_)) {
                free = false;
            }
        });
        free
    }

    /// Pre-order traversal.
    pub fn visit<'a>(&'a self, f: &mut impl FnMut(&'a Formula)) {
        f(self);
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => {}
            Formula::Not(a) | Formula::EpNot(a) => a.visit(f),
            Formula::And(a, b)
            | Formula::Or(a, b)
            | Formula::Implies(a, b)
            | Formula::Iff(a, b) => {
                a.visit(f);
                b.visit(f);
            }
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    pub fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        self.visit(&mut |f| {
            if let Formula::Atom(a) = f {
                out.insert(a.clone());
            }
        });
    }

    /// Rebuilds the formula bottom-up, letting `f` replace any node first.
    pub fn map(&self, f: &mut impl FnMut(&Formula) -> Option<Formula>) -> Formula {
        if let Some(r) = f(self) {
            return r;
        }
        match self {
            Formula::Top | Formula::Bot | Formula::Atom(_) => self.clone(),
            Formula::Not(a) => Formula::not(a.map(f)),
            Formula::EpNot(a) => Formula::ep_not(a.map(f)),
            Formula::And(a, b) => Formula::and(a.map(f), b.map(f)),
            Formula::Or(a, b) => Formula::or(a.map(f), b.map(f)),
            Formula::Implies(a, b) => Formula::implies(a.map(f), b.map(f)),
            Formula::Iff(a, b) => Formula::iff(a.map(f), b.map(f)),
        }
    }

    /// Conjuncts along the left spine of nested conjunctions.
    pub fn conjuncts(&self) -> Vec<&Formula> {
        let mut out = Vec::new();
        fn go<'a>(f: &'a Formula, out: &mut Vec<&'a Formula>) {
            if let Formula::And(a, b) = f {
                go(a, out);
                go(b, out);
            } else {
                out.push(f);
            }
        }
        go(self, &mut out);
        out
    }

    /// Returns the atom if the formula is `A` or `~A`, with its sign.
    pub fn as_literal(&self) -> Option<(&Atom, bool)> {
        match self {
            Formula::Atom(a) => Some((a, true)),
            Formula::Not(inner) => match inner.as_ref() {
                Formula::Atom(a) => Some((a, false)),
                _ => None,
            },
            _ => None,
        }
    }

    /// True for `Top` and conjunctions of literals (and `Top`).
    pub fn is_literal_conjunction(&self) -> bool {
        self.conjuncts()
            .iter()
            .all(|c| matches!(c, Formula::Top) || c.as_literal().is_some())
    }
}

/// Inequality guard `l != r` attached to a non-ground rule.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Guard {
    pub left: Term,
    pub right: Term,
}

/// Rule identifier, numbered from 1 in source order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct RuleId(pub u32);

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

/// `H1 ; ... ; Hm :- B.` A constraint has the single head `Bot`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Rule {
    pub id: RuleId,
    pub heads: Vec<Formula>,
    pub body: Formula,
    pub guards: Vec<Guard>,
}

impl Rule {
    pub fn new(id: u32, heads: Vec<Formula>, body: Formula) -> Rule {
        let heads = if heads.is_empty() {
            vec![Formula::Bot]
        } else {
            heads
        };
        Rule {
            id: RuleId(id),
            heads,
            body,
            guards: Vec::new(),
        }
    }

    pub fn constraint(id: u32, body: Formula) -> Rule {
        Rule::new(id, vec![Formula::Bot], body)
    }

    pub fn is_constraint(&self) -> bool {
        self.heads.len() == 1 && self.heads[0] == Formula::Bot
    }

    pub fn is_fact(&self) -> bool {
        self.body == Formula::Top
    }

    /// Disjunction of the heads, `Bot` for constraints.
    pub fn head_formula(&self) -> Formula {
        Formula::disj(self.heads.iter().cloned())
    }

    /// `body -> (H1 | ... | Hm)`.
    pub fn as_formula(&self) -> Formula {
        Formula::implies(self.body.clone(), self.head_formula())
    }

    pub fn formulas(&self) -> impl Iterator<Item = &Formula> {
        self.heads.iter().chain(std::iter::once(&self.body))
    }

    pub fn is_epistemic_free(&self) -> bool {
        self.formulas().all(Formula::is_epistemic_free)
    }

    pub fn is_ground(&self) -> bool {
        let mut ground = self
            .guards
            .iter()
            .all(|g| !g.left.is_var() && !g.right.is_var());
        for f in self.formulas() {
            f.visit(&mut |g| {
                if let Formula::Atom(a) = g {
                    ground &= a.is_ground();
                }
            });
        }
        ground
    }

    fn has_atomic_heads(&self) -> bool {
        self.is_constraint() || self.heads.iter().all(|h| matches!(h, Formula::Atom(_)))
    }
}

/// A program: rules plus a signature that may hold atoms not occurring in any
/// rule (declared with `#atom`, or inherited through a reduct).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Program {
    rules: Vec<Rule>,
    signature: BTreeSet<Atom>,
}

impl Program {
    pub fn new(rules: Vec<Rule>) -> Program {
        Program::with_signature(rules, BTreeSet::new())
    }

    /// Builds a program whose signature is `extra` plus every atom in `rules`.
    pub fn with_signature(rules: Vec<Rule>, extra: BTreeSet<Atom>) -> Program {
        let mut signature = extra;
        for r in &rules {
            for f in r.formulas() {
                f.collect_atoms(&mut signature);
            }
        }
        Program { rules, signature }
    }

    pub fn rules(&self) -> &[Rule] {
        &self.rules
    }

    pub fn rule(&self, id: RuleId) -> Option<&Rule> {
        self.rules.iter().find(|r| r.id == id)
    }

    pub fn signature(&self) -> &BTreeSet<Atom> {
        &self.signature
    }

    /// Same signature, different rules.
    pub fn derive(&self, rules: Vec<Rule>) -> Program {
        Program::with_signature(rules, self.signature.clone())
    }

    /// Appends a rule, assigning it the next free id.
    pub fn with_rule(&self, mut rule: Rule) -> Program {
        let next = self.rules.iter().map(|r| r.id.0).max().unwrap_or(0) + 1;
        rule.id = RuleId(next);
        let mut rules = self.rules.clone();
        rules.push(rule);
        self.derive(rules)
    }

    pub fn is_ground(&self) -> bool {
        self.rules.iter().all(Rule::is_ground)
    }

    pub fn is_epistemic_free(&self) -> bool {
        self.rules.iter().all(Rule::is_epistemic_free)
    }

    /// Every rule has exactly one head formula.
    pub fn is_normal(&self) -> bool {
        self.rules.iter().all(|r| r.heads.len() == 1)
    }

    /// Heads are atoms (or a single `Bot`), bodies are conjunctions of literals.
    pub fn is_simple(&self) -> bool {
        self.first_non_simple().is_none()
    }

    pub(crate) fn first_non_simple(&self) -> Option<RuleId> {
        self.rules
            .iter()
            .find(|r| !r.has_atomic_heads() || !r.body.is_literal_conjunction())
            .map(|r| r.id)
    }

    pub fn is_atomic_head(&self) -> bool {
        self.rules.iter().all(Rule::has_atomic_heads)
    }

    /// The distinct formulas `F` with `not F` occurring in the program, in
    /// order of first occurrence.
    pub fn ep_negations(&self) -> Vec<Formula> {
        let mut out = IndexSet::new();
        for r in &self.rules {
            for f in r.formulas() {
                f.visit(&mut |g| {
                    if let Formula::EpNot(inner) = g {
                        out.insert(inner.as_ref().clone());
                    }
                });
            }
        }
        out.into_iter().collect()
    }

    pub(crate) fn require_epistemic_free(&self) -> crate::Result<()> {
        if self.is_epistemic_free() {
            Ok(())
        } else {
            Err(crate::Error::EpistemicProgram)
        }
    }

    pub(crate) fn require_normal(&self) -> crate::Result<()> {
        match self.rules.iter().find(|r| r.heads.len() != 1) {
            Some(r) => Err(crate::Error::NotNormal(r.id)),
            None => Ok(()),
        }
    }

    pub(crate) fn require_simple(&self) -> crate::Result<()> {
        self.require_epistemic_free()?;
        match self.first_non_simple() {
            Some(id) => Err(crate::Error::NotSimple(id)),
            None => Ok(()),
        }
    }

    pub(crate) fn require_atomic_head(&self) -> crate::Result<()> {
        match self.rules.iter().find(|r| !r.has_atomic_heads()) {
            Some(r) => Err(crate::Error::NotAtomicHead(r.id)),
            None => Ok(()),
        }
    }

    pub(crate) fn require_max_atoms(&self, max: usize) -> crate::Result<()> {
        if self.signature.len() > max {
            Err(crate::Error::TooManyAtoms {
                count: self.signature.len(),
                max,
            })
        } else {
            Ok(())
        }
    }
}
