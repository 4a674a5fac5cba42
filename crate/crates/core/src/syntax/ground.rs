//! Grounding of programs with variables.
//!
//! Variables range over the constants of the program. An instance is kept only
//! when each atom that is a top-level conjunct of its body can possibly be
//! derived, i.e. occurs in the head of some kept instance; other instances have
//! a body that is false in every answer set. Guards `X != Y` are evaluated and
//! removed.

use std::collections::{BTreeMap, BTreeSet};

use super::{Atom, Formula, Guard, Program, Rule, RuleId, Term};
use crate::error::{Error, Result};

type Subst = BTreeMap<std::sync::Arc<str>, Term>;

fn subst_term(t: &Term, s: &Subst) -> Term {
    match t {
        Term::Var(v) => s.get(v).cloned().unwrap_or_else(|| t.clone()),
        other => other.clone(),
    }
}

fn subst_atom(a: &Atom, s: &Subst) -> Atom {
    if a.is_ground() {
        return a.clone();
    }
    Atom::with_args(a.name(), a.args().iter().map(|t| subst_term(t, s)).collect())
}

fn subst_formula(f: &Formula, s: &Subst) -> Formula {
    f.map(&mut |g| match g {
        Formula::Atom(a) => Some(Formula::Atom(subst_atom(a, s))),
        _ => None,
    })
}

fn guards_hold(guards: &[Guard], s: &Subst) -> bool {
    guards
        .iter()
        .all(|g| subst_term(&g.left, s) != subst_term(&g.right, s))
}

fn rule_vars(r: &Rule) -> BTreeSet<std::sync::Arc<str>> {
    let mut vars = BTreeSet::new();
    let mut add = |t: &Term| {
        if let Term::Var(v) = t {
            vars.insert(v.clone());
        }
    };
    for f in r.formulas() {
        f.visit(&mut |g| {
            if let Formula::Atom(a) = g {
                a.args().iter().for_each(&mut add);
            }
        });
    }
    for g in &r.guards {
        add(&g.left);
        add(&g.right);
    }
    vars
}

fn positive_conjuncts(r: &Rule) -> Vec<&Atom> {
    r.body
        .conjuncts()
        .into_iter()
        .filter_map(|c| match c {
            Formula::Atom(a) => Some(a),
            _ => None,
        })
        .collect()
}

fn match_atom(pattern: &Atom, fact: &Atom, s: &mut Subst) -> bool {
    if pattern.name() != fact.name() || pattern.args().len() != fact.args().len() {
        return false;
    }
    for (p, f) in pattern.args().iter().zip(fact.args()) {
        match p {
            Term::Var(v) => match s.get(v) {
                Some(bound) if bound != f => return false,
                Some(_) => {}
                None => {
                    s.insert(v.clone(), f.clone());
                }
            },
            c if c != f => return false,
            _ => {}
        }
    }
    true
}

/// All substitutions for `vars` under which every positive conjunct is in
/// `possible` and all guards hold.
fn instances(
    r: &Rule,
    vars: &BTreeSet<std::sync::Arc<str>>,
    constants: &[Term],
    possible: &BTreeSet<Atom>,
) -> Vec<Subst> {
    let pos = positive_conjuncts(r);
    let mut out = Vec::new();
    fn join(
        pos: &[&Atom],
        s: Subst,
        possible: &BTreeSet<Atom>,
        k: &mut dyn FnMut(Subst),
    ) {
        let Some((first, rest)) = pos.split_first() else {
            return k(s);
        };
        let inst = subst_atom(first, &s);
        if inst.is_ground() {
            if possible.contains(&inst) {
                join(rest, s, possible, k);
            }
            return;
        }
        for fact in possible {
            let mut s2 = s.clone();
            if match_atom(&inst, fact, &mut s2) {
                join(rest, s2, possible, k);
            }
        }
    }
    join(&pos, Subst::new(), possible, &mut |s| {
        let free: Vec<_> = vars.iter().filter(|v| !s.contains_key(*v)).cloned().collect();
        let mut stack = vec![s];
        for v in &free {
            stack = stack
                .into_iter()
                .flat_map(|s| {
                    constants.iter().map(move |c| {
                        let mut s = s.clone();
                        s.insert(v.clone(), c.clone());
                        s
                    })
                })
                .collect();
        }
        out.extend(stack.into_iter().filter(|s| guards_hold(&r.guards, s)));
    });
    out.sort();
    out.dedup();
    out
}

fn instantiate(r: &Rule, s: &Subst) -> Rule {
    Rule {
        id: r.id,
        heads: r.heads.iter().map(|h| subst_formula(h, s)).collect(),
        body: subst_formula(&r.body, s),
        guards: Vec::new(),
    }
}

/// Grounds `p`. A program without variables or guards is returned unchanged.
pub fn ground(p: &Program) -> Result<Program> {
    let has_guards = p.rules().iter().any(|r| !r.guards.is_empty());
    if p.is_ground() && !has_guards {
        return Ok(p.clone());
    }
    let mut constants = BTreeSet::new();
    let mut add = |t: &Term| {
        if !t.is_var() {
            constants.insert(t.clone());
        }
    };
    for a in p.signature() {
        a.args().iter().for_each(&mut add);
    }
    for r in p.rules() {
        for g in &r.guards {
            add(&g.left);
            add(&g.right);
        }
    }
    let constants: Vec<Term> = constants.into_iter().collect();

    let vars: Vec<_> = p.rules().iter().map(rule_vars).collect();
    if constants.is_empty() && vars.iter().any(|v| !v.is_empty()) {
        return Err(Error::NoConstants);
    }

    // Possible atoms: least fixpoint over head atoms of enabled instances.
    let mut possible = BTreeSet::new();
    loop {
        let before = possible.len();
        for (r, vs) in p.rules().iter().zip(&vars) {
            for s in instances(r, vs, &constants, &possible) {
                for h in &r.heads {
                    subst_formula(h, &s).collect_atoms(&mut possible);
                }
            }
        }
        if possible.len() == before {
            break;
        }
    }

    let mut rules = Vec::new();
    for (r, vs) in p.rules().iter().zip(&vars) {
        if vs.is_empty() {
            if guards_hold(&r.guards, &Subst::new()) {
                rules.push(instantiate(r, &Subst::new()));
            }
            continue;
        }
        for s in instances(r, vs, &constants, &possible) {
            rules.push(instantiate(r, &s));
        }
    }
    for (i, r) in rules.iter_mut().enumerate() {
        r.id = RuleId(i as u32 + 1);
    }
    let declared = p.signature().iter().filter(|a| a.is_ground()).cloned().collect();
    Ok(Program::with_signature(rules, declared))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    #[test]
    fn ground_program_unchanged() {
        let p = parse_program("a :- ~b. b ; c.").unwrap();
        assert_eq!(ground(&p).unwrap(), p);
    }

    #[test]
    fn no_constants() {
        let p = parse_program("p(X) :- q(X).").unwrap();
        assert_eq!(ground(&p).unwrap_err(), Error::NoConstants);
    }

    #[test]
    fn instances_follow_facts() {
        let p = parse_program("edge(a,b). edge(b,c). r(X,Y) :- edge(X,Y).").unwrap();
        let g = ground(&p).unwrap();
        let heads: Vec<String> = g.rules()[2..].iter().map(|r| r.heads[0].to_string()).collect();
        assert_eq!(heads, ["r(a,b)", "r(b,c)"]);
        assert!(g.is_ground());
    }
}
