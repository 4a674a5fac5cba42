//! Reference implementations by exhaustive search. They only use the
//! recursive evaluator and truth-table enumeration, never the SAT backend
//! or the fixpoint machinery.

use std::collections::BTreeSet;

use crate::logic::{ep_satisfies, satisfies, EpistemicModel, Interpretation};
use crate::reducts::epistemic_reduct;
use crate::semantics::rational_answer_sets;
use crate::syntax::{Atom, Formula, Program, Rule};

pub fn permutations<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for k in 0..items.len() {
        let mut rest = items.to_vec();
        let first = rest.remove(k);
        for mut tail in permutations(&rest) {
            tail.insert(0, first.clone());
            out.push(tail);
        }
    }
    out
}

pub fn subsets<T: Clone>(items: &[T]) -> Vec<Vec<T>> {
    (0u64..1 << items.len())
        .map(|mask| {
            items
                .iter()
                .enumerate()
                .filter(|(k, _)| mask >> k & 1 == 1)
                .map(|(_, x)| x.clone())
                .collect()
        })
        .collect()
}

/// Truth-table view of one program's signature.
pub struct Brute {
    sig: Vec<Atom>,
    worlds: Vec<Interpretation>,
}

impl Brute {
    pub fn new(p: &Program) -> Brute {
        let sig: Vec<Atom> = p.signature().iter().cloned().collect();
        let worlds = subsets(&sig)
            .into_iter()
            .map(|s| s.into_iter().collect())
            .collect();
        Brute { sig, worlds }
    }

    pub fn interpretations(&self) -> &[Interpretation] {
        &self.worlds
    }

    pub fn entails(&self, premises: &[Formula], goal: &Formula) -> bool {
        self.worlds
            .iter()
            .filter(|w| premises.iter().all(|f| satisfies(w, f)))
            .all(|w| satisfies(w, goal))
    }

    /// `~a` for every signature atom outside `i`.
    pub fn negatives(&self, i: &Interpretation) -> Vec<Formula> {
        self.sig
            .iter()
            .filter(|a| !i.contains(a))
            .map(|a| Formula::not(Formula::Atom(a.clone())))
            .collect()
    }

    pub fn models(&self, p: &Program) -> Vec<Interpretation> {
        self.worlds
            .iter()
            .filter(|w| p.rules().iter().all(|r| rule_holds(w, r)))
            .cloned()
            .collect()
    }
}

fn rule_holds(i: &Interpretation, r: &Rule) -> bool {
    !satisfies(i, &r.body) || r.heads.iter().any(|h| satisfies(i, h))
}

fn head_atom(r: &Rule) -> Option<&Atom> {
    match &r.heads[..] {
        [Formula::Atom(a)] => Some(a),
        _ => None,
    }
}

/// Fages: some linear order on `i` such that each true atom has a rule whose
/// body holds in `i` and whose positive body atoms come earlier.
pub fn fages_well_supported(p: &Program, i: &Interpretation) -> bool {
    let atoms: Vec<Atom> = i.iter().cloned().collect();
    permutations(&atoms).iter().any(|order| {
        order.iter().enumerate().all(|(k, a)| {
            p.rules().iter().any(|r| {
                head_atom(r) == Some(a)
                    && satisfies(i, &r.body)
                    && r.body.conjuncts().iter().all(|c| match c {
                        Formula::Atom(q) => order[..k].contains(q),
                        _ => true,
                    })
            })
        })
    })
}

/// Atom-head programs: some linear order on `i` such that each true atom
/// has a rule whose body follows from its predecessors and `~I-`.
pub fn atomic_well_supported(b: &Brute, p: &Program, i: &Interpretation) -> bool {
    let atoms: Vec<Atom> = i.iter().cloned().collect();
    let neg = b.negatives(i);
    permutations(&atoms).iter().any(|order| {
        order.iter().enumerate().all(|(k, a)| {
            let mut premises = neg.clone();
            premises.extend(order[..k].iter().map(|q| Formula::Atom(q.clone())));
            p.rules()
                .iter()
                .any(|r| head_atom(r) == Some(a) && b.entails(&premises, &r.body))
        })
    })
}

fn with(base: &[Formula], extra: impl IntoIterator<Item = Formula>) -> Vec<Formula> {
    let mut v = base.to_vec();
    v.extend(extra);
    v
}

/// Sets of heads that are closed and well-supported, each with the linear
/// orders witnessing it.
pub fn well_supported_head_sets(
    b: &Brute,
    p: &Program,
    i: &Interpretation,
) -> Vec<(BTreeSet<Formula>, Vec<Vec<Formula>>)> {
    let neg = b.negatives(i);
    let cand: Vec<Formula> = p
        .rules()
        .iter()
        .filter(|r| satisfies(i, &r.body))
        .map(|r| r.heads[0].clone())
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let mut out = Vec::new();
    for v in subsets(&cand) {
        let premises = with(&neg, v.iter().cloned());
        let closed = p
            .rules()
            .iter()
            .all(|r| !b.entails(&premises, &r.body) || v.contains(&r.heads[0]));
        if !closed {
            continue;
        }
        let orders: Vec<Vec<Formula>> = permutations(&v)
            .into_iter()
            .filter(|order| {
                order.iter().enumerate().all(|(k, h)| {
                    let pre = with(&neg, order[..k].iter().cloned());
                    p.rules()
                        .iter()
                        .any(|r| &r.heads[0] == h && b.entails(&pre, &r.body))
                })
            })
            .collect();
        if !orders.is_empty() {
            out.push((v.into_iter().collect(), orders));
        }
    }
    out
}

/// Normal programs with formula heads, by search over head sets, head
/// orders, support sets and atom orders.
pub fn normal_well_supported(b: &Brute, p: &Program, i: &Interpretation) -> bool {
    let neg = b.negatives(i);
    let atoms: Vec<Atom> = i.iter().cloned().collect();
    let atom_orders = permutations(&atoms);
    for (v, orders) in well_supported_head_sets(b, p, i) {
        let v: Vec<Formula> = v.into_iter().collect();
        let supports = subsets(&v);
        for order in &orders {
            let pos = |f: &Formula| order.iter().position(|g| g == f).unwrap();
            // For each atom, the sets of atoms that must precede it under
            // some admissible support set.
            let mut needs: Vec<Vec<BTreeSet<Atom>>> = vec![Vec::new(); atoms.len()];
            for s in &supports {
                let base = with(&neg, s.iter().cloned());
                let heads: Vec<Formula> = p
                    .rules()
                    .iter()
                    .filter(|r| {
                        v.contains(&r.heads[0])
                            && s.iter().all(|f| pos(f) < pos(&r.heads[0]))
                            && b.entails(&base, &r.body)
                    })
                    .map(|r| r.heads[0].clone())
                    .collect();
                if heads.is_empty() {
                    continue;
                }
                let full = with(&base, heads);
                let below: BTreeSet<Atom> = atoms
                    .iter()
                    .filter(|q| b.entails(&base, &Formula::Atom((*q).clone())))
                    .cloned()
                    .collect();
                for (k, a) in atoms.iter().enumerate() {
                    if b.entails(&full, &Formula::Atom(a.clone())) {
                        needs[k].push(below.clone());
                    }
                }
            }
            let ok = atom_orders.iter().any(|ord| {
                atoms.iter().enumerate().all(|(k, a)| {
                    let at = ord.iter().position(|x| x == a).unwrap();
                    let pre: BTreeSet<&Atom> = ord[..at].iter().collect();
                    needs[k].iter().any(|n| n.iter().all(|q| pre.contains(q)))
                })
            });
            if ok {
                return true;
            }
        }
    }
    false
}

/// Every projection of `p` by a head selection, for the rules whose body
/// `i` satisfies.
pub fn projections(p: &Program, i: &Interpretation) -> Vec<Program> {
    let mut acc: Vec<Vec<Rule>> = vec![Vec::new()];
    for r in p.rules().iter().filter(|r| satisfies(i, &r.body)) {
        let mut heads: Vec<Formula> = r.heads.iter().filter(|h| satisfies(i, h)).cloned().collect();
        if heads.is_empty() {
            heads.push(Formula::Bot);
        }
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                heads.iter().map(move |h| {
                    let mut next = prefix.clone();
                    next.push(Rule::new(r.id.0, vec![h.clone()], r.body.clone()));
                    next
                })
            })
            .collect();
    }
    acc.into_iter().map(|rules| p.derive(rules)).collect()
}

pub fn disjunctive_well_supported(b: &Brute, p: &Program, i: &Interpretation) -> bool {
    projections(p, i)
        .iter()
        .any(|red| normal_well_supported(b, red, i))
}

/// Minimal well-supported models.
pub fn rational(p: &Program) -> BTreeSet<Interpretation> {
    let b = Brute::new(p);
    let ws: Vec<Interpretation> = b
        .models(p)
        .into_iter()
        .filter(|m| disjunctive_well_supported(&b, p, m))
        .collect();
    ws.iter()
        .filter(|m| !ws.iter().any(|o| o.is_proper_subset(m)))
        .cloned()
        .collect()
}

/// World views by enumerating every collection of interpretations.
pub fn world_views(p: &Program) -> BTreeSet<(EpistemicModel, BTreeSet<Formula>)> {
    let b = Brute::new(p);
    let ep = p.ep_negations();
    let mut candidates = Vec::new();
    for family in subsets(b.interpretations()) {
        let Some(a) = EpistemicModel::new(family) else {
            continue;
        };
        let is_model = a.iter().all(|i| {
            p.rules().iter().all(|r| {
                !ep_satisfies(&a, i, &r.body) || r.heads.iter().any(|h| ep_satisfies(&a, i, h))
            })
        });
        if !is_model {
            continue;
        }
        let reduct = epistemic_reduct(p, &a).expect("epistemic model").program;
        let sets: BTreeSet<Interpretation> =
            rational_answer_sets(&reduct).expect("reduct is epistemic-free").into_iter().collect();
        if sets.iter().eq(a.iter()) {
            let phi: BTreeSet<Formula> = ep
                .iter()
                .filter(|f| a.iter().any(|j| !satisfies(j, f)))
                .cloned()
                .collect();
            candidates.push((a, phi));
        }
    }
    candidates
        .iter()
        .filter(|(_, phi)| {
            !candidates
                .iter()
                .any(|(_, other)| phi.len() < other.len() && phi.is_subset(other))
        })
        .cloned()
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_program;

    #[test]
    fn small_cases() {
        let p = parse_program("p :- ~q. q :- ~p.").unwrap();
        let b = Brute::new(&p);
        assert!(fages_well_supported(&p, &Interpretation::from_names(["p"])));
        assert!(atomic_well_supported(&b, &p, &Interpretation::from_names(["p"])));
        assert!(!atomic_well_supported(&b, &p, &Interpretation::from_names(["p", "q"])));

        let p = parse_program("e | d. e | ~d. a | (~b & c). a | d :- b | c. (a | ~b) & (a | c) :- c & d & e.")
            .unwrap();
        let b = Brute::new(&p);
        assert!(normal_well_supported(&b, &p, &Interpretation::from_names(["c", "d", "e"])));

        let p = parse_program("p :- M p.").unwrap();
        assert_eq!(world_views(&p).len(), 1);
    }
}
