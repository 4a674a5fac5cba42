//! Seeded program generators, brute-force reference implementations and
//! the randomized cross-check suites built on them.

pub mod oracle;
pub mod suites;

use std::collections::BTreeSet;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
pub use rand_chacha::ChaCha8Rng;

use crate::syntax::{Atom, Formula, Program, Rule};

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// `a`, `b`, `c`, ... up to `n` atoms.
pub fn atoms(n: usize) -> Vec<Atom> {
    (0..n)
        .map(|k| Atom::new(&((b'a' + k as u8) as char).to_string()))
        .collect()
}

fn program(rules: Vec<Rule>, sig: &[Atom]) -> Program {
    Program::with_signature(rules, sig.iter().cloned().collect())
}

fn literal(rng: &mut ChaCha8Rng, sig: &[Atom]) -> Formula {
    let a = Formula::Atom(sig.choose(rng).unwrap().clone());
    if rng.gen_bool(0.4) {
        Formula::not(a)
    } else {
        a
    }
}

fn literal_body(rng: &mut ChaCha8Rng, sig: &[Atom], max_len: usize) -> Formula {
    let len = rng.gen_range(0..=max_len);
    Formula::conj((0..len).map(|_| literal(rng, sig)))
}

/// Random formula of the given maximum depth.
pub fn random_formula(rng: &mut ChaCha8Rng, sig: &[Atom], depth: usize) -> Formula {
    if depth == 0 || rng.gen_bool(0.3) {
        return match rng.gen_range(0..20) {
            0 => Formula::Top,
            1 => Formula::Bot,
            _ => Formula::Atom(sig.choose(rng).unwrap().clone()),
        };
    }
    let d = depth - 1;
    match rng.gen_range(0..5) {
        0 => Formula::not(random_formula(rng, sig, d)),
        1 => Formula::and(random_formula(rng, sig, d), random_formula(rng, sig, d)),
        2 => Formula::or(random_formula(rng, sig, d), random_formula(rng, sig, d)),
        3 => Formula::implies(random_formula(rng, sig, d), random_formula(rng, sig, d)),
        _ => Formula::conj([literal(rng, sig), literal(rng, sig)]),
    }
}

fn atom_or_bot(rng: &mut ChaCha8Rng, sig: &[Atom]) -> Formula {
    if rng.gen_bool(0.15) {
        Formula::Bot
    } else {
        Formula::Atom(sig.choose(rng).unwrap().clone())
    }
}

/// Simple program: atom heads (at most `max_heads`, or a constraint) and
/// literal-conjunction bodies.
pub fn random_simple(rng: &mut ChaCha8Rng, n: usize, rules: usize, max_heads: usize) -> Program {
    let sig = atoms(n);
    let rs = (0..rules)
        .map(|k| {
            let body = literal_body(rng, &sig, 3);
            if rng.gen_bool(0.12) {
                return Rule::constraint(k as u32 + 1, body);
            }
            let count = rng.gen_range(1..=max_heads);
            let heads: BTreeSet<Atom> = (0..count)
                .map(|_| sig.choose(rng).unwrap().clone())
                .collect();
            Rule::new(
                k as u32 + 1,
                heads.into_iter().map(Formula::Atom).collect(),
                body,
            )
        })
        .collect();
    program(rs, &sig)
}

/// Atom (or `Bot`) heads with arbitrary formula bodies.
pub fn random_atomic_head(rng: &mut ChaCha8Rng, n: usize, rules: usize, depth: usize) -> Program {
    let sig = atoms(n);
    let rs = (0..rules)
        .map(|k| {
            Rule::new(
                k as u32 + 1,
                vec![atom_or_bot(rng, &sig)],
                random_formula(rng, &sig, depth),
            )
        })
        .collect();
    program(rs, &sig)
}

/// Single formula heads with formula bodies.
pub fn random_normal(rng: &mut ChaCha8Rng, n: usize, rules: usize, depth: usize) -> Program {
    random_disjunctive(rng, n, rules, depth, 1)
}

/// Formula heads (up to `max_heads` per rule) with formula bodies.
pub fn random_disjunctive(
    rng: &mut ChaCha8Rng,
    n: usize,
    rules: usize,
    depth: usize,
    max_heads: usize,
) -> Program {
    let sig = atoms(n);
    let rs = (0..rules)
        .map(|k| {
            let count = rng.gen_range(1..=max_heads);
            let heads = (0..count)
                .map(|_| {
                    let h = if rng.gen_bool(0.5) {
                        atom_or_bot(rng, &sig)
                    } else {
                        random_formula(rng, &sig, depth)
                    };
                    // `#false` may only stand alone as a head
                    if count > 1 && h == Formula::Bot {
                        Formula::Atom(sig[rng.gen_range(0..sig.len())].clone())
                    } else {
                        h
                    }
                })
                .collect();
            let body = if rng.gen_bool(0.5) {
                literal_body(rng, &sig, 2)
            } else {
                random_formula(rng, &sig, depth)
            };
            Rule::new(k as u32 + 1, heads, body)
        })
        .collect();
    program(rs, &sig)
}

/// Programs with atom heads and bodies mixing objective literals with
/// epistemic negations drawn from a pool of at most `max_ep` formulas.
pub fn random_epistemic(rng: &mut ChaCha8Rng, n: usize, rules: usize, max_ep: usize) -> Program {
    let sig = atoms(n);
    let pool_size = rng.gen_range(1..=max_ep);
    let pool: Vec<Formula> = (0..pool_size).map(|_| literal(rng, &sig)).collect();
    let rs = (0..rules)
        .map(|k| {
            let len = rng.gen_range(1..=3);
            let body = Formula::conj((0..len).map(|_| {
                if rng.gen_bool(0.5) {
                    let e = Formula::ep_not(pool.choose(rng).unwrap().clone());
                    if rng.gen_bool(0.4) {
                        Formula::not(e)
                    } else {
                        e
                    }
                } else {
                    literal(rng, &sig)
                }
            }));
            if rng.gen_bool(0.1) {
                Rule::constraint(k as u32 + 1, body)
            } else {
                let heads = if rng.gen_bool(0.25) {
                    (0..2)
                        .map(|_| Formula::Atom(sig.choose(rng).unwrap().clone()))
                        .collect()
                } else {
                    vec![atom_or_bot(rng, &sig)]
                };
                Rule::new(k as u32 + 1, heads, body)
            }
        })
        .collect();
    program(rs, &sig)
}

/// Every simple normal program over `n` atoms with at most `max_rules`
/// rules, as multisets of rules. A head is an atom or `Bot`; each atom is
/// absent from the body, positive, or negated.
pub fn all_simple_normal(n: usize, max_rules: usize) -> impl Iterator<Item = Program> {
    let sig = atoms(n);
    let mut shapes = Vec::new();
    for h in 0..=n {
        for pattern in 0..3usize.pow(n as u32) {
            shapes.push((h, pattern));
        }
    }
    let make = move |combo: &[usize]| {
        let rules = combo
            .iter()
            .enumerate()
            .map(|(k, &s)| {
                let (h, mut pattern) = shapes[s];
                let mut lits = Vec::new();
                for a in &sig {
                    match pattern % 3 {
                        1 => lits.push(Formula::Atom(a.clone())),
                        2 => lits.push(Formula::not(Formula::Atom(a.clone()))),
                        _ => {}
                    }
                    pattern /= 3;
                }
                let head = if h == n {
                    Formula::Bot
                } else {
                    Formula::Atom(sig[h].clone())
                };
                Rule::new(k as u32 + 1, vec![head], Formula::conj(lits))
            })
            .collect();
        program(rules, &sig)
    };
    let total = (n + 1) * 3usize.pow(n as u32);
    (0..=max_rules).flat_map(move |len| {
        let make = make.clone();
        Multisets::new(total, len).map(move |c| make(&c))
    })
}

/// Nondecreasing index sequences of a fixed length.
struct Multisets {
    total: usize,
    current: Option<Vec<usize>>,
}

impl Multisets {
    fn new(total: usize, len: usize) -> Multisets {
        Multisets {
            total,
            current: (len == 0 || total > 0).then(|| vec![0; len]),
        }
    }
}

impl Iterator for Multisets {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let out = self.current.clone()?;
        let mut cur = out.clone();
        let mut pos = cur.len();
        loop {
            if pos == 0 {
                self.current = None;
                break;
            }
            pos -= 1;
            if cur[pos] + 1 < self.total {
                let v = cur[pos] + 1;
                for x in &mut cur[pos..] {
                    *x = v;
                }
                self.current = Some(cur);
                break;
            }
        }
        Some(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiset_count() {
        assert_eq!(Multisets::new(4, 2).count(), 10);
        assert_eq!(Multisets::new(4, 0).count(), 1);
        assert_eq!(all_simple_normal(1, 2).count(), 1 + 6 + 21);
    }

    #[test]
    fn generators_are_seeded() {
        let a = random_disjunctive(&mut rng(7), 4, 4, 2, 2);
        let b = random_disjunctive(&mut rng(7), 4, 4, 2, 2);
        assert_eq!(a, b);
        let e = random_epistemic(&mut rng(3), 3, 3, 3);
        assert!(e.ep_negations().len() <= 3);
    }
}
