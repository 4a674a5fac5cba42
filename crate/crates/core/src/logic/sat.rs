//! Satisfiability backends.
//!
//! [`Dpll`] Tseitin-encodes formulas and runs a watched-literal DPLL search;
//! [`TruthTable`] enumerates assignments and is only meant for small inputs
//! and for cross-checking.

use std::collections::HashMap;

use crate::syntax::{Atom, Formula};

/// Decides satisfiability of `pos` together with the negation of each `neg`.
pub trait SatBackend: Sync {
    fn satisfiable(&self, pos: &[&Formula], neg: &[&Formula]) -> bool;

    /// All assignments over `vars` (as bit vectors indexed like `vars`) that
    /// extend to a model of `pos`. Atoms outside `vars` are existentially
    /// projected.
    fn models(&self, pos: &[&Formula], vars: &[Atom]) -> Vec<Vec<bool>>;
}

#[derive(Debug, Clone, Copy, Default)]
pub struct Dpll;

#[derive(Debug, Clone, Copy, Default)]
pub struct TruthTable;

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
struct Lit(u32);

impl Lit {
    fn new(var: u32, positive: bool) -> Lit {
        Lit(var << 1 | u32::from(!positive))
    }
    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }
    fn positive(self) -> bool {
        self.0 & 1 == 0
    }
    fn neg(self) -> Lit {
        Lit(self.0 ^ 1)
    }
}

enum Enc {
    Const(bool),
    Lit(Lit),
}

#[derive(Default)]
struct Cnf<'a> {
    vars: HashMap<&'a Atom, u32>,
    num_vars: u32,
    clauses: Vec<Vec<Lit>>,
    units: Vec<Lit>,
    unsat: bool,
}

impl<'a> Cnf<'a> {
    fn var(&mut self, a: &'a Atom) -> u32 {
        let next = self.num_vars;
        let v = *self.vars.entry(a).or_insert(next);
        if v == next {
            self.num_vars += 1;
        }
        v
    }

    fn fresh(&mut self) -> Lit {
        self.num_vars += 1;
        Lit::new(self.num_vars - 1, true)
    }

    /// Asserts `f` has truth value `value`, splitting conjunctive structure.
    fn assert(&mut self, f: &'a Formula, value: bool) {
        match (f, value) {
            (Formula::Top, v) | (Formula::Bot, v) if v == matches!(f, Formula::Top) => {}
            (Formula::Top, _) | (Formula::Bot, _) => self.unsat = true,
            (Formula::Atom(a), v) => {
                let x = self.var(a);
                self.units.push(Lit::new(x, v));
            }
            (Formula::Not(g), v) => self.assert(g, !v),
            (Formula::And(a, b), true) | (Formula::Or(a, b), false) => {
                self.assert(a, value);
                self.assert(b, value);
            }
            (Formula::Implies(a, b), false) => {
                self.assert(a, true);
                self.assert(b, false);
            }
            (Formula::EpNot(_), _) => panic!("epistemic negation in classical reasoning"),
            _ => match self.encode(f) {
                Enc::Const(c) => {
                    if c != value {
                        self.unsat = true
                    }
                }
                Enc::Lit(l) => self.units.push(if value { l } else { l.neg() }),
            },
        }
    }

    fn encode(&mut self, f: &'a Formula) -> Enc {
        match f {
            Formula::Top => Enc::Const(true),
            Formula::Bot => Enc::Const(false),
            Formula::Atom(a) => Enc::Lit(Lit::new(self.var(a), true)),
            Formula::Not(g) => match self.encode(g) {
                Enc::Const(c) => Enc::Const(!c),
                Enc::Lit(l) => Enc::Lit(l.neg()),
            },
            Formula::EpNot(_) => panic!("epistemic negation in classical reasoning"),
            Formula::And(a, b) => {
                let (x, y) = (self.encode(a), self.encode(b));
                self.and(x, y)
            }
            Formula::Or(a, b) => {
                let (x, y) = (self.encode(a), self.encode(b));
                self.or(x, y)
            }
            Formula::Implies(a, b) => {
                let x = match self.encode(a) {
                    Enc::Const(c) => Enc::Const(!c),
                    Enc::Lit(l) => Enc::Lit(l.neg()),
                };
                let y = self.encode(b);
                self.or(x, y)
            }
            Formula::Iff(a, b) => {
                let (x, y) = (self.encode(a), self.encode(b));
                match (x, y) {
                    (Enc::Const(c), Enc::Const(d)) => Enc::Const(c == d),
                    (Enc::Const(c), Enc::Lit(l)) | (Enc::Lit(l), Enc::Const(c)) => {
                        Enc::Lit(if c { l } else { l.neg() })
                    }
                    (Enc::Lit(p), Enc::Lit(q)) => {
                        let g = self.fresh();
                        self.clauses.push(vec![g.neg(), p.neg(), q]);
                        self.clauses.push(vec![g.neg(), p, q.neg()]);
                        self.clauses.push(vec![g, p, q]);
                        self.clauses.push(vec![g, p.neg(), q.neg()]);
                        Enc::Lit(g)
                    }
                }
            }
        }
    }

    fn and(&mut self, x: Enc, y: Enc) -> Enc {
        match (x, y) {
            (Enc::Const(false), _) | (_, Enc::Const(false)) => Enc::Const(false),
            (Enc::Const(true), o) | (o, Enc::Const(true)) => o,
            (Enc::Lit(p), Enc::Lit(q)) => {
                let g = self.fresh();
                self.clauses.push(vec![g.neg(), p]);
                self.clauses.push(vec![g.neg(), q]);
                self.clauses.push(vec![g, p.neg(), q.neg()]);
                Enc::Lit(g)
            }
        }
    }

    fn or(&mut self, x: Enc, y: Enc) -> Enc {
        match (x, y) {
            (Enc::Const(true), _) | (_, Enc::Const(true)) => Enc::Const(true),
            (Enc::Const(false), o) | (o, Enc::Const(false)) => o,
            (Enc::Lit(p), Enc::Lit(q)) => {
                let g = self.fresh();
                self.clauses.push(vec![g.neg(), p, q]);
                self.clauses.push(vec![g, p.neg()]);
                self.clauses.push(vec![g, q.neg()]);
                Enc::Lit(g)
            }
        }
    }
}

struct Solver {
    assign: Vec<i8>,
    clauses: Vec<Vec<Lit>>,
    watches: Vec<Vec<usize>>,
    trail: Vec<Lit>,
    qhead: usize,
}

impl Solver {
    /// Returns `None` when the units already conflict.
    fn new(cnf: Cnf<'_>) -> Option<Solver> {
        if cnf.unsat {
            return None;
        }
        let n = cnf.num_vars as usize;
        let mut s = Solver {
            assign: vec![0; n],
            clauses: Vec::with_capacity(cnf.clauses.len()),
            watches: vec![Vec::new(); 2 * n],
            trail: Vec::new(),
            qhead: 0,
        };
        for u in cnf.units {
            if !s.enqueue(u) {
                return None;
            }
        }
        for mut c in cnf.clauses {
            c.sort_by_key(|l| l.0);
            c.dedup();
            if c.windows(2).any(|w| w[0].var() == w[1].var()) {
                continue; // tautology
            }
            match c.len() {
                0 => return None,
                1 => {
                    if !s.enqueue(c[0]) {
                        return None;
                    }
                }
                _ => {
                    let idx = s.clauses.len();
                    s.watches[c[0].neg().0 as usize].push(idx);
                    s.watches[c[1].neg().0 as usize].push(idx);
                    s.clauses.push(c);
                }
            }
        }
        if !s.propagate() {
            return None;
        }
        Some(s)
    }

    fn value(&self, l: Lit) -> i8 {
        let v = self.assign[l.var()];
        if l.positive() {
            v
        } else {
            -v
        }
    }

    fn enqueue(&mut self, l: Lit) -> bool {
        match self.value(l) {
            1 => true,
            -1 => false,
            _ => {
                self.assign[l.var()] = if l.positive() { 1 } else { -1 };
                self.trail.push(l);
                true
            }
        }
    }

    fn propagate(&mut self) -> bool {
        while self.qhead < self.trail.len() {
            let l = self.trail[self.qhead];
            self.qhead += 1;
            // Clauses watching a literal that just became false.
            let mut ws = std::mem::take(&mut self.watches[l.0 as usize]);
            let mut i = 0;
            let mut ok = true;
            while i < ws.len() {
                let ci = ws[i];
                let false_lit = l.neg();
                let c = &mut self.clauses[ci];
                if c[0] == false_lit {
                    c.swap(0, 1);
                }
                let first = c[0];
                let first_val = {
                    let v = self.assign[first.var()];
                    if first.positive() { v } else { -v }
                };
                if first_val == 1 {
                    i += 1;
                    continue;
                }
                let mut moved = false;
                for k in 2..c.len() {
                    let lk = c[k];
                    let v = self.assign[lk.var()];
                    let val = if lk.positive() { v } else { -v };
                    if val != -1 {
                        c.swap(1, k);
                        let new_watch = c[1].neg().0 as usize;
                        self.watches[new_watch].push(ci);
                        ws.swap_remove(i);
                        moved = true;
                        break;
                    }
                }
                if moved {
                    continue;
                }
                i += 1;
                if first_val == -1 || !self.enqueue(first) {
                    ok = false;
                    break;
                }
            }
            let rest = std::mem::take(&mut self.watches[l.0 as usize]);
            ws.extend(rest);
            self.watches[l.0 as usize] = ws;
            if !ok {
                return false;
            }
        }
        true
    }

    fn undo(&mut self, mark: usize) {
        for l in self.trail.drain(mark..) {
            self.assign[l.var()] = 0;
        }
        self.qhead = self.qhead.min(mark);
    }

    fn try_lit(&mut self, l: Lit) -> bool {
        self.enqueue(l) && self.propagate()
    }

    /// Extends the current assignment to a full model if possible, restoring
    /// the trail afterwards.
    fn solve(&mut self) -> bool {
        let Some(v) = self.assign.iter().position(|&x| x == 0) else {
            return true;
        };
        for val in [true, false] {
            let mark = self.trail.len();
            let ok = self.try_lit(Lit::new(v as u32, val)) && self.solve();
            self.undo(mark);
            if ok {
                return true;
            }
        }
        false
    }

    fn enumerate(&mut self, primary: &[Option<u32>], k: usize, out: &mut Vec<Vec<bool>>) {
        let Some(j) = (k..primary.len()).find(|&j| match primary[j] {
            Some(v) => self.assign[v as usize] == 0,
            None => false,
        }) else {
            if self.solve() {
                out.push(
                    primary
                        .iter()
                        .map(|v| v.is_some_and(|v| self.assign[v as usize] == 1))
                        .collect(),
                );
            }
            return;
        };
        let v = primary[j].expect("checked above");
        for val in [false, true] {
            let mark = self.trail.len();
            if self.try_lit(Lit::new(v, val)) {
                self.enumerate(primary, j + 1, out);
            }
            self.undo(mark);
        }
    }
}

impl SatBackend for Dpll {
    fn satisfiable(&self, pos: &[&Formula], neg: &[&Formula]) -> bool {
        let mut cnf = Cnf::default();
        for f in pos {
            cnf.assert(f, true);
        }
        for f in neg {
            cnf.assert(f, false);
        }
        match Solver::new(cnf) {
            Some(mut s) => s.solve(),
            None => false,
        }
    }

    fn models(&self, pos: &[&Formula], vars: &[Atom]) -> Vec<Vec<bool>> {
        let mut cnf = Cnf::default();
        for f in pos {
            cnf.assert(f, true);
        }
        // Atoms absent from the formulas are unconstrained.
        let primary: Vec<Option<u32>> = vars.iter().map(|a| cnf.vars.get(a).copied()).collect();
        let Some(mut s) = Solver::new(cnf) else {
            return Vec::new();
        };
        let mut partial = Vec::new();
        s.enumerate(&primary, 0, &mut partial);
        let free: Vec<usize> = (0..vars.len()).filter(|&i| primary[i].is_none()).collect();
        let mut out = Vec::new();
        for m in partial {
            for mask in 0u64..(1u64 << free.len()) {
                let mut m = m.clone();
                for (bit, &i) in free.iter().enumerate() {
                    m[i] = mask >> bit & 1 == 1;
                }
                out.push(m);
            }
        }
        out
    }
}

fn eval_with(f: &Formula, val: &dyn Fn(&Atom) -> bool) -> bool {
    match f {
        Formula::Top => true,
        Formula::Bot => false,
        Formula::Atom(a) => val(a),
        Formula::Not(g) => !eval_with(g, val),
        Formula::And(a, b) => eval_with(a, val) && eval_with(b, val),
        Formula::Or(a, b) => eval_with(a, val) || eval_with(b, val),
        Formula::Implies(a, b) => !eval_with(a, val) || eval_with(b, val),
        Formula::Iff(a, b) => eval_with(a, val) == eval_with(b, val),
        Formula::EpNot(_) => panic!("epistemic negation in classical reasoning"),
    }
}

impl TruthTable {
    const LIMIT: usize = 24;

    fn atoms_of(fs: &[&Formula]) -> Vec<Atom> {
        let mut set = std::collections::BTreeSet::new();
        for f in fs {
            f.collect_atoms(&mut set);
        }
        set.into_iter().collect()
    }
}

impl SatBackend for TruthTable {
    fn satisfiable(&self, pos: &[&Formula], neg: &[&Formula]) -> bool {
        let all: Vec<&Formula> = pos.iter().chain(neg).copied().collect();
        let atoms = Self::atoms_of(&all);
        assert!(atoms.len() <= Self::LIMIT, "truth table too large");
        let index: HashMap<&Atom, usize> = atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
        (0u64..1 << atoms.len()).any(|mask| {
            let val = |a: &Atom| mask >> index[a] & 1 == 1;
            pos.iter().all(|f| eval_with(f, &val)) && neg.iter().all(|f| !eval_with(f, &val))
        })
    }

    fn models(&self, pos: &[&Formula], vars: &[Atom]) -> Vec<Vec<bool>> {
        let mut atoms: Vec<Atom> = vars.to_vec();
        for a in Self::atoms_of(pos) {
            if !atoms.contains(&a) {
                atoms.push(a);
            }
        }
        assert!(atoms.len() <= Self::LIMIT, "truth table too large");
        let index: HashMap<&Atom, usize> = atoms.iter().enumerate().map(|(i, a)| (a, i)).collect();
        let mut out = Vec::new();
        for mask in 0u64..1 << atoms.len() {
            let val = |a: &Atom| mask >> index[a] & 1 == 1;
            if pos.iter().all(|f| eval_with(f, &val)) {
                let m: Vec<bool> = (0..vars.len()).map(|i| mask >> i & 1 == 1).collect();
                if !out.contains(&m) {
                    out.push(m);
                }
            }
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::syntax::parse_formula;

    fn f(s: &str) -> Formula {
        parse_formula(s).unwrap()
    }

    #[test]
    fn basic_satisfiability() {
        for (text, sat) in [
            ("a & ~a", false),
            ("a | ~a", true),
            ("(a -> b) & a & ~b", false),
            ("(a <-> b) & (b <-> ~a)", false),
            ("#true", true),
            ("#false | a", true),
            ("~(a -> a)", false),
        ] {
            let g = f(text);
            assert_eq!(Dpll.satisfiable(&[&g], &[]), sat, "{text}");
            assert_eq!(TruthTable.satisfiable(&[&g], &[]), sat, "{text}");
        }
    }

    #[test]
    fn model_counts_agree() {
        let vars: Vec<Atom> = ["a", "b", "c", "d"].iter().map(|n| Atom::new(n)).collect();
        for text in ["a | b", "(a <-> b) -> c", "~(a & b & c)", "#true", "a & ~a"] {
            let g = f(text);
            let mut x = Dpll.models(&[&g], &vars);
            let mut y = TruthTable.models(&[&g], &vars);
            x.sort();
            y.sort();
            assert_eq!(x, y, "{text}");
        }
    }
}
