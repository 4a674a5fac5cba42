//! Display impls producing text that parses back to the same syntax tree.

use std::fmt::{self, Display, Formatter};

use super::{Atom, Formula, Guard, Program, Rule, Term};

impl Display for Term {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        match self {
            Term::Sym(s) | Term::Var(s) => f.write_str(s),
            Term::Int(n) => write!(f, "{n}"),
        }
    }
}

impl Display for Atom {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())?;
        if !self.args().is_empty() {
            f.write_str("(")?;
            for (i, t) in self.args().iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{t}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

impl Display for Guard {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write!(f, "{} != {}", self.left, self.right)
    }
}

// Binding strength: <-> 1, -> 2, | 3, & 4, prefix 5, primary 6.
fn level(f: &Formula) -> u8 {
    match f {
        Formula::Iff(..) => 1,
        Formula::Implies(..) => 2,
        Formula::Or(..) => 3,
        Formula::And(..) => 4,
        Formula::Not(_) | Formula::EpNot(_) => 5,
        Formula::Top | Formula::Bot | Formula::Atom(_) => 6,
    }
}

fn write_at(out: &mut Formatter<'_>, f: &Formula, min: u8) -> fmt::Result {
    if level(f) < min {
        out.write_str("(")?;
        write_at(out, f, 0)?;
        return out.write_str(")");
    }
    match f {
        Formula::Top => out.write_str("#true"),
        Formula::Bot => out.write_str("#false"),
        Formula::Atom(a) => write!(out, "{a}"),
        Formula::Not(a) => {
            out.write_str("~")?;
            write_at(out, a, 5)
        }
        Formula::EpNot(a) => {
            out.write_str("not ")?;
            write_at(out, a, 5)
        }
        Formula::And(a, b) => binary(out, a, " & ", b, 4, 5),
        Formula::Or(a, b) => binary(out, a, " | ", b, 3, 4),
        Formula::Implies(a, b) => binary(out, a, " -> ", b, 3, 2),
        Formula::Iff(a, b) => binary(out, a, " <-> ", b, 1, 2),
    }
}

fn binary(
    out: &mut Formatter<'_>,
    a: &Formula,
    op: &str,
    b: &Formula,
    left: u8,
    right: u8,
) -> fmt::Result {
    write_at(out, a, left)?;
    out.write_str(op)?;
    write_at(out, b, right)
}

impl Display for Formula {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        write_at(f, self, 0)
    }
}

impl Display for Rule {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let has_body = self.body != Formula::Top || !self.guards.is_empty();
        if !(self.is_constraint() && has_body) {
            for (i, h) in self.heads.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ; ")?;
                }
                write!(f, "{h}")?;
            }
        }
        if has_body {
            f.write_str(if self.is_constraint() { ":- " } else { " :- " })?;
            let mut first = true;
            if self.body != Formula::Top || self.guards.is_empty() {
                let min = if self.guards.is_empty() { 0 } else { 4 };
                write_at(f, &self.body, min)?;
                first = false;
            }
            for g in &self.guards {
                if !first {
                    f.write_str(" & ")?;
                }
                write!(f, "{g}")?;
                first = false;
            }
        }
        f.write_str(".")
    }
}

impl Display for Program {
    fn fmt(&self, f: &mut Formatter<'_>) -> fmt::Result {
        let mut declared: Vec<&Atom> = self.signature().iter().collect();
        let mentioned = Program::new(self.rules().to_vec());
        declared.retain(|a| !mentioned.signature().contains(*a));
        if !declared.is_empty() {
            f.write_str("#atom ")?;
            for (i, a) in declared.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{a}")?;
            }
            f.write_str(".\n")?;
        }
        for r in self.rules() {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use crate::syntax::parse_program;

    #[test]
    fn prints_minimal_parentheses() {
        let p = parse_program("a | (b & c) -> d :- (e -> f) -> g & ~(h | i).").unwrap();
        assert_eq!(
            p.rules()[0].to_string(),
            "a | b & c -> d :- (e -> f) -> g & ~(h | i)."
        );
    }

    #[test]
    fn constraint_and_body_guard_layout() {
        let p = parse_program(":- a | b.  #false.  :- X != Y & p(X) & p(Y).").unwrap();
        let text: Vec<String> = p.rules().iter().map(|r| r.to_string()).collect();
        assert_eq!(text[0], ":- a | b.");
        assert_eq!(text[1], "#false.");
        assert_eq!(text[2], ":- p(X) & p(Y) & X != Y.");
    }

    #[test]
    fn know_prints_as_negated_epistemic_negation() {
        let p = parse_program("a :- K b & M c.").unwrap();
        assert_eq!(p.rules()[0].to_string(), "a :- ~not b & not ~c.");
    }
}
