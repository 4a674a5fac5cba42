//! Recursive-descent parser for the program text format.

use std::collections::BTreeSet;

use super::{Atom, Formula, Guard, Program, Rule, Term};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq)]
enum Tok {
    Lower(String),
    Upper(String),
    Int(i64),
    LParen,
    RParen,
    Comma,
    Dot,
    If,
    Semi,
    Tilde,
    Amp,
    Bar,
    Arrow,
    DArrow,
    Neq,
    True,
    False,
    AtomDecl,
    Eof,
}

#[derive(Debug, Clone)]
struct Token {
    tok: Tok,
    line: usize,
    col: usize,
}

fn lex(src: &str) -> Result<Vec<Token>> {
    let chars: Vec<char> = src.chars().collect();
    let mut out = Vec::new();
    let (mut i, mut line, mut col) = (0, 1, 1);
    let err = |line, col, msg: String| Error::Parse {
        line,
        column: col,
        message: msg,
    };
    while i < chars.len() {
        let c = chars[i];
        let (tl, tc) = (line, col);
        let mut adv = 1;
        let tok = match c {
            '\n' => {
                line += 1;
                col = 1;
                i += 1;
                continue;
            }
            c if c.is_whitespace() => None,
            '%' => {
                while i < chars.len() && chars[i] != '\n' {
                    i += 1;
                }
                continue;
            }
            '(' => Some(Tok::LParen),
            ')' => Some(Tok::RParen),
            ',' => Some(Tok::Comma),
            '.' => Some(Tok::Dot),
            ';' => Some(Tok::Semi),
            '~' => Some(Tok::Tilde),
            '&' => Some(Tok::Amp),
            '|' => Some(Tok::Bar),
            ':' if chars.get(i + 1) == Some(&'-') => {
                adv = 2;
                Some(Tok::If)
            }
            '-' if chars.get(i + 1) == Some(&'>') => {
                adv = 2;
                Some(Tok::Arrow)
            }
            '<' if chars.get(i + 1) == Some(&'-') && chars.get(i + 2) == Some(&'>') => {
                adv = 3;
                Some(Tok::DArrow)
            }
            '!' if chars.get(i + 1) == Some(&'=') => {
                adv = 2;
                Some(Tok::Neq)
            }
            '#' => {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_alphanumeric() {
                    j += 1;
                }
                let word: String = chars[i + 1..j].iter().collect();
                adv = j - i;
                match word.as_str() {
                    "true" => Some(Tok::True),
                    "false" => Some(Tok::False),
                    "atom" => Some(Tok::AtomDecl),
                    _ => return Err(err(tl, tc, format!("unknown directive #{word}"))),
                }
            }
            c if c.is_ascii_digit()
                || (c == '-' && chars.get(i + 1).is_some_and(|d| d.is_ascii_digit())) =>
            {
                let mut j = i + 1;
                while j < chars.len() && chars[j].is_ascii_digit() {
                    j += 1;
                }
                let text: String = chars[i..j].iter().collect();
                adv = j - i;
                let n = text
                    .parse()
                    .map_err(|_| err(tl, tc, format!("integer out of range: {text}")))?;
                Some(Tok::Int(n))
            }
            c if c.is_ascii_alphabetic() || c == '_' => {
                let mut j = i + 1;
                while j < chars.len() && (chars[j].is_ascii_alphanumeric() || chars[j] == '_') {
                    j += 1;
                }
                let word: String = chars[i..j].iter().collect();
                adv = j - i;
                if c.is_ascii_lowercase() {
                    Some(Tok::Lower(word))
                } else {
                    Some(Tok::Upper(word))
                }
            }
            other => return Err(err(tl, tc, format!("unexpected character {other:?}"))),
        };
        if let Some(tok) = tok {
            out.push(Token {
                tok,
                line: tl,
                col: tc,
            });
        }
        i += adv;
        col += adv;
    }
    out.push(Token {
        tok: Tok::Eof,
        line,
        col,
    });
    Ok(out)
}

/// Parser-internal formula that may still contain inequality guards.
enum Expr {
    F(Formula),
    Neq(Term, Term),
    And(Box<Expr>, Box<Expr>),
    Other(Box<Expr>, Box<Expr>, fn(Formula, Formula) -> Formula),
    Unary(Box<Expr>, fn(Formula) -> Formula),
}

struct Parser {
    toks: Vec<Token>,
    pos: usize,
    ep_depth: usize,
}

impl Parser {
    fn peek(&self) -> &Tok {
        &self.toks[self.pos].tok
    }

    fn peek2(&self) -> &Tok {
        &self.toks[(self.pos + 1).min(self.toks.len() - 1)].tok
    }

    fn bump(&mut self) -> Token {
        let t = self.toks[self.pos].clone();
        if self.pos + 1 < self.toks.len() {
            self.pos += 1;
        }
        t
    }

    fn error<T>(&self, msg: impl Into<String>) -> Result<T> {
        let t = &self.toks[self.pos];
        Err(Error::Parse {
            line: t.line,
            column: t.col,
            message: msg.into(),
        })
    }

    fn expect(&mut self, tok: Tok, what: &str) -> Result<()> {
        if *self.peek() == tok {
            self.bump();
            Ok(())
        } else {
            self.error(format!("expected {what}, found {}", describe(self.peek())))
        }
    }

    fn program(&mut self) -> Result<Program> {
        let mut rules = Vec::new();
        let mut declared = BTreeSet::new();
        while *self.peek() != Tok::Eof {
            if *self.peek() == Tok::AtomDecl {
                self.bump();
                loop {
                    let a = self.atom()?;
                    if !a.is_ground() {
                        return self.error("declared atoms must be ground");
                    }
                    declared.insert(a);
                    if *self.peek() == Tok::Comma {
                        self.bump();
                    } else {
                        break;
                    }
                }
                self.expect(Tok::Dot, "'.'")?;
                continue;
            }
            let id = rules.len() as u32 + 1;
            rules.push(self.rule(id)?);
        }
        Ok(Program::with_signature(rules, declared))
    }

    fn rule(&mut self, id: u32) -> Result<Rule> {
        let mut heads = Vec::new();
        if *self.peek() != Tok::If {
            loop {
                let h = self.formula()?;
                heads.push(h);
                if *self.peek() == Tok::Semi {
                    self.bump();
                } else {
                    break;
                }
            }
            if heads.len() > 1 && heads.contains(&Formula::Bot) {
                return self.error("#false cannot be one of several head alternatives");
            }
        }
        let (body, guards) = if *self.peek() == Tok::If {
            self.bump();
            let e = self.expr()?;
            self.split_guards(e)?
        } else if heads.is_empty() {
            return self.error("empty rule");
        } else {
            (Formula::Top, Vec::new())
        };
        self.expect(Tok::Dot, "'.' at end of rule")?;
        let mut r = Rule::new(id, heads, body);
        r.guards = guards;
        Ok(r)
    }

    fn formula(&mut self) -> Result<Formula> {
        let e = self.expr()?;
        self.lower(e)
    }

    fn lower(&self, e: Expr) -> Result<Formula> {
        Ok(match e {
            Expr::F(f) => f,
            Expr::Neq(..) => {
                return self.error("inequality is only allowed as a top-level body conjunct")
            }
            Expr::And(a, b) => Formula::and(self.lower(*a)?, self.lower(*b)?),
            Expr::Other(a, b, k) => k(self.lower(*a)?, self.lower(*b)?),
            Expr::Unary(a, k) => k(self.lower(*a)?),
        })
    }

    fn split_guards(&self, e: Expr) -> Result<(Formula, Vec<Guard>)> {
        let mut spine = Vec::new();
        fn flatten(e: Expr, out: &mut Vec<Expr>) {
            match e {
                Expr::And(a, b) => {
                    flatten(*a, out);
                    out.push(*b);
                }
                other => out.push(other),
            }
        }
        flatten(e, &mut spine);
        if !spine.iter().any(|x| matches!(x, Expr::Neq(..))) {
            // Rebuild without touching the shape.
            let mut it = spine.into_iter();
            let first = self.lower(it.next().expect("non-empty spine"))?;
            let f = it.try_fold(first, |acc, x| Ok::<_, Error>(Formula::and(acc, self.lower(x)?)))?;
            return Ok((f, Vec::new()));
        }
        let mut guards = Vec::new();
        let mut parts = Vec::new();
        for x in spine {
            match x {
                Expr::Neq(l, r) => guards.push(Guard { left: l, right: r }),
                other => parts.push(self.lower(other)?),
            }
        }
        Ok((Formula::conj(parts), guards))
    }

    fn expr(&mut self) -> Result<Expr> {
        let mut left = self.imp()?;
        while *self.peek() == Tok::DArrow {
            self.bump();
            let right = self.imp()?;
            left = Expr::Other(Box::new(left), Box::new(right), Formula::iff);
        }
        Ok(left)
    }

    fn imp(&mut self) -> Result<Expr> {
        let left = self.or()?;
        if *self.peek() == Tok::Arrow {
            self.bump();
            let right = self.imp()?;
            return Ok(Expr::Other(Box::new(left), Box::new(right), Formula::implies));
        }
        Ok(left)
    }

    fn or(&mut self) -> Result<Expr> {
        let mut left = self.and()?;
        while *self.peek() == Tok::Bar {
            self.bump();
            let right = self.and()?;
            left = Expr::Other(Box::new(left), Box::new(right), Formula::or);
        }
        Ok(left)
    }

    fn and(&mut self) -> Result<Expr> {
        let mut left = self.unary()?;
        while *self.peek() == Tok::Amp {
            self.bump();
            let right = self.unary()?;
            left = Expr::And(Box::new(left), Box::new(right));
        }
        Ok(left)
    }

    fn epistemic<F>(&mut self, wrap: F) -> Result<Expr>
    where
        F: FnOnce(Formula) -> Formula,
    {
        let t = self.bump();
        if self.ep_depth > 0 {
            return Err(Error::NestedEpistemic {
                line: t.line,
                column: t.col,
            });
        }
        self.ep_depth += 1;
        let inner = self.unary();
        self.ep_depth -= 1;
        let inner = self.lower(inner?)?;
        Ok(Expr::F(wrap(inner)))
    }

    fn unary(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::Tilde => {
                self.bump();
                let inner = self.unary()?;
                Ok(Expr::Unary(Box::new(inner), Formula::not))
            }
            Tok::Lower(w) if w == "not" => self.epistemic(Formula::ep_not),
            Tok::Upper(w) if w == "K" && *self.peek2() != Tok::Neq => {
                self.epistemic(Formula::know)
            }
            Tok::Upper(w) if w == "M" && *self.peek2() != Tok::Neq => {
                self.epistemic(Formula::may)
            }
            _ => self.primary(),
        }
    }

    fn primary(&mut self) -> Result<Expr> {
        match self.peek().clone() {
            Tok::True => {
                self.bump();
                Ok(Expr::F(Formula::Top))
            }
            Tok::False => {
                self.bump();
                Ok(Expr::F(Formula::Bot))
            }
            Tok::LParen => {
                self.bump();
                let e = self.expr()?;
                self.expect(Tok::RParen, "')'")?;
                // Parentheses close a conjunction chain.
                Ok(match e {
                    Expr::And(a, b) => Expr::Other(a, b, Formula::and),
                    other => other,
                })
            }
            Tok::Lower(_) if *self.peek2() == Tok::Neq => self.guard(),
            Tok::Upper(_) | Tok::Int(_) => self.guard(),
            Tok::Lower(_) => Ok(Expr::F(Formula::Atom(self.atom()?))),
            other => self.error(format!("expected a formula, found {}", describe(&other))),
        }
    }

    fn guard(&mut self) -> Result<Expr> {
        let l = self.term()?;
        self.expect(Tok::Neq, "'!='")?;
        let r = self.term()?;
        Ok(Expr::Neq(l, r))
    }

    fn term(&mut self) -> Result<Term> {
        match self.peek().clone() {
            Tok::Lower(w) if w != "not" => {
                self.bump();
                Ok(Term::Sym(w.into()))
            }
            Tok::Upper(w) => {
                self.bump();
                Ok(Term::Var(w.into()))
            }
            Tok::Int(n) => {
                self.bump();
                Ok(Term::Int(n))
            }
            other => self.error(format!("expected a term, found {}", describe(&other))),
        }
    }

    fn atom(&mut self) -> Result<Atom> {
        let name = match self.peek().clone() {
            Tok::Lower(w) if w != "not" => {
                self.bump();
                w
            }
            other => return self.error(format!("expected an atom, found {}", describe(&other))),
        };
        let mut args = Vec::new();
        if *self.peek() == Tok::LParen {
            self.bump();
            loop {
                args.push(self.term()?);
                if *self.peek() == Tok::Comma {
                    self.bump();
                } else {
                    break;
                }
            }
            self.expect(Tok::RParen, "')'")?;
        }
        Ok(Atom::with_args(&name, args))
    }
}

fn describe(t: &Tok) -> String {
    match t {
        Tok::Lower(w) | Tok::Upper(w) => format!("'{w}'"),
        Tok::Int(n) => format!("'{n}'"),
        Tok::Eof => "end of input".into(),
        other => format!("{other:?}"),
    }
}

/// Parses program text. `K` and `M` are desugared; rules are numbered from 1.
pub fn parse_program(src: &str) -> Result<Program> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        ep_depth: 0,
    };
    p.program()
}

/// Parses a single formula (no guards).
pub fn parse_formula(src: &str) -> Result<Formula> {
    let mut p = Parser {
        toks: lex(src)?,
        pos: 0,
        ep_depth: 0,
    };
    let f = p.formula()?;
    if *p.peek() != Tok::Eof {
        return p.error("trailing input after formula");
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn precedence() {
        let f = parse_formula("~a & b | c -> d -> e <-> f").unwrap();
        let lhs = Formula::implies(
            Formula::or(Formula::and(Formula::not(a("a")), a("b")), a("c")),
            Formula::implies(a("d"), a("e")),
        );
        assert_eq!(f, Formula::iff(lhs, a("f")));
    }

    #[test]
    fn modal_operators_desugar() {
        let f = parse_formula("K p").unwrap();
        assert_eq!(f, Formula::not(Formula::ep_not(a("p"))));
        let g = parse_formula("M p").unwrap();
        assert_eq!(g, Formula::ep_not(Formula::not(a("p"))));
    }

    #[test]
    fn nested_epistemic_is_rejected_with_position() {
        let e = parse_program("a :- not not b.").unwrap_err();
        assert_eq!(e, Error::NestedEpistemic { line: 1, column: 10 });
        assert!(parse_program("a :- not (b & K c).").is_err());
        assert!(parse_program("a :- K M b.").is_err());
    }

    #[test]
    fn parse_error_position() {
        let e = parse_program("a.\nb :- & c.").unwrap_err();
        match e {
            Error::Parse { line, column, .. } => assert_eq!((line, column), (2, 6)),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn constraints_facts_and_comments() {
        let p = parse_program("% comment\na. :- a & b. #false :- c.").unwrap();
        assert_eq!(p.rules().len(), 3);
        assert!(p.rules()[0].is_fact());
        assert!(p.rules()[1].is_constraint());
        assert!(p.rules()[2].is_constraint());
        assert_eq!(p.rules()[2].id.0, 3);
    }

    #[test]
    fn guards_are_split_from_body() {
        let p = parse_program(":- in(X,Y) & in(X,Z) & Y != Z.").unwrap();
        let r = &p.rules()[0];
        assert_eq!(r.guards.len(), 1);
        assert_eq!(r.body.conjuncts().len(), 2);
        assert!(parse_program("a :- ~(X != Y).").is_err());
        assert!(parse_program("a :- b | X != Y.").is_err());
    }

    #[test]
    fn variables_named_k_and_m() {
        let p = parse_program("a :- p(K) & K != M & p(M).").unwrap();
        assert_eq!(p.rules()[0].guards.len(), 1);
    }

    #[test]
    fn integer_terms() {
        let p = parse_program("p(-1). q(2).").unwrap();
        assert_eq!(p.rules()[0].heads[0].to_string(), "p(-1)");
    }
}
