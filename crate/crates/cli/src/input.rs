use std::path::Path;

use anyhow::{bail, Context, Result};
use rasp_core::syntax::{ground, parse_formula};
use rasp_core::{parse_program, EpistemicModel, Formula, Interpretation, Program, Rule};

pub fn load_program(path: &Path) -> Result<Program> {
    let text =
        std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    let p = parse_program(&text).with_context(|| format!("in {}", path.display()))?;
    Ok(ground(&p)?)
}

/// Splits on `sep` outside parentheses and braces.
pub fn split_top(s: &str, sep: char) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (k, c) in s.char_indices() {
        match c {
            '(' | '{' => depth += 1,
            ')' | '}' => depth -= 1,
            c if c == sep && depth == 0 => {
                out.push(&s[start..k]);
                start = k + c.len_utf8();
            }
            _ => {}
        }
    }
    out.push(&s[start..]);
    out
}

/// Comma-separated atoms, optionally wrapped in braces.
pub fn parse_interpretation(s: &str, p: &Program) -> Result<Interpretation> {
    let s = s.trim();
    let inner = s
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .unwrap_or(s);
    let mut out = Interpretation::new();
    for part in split_top(inner, ',') {
        let part = part.trim();
        if part.is_empty() {
            continue;
        }
        let Formula::Atom(a) = parse_formula(part)? else {
            bail!("{part:?} is not an atom");
        };
        if !p.signature().contains(&a) {
            bail!("atom {a} does not occur in the program");
        }
        out.insert(a);
    }
    Ok(out)
}

/// `{...};{...}`.
pub fn parse_epistemic_model(s: &str, p: &Program) -> Result<EpistemicModel> {
    let members = split_top(s.trim(), ';')
        .into_iter()
        .map(|m| parse_interpretation(m, p))
        .collect::<Result<Vec<_>>>()?;
    EpistemicModel::new(members).context("empty epistemic model")
}

pub fn is_epistemic_literal(s: &str) -> bool {
    s.trim_start().starts_with('{') || split_top(s, ';').len() > 1
}

/// A single rule, e.g. `:- ~c2.`
pub fn parse_rule(s: &str) -> Result<Rule> {
    let text = if s.trim_end().ends_with('.') {
        s.to_string()
    } else {
        format!("{s}.")
    };
    let p = ground(&parse_program(&text)?)?;
    match p.rules() {
        [r] => Ok(r.clone()),
        _ => bail!("expected exactly one rule"),
    }
}
