//! Answer-set and world-view semantics.
//!
//! Every answer-set semantics here searches the models of the program and
//! filters them with its own acceptance test, so the signature size is capped
//! (see [`Limits`]).

mod threevalued;
mod worldviews;

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::logic::{
    is_antichain, is_minimal_model_of, minimal_elements, program_formulas, program_models,
    sort_canonical, Interpretation,
};
use crate::reducts::{
    disjunctive_reduct, enumerate_variant_selections, ferraris_reduct, flp_reduct, gl_reduct,
};
use crate::syntax::{Formula, Program};
use crate::wellsupport::{is_ws_disjunctive, is_ws_normal};

pub use threevalued::{
    is_two_valued_stable, phi_op, stable_fixpoint, stable_revision, three_valued_answer_sets,
    three_valued_eval, ThreeValuedInterp, TruthValue,
};
pub use worldviews::{g91_world_views, rational_world_views, se16_world_views, WorldView};

/// Identifies a semantics.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum SemanticsId {
    Rational,
    Gl,
    GlNlp,
    Wj,
    Flp,
    Equilibrium,
    DiGlNlp,
    DiWj,
    ThreeValued,
    G91,
    /// Guess-and-check world views over a base answer-set semantics.
    Se16(Box<SemanticsId>),
}

impl SemanticsId {
    /// Semantics that assign answer sets to epistemic-free programs.
    pub fn is_answer_set_semantics(&self) -> bool {
        !matches!(self, SemanticsId::G91 | SemanticsId::Se16(_))
    }

    /// Semantics that assign world views to epistemic programs.
    pub fn is_world_view_semantics(&self) -> bool {
        matches!(
            self,
            SemanticsId::Rational | SemanticsId::G91 | SemanticsId::Se16(_)
        )
    }

    pub const ANSWER_SET_IDS: [SemanticsId; 9] = [
        SemanticsId::Rational,
        SemanticsId::Gl,
        SemanticsId::GlNlp,
        SemanticsId::Wj,
        SemanticsId::Flp,
        SemanticsId::Equilibrium,
        SemanticsId::DiGlNlp,
        SemanticsId::DiWj,
        SemanticsId::ThreeValued,
    ];
}

impl fmt::Display for SemanticsId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            SemanticsId::Rational => "RATIONAL",
            SemanticsId::Gl => "GL",
            SemanticsId::GlNlp => "GL_NLP",
            SemanticsId::Wj => "WJ",
            SemanticsId::Flp => "FLP",
            SemanticsId::Equilibrium => "EQUILIBRIUM",
            SemanticsId::DiGlNlp => "DI_GLNLP",
            SemanticsId::DiWj => "DI_WJ",
            SemanticsId::ThreeValued => "THREE_VALUED",
            SemanticsId::G91 => "G91",
            SemanticsId::Se16(base) => return write!(f, "SE16({base})"),
        };
        f.write_str(s)
    }
}

impl FromStr for SemanticsId {
    type Err = Error;

    fn from_str(s: &str) -> Result<SemanticsId> {
        let t = s.trim().to_ascii_uppercase();
        Ok(match t.as_str() {
            "RATIONAL" => SemanticsId::Rational,
            "GL" => SemanticsId::Gl,
            "GL_NLP" => SemanticsId::GlNlp,
            "WJ" => SemanticsId::Wj,
            "FLP" => SemanticsId::Flp,
            "EQUILIBRIUM" => SemanticsId::Equilibrium,
            "DI_GLNLP" => SemanticsId::DiGlNlp,
            "DI_WJ" => SemanticsId::DiWj,
            "THREE_VALUED" => SemanticsId::ThreeValued,
            "G91" => SemanticsId::G91,
            _ => {
                let inner = t
                    .strip_prefix("SE16(")
                    .and_then(|r| r.strip_suffix(')'))
                    .ok_or_else(|| Error::UnknownSemantics(s.to_string()))?;
                let base: SemanticsId = inner.parse()?;
                if !base.is_answer_set_semantics() {
                    return Err(Error::BaseMismatch(base.to_string()));
                }
                SemanticsId::Se16(Box::new(base))
            }
        })
    }
}

/// Resource bounds for enumeration.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Limits {
    pub max_atoms: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits {
            max_atoms: crate::DEFAULT_MAX_ATOMS,
        }
    }
}

fn finish(mut out: Vec<Interpretation>, p: &Program) -> Vec<Interpretation> {
    sort_canonical(&mut out, p.signature());
    debug_assert!(out.iter().all(|i| crate::logic::is_model(i, p)));
    out
}

/// Answer sets of `p` under `sem`.
pub fn answer_sets(p: &Program, sem: &SemanticsId, limits: Limits) -> Result<Vec<Interpretation>> {
    p.require_max_atoms(limits.max_atoms)?;
    match sem {
        SemanticsId::Rational => rational_impl(p),
        SemanticsId::Gl => gl_impl(p),
        SemanticsId::GlNlp => gl_nlp_impl(p),
        SemanticsId::Wj => wj_impl(p),
        SemanticsId::Flp => flp_impl(p),
        SemanticsId::Equilibrium => equilibrium_impl(p),
        SemanticsId::DiGlNlp => di_impl(p, &SemanticsId::GlNlp),
        SemanticsId::DiWj => di_impl(p, &SemanticsId::Wj),
        SemanticsId::ThreeValued => threevalued::answer_sets_impl(p),
        other => Err(Error::BaseMismatch(other.to_string())),
    }
}

/// World views of `p` under `sem` (RATIONAL, G91 or SE16(base)).
pub fn world_views(p: &Program, sem: &SemanticsId, limits: Limits) -> Result<Vec<WorldView>> {
    p.require_max_atoms(limits.max_atoms)?;
    match sem {
        SemanticsId::Rational => worldviews::rational_impl(p),
        SemanticsId::G91 => worldviews::g91_impl(p),
        SemanticsId::Se16(base) => worldviews::se16_impl(p, base),
        other => Err(Error::BaseMismatch(other.to_string())),
    }
}

/// Minimal well-supported models.
pub fn rational_answer_sets(p: &Program) -> Result<Vec<Interpretation>> {
    answer_sets(p, &SemanticsId::Rational, Limits::default())
}

fn rational_impl(p: &Program) -> Result<Vec<Interpretation>> {
    let mut models = program_models(p)?;
    models.sort_by_key(Interpretation::len);
    let mut found: Vec<Interpretation> = Vec::new();
    for m in models {
        if found.iter().any(|f| f.is_proper_subset(&m)) {
            continue;
        }
        if is_ws_disjunctive(p, &m) {
            found.push(m);
        }
    }
    debug_assert!(is_antichain(&found));
    Ok(finish(found, p))
}

/// Models whose fixpoint together with the false atoms entails every true
/// atom. Normal programs only.
pub fn wj_answer_sets(p: &Program) -> Result<Vec<Interpretation>> {
    answer_sets(p, &SemanticsId::Wj, Limits::default())
}

fn wj_impl(p: &Program) -> Result<Vec<Interpretation>> {
    p.require_epistemic_free()?;
    p.require_normal()?;
    let out = program_models(p)?
        .into_iter()
        .filter(|m| is_ws_normal(p, m))
        .collect();
    Ok(finish(out, p))
}

/// Least model of a program whose rules have atom (or `Bot`) heads and
/// bodies that are conjunctions of atoms. `None` if a constraint fires.
fn least_model(p: &Program) -> Option<Interpretation> {
    let mut m = Interpretation::new();
    loop {
        let mut changed = false;
        for r in p.rules() {
            if crate::logic::satisfies(&m, &r.body) {
                match &r.heads[0] {
                    Formula::Atom(a) => changed |= m.insert(a.clone()),
                    _ => return None,
                }
            }
        }
        if !changed {
            return Some(m);
        }
    }
}

/// `i` is the least model of its GL reduct. Simple normal programs only.
pub fn gl_nlp_answer_sets(p: &Program) -> Result<Vec<Interpretation>> {
    answer_sets(p, &SemanticsId::GlNlp, Limits::default())
}

fn gl_nlp_impl(p: &Program) -> Result<Vec<Interpretation>> {
    p.require_simple()?;
    p.require_normal()?;
    let mut out = Vec::new();
    for m in program_models(p)? {
        if least_model(&gl_reduct(p, &m)?).as_ref() == Some(&m) {
            out.push(m);
        }
    }
    Ok(finish(out, p))
}

/// `i` is a minimal model of its GL reduct. Simple programs only.
pub fn gl_answer_sets(p: &Program) -> Result<Vec<Interpretation>> {
    answer_sets(p, &SemanticsId::Gl, Limits::default())
}

fn gl_impl(p: &Program) -> Result<Vec<Interpretation>> {
    p.require_simple()?;
    let mut out = Vec::new();
    for m in program_models(p)? {
        let red = gl_reduct(p, &m)?;
        if is_minimal_model_of(&m, program_formulas(&red).iter()) {
            out.push(m);
        }
    }
    Ok(finish(out, p))
}

/// `i` is a minimal model of the rules whose body it satisfies.
pub fn flp_answer_sets(p: &Program) -> Result<Vec<Interpretation>> {
    answer_sets(p, &SemanticsId::Flp, Limits::default())
}

fn flp_impl(p: &Program) -> Result<Vec<Interpretation>> {
    let mut out = Vec::new();
    for m in program_models(p)? {
        let red = flp_reduct(p, &m)?;
        if is_minimal_model_of(&m, program_formulas(&red).iter()) {
            out.push(m);
        }
    }
    Ok(finish(out, p))
}

/// `i` is a minimal model of the Ferraris reduct of the program read as a
/// set of implications.
pub fn equilibrium_answer_sets(p: &Program) -> Result<Vec<Interpretation>> {
    answer_sets(p, &SemanticsId::Equilibrium, Limits::default())
}

fn equilibrium_impl(p: &Program) -> Result<Vec<Interpretation>> {
    let fs = program_formulas(p);
    let mut out = Vec::new();
    for m in program_models(p)? {
        let red: Vec<Formula> = fs.iter().map(|f| ferraris_reduct(f, &m)).collect();
        if is_minimal_model_of(&m, red.iter()) {
            out.push(m);
        }
    }
    Ok(finish(out, p))
}

/// DI semantics over a base of GL_NLP or WJ: minimal models `i` for which
/// some selection respecting variant heads makes `i` a base answer set of
/// the disjunctive reduct.
pub fn di_answer_sets(p: &Program, base: &SemanticsId) -> Result<Vec<Interpretation>> {
    let sem = match base {
        SemanticsId::GlNlp => SemanticsId::DiGlNlp,
        SemanticsId::Wj => SemanticsId::DiWj,
        other => return Err(Error::BaseMismatch(other.to_string())),
    };
    answer_sets(p, &sem, Limits::default())
}

fn di_impl(p: &Program, base: &SemanticsId) -> Result<Vec<Interpretation>> {
    p.require_epistemic_free()?;
    if *base == SemanticsId::GlNlp && !p.is_simple() {
        return Err(Error::BaseMismatch(base.to_string()));
    }
    let mut candidates = Vec::new();
    for m in program_models(p)? {
        let ok = enumerate_variant_selections(p, &m).any(|sel| {
            let Ok(red) = disjunctive_reduct(p, &m, &sel) else {
                return false;
            };
            match base {
                SemanticsId::GlNlp => gl_reduct(&red, &m)
                    .is_ok_and(|g| least_model(&g).as_ref() == Some(&m)),
                _ => is_ws_normal(&red, &m),
            }
        });
        if ok {
            candidates.push(m);
        }
    }
    Ok(finish(minimal_elements(&candidates), p))
}
