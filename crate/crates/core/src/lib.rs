//! Answer-set and world-view engine for disjunctive and epistemic logic
//! programs with arbitrary propositional formulas in rule heads and bodies.
//!
//! The central notion is *well-supportedness*: an interpretation is accepted
//! when every true atom can be derived, through a strict partial order, from
//! rule heads whose bodies are already entailed. Rational answer sets are the
//! minimal well-supported models; rational world views extend this to
//! programs with epistemic negation.
//!
//! ```
//! use rasp_core::{parse_program, semantics::rational_answer_sets};
//!
//! let p = parse_program("a ; b.  b :- a.").unwrap();
//! let sets = rational_answer_sets(&p).unwrap();
//! assert_eq!(sets.len(), 1);
//! assert_eq!(sets[0].to_string(), "{b}");
//! ```

pub mod error;
pub mod logic;
pub mod properties;
pub mod reducts;
pub mod semantics;
pub mod syntax;
pub mod wellsupport;

#[cfg(feature = "devtools")]
pub mod devtools;

pub use error::{Error, Result};
pub use logic::{EpistemicModel, Interpretation, Theory};
pub use syntax::{parse_program, Atom, Formula, Program, Rule, RuleId, Term};

/// Default cap on signature size for enumeration-based operations.
pub const DEFAULT_MAX_ATOMS: usize = 20;
