use thiserror::Error;

use crate::syntax::RuleId;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {line}:{column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("nested epistemic negation at {line}:{column}")]
    NestedEpistemic { line: usize, column: usize },
    #[error("program has variables but no constants to ground them with")]
    NoConstants,
    #[error("operation requires an epistemic-free program")]
    EpistemicProgram,
    #[error("rule {0} is not simple (atom heads, literal bodies)")]
    NotSimple(RuleId),
    #[error("rule {0} does not have a single head")]
    NotNormal(RuleId),
    #[error("rule {0} has a non-atomic head")]
    NotAtomicHead(RuleId),
    #[error("rule {0} is outside the epistemic specification fragment")]
    NotSpecification(RuleId),
    #[error("rule {0} is outside the supported fragment")]
    Fragment(RuleId),
    #[error("interpretation is not a model of the program")]
    NotModel,
    #[error("collection is not an epistemic model of the program")]
    NotEpistemicModel,
    #[error("phi contains a formula that is not an epistemic negation of the program")]
    PhiNotSubset,
    #[error("head selection does not match rule {0}")]
    SelectionMismatch(RuleId),
    #[error("a constraint head was derived")]
    BotDerived,
    #[error("base semantics {0} cannot be used here")]
    BaseMismatch(String),
    #[error("rule is not a constraint")]
    NotConstraint,
    #[error("signature has {count} atoms, above the limit of {max}")]
    TooManyAtoms { count: usize, max: usize },
    #[error("unknown semantics identifier {0:?}")]
    UnknownSemantics(String),
}
