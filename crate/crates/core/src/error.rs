use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// A syntax error with a 1-based source position.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{line}:{column}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("subprogram `{name}` is declared with parameters ({first}) and ({second})")]
    DeclarationConflict {
        name: String,
        first: String,
        second: String,
    },

    #[error("unknown subprogram `{name}`; known subprograms: {known}")]
    UnknownSubprogram { name: String, known: String },

    #[error("subprogram `{name}` takes {expected} parameter(s), {found} given")]
    ArityMismatch {
        name: String,
        expected: usize,
        found: usize,
    },

    #[error("unbound constant `{0}`")]
    UnboundConstant(String),

    #[error("empty range {lo}..{hi} (add `allow empty` to accept it)")]
    EmptyRange { lo: i64, hi: i64 },

    #[error("placeholder `{placeholder}` of `{subprogram}` is used in arithmetic but is given the non-integer value `{value}`")]
    PlaceholderSort {
        subprogram: String,
        placeholder: String,
        value: String,
    },

    #[error("term `{0}` is not ground")]
    NotGround(String),

    #[error("term `{0}` is not precomputed")]
    NotPrecomputed(String),

    #[error("integer overflow while evaluating `{0}`")]
    Overflow(String),

    #[error("`{0}` does not denote an integer")]
    NotInteger(String),

    #[error("malformed rule `{rule}`: {reason}")]
    MalformedRule { rule: String, reason: String },

    #[error("placeholder `{0}` has no value")]
    UnboundPlaceholder(String),

    #[error("invalid pattern `{pattern}`: {reason}")]
    InvalidPattern { pattern: String, reason: String },

    #[error("head atom `{atom}` has argument `{term}` that mixes rule variables and placeholders")]
    UnsupportedPattern { atom: String, term: String },

    #[error("module {module} makes {predicate} intensional on {pattern}, which the global statement does not cover")]
    Requirement {
        predicate: String,
        module: usize,
        pattern: String,
    },

    #[error("unsafe rule `{rule}`: variable `{var}` does not occur in a positive body atom")]
    Unsafe { rule: String, var: String },

    #[error("{engine} engine: {size} atoms exceed the cap of {cap}; use another engine or raise the cap")]
    Capacity {
        engine: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("invalid domain {lo}..{hi}")]
    InvalidDomain { lo: i64, hi: i64 },

    #[error("atom `{0}` lies outside the domain")]
    OutsideDomain(String),

    #[error("here-set atom `{0}` is not true in the there-interpretation")]
    HereNotSubset(String),

    #[error("atom `{0}` is not intensional")]
    NotIntensional(String),

    #[error("{engine} engine is not applicable: {reason}")]
    EngineNotApplicable { engine: &'static str, reason: String },
}

impl Error {
    pub fn is_capacity(&self) -> bool {
        matches!(self, Error::Capacity { .. })
    }
}
