use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    #[error("line is not good: rank-2 flat {witness} shifted along the line is not in the poset")]
    NotGoodLine { witness: String },

    #[error("system is not integrable at flat {flat} (hyperplane {hyperplane})")]
    NonIntegrable { flat: String, hyperplane: String },

    #[error("base point lies on projected hyperplane {0}")]
    BaseOnProjectedHyperplane(String),

    #[error("decone: {0}")]
    Decone(String),

    #[error("star conditions fail: {0}")]
    StarConditionsFail(String),

    #[error("parameter {0} is an integer")]
    ParameterIntegral(String),

    #[error("genericity assumption fails: {0}")]
    AssumptionFail(String),

    #[error("character is trivial")]
    TrivialCharacter,

    #[error("singular input matrix at position {0}")]
    SingularInput(usize),

    #[error("integrator step size underflow near y = {0}")]
    StepUnderflow(String),

    #[error("integrator could not meet tolerance: {0}")]
    ToleranceNotMet(String),

    #[error("loop construction failed: {0}")]
    Path(String),

    #[error("unknown {kind} {name:?}; known: {known}")]
    UnknownStrategy {
        kind: &'static str,
        name: String,
        known: String,
    },

    #[error("internal error: {0}")]
    Internal(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// True for failures of the numeric integration layer.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::StepUnderflow(_) | Error::ToleranceNotMet(_) | Error::Path(_)
        )
    }
}
