use thiserror::Error;

/// Failure modes shared by every module.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("pole order exceeded")]
    PoleOrderExceeded,
    #[error("nonzero evaluation point required")]
    ZeroCoordinate,
    #[error("singular matrix")]
    SingularMatrix,
    #[error("unsupported root system: {0}")]
    Unsupported(String),
    #[error("marked node required for type A")]
    MissingMarkedNode,
    #[error("point on discriminant")]
    Discriminant,
    #[error("non-generic kappa")]
    NonGenericKappa,
    #[error("no flat unit direction")]
    NoUnitDirection,
    #[error("prepotential data required")]
    DataRequired,
    #[error("degenerate point")]
    DegeneratePoint,
    #[error("retry budget exhausted")]
    RetryBudget,
    #[error("unexpected pole order at {0}")]
    UnexpectedPole(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;
