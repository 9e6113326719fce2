use crate::scalar::ScalarError;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error(transparent)]
    Scalar(#[from] ScalarError),
    #[error("states belong to different algebras")]
    MismatchedAlgebras,
    #[error("operation requires vacuum-module states, got a Fock tag")]
    FockTagged,
    #[error("operation requires a free-field algebra")]
    NotFreeField,
    #[error("generator name collision: `{0}`")]
    NameCollision(String),
    #[error("unknown name `{0}`")]
    UnknownName(String),
    #[error("invalid algebra data: {0}")]
    InvalidAlgebra(String),
    #[error("critical level: Sugawara construction undefined")]
    CriticalLevel,
    #[error("not an eigenvector: {0}")]
    NotEigenvector(String),
    #[error("screenings compose into new modules only; input already carries a Fock tag")]
    AlreadyTagged,
    #[error("weight {requested} exceeds the configured bound {bound}")]
    WeightCapExceeded { requested: String, bound: String },
    #[error("limit is ill-defined: coefficient of {term} has a pole at s = 0")]
    LimitPole { term: String },
    #[error("configuration error: {0}")]
    Config(String),
}
