use thiserror::Error;

/// Every failure the engine can report.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    // group ingestion
    #[error("malformed multiplication table: {0}")]
    MalformedTable(String),
    #[error("table has no identity element")]
    NoIdentity,
    #[error("element `{0}` has no inverse")]
    NoInverse(String),
    #[error("multiplication is not associative: ({0}*{1})*{2} != {0}*({1}*{2})")]
    NotAssociative(String, String, String),
    #[error("unknown builtin group `{0}`")]
    UnknownName(String),
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(String),

    // exact linear algebra
    #[error("matrix is singular")]
    Singular,
    #[error("linear system has no solution")]
    NoSolution,
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),

    // calculus selection
    #[error("selection is not a union of conjugacy classes: {0}")]
    NotAUnionOfClasses(String),
    #[error("generator set is not closed under inversion: `{0}` lacks its inverse")]
    NotStarClosed(String),
    #[error("generator set is not closed under conjugation")]
    GeneratorSetNotAdClosed,
    #[error("element `{0}` is not a generator of this calculus")]
    GeneratorNotInCalculus(String),

    // exterior algebra
    #[error("degree {degree} exceeds the tensor budget ({size} > {budget})")]
    DegreeBudgetExceeded { degree: usize, size: u64, budget: u64 },
    #[error("no one-dimensional top level found up to degree {0}")]
    TopFormNotFound(usize),
    #[error("degree {0} has not been built")]
    DegreeNotBuilt(usize),
    #[error("form tower is incomplete: {0}")]
    TowerIncomplete(String),

    // metric and Hodge
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("volume form is not central")]
    NonCentralVolume,
    #[error("Hodge system at degree {0} is singular")]
    SingularHodgeSystem(usize),
    #[error("dim level {k} = {dk} but dim level {pk} = {dpk}")]
    DimensionAsymmetry { k: usize, dk: usize, pk: usize, dpk: usize },

    // de Rham
    #[error("expected a form of degree {expected}, got {got}")]
    WrongDegree { expected: usize, got: usize },
    #[error("Gram matrix at degree {degree} is not positive definite (leading minor {minor})")]
    GramNotPositiveDefinite { degree: usize, minor: usize },

    // knots
    #[error("malformed braid word: {0}")]
    MalformedWord(String),
}

pub type Result<T> = std::result::Result<T, Error>;
