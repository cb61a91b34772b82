use crate::crossing::{FixTrace, PairClass};
use crate::geometry::GeneralPositionReport;
use crate::tverberg::Partition;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("expected {expected} points, got {found}")]
    WrongPointCount { expected: usize, found: usize },

    #[error("simplex vertices are affinely dependent")]
    DegenerateSimplex,

    #[error("point is not contained in the convex hull of the given set")]
    WitnessNotContained,

    #[error("segment and triangle meet degenerately")]
    DegenerateIncidence,

    #[error("input is not in general position ({} violating subsets)", .0.violations.len())]
    GeneralPositionViolated(GeneralPositionReport),

    #[error("perturbation did not reach general position after {attempts} attempts")]
    PerturbationFailed { attempts: usize },

    #[error("size out of range: {0}")]
    SizeOutOfRange(String),

    #[error("brute-force search over {points} points exceeds the limit of {limit}")]
    SizeGate { points: usize, limit: usize },

    #[error("unsupported dimension {0}: {1}")]
    UnsupportedDimension(usize, &'static str),

    #[error("odd number ({0}) of origin-containing complementary pairs")]
    ParityViolated(usize),

    #[error("fixing step budget of {budget} exhausted")]
    BudgetExceeded {
        budget: usize,
        partition: Box<Partition>,
        trace: FixTrace,
    },

    #[error("crossing property lost after inserting point {point}: parts {i} and {j} are {verdict:?}")]
    CrossingLost {
        point: usize,
        i: usize,
        j: usize,
        verdict: PairClass,
    },

    #[error("malformed linear system: {0}")]
    MalformedProblem(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("verification failed: {0}")]
    VerificationFailed(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("malformed document: {0}")]
    Document(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}

pub type Result<T> = std::result::Result<T, Error>;
