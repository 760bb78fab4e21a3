use thiserror::Error;

/// Errors produced while building or simulating a circuit.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    #[error("matrix is not positive definite (pivot {index} = {pivot:e})")]
    NotPositiveDefinite { index: usize, pivot: f64 },

    #[error("{what} = {got} exceeds the configured limit of {limit}")]
    CostGuard {
        what: &'static str,
        got: usize,
        limit: usize,
    },

    #[error("{what} {value} out of range (must be < {bound})")]
    OutOfRange {
        what: &'static str,
        value: usize,
        bound: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("negative occupation {0} in ket")]
    NegativeOccupation(i64),

    #[error("packet table is full ({0} packets)")]
    TableFull(usize),

    #[error("emitter already applied to this circuit")]
    EmitterAlreadyApplied,

    #[error("a delay requires the emitter to be applied first")]
    EmitterMissing,

    #[error("no room to delay: circuit has {0} period(s)")]
    NoRoomToDelay(usize),

    #[error("matrix is not lower-triangular")]
    NotLowerTriangular,

    #[error(
        "orthonormalization row-norm error {error:e} exceeds bound {bound:e}; \
         try declaring a different leading wavepacket"
    )]
    RowNormExceeded { error: f64, bound: f64 },

    #[error("circuit is sealed: every channel already has a detector")]
    Sealed,

    #[error("channel {0} already has a detector")]
    DuplicateDetector(usize),

    #[error("device input already sent to the circuit")]
    AlreadySent,

    #[error("device input has not been sent to the circuit")]
    NotSent,

    #[error("conditioning on an event of zero probability")]
    ZeroProbability,

    #[error("scenario error: {0}")]
    Scenario(String),
}

pub type Result<T> = std::result::Result<T, Error>;
