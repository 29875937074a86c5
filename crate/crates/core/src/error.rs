use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    // graph6
    #[error("malformed graph6 header")]
    MalformedHeader,
    #[error("invalid graph6 byte 0x{0:02x} (must be in 63..=126)")]
    InvalidByte(u8),
    #[error("graph6 body length mismatch: expected {expected} bytes, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("nonzero padding bits in graph6 record")]
    NonzeroPadding,

    // construction
    #[error("vertex count {0} exceeds the supported maximum of 10000")]
    GraphTooLarge(u64),
    #[error("invalid part count {w} for {n} vertices")]
    InvalidPartCount { n: usize, w: usize },
    #[error("cycle requires at least 3 vertices, got {0}")]
    CycleTooSmall(usize),
    #[error("no {d}-regular graph on {n} vertices exists")]
    InfeasibleDegree { n: usize, d: usize },
    #[error("regular-graph sampler exhausted {0} retries; parameters too dense")]
    RetryBudgetExhausted(usize),
    #[error("edge probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("labeled enumeration supports n <= 7, got {0}")]
    TooLarge(usize),

    // spectral / engine
    #[error("Jacobi eigensolver failed to converge within the sweep cap")]
    ConvergenceFailure,
    #[error("vector length mismatch: {0} vs {1}")]
    VectorLengthMismatch(usize, usize),
    #[error("parameter r must exceed 1, got {0}")]
    InvalidR(f64),
    #[error("vector has negative entries (first at index {0})")]
    NegativeEntries(usize),
    #[error("quadratic form returned {value}, below -{tolerance}: omega inconsistent with the graph")]
    TheoremViolation { value: f64, tolerance: f64 },
    #[error("mu2 = {0} is negative; the x_plus/x_minus construction is undefined")]
    NegativeMu2(f64),
    #[error("graph is not regular")]
    NotRegular,
    #[error("graph is not connected")]
    NotConnected,
    #[error("graph has n <= omega vertices (complete graph case is excluded)")]
    TooSmall,
    #[error("exact chromatic solver supports n <= 64, got {0}")]
    ChromaticTooLarge(usize),

    // scan / cli
    #[error("scan source unavailable: {0}")]
    SourceUnavailable(String),
    #[error("parse error at line {line}: {source}")]
    ParseError {
        line: usize,
        #[source]
        source: Box<Error>,
    },
    #[error("scan produced no rows")]
    EmptyScan,
    #[error("output sink failure: {0}")]
    SinkFailure(#[from] std::io::Error),
    #[error("unrecognized graph source '{0}'")]
    BadSource(String),
}
