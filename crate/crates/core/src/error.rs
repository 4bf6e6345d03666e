use thiserror::Error;

/// Errors surfaced by the library.
///
/// Anything not listed here (zero divisors inside reduced arithmetic, index
/// arithmetic on validated matrices) is a programming error and panics.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square: {rows} rows but a row of length {cols}")]
    Dimension { rows: usize, cols: usize },

    #[error("denominator has a zero constant term: series expansion at the origin is undefined")]
    PoleAtOrigin,

    #[error("zero denominator")]
    ZeroDenominator,

    #[error("loop length {0} is odd; loop counts on bipartite graphs are indexed by even lengths")]
    OddLoopLength(usize),

    #[error("graph {0} is symbolic (infinite); build a finite truncation instead")]
    SymbolicGraph(String),

    #[error("graph {0} is finite; truncation applies only to AInf, DInf and AZZ")]
    FiniteGraph(String),

    #[error("invalid graph parameter: {0}")]
    InvalidParameter(String),

    #[error("unknown graph name: {0}")]
    UnknownGraph(String),

    #[error("seed matrix has the wrong shape: {0}")]
    SeedShape(String),

    #[error("target series is not supported by roots of unity within the period bound {bound}")]
    PeriodNotFound { bound: u32 },

    #[error("period {period} does not fit the target: {reason}")]
    PeriodMismatch { period: u32, reason: String },

    #[error("internal consistency violation: {0}")]
    Internal(String),
}
