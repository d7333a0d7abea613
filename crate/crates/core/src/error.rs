use thiserror::Error;

/// Errors raised by the toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid box: need 1 <= d < n, got d={d}, n={n}")]
    InvalidBox { d: usize, n: usize },

    #[error("partition {partition} does not fit in the {d}x{c} box")]
    OutsideBox {
        partition: String,
        d: usize,
        c: usize,
    },

    #[error("not a partition: {0}")]
    NotAPartition(String),

    #[error("index tuple {tuple} is not in I_{{{d},{n}}}")]
    NotAnIndexTuple { tuple: String, d: usize, n: usize },

    #[error("Pieri degree k={k} outside 1..={d}")]
    PieriDegree { k: usize, d: usize },

    #[error("elements live in different boxes")]
    BoxMismatch,

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error(
        "rounding residual {residual:e} exceeds threshold {threshold:e}; retry with extended precision"
    )]
    PrecisionFailure { residual: f64, threshold: f64 },

    #[error("point is not in V_{{{d},{n}}} (membership residual {residual:e})")]
    NotInVariety { d: usize, n: usize, residual: f64 },

    #[error("matrix is not real (imaginary part {imag:e})")]
    NotReal { imag: f64 },

    #[error("vanishing minor {name} = {value:e}; point is outside the open stratum")]
    SingularMinor { name: String, value: f64 },

    #[error("input too large: {0}")]
    TooLarge(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
