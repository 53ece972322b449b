use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("unknown wavelet `{0}` (supported: haar, db2..db10, sym2..sym8)")]
    UnknownWavelet(String),

    #[error("filter length must be even and at least 2, got {0}")]
    FilterLength(usize),

    #[error("malformed filter table at line {line}: {msg}")]
    FilterTable { line: usize, msg: String },

    #[error("signal length must be even and at least 2, got {0}")]
    SignalLength(usize),

    #[error("length mismatch: {what} ({left} vs {right})")]
    LengthMismatch {
        what: &'static str,
        left: usize,
        right: usize,
    },

    #[error("image dimensions must be even, got {rows}x{cols}")]
    OddDimension { rows: usize, cols: usize },

    #[error("{dim} = {size} is not divisible by 2^{levels}")]
    NotDivisible {
        dim: &'static str,
        size: usize,
        levels: usize,
    },

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("invalid structure: {0}")]
    Structure(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("grid too small: {0}")]
    GridTooSmall(String),

    #[error("scale parameter must be nonzero")]
    ZeroScale,

    #[error("grid mismatch: {0}")]
    GridMismatch(String),

    #[error("grid size {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("malformed header at byte {offset}: {msg}")]
    MalformedHeader { offset: usize, msg: String },

    #[error("truncated data at byte {offset}: expected {expected} more bytes")]
    TruncatedData { offset: usize, expected: usize },

    #[error("unsupported maxval {maxval} at byte {offset} (only 1..=255)")]
    UnsupportedMaxval { offset: usize, maxval: u32 },

    #[error("unsupported format {magic:?} at byte {offset}")]
    UnsupportedFormat { offset: usize, magic: String },
}

impl Error {
    /// True for errors raised while decoding bytes (as opposed to domain or
    /// shape validation failures).
    pub fn is_parse_error(&self) -> bool {
        matches!(
            self,
            Error::MalformedHeader { .. }
                | Error::TruncatedData { .. }
                | Error::UnsupportedMaxval { .. }
                | Error::UnsupportedFormat { .. }
                | Error::FilterTable { .. }
        )
    }
}
