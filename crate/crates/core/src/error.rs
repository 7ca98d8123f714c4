use alloc::string::String;
use core::fmt;

pub type Result<T, E = Error> = core::result::Result<T, E>;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Error {
    /// Mosaic parameter below 4.
    InvalidQ(i64),
    /// Board length that cannot be used with the requested variant.
    InvalidLength { n: i64, reason: &'static str },
    /// Negative exponent passed to a monomial constructor.
    NegativeExponent { da: i64, db: i64 },
    /// Cut position outside `1..=n-1`.
    PositionOutOfRange { position: usize, n: usize },
    /// Operation only defined on some board variants.
    UnsupportedBoard(&'static str),
    /// Sequence length outside the supported range.
    InvalidRange(String),
    /// The board has more cells than the enumeration limit allows.
    LimitExceeded { cells: usize, limit: usize },
    /// The frontier accelerator cannot handle this cell ordering.
    BandwidthTooLarge { bandwidth: usize },
    /// Two routes that must agree produced different results.
    InvariantViolation(String),
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::InvalidQ(q) => write!(f, "invalid mosaic parameter q = {q}, need q >= 4"),
            Error::InvalidLength { n, reason } => write!(f, "invalid board length n = {n}: {reason}"),
            Error::NegativeExponent { da, db } => {
                write!(f, "negative exponent in monomial a^{da}*b^{db}")
            }
            Error::PositionOutOfRange { position, n } => {
                write!(f, "cut position {position} out of range 1..={} for n = {n}", n.saturating_sub(1))
            }
            Error::UnsupportedBoard(what) => write!(f, "unsupported board: {what}"),
            Error::InvalidRange(msg) => write!(f, "invalid range: {msg}"),
            Error::LimitExceeded { cells, limit } => write!(
                f,
                "board has {cells} cells, above the enumeration limit of {limit} cells"
            ),
            Error::BandwidthTooLarge { bandwidth } => {
                write!(f, "frontier bandwidth {bandwidth} exceeds 127")
            }
            Error::InvariantViolation(msg) => write!(f, "invariant violation: {msg}"),
        }
    }
}

impl core::error::Error for Error {}
