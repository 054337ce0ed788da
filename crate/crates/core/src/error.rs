use crate::path::StepSet;

/// Error type shared by all modules of the crate.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum Error {
    #[error("truncation order mismatch: {0} vs {1}")]
    TruncationMismatch(usize, usize),

    #[error("division by the zero series")]
    DivisionByZeroSeries,

    #[error("numerator valuation {numerator} is below denominator valuation {denominator}")]
    Valuation { numerator: usize, denominator: usize },

    #[error("series square root requires constant term 1, got {0}")]
    SqrtConstantTerm(String),

    #[error("denominator has zero constant term")]
    ZeroConstantTerm,

    #[error("statistics are undefined for the empty path")]
    EmptyPath,

    #[error("path is not a valid Dyck path")]
    NotDyck,

    #[error("path has a horizontal step on the x-axis")]
    HorizontalOnAxis,

    #[error("order {order} exceeds the enumeration guard {guard} for {set}")]
    GuardExceeded { set: StepSet, order: usize, guard: usize },

    #[error("{count} inserted steps exceed the insertion guard {guard}")]
    InsertionGuard { count: usize, guard: usize },

    #[error("marker variable y must be nonzero")]
    ZeroY,

    #[error("invalid path string: {0}")]
    ParsePath(String),

    #[error("invalid coefficient list: {0}")]
    ParsePoly(String),

    #[error("no sign change of the polynomial on (0, {bound}]")]
    NoPositiveRoot { bound: String },

    #[error("probe order {probe} exceeds series truncation {trunc}")]
    ProbeBeyondTruncation { probe: usize, trunc: usize },

    #[error("{0} is not one of the asymptotic families S4, S5, S6")]
    NotAsymptoticFamily(StepSet),
}
