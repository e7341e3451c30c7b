//! Error type shared by every module of the crate.

use alloc::string::String;
use core::fmt;

pub type Result<T> = core::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq)]
pub enum Error {
    /// A point fell outside the interval the operation is defined on.
    OutOfDomain { what: &'static str, value: f64 },
    /// A grid contained an out-of-range point; `index` names the offender.
    GridPointOutOfDomain { index: usize, value: f64 },
    /// Basis order was zero or exceeded the configured ceiling.
    InvalidOrder { m: usize, max: usize },
    /// Not enough quadrature nodes to integrate the requested products exactly.
    InsufficientQuadrature { needed: usize, got: usize },
    /// Weight vector and basis evaluation disagree on the number of terms.
    DimensionMismatch { expected: usize, got: usize },
    /// A scalar or count parameter violated its documented range.
    InvalidArgument { name: &'static str, reason: &'static str },
    /// Expression source failed to parse; `offset` is a byte offset into the
    /// source and `expected` describes what the parser was looking for.
    Parse { offset: usize, expected: String },
    /// An identifier other than `eta`, `xi`, or a known function name.
    UnknownIdentifier { name: String },
    /// Runtime domain error while evaluating an expression (division by zero,
    /// `ln`/`sqrt` of a negative argument). `subtree` prints the offending node.
    EvalDomain { op: &'static str, subtree: String },
    /// The residual was requested at the singular point eta = 0.
    SingularPoint,
    /// No built-in problem with the given name.
    UnknownProblem { name: String, available: &'static str },
    /// A problem document violated the schema; `field` is the offending path.
    Schema { field: &'static str, reason: String },
    /// Loss or gradient became non-finite during training.
    Divergence { iteration: usize, last_loss: f64 },
    /// Summary statistics requested on a table with no exact values.
    NoExactValues,
}

impl fmt::Display for Error {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Error::OutOfDomain { what, value } => {
                write!(f, "{what} = {value} is outside the valid domain")
            }
            Error::GridPointOutOfDomain { index, value } => {
                write!(f, "grid point {index} = {value} is outside [0, 1]")
            }
            Error::InvalidOrder { m, max } => {
                write!(f, "basis order {m} invalid: must be in 1..={max}")
            }
            Error::InsufficientQuadrature { needed, got } => {
                write!(f, "need at least {needed} quadrature nodes, got {got}")
            }
            Error::DimensionMismatch { expected, got } => {
                write!(f, "dimension mismatch: expected {expected} terms, got {got}")
            }
            Error::InvalidArgument { name, reason } => {
                write!(f, "invalid argument {name}: {reason}")
            }
            Error::Parse { offset, expected } => {
                write!(f, "syntax error at offset {offset}: expected {expected}")
            }
            Error::UnknownIdentifier { name } => {
                write!(f, "unknown identifier `{name}` (variables are `eta` and `xi`)")
            }
            Error::EvalDomain { op, subtree } => {
                write!(f, "domain error: {op} in `{subtree}`")
            }
            Error::SingularPoint => {
                write!(f, "residual is undefined at the singular point eta = 0")
            }
            Error::UnknownProblem { name, available } => {
                write!(f, "unknown problem `{name}`; built-ins: {available}")
            }
            Error::Schema { field, reason } => {
                write!(f, "problem document: {field}: {reason}")
            }
            Error::Divergence { iteration, last_loss } => {
                write!(
                    f,
                    "training diverged at iteration {iteration} (last finite loss {last_loss:e})"
                )
            }
            Error::NoExactValues => {
                write!(f, "error summary requires at least one row with an exact value")
            }
        }
    }
}

impl core::error::Error for Error {}
