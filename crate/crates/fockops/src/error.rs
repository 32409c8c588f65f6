//! Error type shared by the numeric modules.

use alloc::string::String;
use core::fmt;

use num_complex::Complex64;

/// Errors reported by the function, norm, symbol and finite-section modules.
#[derive(Debug, Clone, PartialEq)]
pub enum FockError {
    /// The integral defining a norm (or an `L^q` test) diverges: the
    /// integrand grows at least as fast as the weight decays.
    Divergent { what: String },
    /// A Taylor product or expansion would exceed the configured
    /// truncation cap.
    TruncationOverflow { degree: usize, cap: usize },
    /// `solve_preimage` refused because the weight has a zero inside the
    /// evaluation disk.
    ZeroInDisk { location: Complex64 },
    /// `solve_preimage` refused because the composition symbol is constant
    /// and cannot be inverted.
    ConstantSymbol,
    /// The symbolic finiteness decision and the numeric cross-check
    /// disagree; carries a short description of both sides.
    SymbolicNumericMismatch { detail: String },
    /// A finite-section column tail did not fall below the requested
    /// fraction of the column norm within the buffer cap.
    IncreaseBuffer { column: usize, tail_fraction: f64 },
    /// Kernel-form consistency check failed for a symbol with |a| = 1;
    /// the operator cannot actually be bounded.
    KernelFormMismatch { detail: String },
    /// A test function handed to the sampling probe violates the
    /// vanishing-jet precondition.
    SamplingPrecondition { index: usize },
    /// Catch-all for invalid arguments (bad exponents, empty data, ...).
    InvalidInput(String),
}

impl fmt::Display for FockError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            FockError::Divergent { what } => write!(f, "divergent integral: {what}"),
            FockError::TruncationOverflow { degree, cap } => {
                write!(f, "truncation degree {degree} exceeds cap {cap}")
            }
            FockError::ZeroInDisk { location } => write!(
                f,
                "weight vanishes at {} + {}i inside the evaluation disk",
                location.re, location.im
            ),
            FockError::ConstantSymbol => write!(f, "composition symbol is constant"),
            FockError::SymbolicNumericMismatch { detail } => {
                write!(f, "symbolic/numeric disagreement: {detail}")
            }
            FockError::IncreaseBuffer { column, tail_fraction } => write!(
                f,
                "column {column} tail fraction {tail_fraction:.3e} above 1e-8; increase buffer"
            ),
            FockError::KernelFormMismatch { detail } => {
                write!(f, "kernel-form check failed: {detail}")
            }
            FockError::SamplingPrecondition { index } => {
                write!(f, "test function {index} has a non-vanishing jet at 0")
            }
            FockError::InvalidInput(msg) => write!(f, "invalid input: {msg}"),
        }
    }
}

impl core::error::Error for FockError {}

pub type Result<T> = core::result::Result<T, FockError>;
