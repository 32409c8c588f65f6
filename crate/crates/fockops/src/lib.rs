//! Numerical operator theory on Fock-type spaces.
//!
//! The crate classifies the differentiation operator `D f = f'` acting
//! between Fock-type spaces, and the weighted composition-differentiation
//! operator `D_{(u,psi,n)} f = u * (f^(n) ∘ psi)` acting on classical Fock
//! spaces, for boundedness, compactness, order boundedness, closed range
//! and surjectivity. Every symbolic verdict is backed by independent
//! numerics: quadrature norms, exact log-Gamma closed forms, finite-section
//! singular-value probes and a brute-force verification oracle.
//!
//! The crate is `no_std` (it allocates through `alloc` and takes float
//! primitives from `libm`), so all IO, CLI and file-format concerns live in
//! the companion `fockops-cli` crate.

#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

pub mod error;
pub mod function;
pub mod gamma;
pub mod linalg;
pub mod norms;
pub mod oracle;
pub mod quad;
pub mod section;
pub mod symbol;
pub mod verify;

mod quadform;
mod serde_complex;

pub use error::FockError;
pub use function::{AffineSymbol, EntireFn, ExpPolyFunction, FunctionRep, TaylorFunction};
pub use norms::{Family, FockTypeParams, NormResult, PNorm, QuadratureConfig};
pub use symbol::{ClassificationReport, OperatorSpec, Verdict};

/// Complex scalar used across the crate.
pub type C64 = num_complex::Complex64;
