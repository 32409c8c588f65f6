//! Affine composition symbols psi(z) = a z + b.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};

/// psi(z) = a z + b; `is_constant` marks psi == b (equivalently a = 0).
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "AffineJson", into = "AffineJson")]
pub struct AffineSymbol {
    a: Complex64,
    b: Complex64,
    is_constant: bool,
}

impl AffineSymbol {
    pub fn new(a: Complex64, b: Complex64) -> Self {
        AffineSymbol { a, b, is_constant: a == Complex64::new(0.0, 0.0) }
    }

    pub fn constant(b: Complex64) -> Self {
        AffineSymbol { a: Complex64::new(0.0, 0.0), b, is_constant: true }
    }

    pub fn identity() -> Self {
        Self::new(Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0))
    }

    pub fn a(&self) -> Complex64 {
        self.a
    }

    pub fn b(&self) -> Complex64 {
        self.b
    }

    pub fn is_constant(&self) -> bool {
        self.is_constant
    }

    pub fn apply(&self, z: Complex64) -> Complex64 {
        self.a * z + self.b
    }

    /// psi^{-1}(w) = (w - b) / a; fails for constant symbols.
    pub fn inverse(&self) -> Result<AffineSymbol> {
        if self.is_constant {
            return Err(FockError::ConstantSymbol);
        }
        let ai = self.a.finv();
        Ok(AffineSymbol::new(ai, -self.b * ai))
    }
}

#[derive(Serialize, Deserialize)]
struct AffineJson {
    #[serde(with = "crate::serde_complex::c64")]
    a: Complex64,
    #[serde(with = "crate::serde_complex::c64")]
    b: Complex64,
    #[serde(default)]
    is_constant: Option<bool>,
}

impl TryFrom<AffineJson> for AffineSymbol {
    type Error = FockError;

    fn try_from(j: AffineJson) -> Result<Self> {
        let derived = j.a == Complex64::new(0.0, 0.0);
        if let Some(flag) = j.is_constant {
            if flag != derived {
                return Err(FockError::InvalidInput(alloc::format!(
                    "is_constant = {flag} contradicts a = {} + {}i",
                    j.a.re, j.a.im
                )));
            }
        }
        Ok(AffineSymbol { a: j.a, b: j.b, is_constant: derived })
    }
}

impl From<AffineSymbol> for AffineJson {
    fn from(s: AffineSymbol) -> Self {
        AffineJson { a: s.a, b: s.b, is_constant: Some(s.is_constant) }
    }
}
