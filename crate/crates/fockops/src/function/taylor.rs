//! Truncated power series.

use alloc::vec::Vec;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::{
    poly_compose_affine, poly_derivative, poly_eval, poly_is_zero, poly_log_abs, AffineSymbol,
    EntireFn, ExpPolyFunction,
};
use crate::error::{FockError, Result};

/// Coefficients c_0..c_N of a degree-N truncation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "TaylorJson", into = "TaylorJson")]
pub struct TaylorFunction {
    coeffs: Vec<Complex64>,
}

impl TaylorFunction {
    pub fn new(coeffs: Vec<Complex64>) -> Self {
        let coeffs = if coeffs.is_empty() {
            alloc::vec![Complex64::new(0.0, 0.0)]
        } else {
            coeffs
        };
        TaylorFunction { coeffs }
    }

    pub fn monomial(k: usize) -> Self {
        let mut coeffs = alloc::vec![Complex64::new(0.0, 0.0); k + 1];
        coeffs[k] = Complex64::new(1.0, 0.0);
        TaylorFunction { coeffs }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::new(0.0, 0.0))
    }

    pub fn truncation_degree(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        poly_is_zero(&self.coeffs)
    }

    pub fn derivative(&self) -> Self {
        TaylorFunction { coeffs: poly_derivative(&self.coeffs) }
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..n {
            f = f.derivative();
        }
        f
    }

    /// c_k -> c_k / (k+1) at degree k+1, constant term zero. The caller
    /// keeps the truncation degree below the cap.
    pub fn antiderivative(&self) -> Self {
        let mut out = Vec::with_capacity(self.coeffs.len() + 1);
        out.push(Complex64::new(0.0, 0.0));
        for (k, c) in self.coeffs.iter().enumerate() {
            out.push(c / (k as f64 + 1.0));
        }
        TaylorFunction { coeffs: out }
    }

    pub fn compose_affine(&self, psi: &AffineSymbol) -> Self {
        TaylorFunction { coeffs: poly_compose_affine(&self.coeffs, psi.a(), psi.b()) }
    }

    /// Product of two truncations; the result degree is the sum, which
    /// must stay below `cap`.
    pub fn mul(&self, other: &Self, cap: usize) -> Result<Self> {
        let degree = self.truncation_degree() + other.truncation_degree();
        if degree > cap {
            return Err(FockError::TruncationOverflow { degree, cap });
        }
        Ok(TaylorFunction { coeffs: super::poly_mul(&self.coeffs, &other.coeffs) })
    }

    /// Product with an exp-poly factor, truncated at this function's
    /// degree (the shared truncation).
    pub fn mul_exppoly(&self, g: &ExpPolyFunction) -> Self {
        let degree = self.truncation_degree();
        let gt = g.taylor(degree);
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); degree + 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in gt.coeffs.iter().take(degree + 1 - i).enumerate() {
                out[i + j] += a * b;
            }
        }
        TaylorFunction { coeffs: out }
    }

    pub fn max_modulus(&self, r: f64) -> super::MaxModulus {
        super::max_modulus(self, r)
    }
}

impl EntireFn for TaylorFunction {
    fn eval(&self, z: Complex64) -> Complex64 {
        poly_eval(&self.coeffs, z)
    }

    fn log_abs(&self, z: Complex64) -> f64 {
        poly_log_abs(&self.coeffs, z)
    }
}

#[derive(Serialize, Deserialize)]
struct TaylorJson {
    #[serde(with = "crate::serde_complex::c64_vec")]
    coeffs: Vec<Complex64>,
    #[serde(default)]
    truncation_degree: Option<usize>,
}

impl TryFrom<TaylorJson> for TaylorFunction {
    type Error = FockError;

    fn try_from(j: TaylorJson) -> Result<Self> {
        if j.coeffs.is_empty() {
            return Err(FockError::InvalidInput(alloc::string::String::from(
                "empty coefficient list",
            )));
        }
        if let Some(d) = j.truncation_degree {
            if d + 1 != j.coeffs.len() {
                return Err(FockError::InvalidInput(alloc::format!(
                    "truncation_degree {d} does not match {} coefficients",
                    j.coeffs.len()
                )));
            }
        }
        Ok(TaylorFunction { coeffs: j.coeffs })
    }
}

impl From<TaylorFunction> for TaylorJson {
    fn from(f: TaylorFunction) -> Self {
        TaylorJson {
            truncation_degree: Some(f.truncation_degree()),
            coeffs: f.coeffs,
        }
    }
}
