//! The exp-polynomial family P(z) * exp(a0 + a1 z + a2 z^2).
//!
//! Boundedness of the operators studied here forces weights into exactly
//! this family, which is closed under differentiation, affine composition
//! and products, and has growth order at most 2.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // resolves float math when the graph omits std
use num_traits::Float;
use serde::{Deserialize, Serialize};

use super::{
    exp_series, numeric_growth_order, poly_compose_affine, poly_derivative, poly_eval,
    poly_is_zero, poly_log_abs, poly_mul, poly_trim, AffineSymbol, EntireFn, GrowthOrder,
    TaylorFunction,
};
use crate::error::FockError;

/// Exponent beyond which `eval` switches to the clamped overflow path;
/// `log_abs` stays exact in all regimes.
const EXP_OVERFLOW: f64 = 700.0;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ExpPolyJson", into = "ExpPolyJson")]
pub struct ExpPolyFunction {
    /// Coefficients of P, ascending degree, trailing zeros trimmed.
    poly: Vec<Complex64>,
    /// (a0, a1, a2) in the multiplier exp(a0 + a1 z + a2 z^2).
    expo: [Complex64; 3],
}

impl ExpPolyFunction {
    pub fn new(poly: Vec<Complex64>, expo: [Complex64; 3]) -> Self {
        ExpPolyFunction { poly: poly_trim(poly), expo }
    }

    pub fn polynomial(coeffs: Vec<Complex64>) -> Self {
        Self::new(coeffs, [Complex64::new(0.0, 0.0); 3])
    }

    pub fn constant(c: Complex64) -> Self {
        Self::polynomial(alloc::vec![c])
    }

    pub fn one() -> Self {
        Self::constant(Complex64::new(1.0, 0.0))
    }

    /// exp(a0 + a1 z + a2 z^2) with unit polynomial part.
    pub fn exp_quadratic(a0: Complex64, a1: Complex64, a2: Complex64) -> Self {
        Self::new(alloc::vec![Complex64::new(1.0, 0.0)], [a0, a1, a2])
    }

    /// Reproducing kernel K_w(z) = exp(conj(w) z).
    pub fn kernel(w: Complex64) -> Self {
        Self::exp_quadratic(Complex64::new(0.0, 0.0), w.conj(), Complex64::new(0.0, 0.0))
    }

    /// Normalized kernel k_w(z) = exp(conj(w) z - |w|^2 / 2).
    pub fn normalized_kernel(w: Complex64) -> Self {
        Self::exp_quadratic(
            Complex64::new(-0.5 * w.norm_sqr(), 0.0),
            w.conj(),
            Complex64::new(0.0, 0.0),
        )
    }

    pub fn poly(&self) -> &[Complex64] {
        &self.poly
    }

    pub fn expo(&self) -> [Complex64; 3] {
        self.expo
    }

    pub fn poly_degree(&self) -> usize {
        self.poly.len() - 1
    }

    pub fn is_zero(&self) -> bool {
        poly_is_zero(&self.poly)
    }

    /// True when P is a (nonzero) constant, i.e. the function is a pure
    /// exponential of a quadratic.
    pub fn has_constant_poly(&self) -> bool {
        self.poly.len() == 1
    }

    pub fn scale(&self, c: Complex64) -> Self {
        Self::new(self.poly.iter().map(|p| p * c).collect(), self.expo)
    }

    /// Exact derivative (P' + P Q') e^Q with Q' = a1 + 2 a2 z.
    pub fn derivative(&self) -> Self {
        let dp = poly_derivative(&self.poly);
        let qp = poly_trim(alloc::vec![self.expo[1], 2.0 * self.expo[2]]);
        let mut out = poly_mul(&self.poly, &qp);
        if out.len() < dp.len() {
            out.resize(dp.len(), Complex64::new(0.0, 0.0));
        }
        for (o, d) in out.iter_mut().zip(dp.iter()) {
            *o += d;
        }
        Self::new(out, self.expo)
    }

    pub fn nth_derivative(&self, n: usize) -> Self {
        let mut f = self.clone();
        for _ in 0..n {
            f = f.derivative();
        }
        f
    }

    /// Exact composition with psi(z) = a z + b.
    pub fn compose_affine(&self, psi: &AffineSymbol) -> Self {
        let (a, b) = (psi.a(), psi.b());
        let poly = poly_compose_affine(&self.poly, a, b);
        let [a0, a1, a2] = self.expo;
        let expo = [
            a0 + a1 * b + a2 * b * b,
            a1 * a + 2.0 * a2 * a * b,
            a2 * a * a,
        ];
        Self::new(poly, expo)
    }

    /// Exact product: polynomial convolution, exponents add.
    pub fn mul(&self, other: &Self) -> Self {
        Self::new(
            poly_mul(&self.poly, &other.poly),
            [
                self.expo[0] + other.expo[0],
                self.expo[1] + other.expo[1],
                self.expo[2] + other.expo[2],
            ],
        )
    }

    /// psi(z)^n as an exp-poly factor helper: (a z + b)^n.
    pub fn affine_power(psi: &AffineSymbol, n: usize) -> Self {
        let mut poly = alloc::vec![Complex64::new(1.0, 0.0)];
        let base = [psi.b(), psi.a()];
        for _ in 0..n {
            poly = poly_mul(&poly, &base);
        }
        Self::polynomial(poly)
    }

    /// Truncate to a Taylor representation of the given degree.
    pub fn taylor(&self, degree: usize) -> TaylorFunction {
        let es = exp_series(&self.expo, degree);
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); degree + 1];
        for (i, p) in self.poly.iter().enumerate() {
            if i > degree {
                break;
            }
            for (j, e) in es.iter().take(degree + 1 - i).enumerate() {
                out[i + j] += p * e;
            }
        }
        TaylorFunction::new(out)
    }

    /// Geometric estimate of the truncation error of `taylor(degree)` on
    /// |z| <= r: the decay ratio of the last magnitudes extrapolated as a
    /// geometric series. Infinite when the terms are still growing.
    pub fn taylor_tail_estimate(&self, degree: usize, r: f64) -> f64 {
        let probe = self.taylor(degree + 5);
        let coeffs = probe.coeffs();
        let terms: Vec<f64> = coeffs
            .iter()
            .enumerate()
            .skip(degree)
            .map(|(k, c)| c.norm() * r.powi(k as i32))
            .collect();
        let mut ratio = 0.0f64;
        for w in terms.windows(2) {
            if w[0] > 0.0 {
                ratio = ratio.max(w[1] / w[0]);
            }
        }
        let first_dropped = terms.get(1).copied().unwrap_or(0.0);
        if ratio >= 1.0 {
            f64::INFINITY
        } else if first_dropped == 0.0 {
            0.0
        } else {
            first_dropped / (1.0 - ratio)
        }
    }

    /// Max modulus over |z| = r with its log.
    pub fn max_modulus(&self, r: f64) -> super::MaxModulus {
        super::max_modulus(self, r)
    }

    /// Exact order of growth: 2 if a2 != 0, 1 if a2 = 0 != a1, else 0.
    pub fn symbolic_order(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let zero = Complex64::new(0.0, 0.0);
        if self.expo[2] != zero {
            2.0
        } else if self.expo[1] != zero {
            1.0
        } else {
            0.0
        }
    }

    pub fn order_of_growth(&self) -> GrowthOrder {
        let symbolic = self.symbolic_order();
        if symbolic == 0.0 {
            // Polynomial: the doubly logarithmic fit is degenerate.
            return GrowthOrder { numeric: None, symbolic: Some(0.0), degenerate: true };
        }
        GrowthOrder {
            numeric: numeric_growth_order(self),
            symbolic: Some(symbolic),
            degenerate: false,
        }
    }
}

impl EntireFn for ExpPolyFunction {
    fn eval(&self, z: Complex64) -> Complex64 {
        let p = poly_eval(&self.poly, z);
        let q = self.expo[0] + z * (self.expo[1] + z * self.expo[2]);
        if q.re.abs() > EXP_OVERFLOW {
            // Clamped path: deliver the correct phase with an infinite (or
            // zero) magnitude; log_abs carries the exact log-modulus.
            let phase = Complex64::new(0.0, q.im).exp();
            let mag = if q.re > 0.0 { f64::INFINITY } else { 0.0 };
            return p * phase * mag;
        }
        p * q.exp()
    }

    fn log_abs(&self, z: Complex64) -> f64 {
        let q = self.expo[0] + z * (self.expo[1] + z * self.expo[2]);
        poly_log_abs(&self.poly, z) + q.re
    }
}

#[derive(Serialize, Deserialize)]
struct ExpPolyJson {
    #[serde(with = "crate::serde_complex::c64_vec")]
    poly: Vec<Complex64>,
    #[serde(with = "crate::serde_complex::c64_array3")]
    expo: [Complex64; 3],
}

impl TryFrom<ExpPolyJson> for ExpPolyFunction {
    type Error = FockError;

    fn try_from(j: ExpPolyJson) -> Result<Self, FockError> {
        if j.poly.is_empty() {
            return Err(FockError::InvalidInput(alloc::string::String::from(
                "empty polynomial part",
            )));
        }
        Ok(ExpPolyFunction::new(j.poly, j.expo))
    }
}

impl From<ExpPolyFunction> for ExpPolyJson {
    fn from(f: ExpPolyFunction) -> Self {
        ExpPolyJson { poly: f.poly, expo: f.expo }
    }
}
