//! Exact and truncated representations of entire functions.
//!
//! Two carriers cover everything the operator theory consumes:
//!
//! * [`ExpPolyFunction`] - `P(z) * exp(a0 + a1 z + a2 z^2)`, closed under
//!   differentiation, affine composition and products. Weights, kernels
//!   and symbols all live here.
//! * [`TaylorFunction`] - a truncated power series for generic entire
//!   functions (test inputs, antiderivatives, preimages).

mod affine;
mod exppoly;
mod preimage;
mod taylor;

pub use affine::AffineSymbol;
pub use exppoly::ExpPolyFunction;
pub use preimage::{solve_preimage, PreimageResult};
pub use taylor::TaylorFunction;

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // resolves float math when the graph omits std
use num_traits::Float;
use serde::{Deserialize, Serialize};

use crate::error::{FockError, Result};
use crate::quad::circle_log_max;

/// Default cap on Taylor truncation degrees.
pub const DEFAULT_TAYLOR_CAP: usize = 256;

/// Pointwise access shared by every function representation.
pub trait EntireFn {
    fn eval(&self, z: Complex64) -> Complex64;

    /// ln|f(z)|. Stays finite (or -inf at zeros) even where `eval`
    /// overflows; quadrature and sup-norms go through this.
    fn log_abs(&self, z: Complex64) -> f64;
}

/// Either representation, for operations that accept both.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum FunctionRep {
    ExpPoly(ExpPolyFunction),
    Taylor(TaylorFunction),
}

impl From<ExpPolyFunction> for FunctionRep {
    fn from(f: ExpPolyFunction) -> Self {
        FunctionRep::ExpPoly(f)
    }
}

impl From<TaylorFunction> for FunctionRep {
    fn from(f: TaylorFunction) -> Self {
        FunctionRep::Taylor(f)
    }
}

impl EntireFn for FunctionRep {
    fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            FunctionRep::ExpPoly(f) => f.eval(z),
            FunctionRep::Taylor(f) => f.eval(z),
        }
    }

    fn log_abs(&self, z: Complex64) -> f64 {
        match self {
            FunctionRep::ExpPoly(f) => f.log_abs(z),
            FunctionRep::Taylor(f) => f.log_abs(z),
        }
    }
}

impl FunctionRep {
    pub fn derivative(&self) -> FunctionRep {
        match self {
            FunctionRep::ExpPoly(f) => f.derivative().into(),
            FunctionRep::Taylor(f) => f.derivative().into(),
        }
    }

    pub fn nth_derivative(&self, n: usize) -> FunctionRep {
        match self {
            FunctionRep::ExpPoly(f) => f.nth_derivative(n).into(),
            FunctionRep::Taylor(f) => f.nth_derivative(n).into(),
        }
    }

    pub fn compose_affine(&self, psi: &AffineSymbol) -> FunctionRep {
        match self {
            FunctionRep::ExpPoly(f) => f.compose_affine(psi).into(),
            FunctionRep::Taylor(f) => f.compose_affine(psi).into(),
        }
    }

    /// Pointwise product. ExpPoly x ExpPoly stays exact; any factor in
    /// Taylor form yields a Taylor product at the shared truncation, and
    /// Taylor x Taylor reports an overflow past the cap.
    pub fn multiply(&self, other: &FunctionRep) -> Result<FunctionRep> {
        use FunctionRep::*;
        Ok(match (self, other) {
            (ExpPoly(f), ExpPoly(g)) => f.mul(g).into(),
            (Taylor(f), Taylor(g)) => f.mul(g, DEFAULT_TAYLOR_CAP)?.into(),
            (Taylor(f), ExpPoly(g)) | (ExpPoly(g), Taylor(f)) => f.mul_exppoly(g).into(),
        })
    }

    pub fn is_zero(&self) -> bool {
        match self {
            FunctionRep::ExpPoly(f) => f.is_zero(),
            FunctionRep::Taylor(f) => f.is_zero(),
        }
    }

    /// Max modulus over |z| = r and its logarithm.
    pub fn max_modulus(&self, r: f64) -> MaxModulus {
        max_modulus(self, r)
    }

    pub fn order_of_growth(&self) -> GrowthOrder {
        match self {
            FunctionRep::ExpPoly(f) => f.order_of_growth(),
            // A truncated series is a polynomial: order zero, and the
            // limsup fit is meaningless.
            FunctionRep::Taylor(_) => GrowthOrder {
                numeric: None,
                symbolic: Some(0.0),
                degenerate: true,
            },
        }
    }
}

/// Result of a max-modulus query.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct MaxModulus {
    pub value: f64,
    pub log_value: f64,
    pub angle: f64,
}

/// M_f(r) on an adaptive angular grid (>= 1024 points, refined to 1e-10
/// relative).
pub fn max_modulus(f: &dyn EntireFn, r: f64) -> MaxModulus {
    assert!(r > 0.0, "max_modulus needs r > 0");
    let mut lf = |z: Complex64| f.log_abs(z);
    let (log_value, angle) = circle_log_max(&mut lf, r, 1024, 1e-10);
    MaxModulus { value: log_value.exp(), log_value, angle }
}

/// Growth-order report: the least-squares estimate of the doubly
/// logarithmic slope, the exact symbolic order when the representation
/// carries one, and a degeneracy flag for polynomials.
///
/// The numeric estimate is a heuristic: nothing bounds how fast the
/// limsup stabilizes, so reports must treat it as evidence only.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct GrowthOrder {
    pub numeric: Option<f64>,
    pub symbolic: Option<f64>,
    pub degenerate: bool,
}

/// Least-squares slope of ln ln M_f(r) against ln r over a geometric grid
/// r in [10, 1e3] (40 points).
pub(crate) fn numeric_growth_order(f: &dyn EntireFn) -> Option<f64> {
    const N: usize = 40;
    let (r_lo, r_hi) = (10.0f64, 1.0e3f64);
    let step = (r_hi / r_lo).powf(1.0 / (N as f64 - 1.0));
    let mut xs: Vec<f64> = Vec::new();
    let mut ys: Vec<f64> = Vec::new();
    let mut r = r_lo;
    for _ in 0..N {
        let mut lf = |z: Complex64| f.log_abs(z);
        let (log_m, _) = circle_log_max(&mut lf, r, 512, 1e-12);
        if log_m > 1e-6 {
            xs.push(r.ln());
            ys.push(log_m.ln());
        }
        r *= step;
    }
    if xs.len() < 5 {
        return None;
    }
    let n = xs.len() as f64;
    let sx: f64 = xs.iter().sum();
    let sy: f64 = ys.iter().sum();
    let sxx: f64 = xs.iter().map(|x| x * x).sum();
    let sxy: f64 = xs.iter().zip(&ys).map(|(x, y)| x * y).sum();
    let denom = n * sxx - sx * sx;
    if denom.abs() < 1e-12 {
        return None;
    }
    Some((n * sxy - sx * sy) / denom)
}

// ---- shared polynomial helpers -----------------------------------------

pub(crate) fn poly_trim(mut coeffs: Vec<Complex64>) -> Vec<Complex64> {
    while coeffs.len() > 1 && coeffs.last() == Some(&Complex64::new(0.0, 0.0)) {
        coeffs.pop();
    }
    if coeffs.is_empty() {
        coeffs.push(Complex64::new(0.0, 0.0));
    }
    coeffs
}

pub(crate) fn poly_eval(coeffs: &[Complex64], z: Complex64) -> Complex64 {
    let mut acc = Complex64::new(0.0, 0.0);
    for c in coeffs.iter().rev() {
        acc = acc * z + c;
    }
    acc
}

/// ln|P(z)|, overflow-safe for large |z| via the reversed polynomial.
pub(crate) fn poly_log_abs(coeffs: &[Complex64], z: Complex64) -> f64 {
    let r = z.norm();
    if r <= 1.0 {
        poly_eval(coeffs, z).norm().ln()
    } else {
        let d = coeffs.len() - 1;
        let zi = z.finv();
        let mut acc = Complex64::new(0.0, 0.0);
        for c in coeffs.iter() {
            acc = acc * zi + c;
        }
        d as f64 * r.ln() + acc.norm().ln()
    }
}

pub(crate) fn poly_derivative(coeffs: &[Complex64]) -> Vec<Complex64> {
    if coeffs.len() <= 1 {
        return alloc::vec![Complex64::new(0.0, 0.0)];
    }
    poly_trim(
        coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| c * k as f64)
            .collect(),
    )
}

pub(crate) fn poly_mul(a: &[Complex64], b: &[Complex64]) -> Vec<Complex64> {
    let mut out = alloc::vec![Complex64::new(0.0, 0.0); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if *x == Complex64::new(0.0, 0.0) {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    poly_trim(out)
}

/// Coefficients of P(a z + b).
pub(crate) fn poly_compose_affine(coeffs: &[Complex64], a: Complex64, b: Complex64) -> Vec<Complex64> {
    // Horner: start from the top coefficient, repeatedly multiply by
    // (a z + b) and add the next one.
    let mut out: Vec<Complex64> = alloc::vec![*coeffs.last().unwrap()];
    for c in coeffs.iter().rev().skip(1) {
        let mut next = alloc::vec![Complex64::new(0.0, 0.0); out.len() + 1];
        for (k, t) in out.iter().enumerate() {
            next[k] += t * b;
            next[k + 1] += t * a;
        }
        next[0] += c;
        out = next;
    }
    poly_trim(out)
}

pub(crate) fn poly_is_zero(coeffs: &[Complex64]) -> bool {
    coeffs.iter().all(|c| *c == Complex64::new(0.0, 0.0))
}

/// Taylor coefficients of exp(a0 + a1 z + a2 z^2) up to `degree`.
///
/// Built from the linear ODE E' = (a1 + 2 a2 z) E, which gives the
/// recurrence (k+1) e_{k+1} = a1 e_k + 2 a2 e_{k-1}.
pub(crate) fn exp_series(expo: &[Complex64; 3], degree: usize) -> Vec<Complex64> {
    let mut out = Vec::with_capacity(degree + 1);
    out.push(expo[0].exp());
    for k in 0..degree {
        let mut next = expo[1] * out[k];
        if k >= 1 {
            next += 2.0 * expo[2] * out[k - 1];
        }
        out.push(next / (k as f64 + 1.0));
    }
    out
}

/// Roots of a polynomial by the Durand-Kerner iteration. Used only to
/// locate weight zeros at desk scale; degree stays small.
pub(crate) fn poly_roots(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    let coeffs = poly_trim(coeffs.to_vec());
    let d = coeffs.len() - 1;
    if d == 0 {
        return Ok(Vec::new());
    }
    let lead = coeffs[d];
    if lead.norm() == 0.0 {
        return Err(FockError::InvalidInput(alloc::string::String::from(
            "zero leading coefficient",
        )));
    }
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();
    // Radius bound: 1 + max |c_k|.
    let radius = 1.0 + monic.iter().take(d).map(|c| c.norm()).fold(0.0, f64::max);
    let seed = Complex64::new(0.4, 0.9);
    let mut roots: Vec<Complex64> = (0..d)
        .map(|k| {
            let mut p = Complex64::new(1.0, 0.0);
            for _ in 0..k {
                p *= seed;
            }
            p * radius.min(4.0)
        })
        .collect();
    for _ in 0..500 {
        let mut shift = 0.0f64;
        for i in 0..d {
            let mut denom = Complex64::new(1.0, 0.0);
            for j in 0..d {
                if i != j {
                    denom *= roots[i] - roots[j];
                }
            }
            if denom.norm() == 0.0 {
                denom = Complex64::new(1e-12, 0.0);
            }
            let delta = poly_eval(&monic, roots[i]) / denom;
            roots[i] -= delta;
            shift = shift.max(delta.norm());
        }
        if shift < 1e-13 * (1.0 + radius) {
            break;
        }
    }
    Ok(roots)
}


/// Crate-internal access to polynomial roots for quadrature probing.
pub(crate) fn poly_roots_pub(coeffs: &[Complex64]) -> Result<Vec<Complex64>> {
    poly_roots(coeffs)
}
