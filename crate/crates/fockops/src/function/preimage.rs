//! Preimage construction: solve D_{(u,psi,n)} f = h for f.
//!
//! The preimage is (h/u) ∘ psi^{-1} expanded as a Taylor series and
//! integrated n times from the origin.

use alloc::vec::Vec;

use num_complex::Complex64;
use serde::Serialize;

use super::{exp_series, poly_roots, AffineSymbol, EntireFn, ExpPolyFunction, TaylorFunction};
use crate::error::{FockError, Result};

#[derive(Debug, Clone, Serialize)]
pub struct PreimageResult {
    pub preimage: TaylorFunction,
    /// sup |D_{(u,psi,n)} f - h| over the residual grid.
    pub residual_sup: f64,
    pub residual_radius: f64,
}

/// Solve D_{(u,psi,n)} f = h to truncation degree `degree`.
///
/// Refuses when psi is constant or when u vanishes inside |z| <= radius.
pub fn solve_preimage(
    u: &ExpPolyFunction,
    psi: &AffineSymbol,
    n: usize,
    h: &ExpPolyFunction,
    degree: usize,
    radius: f64,
) -> Result<PreimageResult> {
    if psi.is_constant() {
        return Err(FockError::ConstantSymbol);
    }
    for root in poly_roots(u.poly())? {
        if root.norm() <= radius {
            return Err(FockError::ZeroInDisk { location: root });
        }
    }

    // Series of h/u: polynomial long division against the exp-part
    // difference. P_u(0) != 0 is guaranteed by the zero check above.
    let p_u = u.poly();
    let p_h = h.poly();
    let mut ratio: Vec<Complex64> = Vec::with_capacity(degree + 1);
    for k in 0..=degree {
        let mut acc = if k < p_h.len() { p_h[k] } else { Complex64::new(0.0, 0.0) };
        for j in 1..=k.min(p_u.len() - 1) {
            acc -= p_u[j] * ratio[k - j];
        }
        ratio.push(acc / p_u[0]);
    }
    let uq = u.expo();
    let hq = h.expo();
    let dq = [hq[0] - uq[0], hq[1] - uq[1], hq[2] - uq[2]];
    let es = exp_series(&dq, degree);
    let mut quotient = alloc::vec![Complex64::new(0.0, 0.0); degree + 1];
    for (i, a) in ratio.iter().enumerate() {
        for (j, b) in es.iter().take(degree + 1 - i).enumerate() {
            quotient[i + j] += a * b;
        }
    }

    let inv = psi.inverse()?;
    let mut f = TaylorFunction::new(quotient).compose_affine(&inv);
    for _ in 0..n {
        f = f.antiderivative();
    }

    // Residual sweep: |u(z) f^(n)(psi(z)) - h(z)| on a polar grid.
    let fn_psi = f.nth_derivative(n).compose_affine(psi);
    let mut residual_sup = 0.0f64;
    for i in 0..=24 {
        let r = radius * i as f64 / 24.0;
        let steps = if i == 0 { 1 } else { 48 };
        for j in 0..steps {
            let t = 2.0 * core::f64::consts::PI * j as f64 / steps as f64;
            let z = Complex64::from_polar(r, t);
            let res = (u.eval(z) * fn_psi.eval(z) - h.eval(z)).norm();
            residual_sup = residual_sup.max(res);
        }
    }
    Ok(PreimageResult { preimage: f, residual_sup, residual_radius: radius })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_weight_antiderivative() {
        // u = 1, psi = z, n = 1, h = 1: f = z with zero residual.
        let u = ExpPolyFunction::one();
        let psi = AffineSymbol::identity();
        let h = ExpPolyFunction::one();
        let out = solve_preimage(&u, &psi, 1, &h, 16, 3.0).unwrap();
        assert!((out.preimage.coeff(1) - c(1.0, 0.0)).norm() < 1e-14);
        assert!(out.residual_sup < 1e-12);
    }

    #[test]
    fn composition_inverse() {
        // u = 1, psi = z/2, n = 0, h = e^z: f = e^{2z}.
        let u = ExpPolyFunction::one();
        let psi = AffineSymbol::new(c(0.5, 0.0), c(0.0, 0.0));
        let h = ExpPolyFunction::kernel(c(1.0, 0.0));
        let out = solve_preimage(&u, &psi, 0, &h, 60, 3.0).unwrap();
        for k in 0..=10 {
            let mut fact = 1.0;
            for j in 1..=k {
                fact *= j as f64;
            }
            let expected = 2.0f64.powi(k as i32) / fact;
            assert!((out.preimage.coeff(k) - c(expected, 0.0)).norm() < 1e-9 * expected.max(1.0));
        }
        assert!(out.residual_sup < 1e-6, "residual={}", out.residual_sup);
    }

    #[test]
    fn kernel_target_small_residual() {
        // u = e^{-z}, psi = z + 1, n = 0, h = k_1: residual below 1e-6 on
        // |z| <= 3 at degree 60.
        let u = ExpPolyFunction::kernel(c(-1.0, 0.0));
        let psi = AffineSymbol::new(c(1.0, 0.0), c(1.0, 0.0));
        let h = ExpPolyFunction::normalized_kernel(c(1.0, 0.0));
        let out = solve_preimage(&u, &psi, 0, &h, 60, 3.0).unwrap();
        assert!(out.residual_sup < 1e-6, "residual={}", out.residual_sup);
    }

    #[test]
    fn refuses_vanishing_weight() {
        // u = z - 1 has a zero inside |z| <= 3.
        let u = ExpPolyFunction::polynomial(alloc::vec![c(-1.0, 0.0), c(1.0, 0.0)]);
        let psi = AffineSymbol::identity();
        let h = ExpPolyFunction::one();
        match solve_preimage(&u, &psi, 0, &h, 16, 3.0) {
            Err(FockError::ZeroInDisk { location }) => {
                assert!((location - c(1.0, 0.0)).norm() < 1e-8);
            }
            other => panic!("expected ZeroInDisk, got {other:?}"),
        }
    }

    #[test]
    fn refuses_constant_symbol() {
        let u = ExpPolyFunction::one();
        let psi = AffineSymbol::constant(c(1.0, 0.0));
        let h = ExpPolyFunction::one();
        assert!(matches!(
            solve_preimage(&u, &psi, 0, &h, 16, 3.0),
            Err(FockError::ConstantSymbol)
        ));
    }
}
