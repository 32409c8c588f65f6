//! Independent brute-force verification engine.
//!
//! The scheme is deliberately different from the norms module: adaptive
//! Simpson in the radial direction against a fixed 4096-point angular
//! trapezoid, in a globally shifted linear domain. Agreement between the
//! two paths within their combined error bounds is the release gate for
//! every derived value in this crate.

use alloc::string::String;

use num_complex::Complex64;
#[allow(unused_imports)] // resolves float math when the graph omits std
use num_traits::Float;
use serde::Serialize;

use crate::error::{FockError, Result};
use crate::function::{AffineSymbol, EntireFn, ExpPolyFunction};
use crate::norms::{Family, FockTypeParams, PNorm};
use crate::quad::LogSum;

const ANGULAR_NODES: usize = 4096;
const FIRST_RADIUS: f64 = 16.0;
const MAX_DOUBLINGS: usize = 6;
const SCHEME: &str = "adaptive-simpson-radial x trapezoid-4096";

/// A value from the oracle with its a-posteriori error bookkeeping.
#[derive(Debug, Clone, Serialize)]
pub struct OracleResult {
    pub value: f64,
    pub log_value: f64,
    /// Absolute Richardson estimate: doubling the effort moves the value
    /// by less than this.
    pub error_estimate: f64,
    pub rel_error: f64,
    pub scheme: &'static str,
    pub evaluations: u64,
}

impl OracleResult {
    fn from_log(log_value: f64, rel_error: f64, evaluations: u64) -> Self {
        let value = log_value.exp();
        OracleResult {
            value,
            log_value,
            error_estimate: value * rel_error,
            rel_error,
            scheme: SCHEME,
            evaluations,
        }
    }
}

/// Adaptive Simpson refinement of exp(log_g - shift) on [a, b].
/// Returns (integral, accumulated Richardson error, evaluations).
struct SimpsonCtx<'a> {
    log_g: &'a mut dyn FnMut(f64) -> f64,
    shift: f64,
    evals: u64,
}

impl<'a> SimpsonCtx<'a> {
    fn g(&mut self, r: f64) -> f64 {
        self.evals += 1;
        ((self.log_g)(r) - self.shift).exp()
    }

    #[allow(clippy::too_many_arguments)]
    fn refine(
        &mut self,
        a: f64,
        b: f64,
        fa: f64,
        fm: f64,
        fb: f64,
        whole: f64,
        tol: f64,
        depth: usize,
        err: &mut f64,
    ) -> f64 {
        let m = 0.5 * (a + b);
        let lm = self.g(0.5 * (a + m));
        let rm = self.g(0.5 * (m + b));
        let h = b - a;
        let left = h / 12.0 * (fa + 4.0 * lm + fm);
        let right = h / 12.0 * (fm + 4.0 * rm + fb);
        let delta = left + right - whole;
        if depth == 0 || delta.abs() <= 15.0 * tol {
            *err += delta.abs() / 15.0;
            return left + right + delta / 15.0;
        }
        self.refine(a, m, fa, lm, fm, left, 0.5 * tol, depth - 1, err)
            + self.refine(m, b, fm, rm, fb, right, 0.5 * tol, depth - 1, err)
    }

    /// Integrate [a, b]; the tolerance is relative to the larger of the
    /// block's own coarse estimate and `context_scale` (the head already
    /// accumulated), so empty leading blocks stay cheap.
    fn simpson(&mut self, a: f64, b: f64, context_scale: f64) -> (f64, f64) {
        let fa = self.g(a);
        let fm = self.g(0.5 * (a + b));
        let fb = self.g(b);
        let whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
        // The global shift normalizes the peak of the scaled integrand to
        // about e^{-2}, so an absolute floor of 2e-16 is two digits below
        // the 1e-13 relative target even when the 3-point seed misses the
        // peak entirely.
        let tol = ((whole.abs() + context_scale) * 1e-13).max(2e-16);
        let mut err = 0.0;
        let v = self.refine(a, b, fa, fm, fb, whole, tol, 42, &mut err);
        (v, err)
    }
}

/// Integrate exp(log_g(r)) dr over [0, inf): Simpson on [0, R] with R
/// doubled until the last annulus is below 1e-12 of the head; divergence
/// verdict after six doublings.
fn radial_adaptive(log_g: &mut dyn FnMut(f64) -> f64) -> Result<(f64, f64, u64)> {
    // Global scale from a coarse envelope probe.
    let mut shift = f64::NEG_INFINITY;
    let mut r = 0.0;
    while r <= FIRST_RADIUS {
        shift = shift.max(log_g(r.max(1e-9)));
        r += 0.25;
    }
    if shift == f64::NEG_INFINITY {
        return Ok((f64::NEG_INFINITY, 0.0, 0));
    }
    shift += 2.0;
    let mut ctx = SimpsonCtx { log_g, shift, evals: 0 };
    let mut lo = 0.0f64;
    let mut hi = FIRST_RADIUS;
    let mut total = 0.0f64;
    let mut err_total = 0.0f64;
    for step in 0..=MAX_DOUBLINGS {
        // Keep the scale honest if the integrand keeps growing outward.
        if step > 0 {
            let mut probe = lo;
            let mut local_max = f64::NEG_INFINITY;
            while probe <= hi {
                local_max = local_max.max((ctx.log_g)(probe));
                probe += (hi - lo) / 64.0;
            }
            if local_max + 2.0 > ctx.shift {
                let rescale = (ctx.shift - local_max - 2.0).exp();
                total *= rescale;
                err_total *= rescale;
                ctx.shift = local_max + 2.0;
            }
        }
        let (block, err) = ctx.simpson(lo, hi, total);
        total += block;
        err_total += err;
        if step > 0 && block.abs() <= 1e-12 * total.abs() && total > 0.0 {
            let log_value = ctx.shift + total.ln();
            let rel = (err_total + block.abs()) / total;
            return Ok((log_value, rel, ctx.evals));
        }
        lo = hi;
        hi *= 2.0;
    }
    Err(FockError::Divergent {
        what: alloc::format!("tail still above 1e-12 of head at r = {lo}"),
    })
}

/// Brute-force weighted p-norm (p < inf); sup norms are validated by the
/// dense-grid path in the norms module itself.
pub fn brute_force_norm(f: &dyn EntireFn, params: &FockTypeParams) -> Result<OracleResult> {
    let p = match params.p {
        PNorm::Finite(p) => p,
        PNorm::Infinity => {
            return Err(FockError::InvalidInput(String::from(
                "oracle norms are defined for finite exponents",
            )))
        }
    };
    let mut evals = 0u64;
    let mut log_g = |r: f64| -> f64 {
        let mut acc = LogSum::new();
        for j in 0..ANGULAR_NODES {
            let th = 2.0 * core::f64::consts::PI * j as f64 / ANGULAR_NODES as f64;
            acc.add_log(p * f.log_abs(Complex64::from_polar(r, th)));
        }
        evals += ANGULAR_NODES as u64;
        acc.log_total() + (2.0 * core::f64::consts::PI / ANGULAR_NODES as f64).ln()
            + r.ln()
            + params.log_weight(r, p)
    };
    let (log_i, rel, _) = radial_adaptive(&mut log_g)?;
    let log_norm = match params.family {
        Family::ClassicalFock => ((p / (2.0 * core::f64::consts::PI)).ln() + log_i) / p,
        Family::FockType => log_i / p,
    };
    Ok(OracleResult::from_log(log_norm, rel / p, evals))
}

/// Brute-force integral of L_{(u,psi,n)}^q over the plane.
///
/// The symbol function is re-derived inline from its definition so that
/// this path shares no code with the symbol module.
pub fn brute_force_lq_integral(
    u: &ExpPolyFunction,
    psi: &AffineSymbol,
    n: usize,
    q: f64,
) -> Result<OracleResult> {
    assert!(q >= 1.0 && q.is_finite(), "q must be finite and at least 1");
    let mut evals = 0u64;
    let mut log_g = |r: f64| -> f64 {
        let mut acc = LogSum::new();
        for j in 0..ANGULAR_NODES {
            let th = 2.0 * core::f64::consts::PI * j as f64 / ANGULAR_NODES as f64;
            let z = Complex64::from_polar(r, th);
            let w = psi.apply(z);
            let mut log_l = u.log_abs(z) + 0.5 * (w.norm_sqr() - z.norm_sqr());
            if n > 0 {
                log_l += n as f64 * w.norm().ln();
            }
            acc.add_log(q * log_l);
        }
        evals += ANGULAR_NODES as u64;
        acc.log_total() + (2.0 * core::f64::consts::PI / ANGULAR_NODES as f64).ln() + r.ln()
    };
    let (log_i, rel, _) = radial_adaptive(&mut log_g)?;
    Ok(OracleResult::from_log(log_i, rel, evals))
}
