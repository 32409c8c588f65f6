//! Quadrature primitives: Gauss-Legendre panels, log-domain accumulation,
//! adaptive radial/angular integration over the plane in polar form, and
//! polar maximizers for sup-norms.
//!
//! All routines work on the *logarithm* of the integrand so that Gaussian
//! tails and high monomial powers never overflow.

use alloc::vec::Vec;
use core::f64::consts::PI;

use num_complex::Complex64;
#[allow(unused_imports)] // resolves float math when the graph omits std
use num_traits::Float;

use crate::error::{FockError, Result};

/// Gauss-Legendre rule on [-1, 1].
#[derive(Debug, Clone)]
pub struct GaussLegendre {
    pub nodes: Vec<f64>,
    pub weights: Vec<f64>,
}

impl GaussLegendre {
    /// Nodes and weights by Newton iteration on the Legendre recurrence.
    pub fn new(n: usize) -> Self {
        assert!(n >= 2, "need at least two nodes");
        let mut nodes = alloc::vec![0.0; n];
        let mut weights = alloc::vec![0.0; n];
        let m = (n + 1) / 2;
        for i in 0..m {
            // Chebyshev-based initial guess.
            let mut x = (PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
            let mut dp = 0.0;
            for _ in 0..100 {
                // Evaluate P_n(x) and P_n'(x) by recurrence.
                let mut p0 = 1.0;
                let mut p1 = x;
                for k in 2..=n {
                    let kf = k as f64;
                    let p2 = ((2.0 * kf - 1.0) * x * p1 - (kf - 1.0) * p0) / kf;
                    p0 = p1;
                    p1 = p2;
                }
                dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
                let dx = p1 / dp;
                x -= dx;
                if dx.abs() < 1e-15 {
                    break;
                }
            }
            nodes[i] = -x;
            nodes[n - 1 - i] = x;
            let w = 2.0 / ((1.0 - x * x) * dp * dp);
            weights[i] = w;
            weights[n - 1 - i] = w;
        }
        GaussLegendre { nodes, weights }
    }
}

/// Streaming log-sum-exp accumulator for sums of positive terms given as
/// logarithms. Keeps the running maximum as the scale.
#[derive(Debug, Clone, Copy)]
pub struct LogSum {
    scale: f64,
    sum: f64,
}

impl LogSum {
    pub fn new() -> Self {
        LogSum { scale: f64::NEG_INFINITY, sum: 0.0 }
    }

    /// Add a term exp(log_term).
    pub fn add_log(&mut self, log_term: f64) {
        if log_term == f64::NEG_INFINITY {
            return;
        }
        if log_term <= self.scale {
            self.sum += (log_term - self.scale).exp();
        } else {
            self.sum = self.sum * (self.scale - log_term).exp() + 1.0;
            self.scale = log_term;
        }
    }

    /// log of the accumulated total (NEG_INFINITY when empty).
    pub fn log_total(&self) -> f64 {
        if self.sum == 0.0 {
            f64::NEG_INFINITY
        } else {
            self.scale + self.sum.ln()
        }
    }
}

impl Default for LogSum {
    fn default() -> Self {
        Self::new()
    }
}

/// log(exp(a) + exp(b)).
pub fn log_add(a: f64, b: f64) -> f64 {
    if a == f64::NEG_INFINITY {
        return b;
    }
    if b == f64::NEG_INFINITY {
        return a;
    }
    let (hi, lo) = if a >= b { (a, b) } else { (b, a) };
    hi + (lo - hi).exp().ln_1p()
}

/// Composite Gauss-Legendre integral of exp(log_g) over [a, b].
/// Returns the log of the integral.
pub fn panel_log_integral(log_g: &mut dyn FnMut(f64) -> f64, a: f64, b: f64, rule: &GaussLegendre, panel_width: f64) -> f64 {
    debug_assert!(b > a);
    let n_panels = ((b - a) / panel_width).ceil() as usize;
    let n_panels = n_panels.max(1);
    let h = (b - a) / n_panels as f64;
    let mut acc = LogSum::new();
    for k in 0..n_panels {
        let lo = a + k as f64 * h;
        let half = 0.5 * h;
        let mid = lo + half;
        for (x, w) in rule.nodes.iter().zip(rule.weights.iter()) {
            let r = mid + half * x;
            let lg = log_g(r);
            acc.add_log(lg + (w * half).ln());
        }
    }
    acc.log_total()
}

/// Controls for the adaptive radial integral.
#[derive(Debug, Clone, Copy)]
pub struct RadialSetup {
    /// Nodes per Gauss-Legendre panel.
    pub nodes_per_panel: usize,
    /// Panel width in r.
    pub panel_width: f64,
    /// First block extends to this radius; blocks then double.
    pub first_block: f64,
    /// Hard cap on the outer radius; reaching it without tail convergence
    /// is reported as divergence.
    pub max_radius: f64,
    /// Target for (estimated tail) / (head), e.g. 1e-12.
    pub rel_tail: f64,
}

impl Default for RadialSetup {
    fn default() -> Self {
        RadialSetup {
            nodes_per_panel: 32,
            panel_width: 0.5,
            first_block: 8.0,
            max_radius: 2048.0,
            rel_tail: 1e-12,
        }
    }
}

/// Outcome of the adaptive radial integration.
#[derive(Debug, Clone, Copy)]
pub struct RadialIntegral {
    /// log of the integral over [0, r_cut].
    pub log_value: f64,
    /// Conservative bound on tail / value.
    pub rel_tail_bound: f64,
    /// Radius actually integrated to.
    pub r_cut: f64,
}

/// Integrate exp(log_g(r)) dr over [0, inf) by doubling annular blocks
/// until the last block is negligible and block contributions decay
/// geometrically. `log_g` must already contain the Jacobian and weight.
pub fn radial_log_integral(
    log_g: &mut dyn FnMut(f64) -> f64,
    setup: &RadialSetup,
) -> Result<RadialIntegral> {
    let rule = GaussLegendre::new(setup.nodes_per_panel);
    let mut blocks: Vec<f64> = Vec::new();
    let mut total = LogSum::new();
    let mut lo = 0.0f64;
    let mut hi = setup.first_block;
    loop {
        let block = panel_log_integral(log_g, lo, hi, &rule, setup.panel_width);
        blocks.push(block);
        total.add_log(block);
        let head = total.log_total();
        if blocks.len() >= 2 {
            let prev = blocks[blocks.len() - 2];
            let ratio = if prev == f64::NEG_INFINITY && block == f64::NEG_INFINITY {
                0.0
            } else {
                (block - prev).exp()
            };
            // Geometric extrapolation of the remaining tail is valid once
            // block contributions decay by at least a factor of two.
            if ratio < 0.5 {
                let tail_log = if block == f64::NEG_INFINITY {
                    f64::NEG_INFINITY
                } else {
                    block + (ratio / (1.0 - ratio)).ln()
                };
                let rel = (tail_log - head).exp();
                if rel < setup.rel_tail || head == f64::NEG_INFINITY {
                    return Ok(RadialIntegral {
                        log_value: head,
                        rel_tail_bound: if head == f64::NEG_INFINITY { 0.0 } else { rel },
                        r_cut: hi,
                    });
                }
            }
        }
        lo = hi;
        hi *= 2.0;
        if hi > setup.max_radius {
            return Err(FockError::Divergent {
                what: alloc::format!("radial integral still significant at r = {lo}"),
            });
        }
    }
}

/// Trapezoid (periodic, hence spectrally accurate) integral of
/// exp(log_h(theta)) over [0, 2*pi) with n nodes. Returns the log.
pub fn angular_log_integral(log_h: &mut dyn FnMut(f64) -> f64, n: usize) -> f64 {
    let mut acc = LogSum::new();
    let w = 2.0 * PI / n as f64;
    for j in 0..n {
        acc.add_log(log_h(w * j as f64));
    }
    acc.log_total() + w.ln()
}

/// Adaptive variant: doubles the node count until the integral is stable
/// to `rel_tol` (compared in log space) or the cap is hit. Doubling only
/// evaluates the new midpoints (the periodic trapezoid of 2n nodes is the
/// average of the n-node sums on the two staggered grids). Returns
/// (log integral, nodes used, converged).
pub fn angular_log_integral_adaptive(
    log_h: &mut dyn FnMut(f64) -> f64,
    start: usize,
    cap: usize,
    rel_tol: f64,
) -> (f64, usize, bool) {
    let mut n = start.max(8);
    // log of (1/n) sum exp(log_h(theta_j)) on the base grid.
    let mut mean = {
        let mut acc = LogSum::new();
        for j in 0..n {
            acc.add_log(log_h(2.0 * PI * j as f64 / n as f64));
        }
        acc.log_total() - (n as f64).ln()
    };
    while n < cap {
        let mut acc = LogSum::new();
        for j in 0..n {
            acc.add_log(log_h(2.0 * PI * (j as f64 + 0.5) / n as f64));
        }
        let mid_mean = acc.log_total() - (n as f64).ln();
        let refined = log_add(mean, mid_mean) - 2f64.ln();
        let close = if mean == f64::NEG_INFINITY && refined == f64::NEG_INFINITY {
            true
        } else {
            (refined - mean).abs() < rel_tol
        };
        n *= 2;
        mean = refined;
        if close {
            return (mean + (2.0 * PI).ln(), n, true);
        }
    }
    (mean + (2.0 * PI).ln(), n, false)
}

/// Maximum of log_f over the circle |z| = r: dense angular grid followed
/// by local refinement. Returns (max log, argmax angle).
pub fn circle_log_max(
    log_f: &mut dyn FnMut(Complex64) -> f64,
    r: f64,
    min_points: usize,
    rel_tol: f64,
) -> (f64, f64) {
    let n = min_points.max(16);
    let mut best = f64::NEG_INFINITY;
    let mut best_t = 0.0;
    for j in 0..n {
        let t = 2.0 * PI * j as f64 / n as f64;
        let v = log_f(Complex64::from_polar(r, t));
        if v > best {
            best = v;
            best_t = t;
        }
    }
    // Local refinement by shrinking three-point search.
    let mut half = PI / n as f64;
    for _ in 0..200 {
        let mut improved = false;
        for &t in &[best_t - half, best_t + half] {
            let v = log_f(Complex64::from_polar(r, t));
            if v > best {
                let gain = v - best;
                best = v;
                best_t = t;
                improved = true;
                if gain < rel_tol {
                    return (best, best_t);
                }
            }
        }
        if !improved {
            half *= 0.5;
            if half < 1e-14 {
                break;
            }
        }
    }
    (best, best_t)
}

/// Global maximum of log_f over the plane: expanding polar grids, then a
/// shrinking local box search. `r_start` seeds the first bounding radius.
pub fn plane_log_max(
    log_f: &mut dyn FnMut(Complex64) -> f64,
    r_start: f64,
    rel_tol: f64,
) -> (f64, Complex64) {
    let mut r_hi = r_start.max(1.0);
    let (n_r, n_t) = (96usize, 192usize);
    let mut best = f64::NEG_INFINITY;
    let mut best_z = Complex64::new(0.0, 0.0);
    for _ in 0..24 {
        best = log_f(Complex64::new(0.0, 0.0));
        best_z = Complex64::new(0.0, 0.0);
        for i in 1..=n_r {
            let r = r_hi * i as f64 / n_r as f64;
            for j in 0..n_t {
                let t = 2.0 * PI * j as f64 / n_t as f64;
                let z = Complex64::from_polar(r, t);
                let v = log_f(z);
                if v > best {
                    best = v;
                    best_z = z;
                }
            }
        }
        // If the maximizer sits in the outer ring the sup may still grow:
        // expand the window.
        if best_z.norm() < 0.9 * r_hi {
            break;
        }
        r_hi *= 2.0;
    }
    // Local box refinement around the grid maximizer.
    let mut h = r_hi / n_r as f64;
    for _ in 0..120 {
        let mut improved = false;
        for di in -2i32..=2 {
            for dj in -2i32..=2 {
                if di == 0 && dj == 0 {
                    continue;
                }
                let z = best_z + Complex64::new(di as f64 * h / 2.0, dj as f64 * h / 2.0);
                let v = log_f(z);
                if v > best {
                    best = v;
                    best_z = z;
                    improved = true;
                }
            }
        }
        if !improved {
            h *= 0.35;
            if h < 1e-13 * (1.0 + best_z.norm()) {
                break;
            }
        }
    }
    let _ = rel_tol;
    (best, best_z)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gauss_legendre_integrates_polynomials_exactly() {
        let rule = GaussLegendre::new(8);
        // integral of x^14 over [-1,1] = 2/15 (degree 14 < 2*8-1)
        let mut s = 0.0;
        for (x, w) in rule.nodes.iter().zip(rule.weights.iter()) {
            s += w * x.powi(14);
        }
        assert!((s - 2.0 / 15.0).abs() < 1e-14);
    }

    #[test]
    fn radial_gaussian_integral() {
        // int_0^inf r e^{-r^2} dr = 1/2
        let mut g = |r: f64| r.ln() - r * r;
        let out = radial_log_integral(&mut g, &RadialSetup::default()).unwrap();
        assert!((out.log_value - (0.5f64).ln()).abs() < 1e-12);
        assert!(out.rel_tail_bound < 1e-11);
    }

    #[test]
    fn radial_divergence_detected() {
        // integrand growing like e^{r}
        let mut g = |r: f64| r;
        let setup = RadialSetup { max_radius: 256.0, ..RadialSetup::default() };
        assert!(matches!(
            radial_log_integral(&mut g, &setup),
            Err(FockError::Divergent { .. })
        ));
    }

    #[test]
    fn angular_constant() {
        let mut h = |_t: f64| 0.0f64;
        let v = angular_log_integral(&mut h, 64);
        assert!((v - (2.0 * PI).ln()).abs() < 1e-13);
    }

    #[test]
    fn circle_max_finds_peak() {
        // log f = cos(theta): max 1 at theta=0
        let mut f = |z: Complex64| z.re / z.norm();
        let (v, t) = circle_log_max(&mut f, 2.0, 64, 1e-12);
        assert!((v - 1.0).abs() < 1e-10);
        assert!(t.cos() > 1.0 - 1e-8);
    }

    #[test]
    fn plane_max_gaussian_bump() {
        // log f = -|z - (1+2i)|^2, max 0 at 1+2i
        let c = Complex64::new(1.0, 2.0);
        let mut f = |z: Complex64| -(z - c).norm_sqr();
        let (v, z) = plane_log_max(&mut f, 1.0, 1e-12);
        assert!(v > -1e-9, "v={v}");
        assert!((z - c).norm() < 1e-4);
    }
}
