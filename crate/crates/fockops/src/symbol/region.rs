//! Super-level-set regions of the symbol function and the sampling-
//! inequality probe.
//!
//! The probe is a semi-decision tool: a vanishing empirical constant
//! refutes sampling (and with it closed range); a positive floor over a
//! rich test family is evidence only and every report labels it so.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // resolves float math when the graph omits std
use num_traits::Float;
use serde::Serialize;

use super::OperatorSpec;
use crate::error::{FockError, Result};
use crate::function::{AffineSymbol, EntireFn, TaylorFunction};
use crate::norms::{fock_norm, FockTypeParams, PNorm, QuadratureConfig};
use crate::quad::LogSum;

/// Polar discretization window: [0, r_max] x [0, 2 pi).
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PolarWindow {
    pub r_max: f64,
    pub n_r: usize,
    pub n_theta: usize,
}

impl PolarWindow {
    pub fn new(r_max: f64) -> Self {
        PolarWindow { r_max, n_r: 512, n_theta: 512 }
    }

    pub fn with_grid(r_max: f64, n_r: usize, n_theta: usize) -> Self {
        assert!(r_max > 0.0 && n_r > 0 && n_theta > 0);
        PolarWindow { r_max, n_r, n_theta }
    }
}

/// A masked polar grid; every masked cell center satisfies L > epsilon.
/// `map` carries the affine image structure: the identity for the
/// super-level set itself, psi for its image region.
#[derive(Debug, Clone)]
pub struct Region {
    pub epsilon: f64,
    pub window: PolarWindow,
    pub map: AffineSymbol,
    pub is_empty: bool,
    mask: Vec<bool>,
}

impl Region {
    /// Fraction of window cells in the mask.
    pub fn cell_fraction(&self) -> f64 {
        let hits = self.mask.iter().filter(|&&b| b).count();
        hits as f64 / self.mask.len() as f64
    }

    pub fn contains_cell(&self, i_r: usize, i_theta: usize) -> bool {
        self.mask[i_r * self.window.n_theta + i_theta]
    }

    /// Iterate masked cells as (center point before mapping, polar area
    /// element r dr dtheta).
    fn masked_cells(&self) -> impl Iterator<Item = (Complex64, f64)> + '_ {
        let dr = self.window.r_max / self.window.n_r as f64;
        let dt = 2.0 * core::f64::consts::PI / self.window.n_theta as f64;
        let n_theta = self.window.n_theta;
        self.mask.iter().enumerate().filter_map(move |(idx, &hit)| {
            if !hit {
                return None;
            }
            let i = idx / n_theta;
            let j = idx % n_theta;
            let r = (i as f64 + 0.5) * dr;
            let th = (j as f64 + 0.5) * dt;
            Some((Complex64::from_polar(r, th), r * dr * dt))
        })
    }

    /// Outer radius of the masked set (before mapping), for reporting.
    pub fn masked_outer_radius(&self) -> f64 {
        let dr = self.window.r_max / self.window.n_r as f64;
        let mut outer = 0.0f64;
        for (idx, &hit) in self.mask.iter().enumerate() {
            if hit {
                let i = idx / self.window.n_theta;
                outer = outer.max((i as f64 + 1.0) * dr);
            }
        }
        outer
    }
}

/// The super-level set {z : L(z) > epsilon} masked over the window.
pub fn omega_region(spec: &OperatorSpec, epsilon: f64, window: PolarWindow) -> Region {
    assert!(epsilon > 0.0, "epsilon must be positive");
    let dr = window.r_max / window.n_r as f64;
    let dt = 2.0 * core::f64::consts::PI / window.n_theta as f64;
    let log_eps = epsilon.ln();
    let mut mask = Vec::with_capacity(window.n_r * window.n_theta);
    let mut any = false;
    for i in 0..window.n_r {
        let r = (i as f64 + 0.5) * dr;
        for j in 0..window.n_theta {
            let th = (j as f64 + 0.5) * dt;
            let hit = spec.l_log_value(Complex64::from_polar(r, th)) > log_eps;
            any |= hit;
            mask.push(hit);
        }
    }
    Region {
        epsilon,
        window,
        map: AffineSymbol::identity(),
        is_empty: !any,
        mask,
    }
}

/// The image region psi(Omega^epsilon): same mask, mapped through psi.
pub fn g_region(spec: &OperatorSpec, epsilon: f64, window: PolarWindow) -> Region {
    let mut region = omega_region(spec, epsilon, window);
    region.map = spec.psi;
    region
}

/// Result of the empirical sampling probe.
#[derive(Debug, Clone, Serialize)]
pub struct SamplingProbe {
    /// min over the test set of (restricted integral)^{1/p} / ||f||_p.
    pub delta_hat: f64,
    /// Per-function ratios in test-set order.
    pub per_function: Vec<f64>,
    /// Always "probe": the positive direction is evidence, not proof.
    pub label: String,
    pub empty_region: bool,
}

/// Empirical sampling constant of the region for the (p, k) inequality
/// over `testset`.
///
/// Every test function must have its first k Taylor coefficients zero;
/// violations are rejected with the offending index. An empty region
/// returns 0 outright.
pub fn sampling_probe(
    region: &Region,
    p: PNorm,
    k: usize,
    testset: &[TaylorFunction],
    cfg: &QuadratureConfig,
) -> Result<SamplingProbe> {
    for (idx, f) in testset.iter().enumerate() {
        for j in 0..k.min(f.truncation_degree() + 1) {
            if f.coeff(j).norm() > 0.0 {
                return Err(FockError::SamplingPrecondition { index: idx });
            }
        }
    }
    if testset.is_empty() {
        return Err(FockError::InvalidInput(String::from("empty test set")));
    }
    let mut per_function = Vec::with_capacity(testset.len());
    if region.is_empty {
        per_function.resize(testset.len(), 0.0);
        return Ok(SamplingProbe {
            delta_hat: 0.0,
            per_function,
            label: String::from("probe"),
            empty_region: true,
        });
    }
    let jac = if region.map.is_constant() {
        0.0
    } else {
        region.map.a().norm_sqr()
    };
    let mut delta_hat = f64::INFINITY;
    for f in testset {
        let fk = f.nth_derivative(k);
        let norm = fock_norm(
            &f.clone().into(),
            &FockTypeParams::classical(p),
            cfg,
        )?;
        let ratio = match p {
            PNorm::Finite(pv) => {
                let mut acc = LogSum::new();
                for (z0, area) in region.masked_cells() {
                    let w = region.map.apply(z0);
                    let lg = pv * (fk.log_abs(w) - k as f64 * (1.0 + w.norm()).ln())
                        - pv * 0.5 * w.norm_sqr();
                    // dA(w) = |a|^2 dA(z) through the affine map.
                    acc.add_log(lg + (area * jac.max(1e-300)).ln());
                }
                ((acc.log_total() / pv) - norm.log_value).exp()
            }
            PNorm::Infinity => {
                let mut best = f64::NEG_INFINITY;
                for (z0, _) in region.masked_cells() {
                    let w = region.map.apply(z0);
                    let lg = fk.log_abs(w) - k as f64 * (1.0 + w.norm()).ln() - 0.5 * w.norm_sqr();
                    best = best.max(lg);
                }
                (best - norm.log_value).exp()
            }
        };
        per_function.push(ratio);
        delta_hat = delta_hat.min(ratio);
    }
    Ok(SamplingProbe {
        delta_hat,
        per_function,
        label: String::from("probe"),
        empty_region: false,
    })
}
