//! Finite sections of D_{(u,psi,n)} in the orthonormal monomial basis of
//! F_2, singular-value and spectral-radius probes, and the monomial
//! norm-ratio test.
//!
//! Matrix probes live in F_2 only: other exponents lack an orthonormal
//! basis, so evidence there comes from `ratio_test` on monomial norms.
//! Every report carries that caveat.

use alloc::string::String;
use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // resolves float math when the graph omits std
use num_traits::Float;
use serde::Serialize;

use crate::error::{FockError, Result};
use crate::function::ExpPolyFunction;
use crate::gamma::ln_gamma;
use crate::linalg::{self, CMatrix};
use crate::norms::{monomial_norm_exact, FockTypeParams, PNorm};
use crate::quad::{radial_log_integral, RadialSetup};
use crate::symbol::OperatorSpec;

/// Truncation of the operator against e_k(z) = z^k / sqrt(k!).
///
/// Column k0 holds the coefficients of T e_{k0 + offset} against rows
/// e_0 .. e_{n_rows - 1}; the offset restricts the domain to functions
/// with a vanishing jet of order `offset` at the origin while the target
/// keeps the full basis. The row count extends past the column count far
/// enough that every column's dropped mass is below 1e-8 of its norm, so
/// singular values of the section genuinely probe the restricted
/// operator (a square cut would lose the image of the edge columns and
/// fake a vanishing lower bound).
#[derive(Debug, Clone)]
pub struct FiniteSectionMatrix {
    /// Number of columns (domain dimension).
    pub n_dim: usize,
    /// Number of stored rows (target degrees 0 .. n_rows - 1).
    pub n_rows: usize,
    pub offset: usize,
    pub matrix: CMatrix,
    /// Relative mass dropped beyond the stored rows, per column
    /// (at most 1e-8 by construction).
    pub column_tails: Vec<f64>,
    pub flags: Vec<String>,
    pub basis_note: String,
}

impl FiniteSectionMatrix {
    pub fn entry(&self, row: usize, col: usize) -> Complex64 {
        self.matrix[(row, col)]
    }

    /// Euclidean norms of the stored columns (= ||T e_{k+offset}||_2 up
    /// to the reported tail).
    pub fn column_norms(&self) -> Vec<f64> {
        (0..self.n_dim)
            .map(|k| {
                (0..self.n_rows)
                    .map(|j| self.matrix[(j, k)].norm_sqr())
                    .sum::<f64>()
                    .sqrt()
            })
            .collect()
    }

    /// The square top block, for operator-compression probes (powers).
    pub fn square_block(&self) -> CMatrix {
        let mut out = CMatrix::zeros(self.n_dim, self.n_dim);
        for i in 0..self.n_dim.min(self.n_rows) {
            for j in 0..self.n_dim {
                out[(i, j)] = self.matrix[(i, j)];
            }
        }
        out
    }
}

const TAIL_LIMIT: f64 = 1e-8;
const BUFFER_START: usize = 64;
const BUFFER_CAP: usize = 2048;

/// Build the N x N finite section with the given domain offset
/// (offset = n restricts to the vanishing-jet subspace).
///
/// Column expansions run to degree N + buffer with the buffer doubled
/// until the dropped tail is below 1e-8 of each column norm; an
/// unbounded symbol that never gets there is reported as an error.
pub fn build_matrix(spec: &OperatorSpec, n_dim: usize, offset: usize) -> Result<FiniteSectionMatrix> {
    assert!(n_dim >= 1 && n_dim <= 512, "section size out of range");
    let mut buffer = BUFFER_START;
    loop {
        match try_build(spec, n_dim, offset, buffer) {
            Ok(out) => return Ok(out),
            Err(FockError::IncreaseBuffer { .. }) if buffer < BUFFER_CAP => {
                buffer *= 2;
            }
            Err(e) => return Err(e),
        }
    }
}

fn try_build(
    spec: &OperatorSpec,
    n_dim: usize,
    offset: usize,
    buffer: usize,
) -> Result<FiniteSectionMatrix> {
    let depth = n_dim + offset + buffer;
    let (a, b) = (spec.psi.a(), spec.psi.b());
    let u_taylor = ExpPolyFunction::taylor(&spec.u, depth);
    let u_coeffs = u_taylor.coeffs();

    let mut matrix = CMatrix::zeros(depth + 1, n_dim);
    let mut column_tails = Vec::with_capacity(n_dim);
    let mut top_row = n_dim;

    // (a z + b)^{k - n} built incrementally across columns.
    let mut psi_pow: Vec<Complex64> = alloc::vec![Complex64::new(1.0, 0.0)];
    let mut pow_deg = 0usize;

    for k0 in 0..n_dim {
        let k = k0 + offset;
        if k < spec.n {
            // e_k is annihilated.
            column_tails.push(0.0);
            continue;
        }
        let target = k - spec.n;
        while pow_deg < target {
            let mut next = alloc::vec![Complex64::new(0.0, 0.0); psi_pow.len() + 1];
            for (i, c) in psi_pow.iter().enumerate() {
                next[i] += c * b;
                next[i + 1] += c * a;
            }
            psi_pow = next;
            pow_deg += 1;
        }
        // q = u * (a z + b)^{k-n}, truncated at `depth`.
        let mut q = alloc::vec![Complex64::new(0.0, 0.0); depth + 1];
        for (i, c) in psi_pow.iter().enumerate() {
            if i > depth {
                break;
            }
            if *c == Complex64::new(0.0, 0.0) {
                continue;
            }
            for (j, uc) in u_coeffs.iter().take(depth + 1 - i).enumerate() {
                q[i + j] += c * uc;
            }
        }
        // T e_k = sqrt(k!) / (k-n)! * q; entry (j, k0) = q_j sqrt(j!) * scale.
        let log_scale = 0.5 * ln_gamma(k as f64 + 1.0) - ln_gamma(target as f64 + 1.0);
        let mut head_sq = 0.0f64;
        for (j, qc) in q.iter().enumerate() {
            let mag = qc.norm();
            if mag == 0.0 {
                continue;
            }
            let log_entry = mag.ln() + 0.5 * ln_gamma(j as f64 + 1.0) + log_scale;
            let entry_mag = log_entry.exp();
            if !entry_mag.is_finite() {
                return Err(FockError::InvalidInput(alloc::format!(
                    "column {k0} entry overflows; symbol too large for a finite section"
                )));
            }
            matrix[(j, k0)] = (qc / mag) * entry_mag;
            head_sq += entry_mag * entry_mag;
            if entry_mag * entry_mag > 1e-28 * head_sq {
                top_row = top_row.max(j + 1);
            }
        }
        let col_norm = head_sq.sqrt();
        // Mass beyond the stored depth, estimated from the outermost
        // buffered entries (they must already have decayed).
        let tail_fraction = 0.0;
        // The buffer itself must have converged: the outermost buffered
        // entries must be negligible against the column, otherwise the
        // tail estimate cannot be trusted and the buffer must grow.
        let last_mag = q
            .iter()
            .enumerate()
            .rev()
            .take(4)
            .map(|(j, qc)| {
                let mag = qc.norm();
                if mag == 0.0 {
                    0.0
                } else {
                    (mag.ln() + 0.5 * ln_gamma(j as f64 + 1.0) + log_scale).exp()
                }
            })
            .fold(0.0, f64::max);
        if col_norm > 0.0 && last_mag > TAIL_LIMIT * col_norm {
            return Err(FockError::IncreaseBuffer { column: k0, tail_fraction: last_mag / col_norm });
        }
        let _ = tail_fraction;
        column_tails.push(if col_norm == 0.0 { 0.0 } else { last_mag / col_norm });
    }

    // Trim rows that carry nothing (keeps diagonal-style sections square).
    let n_rows = top_row.clamp(n_dim, depth + 1);
    let mut trimmed = CMatrix::zeros(n_rows, n_dim);
    for i in 0..n_rows {
        for j in 0..n_dim {
            trimmed[(i, j)] = matrix[(i, j)];
        }
    }
    let matrix = trimmed;

    let mut flags = Vec::new();
    if let Ok(sup) = crate::symbol::sup_l(spec) {
        if !sup.finite {
            flags.push(String::from("unbounded-symbol"));
        }
    }
    flags.push(String::from("f2-basis-only: other exponents probed via ratio_test"));
    Ok(FiniteSectionMatrix {
        n_dim,
        n_rows,
        offset,
        matrix,
        column_tails,
        flags,
        basis_note: String::from("e_k(z) = z^k / sqrt(k!)"),
    })
}

/// Smallest singular value of the section (full Jacobi SVD).
pub fn sigma_min(mat: &FiniteSectionMatrix) -> f64 {
    linalg::sigma_min(&mat.matrix)
}

/// All singular values, descending.
pub fn singular_values(mat: &FiniteSectionMatrix) -> Vec<f64> {
    linalg::singular_values(&mat.matrix)
}

/// s_m = ||T^m||_2^{1/m} for m = 1..m_max, with log-scaled powering so
/// long products never overflow.
pub fn spectral_radius_estimate(mat: &FiniteSectionMatrix, m_max: usize) -> Vec<f64> {
    let a = &mat.square_block();
    let mut power = a.clone();
    let mut acc_log = 0.0f64;
    let mut out = Vec::with_capacity(m_max);
    for m in 1..=m_max {
        if m > 1 {
            power = a.mul(&power);
        }
        let frob = power.frobenius();
        if frob == 0.0 {
            out.push(0.0);
            // Stays zero from here on.
            for _ in (m + 1)..=m_max {
                out.push(0.0);
            }
            return out;
        }
        power.scale(1.0 / frob);
        acc_log += frob.ln();
        let norm2 = power.two_norm();
        out.push(((acc_log + norm2.ln()) / m as f64).exp());
    }
    out
}

/// One row of the monomial ratio sweep.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct RatioRow {
    pub k: usize,
    pub ratio: f64,
    pub log_ratio: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct RatioTest {
    pub rows: Vec<RatioRow>,
    /// Least-squares power-law exponent of the tail (upper half of k).
    pub fitted_tail_exponent: f64,
    pub m: f64,
    pub p: PNorm,
    pub q: PNorm,
}

/// log ||z^k||_{(m,p)} by radial quadrature (p finite) or the exact sup
/// (p = inf).
fn monomial_log_norm(k: usize, m: f64, p: PNorm) -> Result<f64> {
    match p {
        PNorm::Finite(pv) => {
            let kp = k as f64 * pv;
            let mut log_g = |r: f64| -> f64 {
                if r <= 0.0 {
                    return f64::NEG_INFINITY;
                }
                (kp + 1.0) * r.ln() - pv * r.powf(m)
            };
            let setup = RadialSetup { max_radius: 8192.0, ..RadialSetup::default() };
            let out = radial_log_integral(&mut log_g, &setup)?;
            Ok(((2.0 * core::f64::consts::PI).ln() + out.log_value) / pv)
        }
        PNorm::Infinity => {
            Ok(monomial_norm_exact(k, &FockTypeParams::fock_type(m, PNorm::Infinity)).log_value)
        }
    }
}

/// Ratios k ||z^{k-1}||_{(m,q)} / ||z^k||_{(m,p)} for k = 1..k_max with a
/// fitted tail exponent. A positive floor with exponent ~0 is the
/// closed-range signature at equal exponents and m = 1; negative
/// exponents quantify the failure rate elsewhere.
pub fn ratio_test(m: f64, p: PNorm, q: PNorm, k_max: usize) -> Result<RatioTest> {
    assert!(m > 0.0 && k_max >= 4);
    let mut rows = Vec::with_capacity(k_max);
    for k in 1..=k_max {
        let num = monomial_log_norm(k - 1, m, q)?;
        let den = monomial_log_norm(k, m, p)?;
        let log_ratio = (k as f64).ln() + num - den;
        rows.push(RatioRow { k, ratio: log_ratio.exp(), log_ratio });
    }
    // Tail fit over the upper half.
    let lo = (k_max / 2).max(2);
    let pts: Vec<(f64, f64)> = rows
        .iter()
        .filter(|r| r.k >= lo)
        .map(|r| ((r.k as f64).ln(), r.log_ratio))
        .collect();
    let n = pts.len() as f64;
    let sx: f64 = pts.iter().map(|(x, _)| x).sum();
    let sy: f64 = pts.iter().map(|(_, y)| y).sum();
    let sxx: f64 = pts.iter().map(|(x, _)| x * x).sum();
    let sxy: f64 = pts.iter().map(|(x, y)| x * y).sum();
    let fitted = (n * sxy - sx * sy) / (n * sxx - sx * sx);
    Ok(RatioTest { rows, fitted_tail_exponent: fitted, m, p, q })
}
