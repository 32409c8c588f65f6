//! Dense complex matrices sized for finite-section probes (N <= 512):
//! products, spectral norm by power iteration on the Gram matrix, and a
//! one-sided Jacobi SVD for singular values.

use alloc::vec::Vec;

use num_complex::Complex64;
#[allow(unused_imports)] // resolves float math when the graph omits std
use num_traits::Float;

/// Row-major dense complex matrix.
#[derive(Debug, Clone, PartialEq)]
pub struct CMatrix {
    pub rows: usize,
    pub cols: usize,
    data: Vec<Complex64>,
}

impl CMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        CMatrix { rows, cols, data: alloc::vec![Complex64::new(0.0, 0.0); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Complex64::new(1.0, 0.0);
        }
        m
    }

    pub fn data(&self) -> &[Complex64] {
        &self.data
    }

    pub fn mul(&self, other: &CMatrix) -> CMatrix {
        assert_eq!(self.cols, other.rows);
        let mut out = CMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == Complex64::new(0.0, 0.0) {
                    continue;
                }
                for j in 0..other.cols {
                    out[(i, j)] += a * other[(k, j)];
                }
            }
        }
        out
    }

    pub fn mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.cols, v.len());
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); self.rows];
        for i in 0..self.rows {
            let mut acc = Complex64::new(0.0, 0.0);
            for j in 0..self.cols {
                acc += self[(i, j)] * v[j];
            }
            out[i] = acc;
        }
        out
    }

    /// Conjugate-transpose times a vector.
    pub fn adjoint_mul_vec(&self, v: &[Complex64]) -> Vec<Complex64> {
        assert_eq!(self.rows, v.len());
        let mut out = alloc::vec![Complex64::new(0.0, 0.0); self.cols];
        for i in 0..self.rows {
            let vi = v[i];
            if vi == Complex64::new(0.0, 0.0) {
                continue;
            }
            for j in 0..self.cols {
                out[j] += self[(i, j)].conj() * vi;
            }
        }
        out
    }

    pub fn frobenius(&self) -> f64 {
        self.data.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    /// Scale every entry.
    pub fn scale(&mut self, s: f64) {
        for c in self.data.iter_mut() {
            *c *= s;
        }
    }

    /// Spectral norm: power iteration on A^H A with two deterministic
    /// starting vectors.
    pub fn two_norm(&self) -> f64 {
        if self.data.iter().all(|c| *c == Complex64::new(0.0, 0.0)) {
            return 0.0;
        }
        let mut best = 0.0f64;
        for start in 0..2 {
            let mut v: Vec<Complex64> = (0..self.cols)
                .map(|k| {
                    if start == 0 {
                        Complex64::new(1.0, 0.0)
                    } else {
                        Complex64::new(1.0 + k as f64, 0.3)
                    }
                })
                .collect();
            normalize(&mut v);
            let mut sigma = 0.0f64;
            for _ in 0..600 {
                let av = self.mul_vec(&v);
                let s = vec_norm(&av);
                if s == 0.0 {
                    sigma = 0.0;
                    break;
                }
                let mut w = self.adjoint_mul_vec(&av);
                normalize(&mut w);
                v = w;
                if (s - sigma).abs() <= 1e-13 * s.max(1.0) {
                    sigma = s;
                    break;
                }
                sigma = s;
            }
            best = best.max(sigma);
        }
        best
    }
}

impl core::ops::Index<(usize, usize)> for CMatrix {
    type Output = Complex64;

    fn index(&self, (i, j): (usize, usize)) -> &Complex64 {
        &self.data[i * self.cols + j]
    }
}

impl core::ops::IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Complex64 {
        &mut self.data[i * self.cols + j]
    }
}

fn vec_norm(v: &[Complex64]) -> f64 {
    v.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
}

fn normalize(v: &mut [Complex64]) {
    let n = vec_norm(v);
    if n > 0.0 {
        for c in v.iter_mut() {
            *c /= n;
        }
    }
}

/// All singular values, descending, by one-sided Jacobi on the columns.
pub fn singular_values(a: &CMatrix) -> Vec<f64> {
    // Work on a column copy so rotations are cache-friendly.
    let (m, n) = (a.rows, a.cols);
    let mut cols: Vec<Vec<Complex64>> = (0..n)
        .map(|j| (0..m).map(|i| a[(i, j)]).collect())
        .collect();
    let scale = a.frobenius();
    if scale == 0.0 {
        return alloc::vec![0.0; n.min(m)];
    }
    let tol = 1e-14;
    for _sweep in 0..60 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                let mut app = 0.0f64;
                let mut aqq = 0.0f64;
                let mut apq = Complex64::new(0.0, 0.0);
                for i in 0..m {
                    app += cols[p][i].norm_sqr();
                    aqq += cols[q][i].norm_sqr();
                    apq += cols[p][i].conj() * cols[q][i];
                }
                let gamma = apq.norm();
                if gamma <= tol * (app * aqq).sqrt().max(tol * scale * scale) {
                    continue;
                }
                off = off.max(gamma);
                // Unitary 2x2 rotation diagonalizing the column Gram block.
                let phase = apq / gamma;
                let zeta = (aqq - app) / (2.0 * gamma);
                let t = if zeta >= 0.0 {
                    1.0 / (zeta + (1.0 + zeta * zeta).sqrt())
                } else {
                    -1.0 / (-zeta + (1.0 + zeta * zeta).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = c * t;
                for i in 0..m {
                    let vp = cols[p][i];
                    let vq = cols[q][i];
                    cols[p][i] = vp * c - vq * phase.conj() * s;
                    cols[q][i] = vp * phase * s + vq * c;
                }
            }
        }
        if off <= tol * scale * scale {
            break;
        }
    }
    let mut sv: Vec<f64> = cols.iter().map(|col| vec_norm(col)).collect();
    sv.sort_by(|x, y| y.partial_cmp(x).unwrap());
    sv.truncate(n.min(m));
    sv
}

/// Smallest singular value.
pub fn sigma_min(a: &CMatrix) -> f64 {
    singular_values(a).last().copied().unwrap_or(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn identity_singular_values() {
        let sv = singular_values(&CMatrix::identity(5));
        for s in sv {
            assert!((s - 1.0).abs() < 1e-13);
        }
    }

    #[test]
    fn diagonal_matrix() {
        let mut m = CMatrix::zeros(3, 3);
        m[(0, 0)] = c(3.0, 0.0);
        m[(1, 1)] = c(0.0, -2.0);
        m[(2, 2)] = c(0.5, 0.0);
        let sv = singular_values(&m);
        assert!((sv[0] - 3.0).abs() < 1e-13);
        assert!((sv[1] - 2.0).abs() < 1e-13);
        assert!((sv[2] - 0.5).abs() < 1e-13);
        assert!((m.two_norm() - 3.0).abs() < 1e-11);
        assert!((sigma_min(&m) - 0.5).abs() < 1e-13);
    }

    #[test]
    fn known_2x2() {
        // [[1, 1], [0, 1]]: singular values ((3 +/- sqrt(5))/2)^{1/2}.
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(1.0, 0.0);
        m[(0, 1)] = c(1.0, 0.0);
        m[(1, 1)] = c(1.0, 0.0);
        let sv = singular_values(&m);
        let hi = ((3.0 + 5.0f64.sqrt()) / 2.0).sqrt();
        let lo = ((3.0 - 5.0f64.sqrt()) / 2.0).sqrt();
        assert!((sv[0] - hi).abs() < 1e-12);
        assert!((sv[1] - lo).abs() < 1e-12);
    }

    #[test]
    fn unitary_scaled() {
        // sqrt(e) times a rotation: all singular values sqrt(e).
        let r = core::f64::consts::E.sqrt();
        let th = 0.7f64;
        let mut m = CMatrix::zeros(2, 2);
        m[(0, 0)] = c(r * th.cos(), 0.0);
        m[(0, 1)] = c(-r * th.sin(), 0.0);
        m[(1, 0)] = c(r * th.sin(), 0.0);
        m[(1, 1)] = c(r * th.cos(), 0.0);
        let sv = singular_values(&m);
        assert!((sv[0] - r).abs() < 1e-13);
        assert!((sv[1] - r).abs() < 1e-13);
        assert!((m.two_norm() - r).abs() < 1e-11);
    }

    #[test]
    fn singular_values_of_complex_shift() {
        // Weighted shift with complex weights: singular values are the
        // weight magnitudes.
        let mut m = CMatrix::zeros(4, 4);
        m[(0, 1)] = c(0.0, 2.0);
        m[(1, 2)] = c(1.0, 1.0);
        m[(2, 3)] = c(0.25, 0.0);
        let sv = singular_values(&m);
        assert!((sv[0] - 2.0).abs() < 1e-13);
        assert!((sv[1] - 2.0f64.sqrt()).abs() < 1e-13);
        assert!((sv[2] - 0.25).abs() < 1e-13);
        assert!(sv[3].abs() < 1e-13);
    }
}
