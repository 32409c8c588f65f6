//! Analysis of log-envelopes of exp-polynomial functions.
//!
//! Everything classified in this crate reduces to the behaviour of
//!
//! ```text
//! g(z) = c + Re(w z) + Re(a2 z^2) + kappa |z|^2  (+ log of a polynomial)
//! ```
//!
//! as |z| grows: its supremum, whether it tends to -infinity in every
//! direction, and whether exp(g) is area-integrable. Writing z = x + i y,
//! the quadratic part is the symmetric form with eigenvalues
//! kappa +/- |a2|; the eigendirection of kappa + |a2| is the half-angle
//! of -arg(a2).

use num_complex::Complex64;
#[allow(unused_imports)] // resolves float math when the graph omits std
use num_traits::Float;

/// Tolerance on the defining real equalities of boundary cases.
pub(crate) const BOUNDARY_TOL: f64 = 1e-12;
/// Within this distance of a boundary a warning flag is raised.
pub(crate) const BOUNDARY_WARN: f64 = 1e-9;

#[derive(Debug, Clone, Copy)]
pub(crate) struct LogQuadForm {
    pub kappa: f64,
    pub a2: Complex64,
    pub w: Complex64,
    pub c: f64,
    /// Log-power of the slowly varying factor multiplying exp(g): the
    /// polynomial degree plus any (1+|z|) correction exponents. Positive
    /// values are unbounded along every real line.
    pub log_power: f64,
    /// The whole function is identically zero.
    pub zero: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum SupClass {
    /// Identically zero function.
    Zero,
    /// Strictly negative definite quadratic: finite sup, attained at the
    /// stationary point.
    FiniteInterior,
    /// Flat direction with aligned linear part and constant polynomial:
    /// finite sup attained along a line.
    FiniteBoundaryFlat,
    Infinite(InfReason),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub(crate) enum InfReason {
    /// Some direction has a positive quadratic coefficient.
    PositiveQuadratic,
    /// The quadratic has a flat direction along which the linear part
    /// grows.
    LinearEscape,
    /// The quadratic and linear parts are flat along a direction but the
    /// slowly varying factor is unbounded there.
    PolynomialEscape,
}

impl LogQuadForm {
    pub fn eigenvalues(&self) -> (f64, f64) {
        (self.kappa + self.a2.norm(), self.kappa - self.a2.norm())
    }

    /// Direction (angle) of the largest eigenvalue.
    pub fn top_angle(&self) -> f64 {
        if self.a2.norm() == 0.0 {
            0.0
        } else {
            -0.5 * self.a2.arg()
        }
    }

    /// Linear coefficient along the direction `theta`.
    pub fn linear_along(&self, theta: f64) -> f64 {
        (self.w * Complex64::from_polar(1.0, theta)).re
    }

    /// True when the configuration sits within `BOUNDARY_WARN` of one of
    /// the defining equalities without satisfying it exactly to
    /// `BOUNDARY_TOL`.
    pub fn near_boundary(&self) -> bool {
        let (lp, _) = self.eigenvalues();
        lp.abs() > BOUNDARY_TOL && lp.abs() < BOUNDARY_WARN
    }

    pub fn classify_sup(&self) -> SupClass {
        if self.zero {
            return SupClass::Zero;
        }
        let (lp, _) = self.eigenvalues();
        let scale = 1.0 + self.a2.norm() + self.kappa.abs();
        if lp < -BOUNDARY_TOL * scale {
            return SupClass::FiniteInterior;
        }
        if lp > BOUNDARY_TOL * scale {
            return SupClass::Infinite(InfReason::PositiveQuadratic);
        }
        // Boundary: at least one flat direction.
        let wscale = 1.0 + self.w.norm();
        if self.a2.norm() <= BOUNDARY_TOL * scale {
            // kappa == 0 and a2 == 0: the whole plane is flat.
            if self.w.norm() > BOUNDARY_TOL * wscale {
                return SupClass::Infinite(InfReason::LinearEscape);
            }
        } else {
            let lin = self.linear_along(self.top_angle());
            if lin.abs() > BOUNDARY_TOL * wscale {
                return SupClass::Infinite(InfReason::LinearEscape);
            }
        }
        if self.log_power > BOUNDARY_TOL {
            return SupClass::Infinite(InfReason::PolynomialEscape);
        }
        SupClass::FiniteBoundaryFlat
    }

    /// g(z) -> -infinity along every path to infinity (so exp(g) -> 0).
    pub fn tends_to_zero(&self) -> bool {
        if self.zero {
            return true;
        }
        let (lp, _) = self.eigenvalues();
        let scale = 1.0 + self.a2.norm() + self.kappa.abs();
        lp < -BOUNDARY_TOL * scale
    }

    /// exp(s g) is area-integrable (for every finite s > 0 this is the
    /// same condition: a strictly negative definite quadratic part).
    pub fn integrable(&self) -> bool {
        self.tends_to_zero()
    }

    /// Stationary point of g when the quadratic part is negative
    /// definite.
    pub fn stationary_point(&self) -> Option<Complex64> {
        let (lp, lm) = self.eigenvalues();
        if lp >= 0.0 {
            return None;
        }
        let th = self.top_angle();
        let ep = Complex64::from_polar(1.0, th);
        let em = Complex64::from_polar(1.0, th + core::f64::consts::FRAC_PI_2);
        let tp = -self.linear_along(th) / (2.0 * lp);
        let tm = -self.linear_along(th + core::f64::consts::FRAC_PI_2) / (2.0 * lm);
        Some(ep * tp + em * tm)
    }

    /// Value of g at z.
    pub fn value_at(&self, z: Complex64) -> f64 {
        self.c + (self.w * z).re + (self.a2 * z * z).re + self.kappa * z.norm_sqr()
    }

    /// Exact supremum of g when it is finite; None when infinite.
    pub fn sup_value(&self) -> Option<f64> {
        match self.classify_sup() {
            SupClass::Zero => Some(f64::NEG_INFINITY),
            SupClass::FiniteInterior => {
                let z = self.stationary_point()?;
                Some(self.value_at(z))
            }
            SupClass::FiniteBoundaryFlat => {
                let (_, lm) = self.eigenvalues();
                let th = self.top_angle();
                let lm_lin = self.linear_along(th + core::f64::consts::FRAC_PI_2);
                if lm < 0.0 {
                    Some(self.c - lm_lin * lm_lin / (4.0 * lm))
                } else {
                    // kappa == 0, a2 == 0, w == 0: g is the constant c.
                    Some(self.c)
                }
            }
            SupClass::Infinite(_) => None,
        }
    }

    /// log of the plane integral of exp(s g) for s > 0, valid when the
    /// quadratic part is strictly negative definite and the polynomial
    /// factor is constant (the caller scales by it).
    pub fn gaussian_log_integral(&self, s: f64) -> Option<f64> {
        if !self.integrable() || self.zero {
            return None;
        }
        let (lp, lm) = self.eigenvalues();
        let th = self.top_angle();
        let ellp = self.linear_along(th);
        let ellm = self.linear_along(th + core::f64::consts::FRAC_PI_2);
        let quad_corr = ellp * ellp / lp + ellm * ellm / lm;
        Some(
            core::f64::consts::PI.ln() - s.ln() - 0.5 * ((-lp).ln() + (-lm).ln())
                + s * (self.c - 0.25 * quad_corr),
        )
    }
}
