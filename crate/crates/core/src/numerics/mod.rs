//! Special functions and summation/quadrature primitives.

mod bernoulli;
mod cplx;
mod expint;
mod gamma;
mod quadrature;
mod summation;
mod zeta;

pub use bernoulli::{bernoulli, bernoulli_f64, Rational, MAX_BERNOULLI_INDEX};
pub use cplx::{cos_pi, cot, expm1, pow_real_base, sin_pi, ComplexValue};
pub(crate) use cplx::{as_integer, c, cpow, I};
pub use expint::{chi, g_asymptotic_switch, shi, stable_g, stable_g_with, GBranch, EULER_GAMMA};
pub use gamma::{digamma, gamma, pochhammer};
pub use quadrature::{integrate_panels, GaussLegendre, QuadValue};
pub use summation::{
    oscillatory_tail, sum_accelerated, sum_with_tail, CompensatedSum, SeriesValue,
};
pub use zeta::{hurwitz_zeta, riemann_zeta};

pub(crate) use zeta::hurwitz_zeta_cfg;

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// Tolerances, truncation limits and quadrature orders shared by every evaluator.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PrecisionConfig {
    pub rel_tol: f64,
    pub abs_tol: f64,
    pub max_series_terms: usize,
    /// Number of Euler–Maclaurin correction derivatives (even).
    pub em_order: usize,
    /// Gauss nodes per panel.
    pub quad_order: usize,
    /// Terms or integrand envelopes below this are dropped.
    pub tail_cut: f64,
}

impl Default for PrecisionConfig {
    fn default() -> Self {
        PrecisionConfig {
            rel_tol: 1e-15,
            abs_tol: 1e-15,
            max_series_terms: 1_000_000,
            em_order: 20,
            quad_order: 20,
            tail_cut: 1e-18,
        }
    }
}

impl PrecisionConfig {
    pub fn validate(&self) -> Result<()> {
        if !(self.rel_tol > 0.0) {
            return Err(Error::spec("rel_tol must be positive"));
        }
        if !(self.abs_tol > 0.0) {
            return Err(Error::spec("abs_tol must be positive"));
        }
        if self.max_series_terms < 16 {
            return Err(Error::spec("max_series_terms must be at least 16"));
        }
        if self.em_order % 2 != 0 || !(2..=30).contains(&self.em_order) {
            return Err(Error::spec("em_order must be even and within [2, 30]"));
        }
        if self.quad_order < 8 {
            return Err(Error::spec("quad_order must be at least 8"));
        }
        if !(self.tail_cut > 0.0) {
            return Err(Error::spec("tail_cut must be positive"));
        }
        Ok(())
    }
}
