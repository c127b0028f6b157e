//! Principal-value integrals `PV∫_0^∞ F(x) cot(κx) dx` against a lattice of
//! simple poles at `x_k = kπ/κ`.
//!
//! Each pole cell `[x_k − h, x_k + h]` is folded onto `[0, h]`, where
//! `[F(x_k+δ) − F(x_k−δ)] cot(κδ)` is smooth, so the principal value is an
//! ordinary Gauss integral.

use crate::error::{Error, Result};
use crate::numerics::{
    c, cos_pi, cot, pow_real_base, sin_pi, CompensatedSum, ComplexValue, GaussLegendre,
    PrecisionConfig, QuadValue, I,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PvKernel {
    /// `x^{s−1}/(e^{2πx} − 1)` against `cot(βx/2)`.
    RamanujanCot,
    /// `(1/2i) x^{s−1} [e^{iπs/2}/(e^{2πx−2πia} − 1) − e^{−iπs/2}/(e^{2πx+2πia} − 1)]` against `cot(βx/2)`.
    ShiftedCot,
    /// `x^{s−1} sech(2πx)` against `cot(2βx)`.
    SechCot,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PvIntegralSpec {
    pub kernel: PvKernel,
    pub s: ComplexValue,
    pub beta: ComplexValue,
    pub a: f64,
    /// Pole-cell half-width; defaults to 0.3 of the pole gap.
    pub window: Option<f64>,
}

impl PvIntegralSpec {
    pub fn new(kernel: PvKernel, s: ComplexValue, beta: ComplexValue, a: f64) -> Self {
        PvIntegralSpec { kernel, s, beta, a, window: None }
    }

    pub fn with_window(mut self, h: f64) -> Self {
        self.window = Some(h);
        self
    }

    /// `κ` in `cot(κx)`.
    pub fn kappa(&self) -> ComplexValue {
        match self.kernel {
            PvKernel::SechCot => 2.0 * self.beta,
            _ => 0.5 * self.beta,
        }
    }

    /// Power `p` with `F(x) cot(κx) ~ x^{p−1}` at `x → 0`.
    fn origin_exponent(&self) -> f64 {
        match self.kernel {
            PvKernel::RamanujanCot => self.s.re - 2.0,
            PvKernel::ShiftedCot if self.a == 0.0 => self.s.re - 2.0,
            _ => self.s.re - 1.0,
        }
    }

    /// Distance from the real point `x` to the nearest singularity of `F`.
    fn smooth_radius(&self, x: f64) -> f64 {
        let d = match self.kernel {
            PvKernel::SechCot => 0.25,
            PvKernel::RamanujanCot => 1.0,
            PvKernel::ShiftedCot if self.a == 0.0 => 1.0,
            PvKernel::ShiftedCot => self.a.min(1.0 - self.a),
        };
        (x * x + d * d).sqrt().min(x.max(0.0) + d)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.beta.re > 0.0) {
            return Err(Error::spec(format!("PV integral requires Re(beta) > 0, got {}", self.beta)));
        }
        if !(0.0..1.0).contains(&self.a) {
            return Err(Error::spec(format!("PV integral requires 0 <= a < 1, got {}", self.a)));
        }
        if !(self.origin_exponent() > 0.0) {
            return Err(Error::spec(format!(
                "PV integral diverges at x = 0 for s = {} (kernel {:?})",
                self.s, self.kernel
            )));
        }
        if let Some(h) = self.window {
            let gap = PI / self.kappa().norm();
            if !(h > 0.0 && h < 0.5 * gap) {
                return Err(Error::spec(format!("window {h} must lie in (0, {})", 0.5 * gap)));
            }
        }
        Ok(())
    }
}

/// The smooth factor `F(x)` multiplying the cot kernel.
pub fn pv_kernel_eval(kernel: PvKernel, s: ComplexValue, a: f64, x: f64) -> Result<ComplexValue> {
    if !(x > 0.0) {
        return Err(Error::domain(format!("kernel requires x > 0, got {x}")));
    }
    Ok(kernel_value(kernel, s, a, x))
}

fn kernel_value(kernel: PvKernel, s: ComplexValue, a: f64, x: f64) -> ComplexValue {
    let xp = pow_real_base(x, s - 1.0);
    let e = (-2.0 * PI * x).exp();
    let em1 = (-2.0 * PI * x).exp_m1();
    match kernel {
        PvKernel::RamanujanCot => xp * e / -em1,
        PvKernel::SechCot => xp * 2.0 * e / (1.0 + e * e),
        PvKernel::ShiftedCot => {
            let half = s / 2.0;
            let phase_p = cos_pi(half) + I * sin_pi(half);
            let phase_m = cos_pi(half) - I * sin_pi(half);
            let sin_half = sin_pi(c(a)).re;
            let sin_full = sin_pi(c(2.0 * a)).re;
            let base = -2.0 * sin_half * sin_half - em1;
            // e^{−iθ} − e^{−2πx} and e^{iθ} − e^{−2πx}, θ = 2πa
            let d_minus = ComplexValue::new(base, -sin_full);
            let d_plus = ComplexValue::new(base, sin_full);
            xp * e * (phase_p / d_minus - phase_m / d_plus) / (2.0 * I)
        }
    }
}

/// `PV∫_0^∞ F(x) cot(κx) dx`; an ordinary integral when `β` is not real.
pub fn pv_integral(spec: &PvIntegralSpec, cfg: &PrecisionConfig) -> Result<QuadValue> {
    spec.validate()?;
    let rule = GaussLegendre::new(cfg.quad_order);
    let kappa = spec.kappa();
    let f = |x: f64| kernel_value(spec.kernel, spec.s, spec.a, x);
    let real_lattice = kappa.im == 0.0;
    let gap = PI / kappa.norm();
    let h = spec.window.unwrap_or(0.3 * gap);
    let period = PI / kappa; // complex pole spacing

    let pole_dist = |x: f64| -> f64 {
        let k0 = (ComplexValue::new(x, 0.0) / period).re.round();
        (-1..=1)
            .map(|d| k0 + d as f64)
            .filter(|k| *k >= 1.0)
            .map(|k| (c(x) - k * period).norm())
            .fold(f64::INFINITY, f64::min)
    };
    let width = |x: f64| 0.5 * spec.smooth_radius(x).min(pole_dist(x));
    let g = |x: f64| f(x) * cot(kappa * x);

    let mut sum = CompensatedSum::new();
    let mut cells = 0usize;
    let panel = |a: f64, b: f64, sum: &mut CompensatedSum, cells: &mut usize| {
        let mut x = a;
        while x < b {
            let w = width(x).max(1e-300);
            let next = (x + w).min(b);
            sum.add(rule.integrate(x, next, g));
            *cells += 1;
            x = next;
        }
    };

    // graded cells toward the integrable singularity at the origin
    let first = if real_lattice { gap - h } else { gap.min(1.0) * 0.5 };
    let levels = ((17.0 * 10f64.log2() / spec.origin_exponent()).ceil() as usize).min(400);
    let mut b = first;
    let mut origin = CompensatedSum::new();
    for _ in 0..levels {
        let a = 0.5 * b;
        panel(a, b, &mut origin, &mut cells);
        b = a;
    }
    sum.add(origin.value());

    // envelope of |F| for the truncation point
    let sigma = spec.s.re;
    let peak = ((sigma - 1.0) / (2.0 * PI)).max(0.0);
    let env = |x: f64| 2.0 * x.powf(sigma - 1.0) * (-2.0 * PI * x).exp() * (PI * spec.s.im.abs()).exp();
    let cot_bound = if real_lattice { 1.0 / (kappa.re * h).tan().abs() + 1.0 } else { 2.0 };

    let mut x = first;
    let mut k = 1usize;
    loop {
        if real_lattice {
            let xk = k as f64 * gap;
            panel(x, xk - h, &mut sum, &mut cells);
            let fold = |d: f64| (f(xk + d) - f(xk - d)) * cot(kappa * d);
            let fold_width = |d: f64| {
                0.5 * spec.smooth_radius(xk + d).min(spec.smooth_radius(xk - d)).min(gap - d)
            };
            let mut d = 0.0;
            while d < h {
                let next = (d + fold_width(d)).min(h);
                sum.add(rule.integrate(d, next, fold));
                cells += 1;
                d = next;
            }
            x = xk + h;
        } else {
            let next = x + gap;
            panel(x, next, &mut sum, &mut cells);
            x = next;
        }
        k += 1;
        let tail = env(x) * cot_bound * (gap + 1.0 / (2.0 * PI));
        if x > peak && tail <= 1e-3 * cfg.rel_tol * sum.value().norm().max(1e-300) + cfg.tail_cut {
            return Ok(QuadValue { value: sum.value(), error_estimate: tail, cells });
        }
        if k > 100_000 {
            return Err(Error::Convergence { terms: k, partial: sum.value(), last_term: tail });
        }
    }
}
