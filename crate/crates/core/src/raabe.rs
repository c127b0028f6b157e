//! The generalized Raabe cosine transform
//!
//! `𝕽_z(y, w) = ½Γ(2z+1) ∫_0^∞ [(t−iw)^{−(2z+1)} + (t+iw)^{−(2z+1)}] cos(yt) dt`
//!
//! with direct quadrature, the integer-order closed form, the large-`y`
//! expansion, and its summation and integration laws.

use crate::error::{Error, Result};
use crate::identities::{self, IdentityCheckResult, IdentityId, Sides};
use crate::numerics::{
    as_integer, c, cos_pi, cpow, digamma, gamma, hurwitz_zeta_cfg, integrate_panels, sin_pi,
    stable_g, CompensatedSum, ComplexValue, GaussLegendre, PrecisionConfig, QuadValue,
    SeriesValue, I,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Parameters of `𝕽_z(y, w)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct RaabeParams {
    pub z: ComplexValue,
    pub y: f64,
    pub w: ComplexValue,
}

impl RaabeParams {
    pub fn new(z: ComplexValue, y: f64, w: ComplexValue) -> Result<Self> {
        let p = RaabeParams { z, y, w };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.y > 0.0) || !self.y.is_finite() {
            return Err(Error::domain(format!("raabe requires y > 0, got {}", self.y)));
        }
        if !(self.w.re > 0.0) {
            return Err(Error::domain(format!("raabe requires Re(w) > 0, got {}", self.w)));
        }
        let integer_order = matches!(as_integer(self.z), Some(k) if k >= 0);
        if !(self.z.re > 0.0) && !integer_order {
            return Err(Error::domain(format!(
                "raabe requires Re(z) > 0 or z a nonnegative integer, got {}",
                self.z
            )));
        }
        Ok(())
    }
}

const ACCELERATION_LEVELS: usize = 24;
const MIN_DIRECT_CELLS: usize = 30;

/// `𝕽_z(y, w)` by Gauss quadrature over half-period cells of `cos(yt)` and
/// repeated averaging of the alternating cell partial sums.
pub fn raabe_direct(p: &RaabeParams, cfg: &PrecisionConfig) -> Result<QuadValue> {
    p.validate()?;
    let rule = GaussLegendre::new(cfg.quad_order);
    let y = p.y;
    let e = -(2.0 * p.z + 1.0);
    let iw = I * p.w;
    let integrand = |t: f64| (cpow(c(t) - iw, e) + cpow(c(t) + iw, e)) * (y * t).cos();
    let dist = |t: f64| (c(t) - iw).norm().min((c(t) + iw).norm());
    let quarter = 0.5 * PI / y;
    let width = |t: f64| (0.5 * dist(t)).min(quarter);
    let cell_value = |k: usize| -> (ComplexValue, usize) {
        let a = if k == 0 { 0.0 } else { (k as f64 - 0.5) * PI / y };
        let b = (k as f64 + 0.5) * PI / y;
        integrate_panels(&rule, a, b, width, integrand)
    };

    let t_smooth = 3.0 * p.w.norm() + 2.0 * p.z.norm();
    let k_direct = MIN_DIRECT_CELLS.max((t_smooth * y / PI).ceil() as usize);
    let mut direct = CompensatedSum::new();
    for k in 0..=k_direct {
        direct.add(cell_value(k).0);
    }
    let mut partial = Vec::with_capacity(ACCELERATION_LEVELS + 1);
    let mut run = direct;
    partial.push(run.value());
    for k in 1..=ACCELERATION_LEVELS {
        run.add(cell_value(k_direct + k).0);
        partial.push(run.value());
    }
    while partial.len() > 2 {
        for j in 0..partial.len() - 1 {
            partial[j] = 0.5 * (partial[j] + partial[j + 1]);
        }
        partial.pop();
    }
    let integral = 0.5 * (partial[0] + partial[1]);
    let err = 0.5 * (partial[0] - partial[1]).norm();
    let pref = 0.5 * gamma(2.0 * p.z + 1.0)?;
    let value = pref * integral;
    let error_estimate = pref.norm() * err;
    if error_estimate > 1e-6 * value.norm() + cfg.abs_tol {
        return Err(Error::Convergence {
            terms: k_direct + ACCELERATION_LEVELS,
            partial: value,
            last_term: error_estimate,
        });
    }
    Ok(QuadValue { value, error_estimate, cells: k_direct + 1 + ACCELERATION_LEVELS })
}

/// `𝕽_m(y, w) = y^{2m}(−1)^m G_m(yw)` for integer order `m ≥ 0`.
pub fn raabe_closed_integer(m: usize, y: f64, w: ComplexValue) -> Result<ComplexValue> {
    if !(y > 0.0) {
        return Err(Error::domain(format!("raabe requires y > 0, got {y}")));
    }
    let g = stable_g(m, y * w)?;
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    Ok(sign * y.powi(2 * m as i32) * g)
}

fn raabe_value(z: ComplexValue, y: f64, w: ComplexValue, cfg: &PrecisionConfig) -> Result<ComplexValue> {
    match as_integer(z) {
        Some(m) if m >= 0 => raabe_closed_integer(m as usize, y, w),
        _ => Ok(raabe_direct(&RaabeParams::new(z, y, w)?, cfg)?.value),
    }
}

/// Relative residual of `w^{2z}𝕽_z(y, w) = y^{2z}𝕽_z(w, y)` for real `w, y > 0`.
pub fn raabe_symmetry_check(z: ComplexValue, y: f64, w: f64, cfg: &PrecisionConfig) -> Result<f64> {
    if !(w > 0.0) || !(y > 0.0) {
        return Err(Error::domain("symmetry check requires real w > 0 and y > 0"));
    }
    let left = cpow(c(w), 2.0 * z) * raabe_value(z, y, c(w), cfg)?;
    let right = cpow(c(y), 2.0 * z) * raabe_value(z, w, c(y), cfg)?;
    Ok((left - right).norm() / left.norm().max(cfg.abs_tol))
}

/// Truncated large-`y` expansion `−cos(πz)/w^{2z} Σ_{n=1}^{r} Γ(2z+2n)/(yw)^{2n}`
/// with the size of the first omitted term.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AsymptoticValue {
    pub value: ComplexValue,
    pub first_omitted: f64,
}

pub fn raabe_asymptotic(z: ComplexValue, y: f64, w: ComplexValue, r: usize) -> Result<AsymptoticValue> {
    let cz = cos_pi(z);
    if cz == c(0.0) {
        return Ok(AsymptoticValue { value: c(0.0), first_omitted: 0.0 });
    }
    let pref = -cz / cpow(w, 2.0 * z);
    let x2 = 1.0 / ((y * w) * (y * w));
    let mut term = gamma(2.0 * z + 2.0)? * x2;
    let mut sum = CompensatedSum::new();
    for n in 1..=r {
        sum.add(term);
        let a = 2.0 * z + 2.0 * n as f64;
        let next = term * a * (a + 1.0) * x2;
        if n < r && next.norm() > term.norm() {
            return Err(Error::Truncation { requested: r, optimal: n });
        }
        term = next;
    }
    Ok(AsymptoticValue { value: pref * sum.value(), first_omitted: (pref * term).norm() })
}

/// `Σ_j Γ(2z+2j)/x^{2j} · weight(j)` truncated at the smallest term of the
/// envelope `Γ(2z+2j)/|x·scale|^{2j}`. Returns the sum and the omitted size.
fn gamma_series<W>(z: ComplexValue, x: ComplexValue, scale: f64, mut weight: W) -> Result<(ComplexValue, f64)>
where
    W: FnMut(usize) -> Result<ComplexValue>,
{
    let x2 = 1.0 / (x * x);
    let mut g = gamma(2.0 * z + 2.0)?;
    let mut xp = x2;
    let mut sum = CompensatedSum::new();
    let mut prev_env = f64::INFINITY;
    let env_scale = 1.0 / (scale * scale);
    let mut env_p = env_scale;
    let mut omitted = 0.0;
    for j in 1..200 {
        let env = (g * xp).norm() * env_p;
        if env > prev_env {
            omitted = prev_env;
            break;
        }
        let t = g * xp * weight(j)?;
        sum.add(t);
        omitted = t.norm();
        if t.norm() <= 1e-18 * sum.value().norm() {
            break;
        }
        prev_env = env;
        let a = 2.0 * z + 2.0 * j as f64;
        g *= a * (a + 1.0);
        xp *= x2;
        env_p *= env_scale;
    }
    Ok((sum.value(), omitted))
}

fn check_sum_domain(z: ComplexValue, w: ComplexValue) -> Result<()> {
    if !(w.re > 0.0) {
        return Err(Error::domain(format!("requires Re(w) > 0, got {w}")));
    }
    if !(z.re > 0.0) {
        return Err(Error::domain(format!("requires Re(z) > 0, got {z}")));
    }
    Ok(())
}

/// `Σ_{n≥1} 𝕽_z(2πn, w)`: direct quadrature for small `n`, the large-`y`
/// expansion summed with Hurwitz zeta values for the rest.
pub fn raabe_sum(z: ComplexValue, w: ComplexValue, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    check_sum_domain(z, w)?;
    let n0 = 8usize.max((40.0 / (2.0 * PI * w.norm())).ceil() as usize);
    let mut sum = CompensatedSum::new();
    let mut err = 0.0;
    for n in 1..=n0 {
        let q = raabe_direct(&RaabeParams::new(z, 2.0 * PI * n as f64, w)?, cfg)?;
        sum.add(q.value);
        err += q.error_estimate;
    }
    let cz = cos_pi(z);
    if cz != c(0.0) {
        let pref = -cz / cpow(w, 2.0 * z);
        let a = c((n0 + 1) as f64);
        let (t, omitted) = gamma_series(z, 2.0 * PI * w, (n0 + 1) as f64, |j| {
            hurwitz_zeta_cfg(c(2.0 * j as f64), a, cfg)
        })?;
        sum.add(pref * t);
        err += (pref * omitted).norm();
    }
    Ok(SeriesValue { value: sum.value(), tail_bound: err, terms: n0 })
}

/// `(Γ(2z+1)/4)[ζ(1+2z, iw) + ζ(1+2z, −iw) − cos(πz)/(z w^{2z}) + sin(πz)/w^{2z+1}]`.
///
/// The last term is the half-weight endpoint contribution of Poisson summation
/// for an integrand cut off at `v = 0`; it vanishes for integer `z`.
pub fn raabe_sum_closed(z: ComplexValue, w: ComplexValue) -> Result<ComplexValue> {
    check_sum_domain(z, w)?;
    let cfg = PrecisionConfig::default();
    let s = 1.0 + 2.0 * z;
    let h = hurwitz_zeta_cfg(s, I * w, &cfg)? + hurwitz_zeta_cfg(s, -I * w, &cfg)?;
    let corr = cos_pi(z) / (z * cpow(w, 2.0 * z));
    let endpoint = sin_pi(z) * cpow(w, -(2.0 * z + 1.0));
    Ok(gamma(2.0 * z + 1.0)? / 4.0 * (h - corr + endpoint))
}

/// `∫_0^∞ 𝕽_z(2πv, w) dv` by graded Gauss quadrature on `[0, V]` and the
/// integrated large-`y` expansion beyond `V`.
pub fn raabe_integral(z: ComplexValue, w: ComplexValue, cfg: &PrecisionConfig) -> Result<QuadValue> {
    check_sum_domain(z, w)?;
    let rule = GaussLegendre::new(cfg.quad_order);
    let wn = w.norm();
    let v_max = 40.0 / (2.0 * PI * wn);
    let step = 0.1 / wn;
    let mut sum = CompensatedSum::new();
    let mut err = 0.0;
    let mut failure: Option<Error> = None;
    let mut eval = |v: f64| -> ComplexValue {
        match RaabeParams::new(z, 2.0 * PI * v, w).and_then(|p| raabe_direct(&p, cfg)) {
            Ok(q) => {
                err += q.error_estimate;
                q.value
            }
            Err(e) => {
                failure.get_or_insert(e);
                c(0.0)
            }
        }
    };
    // dyadic grading toward v = 0, then uniform panels
    let v_grade = step.min(v_max);
    let mut a = v_grade * 2f64.powi(-40);
    let mut cells = 0;
    while a < v_grade {
        let b = (2.0 * a).min(v_grade);
        sum.add(rule.integrate(a, b, &mut eval));
        a = b;
        cells += 1;
    }
    let (v, n) = integrate_panels(&rule, v_grade, v_max, |_| step, &mut eval);
    sum.add(v);
    cells += n;
    if let Some(e) = failure {
        return Err(e);
    }
    let cz = cos_pi(z);
    if cz != c(0.0) {
        let pref = -cz / cpow(w, 2.0 * z);
        let (t, omitted) = gamma_series(z, 2.0 * PI * w, v_max, |j| {
            let p = (2 * j - 1) as i32;
            Ok(c(1.0 / ((2 * j - 1) as f64 * v_max.powi(p))))
        })?;
        sum.add(pref * t);
        err += (pref * omitted).norm();
    }
    Ok(QuadValue { value: sum.value(), error_estimate: err, cells })
}

/// `−(Γ(2z+1)/4) w^{−(2z+1)} sin(πz)`.
pub fn raabe_integral_closed(z: ComplexValue, w: ComplexValue) -> Result<ComplexValue> {
    Ok(-gamma(2.0 * z + 1.0)? / 4.0 * cpow(w, -(2.0 * z + 1.0)) * sin_pi(z))
}

/// Checks `∫_0^∞ 𝕽_z(2πv, w) dv = −(Γ(2z+1)/4) w^{−(2z+1)} sin(πz)`.
pub fn raabe_integral_check(z: ComplexValue, w: ComplexValue, cfg: &PrecisionConfig) -> Result<IdentityCheckResult> {
    let lhs = raabe_integral(z, w, cfg)?;
    let rhs = raabe_integral_closed(z, w)?;
    let integer = as_integer(z).is_some();
    let sides = Sides {
        lhs: lhs.value,
        rhs,
        lhs_bound: lhs.error_estimate,
        rhs_bound: 0.0,
        diagnostics: identities::Diagnostics { terms: 0, cells: lhs.cells, notes: vec![] },
        abs_floor: if integer { Some(1e-6) } else { None },
        boundary_case: false,
    };
    Ok(identities::finish(IdentityId::RaabeInt, vec![("z".into(), z), ("w".into(), w)], sides, cfg))
}

/// `Σ_{n≥1} ∫_0^∞ t cos t/(t² + n²u²) dt = Σ_n G_0(nu)` with an asymptotic tail.
pub fn raabe_digamma_lhs(u: ComplexValue, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    if !(u.re > 0.0) {
        return Err(Error::domain(format!("requires Re(u) > 0, got {u}")));
    }
    let n0 = 8usize.max((40.0 / u.norm()).ceil() as usize);
    let mut sum = CompensatedSum::new();
    for n in 1..=n0 {
        sum.add(stable_g(0, n as f64 * u)?);
    }
    let a = c((n0 + 1) as f64);
    let (t, omitted) = gamma_series(c(0.0), u, (n0 + 1) as f64, |j| hurwitz_zeta_cfg(c(2.0 * j as f64), a, cfg))?;
    sum.add(-t);
    Ok(SeriesValue { value: sum.value(), tail_bound: omitted, terms: n0 })
}

/// `½{log(u/2π) − ½(ψ(iu/2π) + ψ(−iu/2π))}`.
pub fn raabe_digamma_rhs(u: ComplexValue) -> Result<ComplexValue> {
    let x = u / (2.0 * PI);
    Ok(0.5 * (x.ln() - 0.5 * (digamma(I * x)? + digamma(-I * x)?)))
}

pub fn raabe_digamma_identity(u: ComplexValue, cfg: &PrecisionConfig) -> Result<IdentityCheckResult> {
    let lhs = raabe_digamma_lhs(u, cfg)?;
    let rhs = raabe_digamma_rhs(u)?;
    let sides = Sides {
        lhs: lhs.value,
        rhs,
        lhs_bound: lhs.tail_bound,
        rhs_bound: 0.0,
        diagnostics: identities::Diagnostics { terms: lhs.terms, cells: 0, notes: vec![] },
        abs_floor: None,
        boundary_case: false,
    };
    Ok(identities::finish(IdentityId::RaabeDigamma, vec![("u".into(), u)], sides, cfg))
}
