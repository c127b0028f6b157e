use super::cplx::{c, I};
use super::quadrature::{integrate_panels, GaussLegendre};
use super::summation::CompensatedSum;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Hyperbolic sine integral `Shi(z) = Σ z^{2n+1}/((2n+1)(2n+1)!)`.
///
/// Accurate to a few ulps when `|z|` is moderate or `z` is near the real axis;
/// along the imaginary direction the series cancels like `e^{|z|}`.
pub fn shi(z: Complex64) -> Complex64 {
    let z2 = z * z;
    let mut p = z; // z^{2n+1}/(2n+1)!
    let mut sum = CompensatedSum::new();
    for n in 0..400 {
        let k = (2 * n + 1) as f64;
        let t = p / k;
        sum.add(t);
        if t.norm() <= 1e-18 * sum.value().norm() && n > 2 {
            break;
        }
        p *= z2 / ((k + 1.0) * (k + 2.0));
    }
    sum.value()
}

/// Hyperbolic cosine integral `Chi(z) = γ + log z + Σ z^{2n}/(2n(2n)!)`, principal log.
pub fn chi(z: Complex64) -> Result<Complex64> {
    if z.im == 0.0 && z.re <= 0.0 {
        return Err(Error::domain(format!("chi requires z off the closed negative real axis, got {z}")));
    }
    let z2 = z * z;
    let mut p = z2 / 2.0; // z^{2n}/(2n)!
    let mut sum = CompensatedSum::new();
    sum.add(c(EULER_GAMMA));
    sum.add(z.ln());
    for n in 1..400 {
        let k = (2 * n) as f64;
        let t = p / k;
        sum.add(t);
        if t.norm() <= 1e-18 * sum.value().norm() && n > 2 {
            break;
        }
        p *= z2 / ((k + 1.0) * (k + 2.0));
    }
    Ok(sum.value())
}

/// Evaluation route for [`stable_g_with`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GBranch {
    /// Series for `|w| ≤ 2`, asymptotic expansion when its optimal truncation
    /// error is below `1e-14` relative, Laplace-type quadrature otherwise.
    Auto,
    /// `sinh(w)Shi(w) − cosh(w)Chi(w) + Σ (2j−1)! w^{−2j}` from the power series.
    Series,
    /// `PV ∫_0^∞ t^{2m+1} e^{−t} / (w^{2m}(t² − w²)) dt`.
    Integral,
    /// `−w^{−2m} Σ_{n≥1} Γ(2m+2n)/w^{2n}` truncated at its smallest term.
    Asymptotic,
}

const SERIES_RADIUS: f64 = 2.0;
const ASYMPTOTIC_REL: f64 = 1e-14;

/// `G_m(w) = sinh(w)Shi(w) − cosh(w)Chi(w) + Σ_{j=1}^m (2j−1)! w^{−2j}` for `Re w > 0`.
pub fn stable_g(m: usize, w: Complex64) -> Result<Complex64> {
    stable_g_with(m, w, GBranch::Auto)
}

/// [`stable_g`] on a chosen branch.
pub fn stable_g_with(m: usize, w: Complex64, branch: GBranch) -> Result<Complex64> {
    if !(w.re > 0.0) {
        return Err(Error::domain(format!("G_m requires Re(w) > 0, got {w}")));
    }
    match branch {
        GBranch::Series => Ok(g_series(m, w)),
        GBranch::Integral => Ok(g_integral(m, w)),
        GBranch::Asymptotic => {
            let (v, err) = g_asymptotic(m, w);
            if err.is_finite() {
                Ok(v)
            } else {
                Err(Error::Truncation { requested: 1, optimal: 0 })
            }
        }
        GBranch::Auto => {
            if w.norm() <= SERIES_RADIUS {
                return Ok(g_series(m, w));
            }
            let (v, err) = g_asymptotic(m, w);
            if err <= ASYMPTOTIC_REL * v.norm() {
                Ok(v)
            } else {
                Ok(g_integral(m, w))
            }
        }
    }
}

/// Smallest real `w` at which [`GBranch::Auto`] takes the asymptotic branch for order `m`.
pub fn g_asymptotic_switch(m: usize) -> f64 {
    let accepts = |w: f64| {
        let (v, err) = g_asymptotic(m, Complex64::new(w, 0.0));
        err <= ASYMPTOTIC_REL * v.norm()
    };
    let (mut lo, mut hi) = (SERIES_RADIUS, 2.0 * SERIES_RADIUS);
    while !accepts(hi) {
        lo = hi;
        hi *= 2.0;
    }
    for _ in 0..60 {
        let mid = 0.5 * (lo + hi);
        if accepts(mid) {
            hi = mid;
        } else {
            lo = mid;
        }
    }
    hi
}

fn finite_part(m: usize, w: Complex64) -> Complex64 {
    let inv2 = 1.0 / (w * w);
    let mut p = inv2;
    let mut fact = 1.0; // (2j−1)!
    let mut sum = c(0.0);
    for j in 1..=m {
        sum += fact * p;
        p *= inv2;
        fact *= (2 * j) as f64 * (2 * j + 1) as f64;
    }
    sum
}

fn g_series(m: usize, w: Complex64) -> Complex64 {
    let sh = shi(w);
    let ch = chi(w).expect("Re(w) > 0 checked by caller");
    w.sinh() * sh - w.cosh() * ch + finite_part(m, w)
}

/// Returns the optimally truncated sum and the size of the first omitted term
/// (infinite if the series diverges from its first term).
fn g_asymptotic(m: usize, w: Complex64) -> (Complex64, f64) {
    let inv2 = 1.0 / (w * w);
    let mut fact = 1.0;
    for k in 2..=(2 * m + 1) {
        fact *= k as f64;
    }
    let mut term = fact * inv2.powu(m as u32 + 1); // Γ(2m+2)/w^{2m+2}
    let mut sum = CompensatedSum::new();
    let mut n = 1usize;
    loop {
        sum.add(term);
        let a = (2 * m + 2 * n) as f64;
        let next = term * (a * (a + 1.0)) * inv2;
        let s = sum.value();
        if next.norm() >= term.norm() {
            return (-s, next.norm().max(term.norm()));
        }
        if next.norm() <= 1e-17 * s.norm() || n > 10_000 {
            return (-s, next.norm());
        }
        term = next;
        n += 1;
    }
}

/// Laplace principal-value representation, continued to complex `w` with
/// `∫_0^L dt/(t−w) → log(L−w) − log w`.
fn g_integral(m: usize, w: Complex64) -> Complex64 {
    let rule = GaussLegendre::new(20);
    let two_m = 2 * m as i32;
    let inv_w = 1.0 / w;
    let f = |t: f64| -> Complex64 { t * (t * inv_w).powi(two_m) * (-t).exp() / (t + w) };
    let fw = 0.5 * (-w).exp();

    // support of t^{2m+1} e^{−t}
    let k = (2 * m + 1) as f64;
    let log_peak = k * k.ln() - k;
    let mut t_end = k.max(1.0);
    while k * t_end.ln() - t_end > log_peak - 46.0 {
        t_end += 1.0;
    }

    let mut sum = CompensatedSum::new();
    let dist = |t: f64| (c(t) - w).norm().min((c(t) + w).norm());
    if w.re >= 2.0 * t_end {
        let (v, _) = integrate_panels(&rule, 0.0, t_end, |t| (0.5 * dist(t)).min(1.0), |t| f(t) / (t - w));
        sum.add(v);
        if w.im != 0.0 {
            // straight path vs the continued principal value
            sum.add(-I * PI * w.im.signum() * fw);
        }
        return sum.value();
    }

    let l = 2.0 * w.re;
    let panels = 2 * ((w.re / w.re.min(1.0)).ceil() as usize).max(1);
    let width = l / panels as f64;
    for p in 0..panels {
        let a = p as f64 * width;
        let b = if p + 1 == panels { l } else { a + width };
        sum.add(rule.integrate(a, b, |t| (f(t) - fw) / (t - w)));
    }
    sum.add(fw * ((c(l) - w).ln() - w.ln()));
    let t_stop = t_end.max(l + 46.0);
    let (tail, _) = integrate_panels(&rule, l, t_stop, |t| (0.5 * dist(t)).min(2.0), |t| f(t) / (t - w));
    sum.add(tail);
    sum.value()
}
