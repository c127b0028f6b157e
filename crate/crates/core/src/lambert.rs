//! Lambert-type series, the divisor function, the Lipschitz summation formula
//! and the Hurwitz-zeta route for the shifted Lambert series.

use crate::error::{Error, Result};
use crate::numerics::{
    c, cpow, expm1, gamma, hurwitz_zeta_cfg, oscillatory_tail, pochhammer, riemann_zeta,
    CompensatedSum, ComplexValue, PrecisionConfig, SeriesValue, I,
};
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// `σ_s(n) = Σ_{d|n} d^s`.
pub fn divisor_sigma(s: ComplexValue, n: u64) -> ComplexValue {
    assert!(n >= 1, "divisor_sigma requires n >= 1");
    let mut sum = CompensatedSum::new();
    let mut d = 1u64;
    while d * d <= n {
        if n % d == 0 {
            sum.add(cpow(c(d as f64), s));
            let e = n / d;
            if e != d {
                sum.add(cpow(c(e as f64), s));
            }
        }
        d += 1;
    }
    sum.value()
}

/// The odd Dirichlet character modulo 4.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct DirichletChar4;

impl DirichletChar4 {
    pub fn value(self, n: i64) -> i32 {
        match n.rem_euclid(4) {
            1 => 1,
            3 => -1,
            _ => 0,
        }
    }
}

/// Parameters of `Σ_{n≥1} (n−a)^{s−1}/(e^{(n−a)y} − 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LambertParams {
    pub s: ComplexValue,
    pub y: ComplexValue,
    pub a: f64,
}

impl LambertParams {
    pub fn new(s: ComplexValue, y: ComplexValue, a: f64) -> Result<Self> {
        let p = LambertParams { s, y, a };
        p.validate()?;
        Ok(p)
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.y.re > 0.0) {
            return Err(Error::domain(format!("lambert series requires Re(y) > 0, got {}", self.y)));
        }
        if !(0.0..1.0).contains(&self.a) {
            return Err(Error::domain(format!("lambert shift requires 0 <= a < 1, got {}", self.a)));
        }
        Ok(())
    }
}

/// Sums `term(n)`, `n ≥ 1`, given `|term(n)| ≤ scale·x^p e^{−ρx}/(1 − e^{−ρx})` with
/// `x = n − offset`. The ratio of consecutive envelope values decreases in `x`,
/// so once it is below one the remainder is at most `env(x+1)/(1 − ratio)`.
fn envelope_sum<F>(mut term: F, offset: f64, p: f64, rho: f64, scale: f64, cfg: &PrecisionConfig) -> Result<SeriesValue>
where
    F: FnMut(u64) -> ComplexValue,
{
    if !(rho > 0.0) {
        return Err(Error::domain("series requires a positive decay rate"));
    }
    let env = |x: f64| scale * x.powf(p) * (-rho * x).exp() / (-(-rho * x).exp_m1());
    let mut sum = CompensatedSum::new();
    let mut last = 0.0;
    for n in 1..=cfg.max_series_terms as u64 {
        let t = term(n);
        sum.add(t);
        last = t.norm();
        let x = n as f64 - offset;
        let ratio = ((x + 1.0) / x).powf(p.max(0.0)) * (-rho).exp();
        if ratio < 0.9 {
            let bound = env(x + 1.0) / (1.0 - ratio);
            if bound <= 1e-3 * cfg.rel_tol * sum.value().norm() || bound <= cfg.tail_cut {
                return Ok(SeriesValue { value: sum.value(), tail_bound: bound, terms: n as usize });
            }
        }
    }
    Err(Error::Convergence { terms: cfg.max_series_terms, partial: sum.value(), last_term: last })
}

fn check_rate(y: ComplexValue) -> Result<()> {
    if !(y.re > 0.0) {
        return Err(Error::domain(format!("lambert series requires Re(y) > 0, got {y}")));
    }
    Ok(())
}

/// `Σ_{n≥1} (n−a)^{s−1}/(e^{(n−a)y} − 1)`.
pub fn lambert_shifted(p: &LambertParams, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    p.validate()?;
    let sm1 = p.s - 1.0;
    envelope_sum(
        |n| {
            let x = n as f64 - p.a;
            cpow(c(x), sm1) / expm1(x * p.y)
        },
        p.a,
        sm1.re,
        p.y.re,
        (PI * sm1.im.abs()).exp(),
        cfg,
    )
}

/// `Σ_{n≥1} n^{s−1}/(e^{ny − iφ} − 1)`.
pub fn lambert_phase(s: ComplexValue, y: ComplexValue, phi: f64, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    check_rate(y)?;
    let sm1 = s - 1.0;
    envelope_sum(
        |n| cpow(c(n as f64), sm1) / expm1(n as f64 * y - I * phi),
        0.0,
        sm1.re,
        y.re,
        1.0,
        cfg,
    )
}

/// `Σ_{n≥1} n^{s−1}/(e^{ny} + 1)`.
pub fn lambert_alternating(s: ComplexValue, y: ComplexValue, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    check_rate(y)?;
    let sm1 = s - 1.0;
    envelope_sum(
        |n| {
            let e = (-(n as f64) * y).exp();
            cpow(c(n as f64), sm1) * e / (1.0 + e)
        },
        0.0,
        sm1.re,
        y.re,
        2.0,
        cfg,
    )
}

/// `Σ_{n≥1} χ(n) n^{2m−1}/(e^{nβ} − 1)` with `χ` the character modulo 4.
pub fn lambert_char4(m: usize, beta: ComplexValue, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    if m < 2 {
        return Err(Error::domain(format!("character series requires m > 1, got {m}")));
    }
    check_rate(beta)?;
    let chi = DirichletChar4;
    let p = (2 * m - 1) as f64;
    envelope_sum(
        |n| match chi.value(n as i64) {
            0 => c(0.0),
            v => v as f64 * (n as f64).powf(p) / expm1(n as f64 * beta),
        },
        0.0,
        p,
        beta.re,
        1.0,
        cfg,
    )
}

/// `σ_{k}(1..=n)` for integer `k` by a divisor sieve.
pub fn sigma_table(k: u32, n: usize) -> Vec<f64> {
    let mut t = vec![0.0; n + 1];
    for d in 1..=n {
        let dk = (d as f64).powi(k as i32);
        let mut j = d;
        while j <= n {
            t[j] += dk;
            j += d;
        }
    }
    t
}

/// `Σ_{n≥1} σ_{2m}(n) e^{−ny}`, with `σ_{2m}(n) ≤ ζ(2m) n^{2m}` for the tail bound.
pub fn lambert_sigma2m(m: usize, y: ComplexValue, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    if m < 1 {
        return Err(Error::domain("lambert_sigma2m requires m >= 1"));
    }
    check_rate(y)?;
    let p = (2 * m) as f64;
    let rho = y.re;
    let zeta = riemann_zeta(c(p))?.re;
    // smallest N whose envelope bound is negligible, found before sieving
    let mut n_max = 16usize;
    loop {
        let x = n_max as f64;
        let ratio = ((x + 1.0) / x).powf(p) * (-rho).exp();
        if ratio < 1.0 {
            let bound = zeta * (x + 1.0).powf(p) * (-rho * (x + 1.0)).exp() / (1.0 - ratio);
            let lead = (-rho).exp();
            if bound <= 1e-3 * cfg.rel_tol * lead || bound <= cfg.tail_cut {
                break;
            }
        }
        n_max += 16;
        if n_max > cfg.max_series_terms {
            return Err(Error::Convergence { terms: n_max, partial: c(f64::NAN), last_term: f64::NAN });
        }
    }
    let sig = sigma_table(2 * m as u32, n_max);
    let mut sum = CompensatedSum::new();
    for (n, s) in sig.iter().enumerate().skip(1) {
        sum.add(*s * (-(n as f64) * y).exp());
    }
    let x = n_max as f64 + 1.0;
    let ratio = (x / (x - 1.0)).powf(p) * (-rho).exp();
    let bound = zeta * x.powf(p) * (-rho * x).exp() / (1.0 - ratio);
    Ok(SeriesValue { value: sum.value(), tail_bound: bound, terms: n_max })
}

/// `K ≥ 40/r` with `r = 2π·min(a, 1−a)` keeps the oscillatory tail expansion
/// well inside its radius.
fn oscillation_cutoff(a: f64, min: usize) -> usize {
    let d = a.min(1.0 - a);
    if d <= 0.0 {
        return min;
    }
    min.max((40.0 / (2.0 * PI * d)).ceil() as usize)
}

const TAIL_ORDER: usize = 60;

/// Periodic zeta `Σ_{k≥1} e^{2πiak} k^{−s}` for `Re s > 1`.
pub fn periodic_zeta(s: ComplexValue, a: f64, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    if !(s.re > 1.0) {
        return Err(Error::domain(format!("periodic zeta requires Re(s) > 1, got {s}")));
    }
    let a = a.rem_euclid(1.0);
    if a == 0.0 {
        return Ok(SeriesValue::exact(riemann_zeta(s)?));
    }
    let k_max = oscillation_cutoff(a, 32);
    let theta = 2.0 * PI * a;
    let mut sum = CompensatedSum::new();
    for k in 1..=k_max {
        sum.add(ComplexValue::from_polar(1.0, theta * k as f64) * cpow(c(k as f64), -s));
    }
    let k0 = (k_max + 1) as f64;
    let (tail, err) = oscillatory_tail(
        theta,
        |n| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sign * pochhammer(s, n) * cpow(c(k0), -s - n as f64)
        },
        None,
        TAIL_ORDER,
    )?;
    sum.add(ComplexValue::from_polar(1.0, theta * k0) * tail);
    certify(SeriesValue { value: sum.value(), tail_bound: err, terms: k_max }, cfg)
}

fn check_lipschitz(a: f64, s: ComplexValue, tau: ComplexValue) -> Result<()> {
    if !(0.0..1.0).contains(&a) {
        return Err(Error::domain(format!("Lipschitz formula requires 0 <= a < 1, got {a}")));
    }
    if !(s.re > 1.0) {
        return Err(Error::domain(format!("Lipschitz formula requires Re(s) > 1, got {s}")));
    }
    if !(tau.im > 0.0) {
        return Err(Error::domain(format!("Lipschitz formula requires Im(tau) > 0, got {tau}")));
    }
    Ok(())
}

/// `Σ_{n≥1} e^{2πiτ(n−a)} (n−a)^{s−1}`.
pub fn lipschitz_lhs(a: f64, s: ComplexValue, tau: ComplexValue, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    check_lipschitz(a, s, tau)?;
    let sm1 = s - 1.0;
    envelope_sum(
        |n| {
            let x = n as f64 - a;
            (2.0 * PI * I * tau * x).exp() * cpow(c(x), sm1)
        },
        a,
        sm1.re,
        2.0 * PI * tau.im,
        (PI * sm1.im.abs()).exp(),
        cfg,
    )
}

/// `Γ(s)/(−2πi)^s Σ_{k∈ℤ} e^{2πiak}(k+τ)^{−s}`: the terms `|k| ≤ K` directly and
/// both remainders `|k| > K` by their derivative expansions.
pub fn lipschitz_rhs(a: f64, s: ComplexValue, tau: ComplexValue, k: usize, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    check_lipschitz(a, s, tau)?;
    let k = k.max(oscillation_cutoff(a, 32));
    let theta = 2.0 * PI * a;
    let mut sum = CompensatedSum::new();
    sum.add(cpow(tau, -s));
    for j in 1..=k {
        let jf = j as f64;
        sum.add(ComplexValue::from_polar(1.0, theta * jf) * cpow(jf + tau, -s));
        sum.add(ComplexValue::from_polar(1.0, -theta * jf) * cpow(tau - jf, -s));
    }
    let k0 = (k + 1) as f64;
    let non_oscillatory = a == 0.0;
    let (up, e_up) = oscillatory_tail(
        theta,
        |n| {
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            sign * pochhammer(s, n) * cpow(k0 + tau, -s - n as f64)
        },
        non_oscillatory.then(|| cpow(k0 + tau, 1.0 - s) / (s - 1.0)),
        TAIL_ORDER,
    )?;
    let (down, e_down) = oscillatory_tail(
        -theta,
        |n| pochhammer(s, n) * cpow(tau - k0, -s - n as f64),
        non_oscillatory.then(|| -cpow(tau - k0, 1.0 - s) / (s - 1.0)),
        TAIL_ORDER,
    )?;
    sum.add(ComplexValue::from_polar(1.0, theta * k0) * up);
    sum.add(ComplexValue::from_polar(1.0, -theta * k0) * down);
    let pref = gamma(s)? / minus_two_pi_i_pow(s);
    certify(
        SeriesValue {
            value: pref * sum.value(),
            tail_bound: pref.norm() * (e_up + e_down),
            terms: 2 * k + 1,
        },
        cfg,
    )
}

/// Rejects a sum whose tail estimate exceeds the configured tolerance.
fn certify(v: SeriesValue, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    if v.tail_bound <= cfg.rel_tol * v.value.norm() + cfg.abs_tol {
        Ok(v)
    } else {
        Err(Error::Convergence { terms: v.terms, partial: v.value, last_term: v.tail_bound })
    }
}

/// `(−2πi)^s = exp(s(log 2π − iπ/2))` on the principal branch.
pub fn minus_two_pi_i_pow(s: ComplexValue) -> ComplexValue {
    (s * ComplexValue::new((2.0 * PI).ln(), -PI / 2.0)).exp()
}

/// `Γ(s)ζ(s)/y^s + (Γ(s)/y^s) Σ_{k≥1} [e^{2πiak}ζ(s, 1−2πik/y) + e^{−2πiak}ζ(s, 1+2πik/y)]`,
/// the Hurwitz-zeta form of the shifted Lambert series.
///
/// The `k`-sum decays like `k^{1−s}`; for `a = 0` it needs `Re s > 2`.
pub fn lambert_via_hurwitz(p: &LambertParams, k: usize, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    p.validate()?;
    let s = p.s;
    if !(s.re > 1.0) {
        return Err(Error::domain(format!("Hurwitz route requires Re(s) > 1, got {s}")));
    }
    if p.a == 0.0 && !(s.re > 2.0) {
        return Err(Error::domain(format!(
            "Hurwitz route with a = 0 requires Re(s) > 2 for the k-sum to converge, got {s}"
        )));
    }
    let k = k.max(oscillation_cutoff(p.a, 32));
    let cc = 2.0 * PI / p.y;
    let ic = I * cc;
    let theta = 2.0 * PI * p.a;
    let mut sum = CompensatedSum::new();
    sum.add(riemann_zeta(s)?);
    for j in 1..=k {
        let jf = j as f64;
        sum.add(ComplexValue::from_polar(1.0, theta * jf) * hurwitz_zeta_cfg(s, 1.0 - ic * jf, cfg)?);
        sum.add(ComplexValue::from_polar(1.0, -theta * jf) * hurwitz_zeta_cfg(s, 1.0 + ic * jf, cfg)?);
    }
    let k0 = (k + 1) as f64;
    let non_oscillatory = p.a == 0.0;
    let mut fail = None;
    let mut hz = |sn: ComplexValue, x: ComplexValue| match hurwitz_zeta_cfg(sn, x, cfg) {
        Ok(v) => v,
        Err(e) => {
            fail.get_or_insert(e);
            c(0.0)
        }
    };
    let up_int = if non_oscillatory { Some(-hz(s - 1.0, 1.0 - ic * k0) / ((s - 1.0) * ic)) } else { None };
    let (up, e_up) = oscillatory_tail(
        theta,
        |n| pochhammer(s, n) * ic.powu(n as u32) * hz(s + n as f64, 1.0 - ic * k0),
        up_int,
        TAIL_ORDER,
    )?;
    let down_int = if non_oscillatory { Some(hz(s - 1.0, 1.0 + ic * k0) / ((s - 1.0) * ic)) } else { None };
    let (down, e_down) = oscillatory_tail(
        -theta,
        |n| pochhammer(s, n) * (-ic).powu(n as u32) * hz(s + n as f64, 1.0 + ic * k0),
        down_int,
        TAIL_ORDER,
    )?;
    if let Some(e) = fail {
        return Err(e);
    }
    sum.add(ComplexValue::from_polar(1.0, theta * k0) * up);
    sum.add(ComplexValue::from_polar(1.0, -theta * k0) * down);
    let pref = gamma(s)? / cpow(p.y, s);
    Ok(SeriesValue {
        value: pref * sum.value(),
        tail_bound: pref.norm() * (e_up + e_down),
        terms: 2 * k + 1,
    })
}
