use super::bernoulli::bernoulli_f64;
use super::cplx::{c, cpow, sin_pi};
use super::gamma::gamma;
use super::summation::CompensatedSum;
use super::PrecisionConfig;
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

/// Euler–Maclaurin evaluation of `Σ_{n≥0} (a+n)^{−s}` continued analytically in `s`.
///
/// Callers must exclude `s = 1` and `a` on the non-positive real axis.
pub(crate) fn hurwitz_zeta_unchecked(s: Complex64, a: Complex64, em_order: usize) -> Complex64 {
    let k_max = (em_order / 2).max(1);
    let need_re = 10.0 * s.im.abs() + 10.0;
    let need_abs = 1.6 * (s.norm() + em_order as f64);
    let mut n_direct = 0usize;
    while a.re + (n_direct as f64) < need_re || (a + n_direct as f64).norm() < need_abs {
        n_direct += 1;
    }

    let mut sum = CompensatedSum::new();
    for n in 0..n_direct {
        sum.add(cpow(a + n as f64, -s));
    }
    let x = a + n_direct as f64;
    let x_s = cpow(x, -s);
    sum.add(x * x_s / (s - 1.0));
    sum.add(0.5 * x_s);

    let inv_x = 1.0 / x;
    let inv_x2 = inv_x * inv_x;
    let mut poch = s; // (s)_{2k−1}
    let mut xp = x_s * inv_x; // x^{−s−2k+1}
    let mut fact = 2.0; // (2k)!
    for k in 1..=k_max {
        let b = bernoulli_f64(2 * k);
        sum.add(b / fact * poch * xp);
        let kk = k as f64;
        poch *= (s + (2.0 * kk - 1.0)) * (s + 2.0 * kk);
        xp *= inv_x2;
        fact *= (2.0 * kk + 1.0) * (2.0 * kk + 2.0);
    }
    sum.value()
}

/// Hurwitz zeta `ζ(s, a)` for `Re s > 1`.
pub fn hurwitz_zeta(s: Complex64, a: Complex64) -> Result<Complex64> {
    hurwitz_zeta_cfg(s, a, &PrecisionConfig::default())
}

pub(crate) fn hurwitz_zeta_cfg(s: Complex64, a: Complex64, cfg: &PrecisionConfig) -> Result<Complex64> {
    if !(s.re > 1.0) {
        return Err(Error::domain(format!("hurwitz_zeta requires Re(s) > 1, got s = {s}")));
    }
    if a.im == 0.0 && a.re <= 0.0 {
        return Err(Error::domain(format!(
            "hurwitz_zeta parameter a = {a} lies on the closed negative real axis"
        )));
    }
    Ok(hurwitz_zeta_unchecked(s, a, cfg.em_order))
}

/// Riemann zeta `ζ(s)` for `s ≠ 1`; functional equation for `Re s < 0`.
pub fn riemann_zeta(s: Complex64) -> Result<Complex64> {
    if s == c(1.0) {
        return Err(Error::Pole("riemann_zeta at s = 1".into()));
    }
    if s.re < 0.0 {
        // ζ(s) = 2^s π^{s−1} sin(πs/2) Γ(1−s) ζ(1−s)
        let sn = sin_pi(s * 0.5);
        if sn == c(0.0) {
            return Ok(c(0.0));
        }
        let t = 1.0 - s;
        let z1 = hurwitz_zeta_unchecked(t, c(1.0), 20);
        let pref = cpow(c(2.0), s) * cpow(c(PI), s - 1.0);
        return Ok(pref * sn * gamma(t)? * z1);
    }
    Ok(hurwitz_zeta_unchecked(s, c(1.0), 20))
}
