use super::bernoulli::bernoulli_f64;
use super::cplx::c;
use super::PrecisionConfig;
use crate::error::{Error, Result};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

/// Neumaier (improved Kahan–Babuška) summation applied to each component.
#[derive(Debug, Clone, Copy, Default)]
pub struct CompensatedSum {
    sum: Complex64,
    comp: Complex64,
}

fn two_sum(s: f64, x: f64, comp: &mut f64) -> f64 {
    let t = s + x;
    if s.abs() >= x.abs() {
        *comp += (s - t) + x;
    } else {
        *comp += (x - t) + s;
    }
    t
}

impl CompensatedSum {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn add(&mut self, x: Complex64) {
        self.sum.re = two_sum(self.sum.re, x.re, &mut self.comp.re);
        self.sum.im = two_sum(self.sum.im, x.im, &mut self.comp.im);
    }

    pub fn value(&self) -> Complex64 {
        self.sum + self.comp
    }
}

/// A series value with a bound on the neglected remainder.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SeriesValue {
    pub value: Complex64,
    pub tail_bound: f64,
    pub terms: usize,
}

impl SeriesValue {
    pub fn exact(value: Complex64) -> Self {
        SeriesValue { value, tail_bound: 0.0, terms: 0 }
    }
}

/// Compensated summation of `terms(0), terms(1), …`, stopping once three
/// consecutive terms fall below `abs_tol + rel_tol·|S|`.
pub fn sum_accelerated<F>(mut terms: F, cfg: &PrecisionConfig) -> Result<SeriesValue>
where
    F: FnMut(usize) -> Complex64,
{
    sum_with_tail(&mut terms, |_: usize, _: Complex64| None, cfg)
}

/// Like [`sum_accelerated`], but `tail(n, partial)` may return an estimate
/// `(Σ_{k≥n} terms(k), bound)`; summation stops as soon as the bound is within tolerance.
pub fn sum_with_tail<F, T>(mut terms: F, mut tail: T, cfg: &PrecisionConfig) -> Result<SeriesValue>
where
    F: FnMut(usize) -> Complex64,
    T: FnMut(usize, Complex64) -> Option<(Complex64, f64)>,
{
    let mut sum = CompensatedSum::new();
    let mut small_run = 0;
    let mut last = 0.0;
    for n in 0..cfg.max_series_terms {
        let t = terms(n);
        if !(t.re.is_finite() && t.im.is_finite()) {
            return Err(Error::Convergence { terms: n, partial: sum.value(), last_term: f64::INFINITY });
        }
        sum.add(t);
        last = t.norm();
        let s = sum.value();
        let tol = cfg.abs_tol + cfg.rel_tol * s.norm();
        if let Some((tv, bound)) = tail(n + 1, s) {
            if bound <= tol {
                sum.add(tv);
                return Ok(SeriesValue { value: sum.value(), tail_bound: bound, terms: n + 1 });
            }
        }
        if last <= tol {
            small_run += 1;
            if small_run >= 3 {
                return Ok(SeriesValue { value: s, tail_bound: last, terms: n + 1 });
            }
        } else {
            small_run = 0;
        }
    }
    Err(Error::Convergence { terms: cfg.max_series_terms, partial: sum.value(), last_term: last })
}

/// `Σ_{j≥0} e^{iθj} g(K+j)` from the derivatives `deriv(n) = g⁽ⁿ⁾(K)`.
///
/// For `θ ∉ 2πℤ` this uses `1/(1 − q e^D) = Σ u_n Dⁿ`, `q = e^{iθ}`; for
/// `θ ∈ 2πℤ` it is the Euler–Maclaurin tail and `integral` must carry `∫_K^∞ g`.
/// Terms are taken until the smallest one; its size is returned as the error.
pub fn oscillatory_tail<D>(
    theta: f64,
    mut deriv: D,
    integral: Option<Complex64>,
    max_order: usize,
) -> Result<(Complex64, f64)>
where
    D: FnMut(usize) -> Complex64,
{
    let r = theta.rem_euclid(2.0 * PI);
    let dist = r.min(2.0 * PI - r);
    let mut sum = CompensatedSum::new();
    let mut prev = f64::INFINITY;
    let mut err = f64::INFINITY;
    if dist < 1e-12 {
        let integral = integral.ok_or_else(|| {
            Error::spec("non-oscillatory tail requires the integral of the summand")
        })?;
        sum.add(integral);
        sum.add(0.5 * deriv(0));
        let mut fact = 2.0;
        for j in 1..=max_order.min(30) {
            let term = -bernoulli_f64(2 * j) / fact * deriv(2 * j - 1);
            let mag = term.norm();
            if mag > prev {
                break;
            }
            sum.add(term);
            err = mag;
            prev = mag;
            if mag <= 1e-18 * sum.value().norm() {
                break;
            }
            let jj = j as f64;
            fact *= (2.0 * jj + 1.0) * (2.0 * jj + 2.0);
        }
        return Ok((sum.value(), err));
    }
    let q = Complex64::from_polar(1.0, theta);
    let inv = 1.0 / (c(1.0) - q);
    let mut u: Vec<Complex64> = vec![inv];
    let mut inv_fact = vec![1.0f64];
    for n in 1..=max_order {
        inv_fact.push(inv_fact[n - 1] / n as f64);
    }
    let umax = u[0].norm();
    sum.add(u[0] * deriv(0));
    err = (u[0] * deriv(0)).norm();
    prev = err;
    let mut rising = 0;
    let mut small = 0;
    for n in 1..=max_order {
        let mut acc = c(0.0);
        for (j, uj) in u.iter().enumerate() {
            acc += uj * inv_fact[n - j];
        }
        let un = q * inv * acc;
        u.push(un);
        // coefficients that vanish by symmetry (e.g. q = −1) carry no information
        if un.norm() <= 1e-13 * umax * (1.0 / dist).powi(n as i32) {
            continue;
        }
        let term = un * deriv(n);
        let mag = term.norm();
        if mag > prev {
            rising += 1;
            if rising >= 2 {
                break;
            }
            continue;
        }
        rising = 0;
        sum.add(term);
        err = mag;
        prev = mag;
        if mag <= 1e-18 * sum.value().norm() {
            small += 1;
            if small >= 2 {
                break;
            }
        } else {
            small = 0;
        }
    }
    Ok((sum.value(), err))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::zeta::riemann_zeta;

    #[test]
    fn geometric_series() {
        let cfg = PrecisionConfig::default();
        let r = sum_accelerated(|n| c(0.5f64.powi(n as i32)), &cfg).unwrap();
        assert!((r.value - c(2.0)).norm() < 1e-15);
        let r = sum_accelerated(|n| c(0.5f64.powi(n as i32 + 1)), &cfg).unwrap();
        assert!((r.value - c(1.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_sequence() {
        let r = sum_accelerated(|_| c(0.0), &PrecisionConfig::default()).unwrap();
        assert_eq!(r.value, c(0.0));
        assert_eq!(r.terms, 3);
    }

    #[test]
    fn inverse_squares_with_em_tail() {
        let cfg = PrecisionConfig::default();
        let f = |k: f64| 1.0 / (k * k);
        let r = sum_with_tail(
            |n| c(f(n as f64 + 1.0)),
            |n, _| {
                if n < 20 {
                    return None;
                }
                let k = n as f64 + 1.0;
                // g⁽ʲ⁾(k) = (−1)^j (j+1)! / k^{j+2}
                let d = move |j: usize| {
                    let mut f = 1.0;
                    for i in 2..=j + 1 {
                        f *= i as f64;
                    }
                    let sign = if j % 2 == 0 { 1.0 } else { -1.0 };
                    c(sign * f / k.powi(j as i32 + 2))
                };
                oscillatory_tail(0.0, d, Some(c(1.0 / k)), 20).ok()
            },
            &cfg,
        )
        .unwrap();
        let z2 = riemann_zeta(c(2.0)).unwrap();
        assert!((r.value - z2).norm() / z2.norm() < 1e-14);
        assert!(r.terms < 30);
    }

    #[test]
    fn oscillatory_tail_alternating_harmonic() {
        // Σ_{k≥K} (−1)^{k−K}/k against a long direct sum pairing terms.
        let k0 = 40.0;
        let d = |n: usize| {
            let mut f = 1.0;
            for i in 2..=n {
                f *= i as f64;
            }
            let sign = if n % 2 == 0 { 1.0 } else { -1.0 };
            c(sign * f / (k0 as f64).powi(n as i32 + 1))
        };
        let (v, err) = oscillatory_tail(PI, d, None, 60).unwrap();
        // pairing consecutive terms: Σ_j 1/((K+2j)(K+2j+1)), with an integral tail
        let mut paired = 0.0;
        let n = 200_000;
        for j in 0..n {
            let a = k0 + 2.0 * j as f64;
            paired += 1.0 / (a * (a + 1.0));
        }
        let end = k0 + 2.0 * n as f64;
        paired += 0.5 * (1.0 / end).ln_1p() + 0.5 / (end * (end + 1.0));
        assert!((v.re - paired).abs() < 1e-13, "{} vs {paired}", v.re);
        assert!((v.re - 0.012_656_201_232_748_766).abs() < 1e-16);
        assert!(v.im.abs() < 1e-15);
        assert!(err < 1e-15);
    }

    #[test]
    fn compensated_beats_naive() {
        let mut s = CompensatedSum::new();
        s.add(c(1.0));
        for _ in 0..10 {
            s.add(c(1e-16));
        }
        s.add(c(-1.0));
        assert!((s.value().re - 1e-15).abs() < 1e-30);
    }
}
