use super::bernoulli::bernoulli_f64;
use super::cplx::{c, is_nonpositive_integer, sin_pi};
use crate::error::{Error, Result};
use num_complex::Complex64;
use std::f64::consts::PI;

const LANCZOS_G: f64 = 7.0;
const LANCZOS: [f64; 9] = [
    0.999_999_999_999_809_9,
    676.520_368_121_885_1,
    -1_259.139_216_722_402_8,
    771.323_428_777_653_1,
    -176.615_029_162_140_6,
    12.507_343_278_686_905,
    -0.138_571_095_265_720_12,
    9.984_369_578_019_571_6e-6,
    1.505_632_735_149_311_6e-7,
];

/// Complex Γ(z), Lanczos approximation with reflection for `Re z < 1/2`.
pub fn gamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("gamma at {}", z.re)));
    }
    if z.im == 0.0 && z.re.fract() == 0.0 && z.re <= 171.0 {
        let mut f = 1.0;
        let mut k = 2.0;
        while k < z.re {
            f *= k;
            k += 1.0;
        }
        return Ok(c(f));
    }
    Ok(gamma_lanczos(z))
}

fn gamma_lanczos(z: Complex64) -> Complex64 {
    if z.re < 0.5 {
        let s = sin_pi(z);
        return PI / (s * gamma_lanczos(1.0 - z));
    }
    let z = z - 1.0;
    let mut x = c(LANCZOS[0]);
    for (i, &p) in LANCZOS.iter().enumerate().skip(1) {
        x += p / (z + i as f64);
    }
    let t = z + LANCZOS_G + 0.5;
    let log_part = (z + 0.5) * t.ln() - t;
    (2.0 * PI).sqrt() * log_part.exp() * x
}

/// Rising factorial `(z)_n = z(z+1)…(z+n−1)`.
pub fn pochhammer(z: Complex64, n: usize) -> Complex64 {
    let mut p = c(1.0);
    for k in 0..n {
        p *= z + k as f64;
    }
    p
}

/// Digamma ψ(z) by upward recurrence to `Re z ≥ 10` and the asymptotic series.
pub fn digamma(z: Complex64) -> Result<Complex64> {
    if is_nonpositive_integer(z) {
        return Err(Error::Pole(format!("digamma at {}", z.re)));
    }
    let mut z = z;
    let mut acc = c(0.0);
    while z.re < 10.0 {
        acc -= 1.0 / z;
        z += 1.0;
    }
    let z2 = 1.0 / (z * z);
    let mut zp = z2;
    let mut series = c(0.0);
    for k in 1..=12 {
        series += bernoulli_f64(2 * k) / (2.0 * k as f64) * zp;
        zp *= z2;
    }
    Ok(acc + z.ln() - 0.5 / z - series)
}
