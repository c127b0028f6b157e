use num_complex::Complex64;
use std::f64::consts::PI;

/// The universal scalar.
pub type ComplexValue = Complex64;

pub(crate) const I: Complex64 = Complex64 { re: 0.0, im: 1.0 };

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// `sin(πx)` exact at integers and half-integers of the real part.
pub fn sin_pi(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return c(sin_pi_real(z.re));
    }
    (z * PI).sin()
}

/// `cos(πx)` exact at integers and half-integers of the real part.
pub fn cos_pi(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return c(sin_pi_real(z.re + 0.5));
    }
    (z * PI).cos()
}

fn sin_pi_real(x: f64) -> f64 {
    let r = x.rem_euclid(2.0);
    if r == 0.0 || r == 1.0 {
        0.0
    } else if r == 0.5 {
        1.0
    } else if r == 1.5 {
        -1.0
    } else if r < 0.5 {
        (PI * r).sin()
    } else if r < 1.5 {
        (PI * (1.0 - r)).sin()
    } else {
        -(PI * (2.0 - r)).sin()
    }
}

/// `e^z − 1` without cancellation near zero.
pub fn expm1(z: Complex64) -> Complex64 {
    if z.norm() > 0.5 {
        return z.exp() - 1.0;
    }
    let (s, co) = z.im.sin_cos();
    let em = z.re.exp_m1();
    let half = (0.5 * z.im).sin();
    Complex64::new(em * co - 2.0 * half * half, (em + 1.0) * s)
}

/// `cot z`, stable for large `|Im z|`.
pub fn cot(z: Complex64) -> Complex64 {
    if z.im == 0.0 {
        return c(1.0 / z.re.tan());
    }
    // cot z = i (e^{2iz} + 1)/(e^{2iz} − 1), using whichever exponential decays.
    if z.im > 0.0 {
        let e = (2.0 * I * z).exp();
        I * (e + 1.0) / (e - 1.0)
    } else {
        let e = (-2.0 * I * z).exp();
        I * (1.0 + e) / (1.0 - e)
    }
}

/// `x^p` for real `x > 0` on the principal branch.
pub fn pow_real_base(x: f64, p: Complex64) -> Complex64 {
    if p.im == 0.0 {
        return c(x.powf(p.re));
    }
    (p * x.ln()).exp()
}

/// Principal-branch `z^p`.
pub(crate) fn cpow(z: Complex64, p: Complex64) -> Complex64 {
    if z.im == 0.0 && z.re > 0.0 {
        return pow_real_base(z.re, p);
    }
    if z == Complex64::new(0.0, 0.0) {
        return c(0.0);
    }
    (p * z.ln()).exp()
}

pub(crate) fn is_nonpositive_integer(z: Complex64) -> bool {
    z.im == 0.0 && z.re <= 0.0 && z.re.fract() == 0.0
}

pub(crate) fn as_integer(z: Complex64) -> Option<i64> {
    if z.im == 0.0 && z.re.fract() == 0.0 && z.re.abs() < 9.0e15 {
        Some(z.re as i64)
    } else {
        None
    }
}
