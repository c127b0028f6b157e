use super::{finish, Diagnostics, IdentityCheckResult, IdentityId, Params, Sides};
use crate::error::{Error, Result};
use crate::lambert::{
    lambert_alternating, lambert_char4, lambert_phase, lambert_shifted, lambert_sigma2m,
    lambert_via_hurwitz, lipschitz_lhs, lipschitz_rhs, periodic_zeta, sigma_table, LambertParams,
};
use crate::numerics::{
    as_integer, bernoulli_f64, c, cos_pi, cpow, gamma, riemann_zeta, sin_pi, stable_g,
    CompensatedSum, ComplexValue, PrecisionConfig, SeriesValue, I,
};
use crate::pv_quad::{pv_integral, PvIntegralSpec, PvKernel};
use crate::raabe::{
    raabe_digamma_identity, raabe_closed_integer, raabe_direct, raabe_integral_check, raabe_sum,
    raabe_sum_closed, RaabeParams,
};
use std::f64::consts::PI;

fn get(p: &Params, name: &str) -> ComplexValue {
    p[name]
}

fn real(p: &Params, name: &str) -> Result<f64> {
    let v = get(p, name);
    if v.im != 0.0 {
        return Err(Error::spec(format!("parameter '{name}' must be real, got {v}")));
    }
    Ok(v.re)
}

fn int(p: &Params, name: &str) -> Result<i64> {
    as_integer(get(p, name))
        .ok_or_else(|| Error::spec(format!("parameter '{name}' must be an integer, got {}", get(p, name))))
}

fn positive_int(p: &Params, name: &str, min: i64) -> Result<usize> {
    let m = int(p, name)?;
    if m < min {
        return Err(Error::spec(format!("parameter '{name}' must be >= {min}, got {m}")));
    }
    Ok(m as usize)
}

fn odd_above_one(p: &Params) -> Result<usize> {
    let m = positive_int(p, "m", 2)?;
    if m % 2 == 0 {
        return Err(Error::spec(format!("m must be odd, got {m}")));
    }
    Ok(m)
}

fn positive_re(v: ComplexValue, name: &str) -> Result<()> {
    if !(v.re > 0.0) {
        return Err(Error::spec(format!("Re({name}) must be positive, got {v}")));
    }
    Ok(())
}

fn shift(p: &Params) -> Result<f64> {
    let a = real(p, "a")?;
    if !(0.0..1.0).contains(&a) {
        return Err(Error::spec(format!("shift a must lie in [0, 1), got {a}")));
    }
    Ok(a)
}

fn echo(p: &Params) -> Vec<(String, ComplexValue)> {
    p.iter().map(|(k, v)| (k.clone(), *v)).collect()
}

/// Accumulates side values, remainder bounds and term counts.
#[derive(Default)]
struct Side {
    bound: f64,
    terms: usize,
    cells: usize,
}

impl Side {
    fn series(&mut self, s: SeriesValue) -> ComplexValue {
        self.bound += s.tail_bound;
        self.terms += s.terms;
        s.value
    }
}

fn sides(lhs: ComplexValue, rhs: ComplexValue, l: Side, r: Side) -> Sides {
    Sides {
        lhs,
        rhs,
        lhs_bound: l.bound,
        rhs_bound: r.bound,
        diagnostics: Diagnostics { terms: l.terms + r.terms, cells: l.cells + r.cells, notes: vec![] },
        abs_floor: None,
        boundary_case: false,
    }
}

fn ipow(z: ComplexValue, n: i64) -> ComplexValue {
    if n >= 0 {
        z.powu(n as u32)
    } else {
        1.0 / z.powu((-n) as u32)
    }
}

fn lambert(s: ComplexValue, y: ComplexValue, a: f64, cfg: &PrecisionConfig) -> Result<SeriesValue> {
    lambert_shifted(&LambertParams::new(s, y, a)?, cfg)
}

fn fact(n: usize) -> f64 {
    (1..=n).map(|k| k as f64).product()
}

pub(super) fn evaluate(id: IdentityId, p: &Params, cfg: &PrecisionConfig) -> Result<IdentityCheckResult> {
    use IdentityId::*;
    let sides = match id {
        RamZetaOdd => ram_zeta_odd(p, cfg)?,
        RamGen => ram_gen(p, cfg)?,
        RamShifted => ram_shifted(p, cfg)?,
        HybridHalf => hybrid_half(p, cfg)?,
        ClosedOdd => closed_odd(p, cfg)?,
        ClosedM1 => closed_m1(cfg)?,
        QuarterSum => quarter_sum(p, cfg)?,
        QuarterPv => quarter_pv(p, cfg)?,
        Sigma2m => sigma_2m(p, cfg)?,
        RaabeDigamma => {
            let u = get(p, "u");
            positive_re(u, "u")?;
            return raabe_digamma_identity(u, cfg);
        }
        RaabeSum => raabe_sum_sides(p, cfg)?,
        RaabeInt => {
            let (z, w) = (get(p, "z"), get(p, "w"));
            positive_re(z, "z")?;
            positive_re(w, "w")?;
            return raabe_integral_check(z, w, cfg);
        }
        RaabeClosed => raabe_closed_sides(p, cfg)?,
        Lipschitz => lipschitz_sides(p, cfg)?,
        LambertRoutes => lambert_routes(p, cfg)?,
        Glaisher => glaisher(p, cfg)?,
        Schlomilch => schlomilch(cfg)?,
    };
    Ok(finish(id, echo(p), sides, cfg))
}

/// `α^{−m}{½ζ(2m+1) + Σ n^{−2m−1}/(e^{2nα}−1)} = (−β)^{−m}{…β…}
///  − 2^{2m} Σ_{k=0}^{m+1} (−1)^k B_{2k}B_{2m+2−2k}/((2k)!(2m+2−2k)!) α^{m+1−k}β^k`, `αβ = π²`.
fn ram_zeta_odd(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let m = int(p, "m")?;
    if m == 0 {
        return Err(Error::spec("m must be nonzero"));
    }
    let alpha = get(p, "alpha");
    positive_re(alpha, "alpha")?;
    let beta = PI * PI / alpha;
    let (mut l, mut r) = (Side::default(), Side::default());
    let z = riemann_zeta(c((2 * m + 1) as f64))?;
    let s = c((-2 * m) as f64);
    let la = l.series(lambert(s, 2.0 * alpha, 0.0, cfg)?);
    let lb = r.series(lambert(s, 2.0 * beta, 0.0, cfg)?);
    let lhs = ipow(alpha, -m) * (0.5 * z + la);
    let mut poly = CompensatedSum::new();
    if m >= -1 {
        let top = (m + 1) as usize;
        for k in 0..=top {
            let sign = if k % 2 == 0 { 1.0 } else { -1.0 };
            let coef = sign * bernoulli_f64(2 * k) * bernoulli_f64(2 * top - 2 * k) / (fact(2 * k) * fact(2 * top - 2 * k));
            poly.add(coef * ipow(alpha, (top - k) as i64) * ipow(beta, k as i64));
        }
    }
    let rhs = ipow(-beta, -m) * (0.5 * z + lb) - 4f64.powi(m as i32) * poly.value();
    Ok(sides(lhs, rhs, l, r))
}

/// `e^{iπs/2}` with exact values at integer `s`.
fn half_phase(s: ComplexValue) -> ComplexValue {
    cos_pi(s / 2.0) + I * sin_pi(s / 2.0)
}

fn pv_term(spec: PvIntegralSpec, side: &mut Side, cfg: &PrecisionConfig) -> Result<ComplexValue> {
    let q = pv_integral(&spec, cfg)?;
    side.bound += q.error_estimate;
    side.cells += q.cells;
    Ok(q.value)
}

fn check_ram_s(s: ComplexValue) -> Result<bool> {
    if !(s.re > 1.0) {
        return Err(Error::spec(format!("Re(s) must exceed 1 for the series to converge, got {s}")));
    }
    Ok(!(s.re > 2.0))
}

/// `α^{s/2}{Γ(s)ζ(s)/(2π)^s + cos(πs/2) Σ n^{s−1}/(e^{nα}−1)}
///  = β^{s/2}{cos(πs/2) Γ(s)ζ(s)/(2π)^s + Σ n^{s−1}/(e^{nβ}−1) − sin(πs/2) PV∫ x^{s−1}/(e^{2πx}−1) cot(βx/2) dx}`.
fn ram_gen(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let s = get(p, "s");
    let boundary = check_ram_s(s)?;
    let alpha = get(p, "alpha");
    positive_re(alpha, "alpha")?;
    let beta = 4.0 * PI * PI / alpha;
    let (mut l, mut r) = (Side::default(), Side::default());
    let gz = gamma(s)? * riemann_zeta(s)? / cpow(c(2.0 * PI), s);
    let (cs, sn) = (cos_pi(s / 2.0), sin_pi(s / 2.0));
    let lhs = cpow(alpha, s / 2.0) * (gz + cs * l.series(lambert(s, alpha, 0.0, cfg)?));
    let pv = if sn == c(0.0) {
        c(0.0)
    } else {
        pv_term(PvIntegralSpec::new(PvKernel::RamanujanCot, s, beta, 0.0), &mut r, cfg)?
    };
    let rhs = cpow(beta, s / 2.0) * (cs * gz + r.series(lambert(s, beta, 0.0, cfg)?) - sn * pv);
    let mut out = sides(lhs, rhs, l, r);
    out.boundary_case = boundary;
    Ok(out)
}

/// Both sides of the shifted formula, returned separately for reuse.
pub(crate) struct ShiftedParts {
    pub lhs: ComplexValue,
    pub rhs: ComplexValue,
    l: Side,
    r: Side,
}

pub(crate) fn ram_shifted_parts(a: f64, s: ComplexValue, alpha: ComplexValue, cfg: &PrecisionConfig) -> Result<ShiftedParts> {
    let beta = 4.0 * PI * PI / alpha;
    let (mut l, mut r) = (Side::default(), Side::default());
    let g2 = gamma(s)? / cpow(c(2.0 * PI), s);
    let (ep, em) = (half_phase(s), 1.0 / half_phase(s));
    let theta = 2.0 * PI * a;
    let plus = l.series(lambert_phase(s, alpha, theta, cfg)?);
    let minus = l.series(lambert_phase(s, alpha, -theta, cfg)?);
    let lhs = cpow(alpha, s / 2.0) * (g2 * riemann_zeta(s)? + 0.5 * (ep * plus + em * minus));
    // Σ_k cos(πs/2 + 2πak)/k^s = ½[e^{iπs/2}P(s, a) + e^{−iπs/2}P(s, 1−a)]
    let cos_sum = 0.5 * (ep * r.series(periodic_zeta(s, a, cfg)?) + em * r.series(periodic_zeta(s, 1.0 - a, cfg)?));
    let shifted = r.series(lambert(s, beta, a, cfg)?);
    let vanishing = sin_pi(s / 2.0) == c(0.0) && (a == 0.0 || a == 0.5);
    let pv = if vanishing {
        c(0.0)
    } else {
        pv_term(PvIntegralSpec::new(PvKernel::ShiftedCot, s, beta, a), &mut r, cfg)?
    };
    let rhs = cpow(beta, s / 2.0) * (g2 * cos_sum + shifted - pv);
    Ok(ShiftedParts { lhs, rhs, l, r })
}

fn ram_shifted(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let a = shift(p)?;
    let s = get(p, "s");
    let boundary = check_ram_s(s)?;
    let alpha = get(p, "alpha");
    positive_re(alpha, "alpha")?;
    let parts = ram_shifted_parts(a, s, alpha, cfg)?;
    let mut out = sides(parts.lhs, parts.rhs, parts.l, parts.r);
    out.boundary_case = boundary;
    Ok(out)
}

/// `α^m Σ n^{2m−1}/(e^{nα}+1) + (−β)^m Σ (n−½)^{2m−1}/(e^{(n−½)β}−1)
///  = −{α^m − (2^{1−2m}−1)(−β)^m} B_{2m}/(4m)`.
fn hybrid_half(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let m = positive_int(p, "m", 1)?;
    let alpha = get(p, "alpha");
    positive_re(alpha, "alpha")?;
    let beta = 4.0 * PI * PI / alpha;
    let (mut l, r) = (Side::default(), Side::default());
    let s = c(2.0 * m as f64);
    let am = alpha.powu(m as u32);
    let bm = (-beta).powu(m as u32);
    let lhs = am * l.series(lambert_alternating(s, alpha, cfg)?) + bm * l.series(lambert(s, beta, 0.5, cfg)?);
    let b2m = bernoulli_f64(2 * m);
    let rhs = -(am - (2f64.powi(1 - 2 * m as i32) - 1.0) * bm) * b2m / (4.0 * m as f64);
    let mut out = sides(lhs, rhs, l, r);
    out.boundary_case = m == 1;
    if m == 1 {
        out.diagnostics.notes.push("boundary case: s = 2 lies on the edge of Re(s) > 2".into());
    }
    Ok(out)
}

/// `Σ n^{2m−1}/(e^{2nπ}+1) − 2^{1−2m} Σ n^{2m−1}/(e^{nπ}−1) = −(1+2^{1−2m}) B_{2m}/(4m)`.
fn closed_odd(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let m = odd_above_one(p)?;
    let (mut l, r) = (Side::default(), Side::default());
    let s = c(2.0 * m as f64);
    let k = 2f64.powi(1 - 2 * m as i32);
    let lhs = l.series(lambert_alternating(s, c(2.0 * PI), cfg)?) - k * l.series(lambert(s, c(PI), 0.0, cfg)?);
    let rhs = c(-(1.0 + k) * bernoulli_f64(2 * m) / (4.0 * m as f64));
    Ok(sides(lhs, rhs, l, r))
}

/// `Σ n/(e^{2nπ}+1) − ½ Σ n/(e^{nπ}−1) = −3/48 + 1/(8π)`.
fn closed_m1(cfg: &PrecisionConfig) -> Result<Sides> {
    let (mut l, r) = (Side::default(), Side::default());
    let lhs = l.series(lambert_alternating(c(2.0), c(2.0 * PI), cfg)?) - 0.5 * l.series(lambert(c(2.0), c(PI), 0.0, cfg)?);
    let rhs = c(-3.0 / 48.0 + 1.0 / (8.0 * PI));
    Ok(sides(lhs, rhs, l, r))
}

/// `α^m 2^{4m−1}{Γ(2m)ζ(2m)/(2π)^{2m} + (−1)^{m+1} Σ n^{2m−1}/(e^{2nα}+1)}
///  = β^m{(−1)^{m+1}Γ(2m)ζ(2m)(2^{2m−1}−1)/(2π)^{2m} + Σ (4n−1)^{2m−1}/(e^{(4n−1)β/4}−1) + Σ (4n−3)^{2m−1}/(e^{(4n−3)β/4}−1)}`.
fn quarter_sum(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let m = positive_int(p, "m", 2)?;
    let alpha = get(p, "alpha");
    positive_re(alpha, "alpha")?;
    let beta = 4.0 * PI * PI / alpha;
    let (mut l, mut r) = (Side::default(), Side::default());
    let s = c(2.0 * m as f64);
    let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
    let gz = gamma(s)?.re * riemann_zeta(s)?.re / (2.0 * PI).powi(2 * m as i32);
    let lhs = alpha.powu(m as u32)
        * 2f64.powi(4 * m as i32 - 1)
        * (gz + sign * l.series(lambert_alternating(s, 2.0 * alpha, cfg)?));
    // (4n−1)^{2m−1}/(e^{(4n−1)β/4}−1) = 4^{2m−1}(n−¼)^{2m−1}/(e^{(n−¼)β}−1)
    let scale = 4f64.powi(2 * m as i32 - 1);
    let minus_one = scale * r.series(lambert(s, beta, 0.25, cfg)?);
    let minus_three = scale * r.series(lambert(s, beta, 0.75, cfg)?);
    let rhs = beta.powu(m as u32) * (sign * gz * (2f64.powi(2 * m as i32 - 1) - 1.0) + minus_one + minus_three);
    Ok(sides(lhs, rhs, l, r))
}

/// `PV∫_0^∞ sech(2πx) cot(2βx) x^{2m−1} dx = (−1)^{m+1} 4^{1−2m} Σ χ(n) n^{2m−1}/(e^{nβ}−1)`.
fn quarter_pv(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let m = positive_int(p, "m", 2)?;
    let beta = get(p, "beta");
    positive_re(beta, "beta")?;
    let (mut l, mut r) = (Side::default(), Side::default());
    let lhs = pv_term(PvIntegralSpec::new(PvKernel::SechCot, c(2.0 * m as f64), beta, 0.0), &mut l, cfg)?;
    let sign = if m % 2 == 0 { -1.0 } else { 1.0 };
    let rhs = sign * 4f64.powi(1 - 2 * m as i32) * r.series(lambert_char4(m, beta, cfg)?);
    Ok(sides(lhs, rhs, l, r))
}

/// Number of `σ_{2m}(n) G_m(4π²n/y)` terms summed directly before switching
/// to the large-argument expansion of `G_m`.
const SIGMA_DIRECT_TERMS: usize = 200;

/// `Σ_{n≥1} σ_{2m}(n) G_m(c n)` for `Re c > 0`, with
/// `G_m(w) ~ −Σ_{j>m} (2j−1)! w^{−2j}` and `Σ_n σ_{2m}(n) n^{−2j} = ζ(2j)ζ(2j−2m)` for the remainder.
pub(crate) fn sigma_g_sum(m: usize, cst: ComplexValue) -> Result<SeriesValue> {
    sigma_g_sum_order(m, m, cst)
}

/// As [`sigma_g_sum`] with `G_k` in place of `G_m`, `k ≥ m`.
pub(crate) fn sigma_g_sum_order(m: usize, k: usize, cst: ComplexValue) -> Result<SeriesValue> {
    let n0 = SIGMA_DIRECT_TERMS;
    let sig = sigma_table(2 * m as u32, n0);
    let mut head = CompensatedSum::new();
    for (n, s) in sig.iter().enumerate().skip(1) {
        head.add(*s * stable_g(k, cst * n as f64)?);
    }
    let mut tail = CompensatedSum::new();
    let inv2 = 1.0 / (cst * cst);
    let mut pw = inv2.powu(k as u32 + 1);
    let mut fct = fact(2 * k + 1);
    let mut prev = f64::INFINITY;
    let mut omitted = 0.0;
    for j in (k + 1)..(k + 60) {
        let sj = 2 * j;
        let full = riemann_zeta(c(sj as f64))?.re * riemann_zeta(c((sj - 2 * m) as f64))?.re;
        let mut part = CompensatedSum::new();
        for (n, s) in sig.iter().enumerate().skip(1).rev() {
            part.add(c(*s * (n as f64).powi(-(sj as i32))));
        }
        let rem = full - part.value().re;
        let term = -fct * pw * rem;
        // envelope of the remainder, independent of cancellation in `rem`
        let env = fct * pw.norm() * (n0 as f64).powi(2 * m as i32 + 1 - sj as i32);
        if env > prev {
            break;
        }
        tail.add(term);
        omitted = term.norm();
        prev = env;
        if env <= 1e-18 * head.value().norm() {
            break;
        }
        pw *= inv2;
        fct *= (sj + 1) as f64 * (sj + 2) as f64;
    }
    head.add(tail.value());
    Ok(SeriesValue { value: head.value(), tail_bound: omitted, terms: n0 })
}

/// `Σ σ_{2m}(n)e^{−ny} − (2m)!ζ(2m+1)/y^{2m+1} + B_{2m}/(2my)
///  = (−1)^m (2/π)(2π/y)^{2m+1} Σ σ_{2m}(n) G_m(4π²n/y)`.
fn sigma_2m(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let m = positive_int(p, "m", 1)?;
    let y = get(p, "y");
    positive_re(y, "y")?;
    let (mut l, mut r) = (Side::default(), Side::default());
    let lead = fact(2 * m) * riemann_zeta(c((2 * m + 1) as f64))?.re / y.powu(2 * m as u32 + 1);
    let lhs = l.series(lambert_sigma2m(m, y, cfg)?) - lead + bernoulli_f64(2 * m) / (2.0 * m as f64 * y);
    let sign = if m % 2 == 0 { 1.0 } else { -1.0 };
    let pref = sign * (2.0 / PI) * (2.0 * PI / y).powu(2 * m as u32 + 1);
    let rhs = pref * r.series(sigma_g_sum(m, 4.0 * PI * PI / y)?);
    r.bound *= pref.norm();
    Ok(sides(lhs, rhs, l, r))
}

fn raabe_sum_sides(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let (z, w) = (get(p, "z"), get(p, "w"));
    positive_re(z, "z")?;
    positive_re(w, "w")?;
    let (mut l, r) = (Side::default(), Side::default());
    let lhs = l.series(raabe_sum(z, w, cfg)?);
    let rhs = raabe_sum_closed(z, w)?;
    Ok(sides(lhs, rhs, l, r))
}

fn raabe_closed_sides(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let m = positive_int(p, "m", 0)?;
    let w = get(p, "w");
    positive_re(w, "w")?;
    let y = real(p, "y")?;
    if !(y > 0.0) {
        return Err(Error::spec(format!("y must be positive, got {y}")));
    }
    let (mut l, r) = (Side::default(), Side::default());
    let q = raabe_direct(&RaabeParams::new(c(m as f64), y, w)?, cfg)?;
    l.bound = q.error_estimate;
    l.cells = q.cells;
    let rhs = raabe_closed_integer(m, y, w)?;
    Ok(sides(q.value, rhs, l, r))
}

fn lipschitz_sides(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let a = shift(p)?;
    let (s, tau) = (get(p, "s"), get(p, "tau"));
    let (mut l, mut r) = (Side::default(), Side::default());
    let lhs = l.series(lipschitz_lhs(a, s, tau, cfg)?);
    let rhs = r.series(lipschitz_rhs(a, s, tau, 32, cfg)?);
    Ok(sides(lhs, rhs, l, r))
}

fn lambert_routes(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let a = shift(p)?;
    let (s, y) = (get(p, "s"), get(p, "y"));
    let lp = LambertParams::new(s, y, a)?;
    let (mut l, mut r) = (Side::default(), Side::default());
    let lhs = l.series(lambert_shifted(&lp, cfg)?);
    let rhs = r.series(lambert_via_hurwitz(&lp, 32, cfg)?);
    Ok(sides(lhs, rhs, l, r))
}

/// `Σ n^{2m−1}/(e^{2nπ}−1) = B_{2m}/(4m)`, `m` odd.
fn glaisher(p: &Params, cfg: &PrecisionConfig) -> Result<Sides> {
    let m = odd_above_one(p)?;
    let (mut l, r) = (Side::default(), Side::default());
    let lhs = l.series(lambert(c(2.0 * m as f64), c(2.0 * PI), 0.0, cfg)?);
    let rhs = c(bernoulli_f64(2 * m) / (4.0 * m as f64));
    Ok(sides(lhs, rhs, l, r))
}

/// `Σ n/(e^{2nπ}−1) = 1/24 − 1/(8π)`.
fn schlomilch(cfg: &PrecisionConfig) -> Result<Sides> {
    let (mut l, r) = (Side::default(), Side::default());
    let lhs = l.series(lambert(c(2.0), c(2.0 * PI), 0.0, cfg)?);
    let rhs = c(1.0 / 24.0 - 1.0 / (8.0 * PI));
    Ok(sides(lhs, rhs, l, r))
}
