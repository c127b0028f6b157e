use num_complex::Complex64;
use proptest::prelude::*;
use ramlip_core::lambert::DirichletChar4;
use ramlip_core::numerics::{g_asymptotic_switch, hurwitz_zeta, stable_g_with, GBranch};
use ramlip_core::raabe::{raabe_direct, raabe_symmetry_check, RaabeParams};
use ramlip_core::PrecisionConfig;

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / a.norm().max(b.norm())
}

fn hurwitz_arg() -> impl Strategy<Value = Complex64> {
    prop_oneof![
        (1e-3f64..=5.0, -5.0f64..5.0).prop_map(|(re, im)| Complex64::new(re, im)),
        (1e-3f64..=5.0, any::<bool>()).prop_map(|(t, up)| Complex64::new(0.0, if up { t } else { -t })),
    ]
}

/// `Σ_{n≥0} |(n+a)^{−s}|`, the scale of rounding error in any evaluation of `ζ(s, a)`.
fn abs_term_sum(s: Complex64, a: Complex64) -> f64 {
    let n = 4000;
    let head: f64 = (0..n).map(|k| (a + k as f64).powc(-s).norm()).sum();
    head + (n as f64 - 0.5).powf(1.0 - s.re) / (s.re - 1.0)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn hurwitz_shift_law(sr in 1.5f64..=6.0, si in -10.0f64..10.0, a in hurwitz_arg()) {
        let s = Complex64::new(sr, si);
        let lhs = hurwitz_zeta(s, a + 1.0).unwrap();
        let za = hurwitz_zeta(s, a).unwrap();
        let rhs = za - a.powc(-s);
        let scale = abs_term_sum(s, a);
        let cfg = PrecisionConfig::default();
        prop_assert!((lhs - rhs).norm() <= cfg.rel_tol * scale,
            "s={s} a={a}: {lhs} vs {rhs}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn raabe_scaling_law(
        zr in 0.05f64..=3.0, zi in -1.0f64..1.0,
        y in 0.5f64..=20.0,
        wr in 0.05f64..=5.0, wi_frac in -0.9f64..0.9,
    ) {
        let cfg = PrecisionConfig::default();
        let z = Complex64::new(zr, zi);
        let w = Complex64::new(wr, wi_frac * wr);
        let a = raabe_direct(&RaabeParams::new(z, y, w).unwrap(), &cfg).unwrap().value;
        let b = raabe_direct(&RaabeParams::new(z, 1.0, y * w).unwrap(), &cfg).unwrap().value;
        let scaled = Complex64::new(y, 0.0).powc(2.0 * z) * b;
        prop_assert!(rel(a, scaled) <= 1e-8, "z={z} y={y} w={w}: {a} vs {scaled}");
    }

    #[test]
    fn raabe_symmetry(zr in 0.05f64..=3.0, zi in -1.0f64..1.0, y in 0.5f64..=10.0, w in 0.5f64..=10.0) {
        let cfg = PrecisionConfig::default();
        let r = raabe_symmetry_check(Complex64::new(zr, zi), y, w, &cfg).unwrap();
        prop_assert!(r <= 1e-7, "residual {r}");
    }

    #[test]
    fn g_series_integral_switch(m in 0usize..5, r in 1.6f64..=2.4, arg in -1.2f64..1.2) {
        let w = Complex64::from_polar(r, arg);
        let s = stable_g_with(m, w, GBranch::Series).unwrap();
        let i = stable_g_with(m, w, GBranch::Integral).unwrap();
        prop_assert!(rel(s, i) <= 1e-8, "m={m} w={w}: {s} vs {i}");
    }

    #[test]
    fn g_asymptotic_integral_switch(m in 0usize..5, f in 0.8f64..=1.2) {
        let w = Complex64::new(f * g_asymptotic_switch(m), 0.0);
        let a = stable_g_with(m, w, GBranch::Asymptotic).unwrap();
        let i = stable_g_with(m, w, GBranch::Integral).unwrap();
        prop_assert!(rel(a, i) <= 1e-8, "m={m} w={w}: {a} vs {i}");
    }
}

fn gcd(a: i64, b: i64) -> i64 {
    if b == 0 { a } else { gcd(b, a % b) }
}

#[test]
fn character_multiplicative_on_coprime_pairs() {
    let chi = DirichletChar4;
    for n in 1..100i64 {
        for m in 1..100i64 {
            if gcd(n, m) == 1 {
                assert_eq!(chi.value(n) * chi.value(m), chi.value(n * m), "n={n} m={m}");
            }
        }
        assert_eq!(chi.value(n), chi.value(n + 4));
    }
}
