use crate::error::{Error, Result};
use num_bigint::BigInt;
use num_traits::{ToPrimitive, Zero};
use std::sync::OnceLock;

/// Exact rational in lowest terms with positive denominator.
pub type Rational = num_rational::BigRational;

/// Largest index accepted by [`bernoulli`].
pub const MAX_BERNOULLI_INDEX: usize = 64;

fn table() -> &'static Vec<Rational> {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        let n_max = MAX_BERNOULLI_INDEX;
        let mut b: Vec<Rational> = Vec::with_capacity(n_max + 1);
        b.push(Rational::from_integer(BigInt::from(1)));
        for n in 1..=n_max {
            if n > 1 && n % 2 == 1 {
                b.push(Rational::zero());
                continue;
            }
            // Σ_{k=0}^{n} C(n+1,k) B_k = 0
            let mut binom = BigInt::from(1);
            let mut acc = Rational::zero();
            for (k, bk) in b.iter().enumerate() {
                if !bk.is_zero() {
                    acc += Rational::from_integer(binom.clone()) * bk;
                }
                binom = binom * BigInt::from(n + 1 - k) / BigInt::from(k + 1);
            }
            b.push(-acc / Rational::from_integer(BigInt::from(n + 1)));
        }
        b
    })
}

/// Bernoulli number `B_n` with `B_1 = −1/2`.
pub fn bernoulli(n: usize) -> Result<Rational> {
    if n > MAX_BERNOULLI_INDEX {
        return Err(Error::Range(format!(
            "bernoulli index {n} exceeds {MAX_BERNOULLI_INDEX}"
        )));
    }
    Ok(table()[n].clone())
}

/// `B_n` rounded to double precision.
pub fn bernoulli_f64(n: usize) -> f64 {
    static F: OnceLock<Vec<f64>> = OnceLock::new();
    let t = F.get_or_init(|| {
        table()
            .iter()
            .map(|r| {
                // Ratio of big integers can overflow f64 individually; divide as f64 of scaled parts.
                let num = r.numer().to_f64().unwrap_or(f64::NAN);
                let den = r.denom().to_f64().unwrap_or(f64::NAN);
                num / den
            })
            .collect()
    });
    t.get(n).copied().unwrap_or(f64::NAN)
}
