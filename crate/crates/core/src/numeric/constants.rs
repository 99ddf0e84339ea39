use std::sync::OnceLock;

use rug::float::Constant;
use rug::ops::Pow;
use rug::{Float, Integer, Rational};

use super::value::ulp;
use super::{NumericValue, PrecisionContext};
use crate::error::{out_of_range, Error, Result};

const MAX_BERNOULLI: u32 = 200;
const EM_ORDER: u32 = 8;
const MAX_EM_TERMS: f64 = 1e7;

/// π to `ctx.bits`.
pub fn const_pi(ctx: &PrecisionContext) -> NumericValue {
    let value = Float::with_val(ctx.bits, Constant::Pi);
    let err = ulp(&value);
    NumericValue::new(value, err)
}

fn bernoulli_table() -> &'static [Rational] {
    static TABLE: OnceLock<Vec<Rational>> = OnceLock::new();
    TABLE.get_or_init(|| {
        // Σ_{k=0}^{m} binom(m+1, k) B_k = 0
        let mut b: Vec<Rational> = vec![Rational::from(1)];
        for m in 1..=MAX_BERNOULLI {
            let mut acc = Rational::new();
            for (k, bk) in b.iter().enumerate() {
                acc += Rational::from(Integer::from(Integer::binomial_u(m + 1, k as u32)) * bk);
            }
            b.push(-acc / (m + 1));
        }
        b
    })
}

/// The Bernoulli number `B_n` with `B_1 = -1/2`, for `n = 1` or even `n <= 200`.
pub fn bernoulli(n: u32) -> Result<Rational> {
    if n > MAX_BERNOULLI {
        return Err(out_of_range("Bernoulli index", n as i64, "<= 200"));
    }
    if n > 1 && n % 2 == 1 {
        return Err(out_of_range("Bernoulli index", n as i64, "even, or 1"));
    }
    Ok(bernoulli_table()[n as usize].clone())
}

/// `ζ(s)` for integer `s >= 2`.
pub fn zeta_int(s: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    if s < 2 {
        return Err(out_of_range("zeta argument s", s as i64, ">= 2"));
    }
    let wp = ctx.working_bits();
    let value = if s.is_multiple_of(2) {
        zeta_even(s, wp)?
    } else {
        zeta_odd(s, wp)?
    };
    let value = NumericValue::new(Float::with_val(ctx.bits, &value.value), value.err);
    Ok(NumericValue {
        err: value.err + ulp(&value.value),
        ..value
    })
}

// ζ(2n) = (-1)^{n+1} B_{2n} (2π)^{2n} / (2 (2n)!)
fn zeta_even(s: u32, wp: u32) -> Result<NumericValue> {
    let b = bernoulli(s)?;
    let mut coeff: Rational = b / Integer::from(Integer::factorial(s)) / 2u32;
    if s.is_multiple_of(4) {
        coeff = -coeff;
    }
    let two_pi = Float::with_val(wp, Constant::Pi) * 2u32;
    let value = Float::with_val(wp, two_pi.pow(s)) * &coeff;
    let err = (s as f64 + 2.0) * ulp(&value);
    Ok(NumericValue::new(value, err))
}

// log2 of |B_{2m+2}/(2m+2)! · s(s+1)...(s+2m)|, the Euler–Maclaurin remainder
// scale after m correction terms.
fn em_remainder_log2(s: u32) -> f64 {
    let order = EM_ORDER + 1;
    let b = bernoulli(2 * order).expect("table").to_f64().abs();
    let mut log = b.log2();
    for i in 1..=2 * order {
        log -= (i as f64).log2();
    }
    for i in 0..2 * order - 1 {
        log += ((s + i) as f64).log2();
    }
    log
}

// Direct sum to N-1 plus Euler–Maclaurin correction of fixed order.
fn zeta_odd(s: u32, wp: u32) -> Result<NumericValue> {
    let decay = (s + 2 * EM_ORDER + 1) as f64;
    let log_n = (em_remainder_log2(s) + wp as f64 + 2.0) / decay;
    let n_terms = 2f64.powf(log_n).ceil().max(s as f64).max(4.0);
    if n_terms > MAX_EM_TERMS {
        return Err(Error::Precision(format!(
            "ζ({s}) at {wp} bits needs more than {MAX_EM_TERMS:e} terms"
        )));
    }
    let n = n_terms as u32;
    let mut sum = Float::new(wp);
    // descending keeps the small terms from being absorbed
    for k in (1..n).rev() {
        sum += Float::with_val(wp, k).pow(s).recip();
    }
    let nf = Float::with_val(wp, n);
    let n_pow = Float::with_val(wp, (&nf).pow(s));
    sum += Float::with_val(wp, &nf / &n_pow) / (s - 1);
    sum += Float::with_val(wp, n_pow.clone().recip()) / 2u32;
    // B_{2k}/(2k)! · s(s+1)...(s+2k-2) · N^{-s-2k+1}
    let mut rising = Integer::from(s);
    let mut n_power = Float::with_val(wp, &n_pow * &nf);
    let nf2 = Float::with_val(wp, &nf * &nf);
    for k in 1..=EM_ORDER {
        if k > 1 {
            rising *= (s + 2 * k - 3) * (s + 2 * k - 2);
        }
        let coeff = bernoulli(2 * k)? * &rising / Integer::from(Integer::factorial(2 * k));
        sum += Float::with_val(wp, &coeff / &n_power);
        n_power *= &nf2;
    }
    let remainder = 2f64.powf(em_remainder_log2(s) - decay * (n as f64).log2());
    let err = remainder + n as f64 * ulp(&sum);
    Ok(NumericValue::new(sum, err))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx(bits: u32) -> PrecisionContext {
        PrecisionContext::default().with_bits(bits).unwrap()
    }

    #[test]
    fn bernoulli_examples() {
        assert_eq!(bernoulli(0).unwrap(), 1);
        assert_eq!(bernoulli(1).unwrap(), Rational::from((-1, 2)));
        assert_eq!(bernoulli(2).unwrap(), Rational::from((1, 6)));
        assert_eq!(bernoulli(12).unwrap(), Rational::from((-691, 2730)));
        assert!(bernoulli(3).is_err());
        assert!(bernoulli(202).is_err());
        assert!(bernoulli(200).is_ok());
    }

    // 16 atan(1/5) - 4 atan(1/239), summed exactly
    fn machin_pi(terms: u32) -> Rational {
        let atan_inv = |x: u32| {
            let mut sum = Rational::new();
            for k in 0..terms {
                let den = Integer::from(2 * k + 1) * Integer::from(x).pow(2 * k + 1);
                let term = Rational::from((Integer::from(1), den));
                if k % 2 == 0 {
                    sum += term;
                } else {
                    sum -= term;
                }
            }
            sum
        };
        atan_inv(5) * 16u32 - atan_inv(239) * 4u32
    }

    #[test]
    fn pi_against_machin() {
        let oracle = Float::with_val(512, &machin_pi(120));
        for bits in [64, 128, 192, 400] {
            let pi = const_pi(&ctx(bits));
            let diff = Float::with_val(512, &pi.value - &oracle).abs().to_f64();
            assert!(diff <= pi.err, "bits={bits}");
        }
        assert!(const_pi(&ctx(64))
            .render()
            .starts_with("3.14159265358979323"));
    }

    #[test]
    fn doubling_bits_shrinks_pi_error() {
        let narrow = const_pi(&ctx(64));
        let wide = const_pi(&ctx(128));
        assert!(wide.err <= narrow.err / 2.0);
    }

    #[test]
    fn zeta_against_mpfr() {
        let c = ctx(192);
        for s in 2..=24 {
            let z = zeta_int(s, &c).unwrap();
            let oracle = Float::with_val(256, Float::zeta_u(s));
            let diff = Float::with_val(256, &z.value - &oracle).abs().to_f64();
            assert!(diff <= z.err, "s={s}: diff {diff:e} > err {:e}", z.err);
            assert!(z.err < 1e-50, "s={s}: err {:e}", z.err);
        }
    }

    #[test]
    fn zeta_two_is_pi_squared_over_six() {
        let c = ctx(128);
        let pi = const_pi(&c);
        let lhs = pi.powi(2).scale(&Rational::from((1, 6)));
        let diff = lhs.sub(&zeta_int(2, &c).unwrap()).abs();
        assert!(diff.to_f64() <= diff.err);
    }

    #[test]
    fn zeta_rejects_small_arguments() {
        assert!(zeta_int(1, &ctx(64)).is_err());
        assert!(zeta_int(0, &ctx(64)).is_err());
    }
}
