use rug::{Float, Integer, Rational};

use super::NumericValue;

/// The smallest-denominator continued-fraction convergent of `v` with
/// denominator at most `max_den` lying within `max(4·err, 2^{-bits/2})` of `v`.
pub fn recognize_rational(v: &NumericValue, max_den: u64) -> Option<Rational> {
    if !v.err.is_finite() {
        return None;
    }
    let x = v.value.to_rational()?;
    let slack = Float::with_val(64, 1) >> (v.prec() / 2);
    let threshold = Rational::from_f64(4.0 * v.err)
        .unwrap_or_default()
        .max(slack.to_rational().expect("finite"));
    let max_den = Integer::from(max_den);

    let (mut h_prev, mut h) = (Integer::from(0), Integer::from(1));
    let (mut k_prev, mut k) = (Integer::from(1), Integer::from(0));
    let mut rest = x.clone();
    loop {
        let a = rest.clone().floor().into_numer_denom().0;
        let h_next = Integer::from(&a * &h) + &h_prev;
        let k_next = Integer::from(&a * &k) + &k_prev;
        if k_next > max_den {
            return None;
        }
        h_prev = std::mem::replace(&mut h, h_next);
        k_prev = std::mem::replace(&mut k, k_next);
        let convergent = Rational::from((h.clone(), k.clone()));
        if Rational::from(&convergent - &x).abs() <= threshold {
            return Some(convergent);
        }
        let frac = rest - Rational::from(a);
        if frac == 0 {
            return None;
        }
        rest = frac.recip();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn value(x: f64, err: f64) -> NumericValue {
        NumericValue::new(Float::with_val(128, x), err)
    }

    #[test]
    fn half() {
        assert_eq!(
            recognize_rational(&value(0.5, 1e-20), 10),
            Some(Rational::from((1, 2)))
        );
    }

    #[test]
    fn pinned_vector() {
        assert_eq!(
            recognize_rational(&value(0.1234567, 1e-3), 10),
            Some(Rational::from((1, 8)))
        );
        assert_eq!(recognize_rational(&value(0.1234567, 1e-12), 10), None);
    }

    #[test]
    fn negative_and_integer_values() {
        let third = NumericValue::from_rational(&Rational::from((-7, 3)), 128);
        assert_eq!(
            recognize_rational(&third, 100),
            Some(Rational::from((-7, 3)))
        );
        assert_eq!(
            recognize_rational(&value(3.0, 0.0), 1),
            Some(Rational::from(3))
        );
    }
}
