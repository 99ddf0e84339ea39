use std::fmt;

use rug::ops::Pow;
use rug::{Float, Integer, Rational};

/// An arbitrary-precision float with a first-order absolute error estimate.
#[derive(Debug, Clone, PartialEq)]
pub struct NumericValue {
    pub value: Float,
    pub err: f64,
}

/// One unit in the last place of `x`, as an `f64` (0 for zero).
pub(crate) fn ulp(x: &Float) -> f64 {
    match x.get_exp() {
        Some(e) => 2f64.powi(e - x.prec() as i32),
        None => 0.0,
    }
}

fn mag(x: &Float) -> f64 {
    x.to_f64().abs()
}

impl NumericValue {
    pub fn new(value: Float, err: f64) -> Self {
        assert!(err >= 0.0, "error estimate must be non-negative");
        NumericValue { value, err }
    }

    /// An exact rational rounded to `prec` bits.
    pub fn from_rational(q: &Rational, prec: u32) -> Self {
        let value = Float::with_val(prec, q);
        let err = ulp(&value);
        NumericValue { value, err }
    }

    pub fn one(prec: u32) -> Self {
        NumericValue {
            value: Float::with_val(prec, 1),
            err: 0.0,
        }
    }

    pub fn zero(prec: u32) -> Self {
        NumericValue {
            value: Float::new(prec),
            err: 0.0,
        }
    }

    pub fn prec(&self) -> u32 {
        self.value.prec()
    }

    pub fn to_f64(&self) -> f64 {
        self.value.to_f64()
    }

    fn prec_with(&self, other: &NumericValue) -> u32 {
        self.prec().max(other.prec())
    }

    pub fn add(&self, other: &NumericValue) -> NumericValue {
        let value = Float::with_val(self.prec_with(other), &self.value + &other.value);
        let err = self.err + other.err + ulp(&value);
        NumericValue { value, err }
    }

    pub fn sub(&self, other: &NumericValue) -> NumericValue {
        let value = Float::with_val(self.prec_with(other), &self.value - &other.value);
        let err = self.err + other.err + ulp(&value);
        NumericValue { value, err }
    }

    pub fn mul(&self, other: &NumericValue) -> NumericValue {
        let value = Float::with_val(self.prec_with(other), &self.value * &other.value);
        let err = mag(&self.value) * other.err
            + mag(&other.value) * self.err
            + self.err * other.err
            + ulp(&value);
        NumericValue { value, err }
    }

    pub fn div(&self, other: &NumericValue) -> NumericValue {
        let value = Float::with_val(self.prec_with(other), &self.value / &other.value);
        let d = mag(&other.value);
        let err = self.err / d + mag(&value) * other.err / d + ulp(&value);
        NumericValue { value, err }
    }

    pub fn scale(&self, q: &Rational) -> NumericValue {
        let value = Float::with_val(self.prec(), &self.value * q);
        let err = self.err * q.to_f64().abs() + ulp(&value);
        NumericValue { value, err }
    }

    pub fn powi(&self, k: u32) -> NumericValue {
        if k == 0 {
            return NumericValue::one(self.prec());
        }
        let value = Float::with_val(self.prec(), (&self.value).pow(k));
        let base = mag(&self.value);
        let err = k as f64 * base.powi(k as i32 - 1) * self.err + k as f64 * ulp(&value);
        NumericValue { value, err }
    }

    pub fn abs(&self) -> NumericValue {
        NumericValue {
            value: self.value.clone().abs(),
            err: self.err,
        }
    }

    /// `value` in fixed point with as many decimals as `err` supports,
    /// followed by `± err`.
    pub fn render(&self) -> String {
        let max_digits = (self.prec() as f64 * std::f64::consts::LOG10_2).floor() as i64;
        let digits = if self.err > 0.0 {
            (-self.err.log10()).floor() as i64
        } else {
            max_digits
        }
        .clamp(0, max_digits) as usize;
        format!("{} ± {:.1e}", fixed_point(&self.value, digits), self.err)
    }
}

fn fixed_point(x: &Float, digits: usize) -> String {
    if !x.is_finite() {
        return x.to_string();
    }
    let scale = Integer::from(10).pow(digits as u32);
    let scaled = Float::with_val(x.prec() + 64, x * &scale);
    let n = scaled.to_integer().expect("finite");
    let negative = n < 0;
    let mut body = n.abs().to_string();
    if body.len() <= digits {
        body = format!("{}{body}", "0".repeat(digits + 1 - body.len()));
    }
    let (int, frac) = body.split_at(body.len() - digits);
    let sign = if negative { "-" } else { "" };
    if digits == 0 {
        format!("{sign}{int}")
    } else {
        format!("{sign}{int}.{frac}")
    }
}

impl fmt::Display for NumericValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}
