//! Limits `ζ(k)` and `ζ*(k)` for admissible indices.
//!
//! The convolution evaluator splits the iterated integral at a point `z`:
//!
//! ```text
//! ζ(a1...aw) = Σ_{i=0}^{w} Li_{τ(a1...ai)}(1 - z) · Li_{a(i+1)...aw}(z)
//! ```
//!
//! where `τ` reverses a word and swaps `x` and `y`, and
//! `Li_{s1..sr}(t) = Σ_{n1 > ... > nr >= 1} t^{n1} / (n1^{s1} ... nr^{sr})`.
//! `ζ*` is the sum of `ζ` over all coarsenings of the index.
//!
//! The Richardson evaluator extrapolates floating truncated sums along the
//! ladder in `h = 1/p`. It is only accurate when the tail has no logarithmic
//! terms, which rules out indices containing a `1`.

use std::cell::RefCell;
use std::collections::HashMap;

use rug::ops::Pow;
use rug::{Float, Rational};

use super::value::ulp;
use super::{Evaluator, NumericValue, PrecisionContext};
use crate::error::{Error, Result};
use crate::halg::{index_from_word, word_from_index, Letter, Word};
use crate::indices::Index;

/// `ζ(index)` to `ctx.bits`.
pub fn mzv_numeric(index: &Index, ctx: &PrecisionContext) -> Result<NumericValue> {
    require_admissible(index)?;
    let v = match ctx.evaluator {
        Evaluator::Convolution { split } => convolution(index, split, ctx.working_bits()),
        Evaluator::Richardson => richardson(index, true, ctx),
    };
    Ok(round_to(v, ctx.bits))
}

/// `ζ*(index)` to `ctx.bits`.
pub fn mzsv_numeric(index: &Index, ctx: &PrecisionContext) -> Result<NumericValue> {
    require_admissible(index)?;
    let v = match ctx.evaluator {
        Evaluator::Convolution { split } => {
            let wp = ctx.working_bits();
            coarsenings(index)
                .iter()
                .fold(NumericValue::zero(wp), |acc, c| {
                    acc.add(&convolution(c, split, wp))
                })
        }
        Evaluator::Richardson => richardson(index, false, ctx),
    };
    Ok(round_to(v, ctx.bits))
}

fn require_admissible(index: &Index) -> Result<()> {
    if index.is_admissible() {
        Ok(())
    } else {
        Err(Error::NotAdmissible(index.to_string()))
    }
}

fn round_to(v: NumericValue, bits: u32) -> NumericValue {
    let value = Float::with_val(bits, &v.value);
    let err = v.err + ulp(&value);
    NumericValue::new(value, err)
}

/// Every index obtained by replacing some commas with `+`.
fn coarsenings(index: &Index) -> Vec<Index> {
    let parts = index.parts();
    if parts.len() <= 1 {
        return vec![index.clone()];
    }
    let gaps = parts.len() - 1;
    (0..1u64 << gaps)
        .map(|mask| {
            let mut out = vec![parts[0]];
            for (g, &k) in parts[1..].iter().enumerate() {
                if mask >> g & 1 == 1 {
                    *out.last_mut().expect("non-empty") += k;
                } else {
                    out.push(k);
                }
            }
            Index::new(out).expect("parts stay positive")
        })
        .collect()
}

type LiKey = (u32, (u32, u32), Vec<u32>);

thread_local! {
    // (working bits, evaluation point, Li indices) -> value
    static LI_CACHE: RefCell<HashMap<LiKey, NumericValue>> = RefCell::new(HashMap::new());
}

fn convolution(index: &Index, split: (u32, u32), wp: u32) -> NumericValue {
    let word = word_from_index(index);
    let letters = word.letters();
    let w = letters.len();
    let upper_point = (split.1 - split.0, split.1);
    let mut total = NumericValue::zero(wp);
    for i in 0..=w {
        let upper = if i == 0 {
            NumericValue::one(wp)
        } else {
            let dual: Vec<Letter> = letters[..i]
                .iter()
                .rev()
                .map(|l| match l {
                    Letter::X => Letter::Y,
                    Letter::Y => Letter::X,
                })
                .collect();
            polylog(&Word::new(dual), upper_point, wp)
        };
        let lower = if i == w {
            NumericValue::one(wp)
        } else {
            polylog(&Word::new(letters[i..].to_vec()), split, wp)
        };
        total = total.add(&upper.mul(&lower));
    }
    total
}

fn polylog(word: &Word, point: (u32, u32), wp: u32) -> NumericValue {
    let parts = index_from_word(word)
        .expect("split words end in y")
        .parts()
        .to_vec();
    let key = (wp, point, parts);
    if let Some(hit) = LI_CACHE.with(|c| c.borrow().get(&key).cloned()) {
        return hit;
    }
    let v = polylog_series(&key.2, point, wp);
    LI_CACHE.with(|c| c.borrow_mut().insert(key, v.clone()));
    v
}

// Smallest N whose tail bound z^{N+1} (1 + ln(N+1))^{r-1} / (1 - ρ) is below
// 2^-target, with ρ = z (1 + 1/N)^{r-1} the ratio bound of successive terms.
fn series_length(z: f64, depth: usize, target: f64) -> (usize, f64) {
    let r1 = depth as f64 - 1.0;
    let mut n = 1usize;
    loop {
        let rho = z * (1.0 + 1.0 / n as f64).powf(r1);
        if rho < 1.0 {
            let next = (n + 1) as f64;
            let log2_tail = next * z.log2() + r1 * (1.0 + next.ln()).log2() - (1.0 - rho).log2();
            if log2_tail <= -target {
                return (n, 2f64.powf(log2_tail));
            }
        }
        n += 1;
    }
}

fn polylog_series(parts: &[u32], point: (u32, u32), wp: u32) -> NumericValue {
    let z_rat = Rational::from(point);
    let (n, tail) = series_length(z_rat.to_f64(), parts.len(), wp as f64 + 4.0);
    // inner[t]: sum over the deeper variables with outermost <= t
    let mut inner = vec![Float::with_val(wp, 1); n + 1];
    for &k in parts[1..].iter().rev() {
        let mut next = Vec::with_capacity(n + 1);
        next.push(Float::new(wp));
        let mut running = Float::new(wp);
        for m in 1..=n {
            let denom = Float::with_val(wp, m).pow(k);
            running += Float::with_val(wp, &inner[m - 1] / &denom);
            next.push(running.clone());
        }
        inner = next;
    }
    let z = Float::with_val(wp, &z_rat);
    let mut z_pow = Float::with_val(wp, 1);
    let mut sum = Float::new(wp);
    for m in 1..=n {
        z_pow *= &z;
        let denom = Float::with_val(wp, m).pow(parts[0]);
        sum += Float::with_val(wp, &z_pow * &inner[m - 1]) / denom;
    }
    let rounding = (n * (parts.len() + 2)) as f64 * (ulp(&sum) + 2f64.powi(-(wp as i32)));
    NumericValue::new(sum, tail + rounding)
}

fn richardson(index: &Index, strict: bool, ctx: &PrecisionContext) -> NumericValue {
    let wp = ctx.working_bits();
    let levels = &ctx.ladder;
    let top = *levels.last().expect("ladder is non-empty") as usize;
    let all = float_truncated(index.parts(), top, strict, wp);
    let values: Vec<Float> = levels.iter().map(|&p| all[p as usize].clone()).collect();
    let rounding = (top * (index.depth() + 1)) as f64 * ulp(&values[values.len() - 1]);

    // Neville table in h = 1/p
    let len = values.len();
    let mut table: Vec<Vec<Float>> = vec![values];
    for k in 1..len {
        let prev = &table[k - 1];
        let row: Vec<Float> = (k..len)
            .map(|i| {
                let (hi, lo) = (&prev[i - k + 1], &prev[i - k]);
                let ratio = Rational::from((levels[i - k], levels[i] - levels[i - k]));
                let delta = Float::with_val(wp, hi - lo) * &ratio;
                Float::with_val(wp, hi + &delta)
            })
            .collect();
        table.push(row);
    }
    let last = |k: usize| table[k].last().expect("row").clone();
    let order = ctx.order.min(len - 1);
    let value = last(order);
    let step = if order == 0 {
        let first = &table[0];
        Float::with_val(wp, &first[len - 1] - &first[len - 2])
    } else {
        Float::with_val(wp, &value - &last(order - 1))
    };
    NumericValue::new(value, step.abs().to_f64() + rounding)
}

// Floating version of the exact DP; `out[t]` is the truncated value at level t.
fn float_truncated(parts: &[u32], top: usize, strict: bool, wp: u32) -> Vec<Float> {
    let mut acc = vec![Float::with_val(wp, 1); top + 1];
    for &k in parts.iter().rev() {
        let mut next = Vec::with_capacity(top + 1);
        next.push(Float::new(wp));
        let mut running = Float::new(wp);
        for t in 1..=top {
            let inner = if strict { &acc[t - 1] } else { &acc[t] };
            let denom = Float::with_val(wp, t).pow(k);
            running += Float::with_val(wp, inner / &denom);
            next.push(running.clone());
        }
        acc = next;
    }
    acc
}
