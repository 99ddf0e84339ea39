//! Symmetrized 2-3-1 sums tested for membership in `Q · π^k`.
//!
//! Recognition is evidence only: a value that is not matched by a small
//! rational is reported as unrecognized, never as a failure.

use std::collections::HashMap;

use rug::{Float, Integer, Rational};
use serde_json::json;

use super::{format_residual, params, IdentityReport, Method, Status};
use crate::error::{out_of_range, Error, Result};
use crate::indices::Index;
use crate::numeric::{const_pi, mzsv_numeric, recognize_rational, NumericValue, PrecisionContext};

/// `Σ_σ ζ*({2}^{jσ(0)},3,{2}^{jσ(1)},1,...,3,{2}^{jσ(2n-1)},1) / π^{2m+4n}`.
pub fn conjecture_a_instance(
    n: u32,
    js: &[u32],
    ctx: &PrecisionContext,
    max_den: u64,
) -> Result<IdentityReport> {
    if n == 0 {
        return Err(out_of_range("n", 0, ">= 1"));
    }
    if js.len() != 2 * n as usize {
        return Err(out_of_range(
            "length of j",
            js.len() as i64,
            format!("2n = {}", 2 * n),
        ));
    }
    let m: u32 = js.iter().sum();
    instance("conjectureA", n, js, None, 2 * m + 4 * n, ctx, max_den)
}

/// `Σ_σ ζ*({2}^{jσ(0)},3,...,3,{2}^{jσ(2n-1)},1,{2}^{jσ(2n)+1}) / π^{2m+4n+2}`.
pub fn conjecture_b_instance(
    n: u32,
    js: &[u32],
    ctx: &PrecisionContext,
    max_den: u64,
) -> Result<IdentityReport> {
    if js.len() != 2 * n as usize + 1 {
        return Err(out_of_range(
            "length of j",
            js.len() as i64,
            format!("2n + 1 = {}", 2 * n + 1),
        ));
    }
    let m: u32 = js.iter().sum();
    let body = 2 * n as usize;
    instance(
        "conjectureB",
        n,
        &js[..body],
        Some(js[body]),
        2 * m + 4 * n + 2,
        ctx,
        max_den,
    )
    .map(|mut r| {
        r.params.insert("j".into(), json!(js));
        r
    })
}

fn build_index(arrangement: &[u32], tail: Option<u32>) -> Index {
    let mut index = Index::empty();
    for (i, &j) in arrangement.iter().enumerate() {
        index = index.with_twos(j).with(if i % 2 == 0 { 3 } else { 1 });
    }
    match tail {
        Some(j) => index.with_twos(j + 1),
        None => index,
    }
}

// Lexicographic successor; false once the last permutation is reached.
fn next_permutation(v: &mut [u32]) -> bool {
    let Some(i) = (1..v.len()).rev().find(|&i| v[i - 1] < v[i]) else {
        return false;
    };
    let j = (i..v.len())
        .rev()
        .find(|&j| v[j] > v[i - 1])
        .expect("pivot exists");
    v.swap(i - 1, j);
    v[i..].reverse();
    true
}

fn instance(
    identity: &str,
    n: u32,
    body: &[u32],
    tail: Option<u32>,
    pi_power: u32,
    ctx: &PrecisionContext,
    max_den: u64,
) -> Result<IdentityReport> {
    let full: Vec<u32> = body.iter().copied().chain(tail).collect();
    let mut counts: HashMap<u32, u32> = HashMap::new();
    for &j in &full {
        *counts.entry(j).or_default() += 1;
    }
    // each distinct arrangement stands for Π count! permutations
    let multiplicity = counts.values().fold(Integer::from(1), |acc, &c| {
        acc * Integer::from(Integer::factorial(c))
    });
    let multiplicity = Rational::from(multiplicity);

    let mut arrangement = full.clone();
    arrangement.sort_unstable();
    let mut total = NumericValue::zero(ctx.bits);
    loop {
        let (head, last) = match tail {
            Some(_) => (&arrangement[..body.len()], Some(arrangement[body.len()])),
            None => (&arrangement[..], None),
        };
        let index = build_index(head, last);
        if !index.is_admissible() {
            return Err(Error::NotAdmissible(index.to_string()));
        }
        total = total.add(&mzsv_numeric(&index, ctx)?.scale(&multiplicity));
        if !next_permutation(&mut arrangement) {
            break;
        }
    }

    let ratio = total.div(&const_pi(ctx).powi(pi_power));
    let recognized = recognize_rational(&ratio, max_den);
    let threshold = (4.0 * ratio.err).max(2f64.powi(-(ratio.prec() as i32) / 2));
    let (rhs, residual, status) = match &recognized {
        Some(q) => {
            let diff = Float::with_val(ratio.prec(), &ratio.value - q).abs();
            (q.to_string(), format_residual(diff.to_f64()), Status::Pass)
        }
        None => (
            "unrecognized".to_string(),
            "n/a".to_string(),
            Status::Unrecognized,
        ),
    };
    Ok(IdentityReport {
        identity: identity.to_string(),
        params: params([
            ("n", json!(n)),
            ("j", json!(body)),
            ("pi_power", json!(pi_power)),
            ("max_den", json!(max_den)),
        ]),
        lhs: ratio.render(),
        rhs,
        residual,
        tolerance: threshold,
        method: Method::Numeric,
        status,
        precision_bits: ctx.bits,
        ladder: ctx.ladder.clone(),
    })
}
