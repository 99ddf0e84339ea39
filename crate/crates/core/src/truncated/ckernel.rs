//! The chain kernels `C_j(A, B)`.
//!
//! `C_{-1}(A, B) = δ_{A,B} A²`, `C_0 = 1`, and for `j >= 1`
//! `C_j(A, B) = Σ_{A >= a1 >= ... >= aj >= B} 1/(a1² ... aj²)`.

use std::cell::RefCell;
use std::collections::HashMap;

use rug::Rational;

use super::inv_pow;
use crate::error::{out_of_range, Result};

thread_local! {
    // Keyed by (j, A, B). Unbounded; callers keep j, A, B small.
    static MEMO: RefCell<HashMap<(i32, u64, u64), Rational>> = RefCell::new(HashMap::new());
}

/// `C_j(A, B)` for `j >= -1` and `A >= B >= 1`.
pub fn c_kernel(j: i32, a: u64, b: u64) -> Result<Rational> {
    if j < -1 {
        return Err(out_of_range("kernel order j", j as i64, ">= -1"));
    }
    if b == 0 {
        return Err(out_of_range("kernel lower bound B", 0, ">= 1"));
    }
    if a < b {
        return Err(out_of_range(
            "kernel upper bound A",
            a as i64,
            format!(">= B = {b}"),
        ));
    }
    Ok(kernel(j, a, b))
}

pub(crate) fn kernel(j: i32, a: u64, b: u64) -> Rational {
    match j {
        -1 if a == b => Rational::from(a * a),
        -1 => Rational::new(),
        0 => Rational::from(1),
        _ => {
            if let Some(hit) = MEMO.with(|m| m.borrow().get(&(j, a, b)).cloned()) {
                return hit;
            }
            fill(j, a, b);
            MEMO.with(|m| m.borrow()[&(j, a, b)].clone())
        }
    }
}

// Fills C_i(t, b) for 1 <= i <= j and b <= t <= a via the recursion
// C_i(t, b) = C_i(t - 1, b) + C_{i-1}(t, b) / t².
fn fill(j: i32, a: u64, b: u64) {
    let width = (a - b + 1) as usize;
    let mut prev = vec![Rational::from(1); width];
    MEMO.with(|m| {
        let mut memo = m.borrow_mut();
        for i in 1..=j {
            let mut row = Vec::with_capacity(width);
            let mut running = Rational::new();
            for (offset, below) in prev.iter().enumerate() {
                let t = b + offset as u64;
                running += inv_pow(t, 2) * below;
                memo.entry((i, t, b)).or_insert_with(|| running.clone());
                row.push(running.clone());
            }
            prev = row;
        }
    });
}

/// Both sides of the kernel duality
/// `Σ_{p0=1}^{p} C_j(p, p0) q/(p0(p0+q)) = Σ_{q0=1}^{q} C_j(q, q0) p/(q0(q0+p))`.
pub fn c_duality_check(j: i32, p: u64, q: u64) -> Result<(Rational, Rational)> {
    if p == 0 || q == 0 {
        return Err(out_of_range("duality bound", 0, ">= 1"));
    }
    Ok((duality_side(j, p, q)?, duality_side(j, q, p)?))
}

fn duality_side(j: i32, p: u64, q: u64) -> Result<Rational> {
    let mut total = Rational::new();
    for p0 in 1..=p {
        let weight = Rational::from((q, p0 * (p0 + q)));
        total += c_kernel(j, p, p0)? * weight;
    }
    Ok(total)
}
