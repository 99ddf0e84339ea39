//! Finite-level telescoping of the alternating product sum over a pattern.
//!
//! For a pattern `(j, e)` with `n` runs and the convention `e_0 = e_n = 1`,
//! `X(k)` is the product of two `ζ*` values obtained by cutting the pattern
//! after run `k`. Writing each `ζ*` as a chain sum of kernels `C_j` and
//! splitting the coupling factor at the cut gives `X(k) = E(k) + F(k)` with
//! `E(k) = F(k - 1)`. With both outer variables capped at `P` instead of
//! infinity this holds exactly, so
//!
//! ```text
//! Σ_k (-1)^k X_P(k) = E_P(0) + (-1)^n F_P(n)
//! ```
//!
//! and the two boundary terms vanish only in the limit.

use rug::Rational;

use super::ckernel::kernel;
use super::{inv_pow, zeta_star_trunc};
use crate::error::{out_of_range, Error, Result};
use crate::indices::{Pattern, Sep};

fn cut_separator(pattern: &Pattern, k: usize) -> Sep {
    let n = pattern.len();
    if k == 0 || k == n {
        Sep::One
    } else {
        pattern.seps()[k - 1]
    }
}

fn unit_pattern() -> Pattern {
    Pattern::new(vec![0], Vec::new()).expect("one run")
}

fn require_runs(pattern: &Pattern) -> Result<()> {
    if pattern.is_empty() {
        return Err(Error::MalformedPattern("need at least one run".into()));
    }
    Ok(())
}

/// The two sub-patterns whose `ζ*` values multiply to `X(k)`.
///
/// For `e_k = 1`: `((j|_k)_+, e|_k)` and `((j'|_{n-k})_+, e'|_{n-k})`.
/// For `e_k = 3`: `((j|_k)^+, e|_{k-1})` and `((j'|_{n-k})^+, e'|_{n-k-1})`.
/// Fails if either factor diverges.
pub fn split_factors(pattern: &Pattern, k: usize) -> Result<(Pattern, Pattern)> {
    let (left, right) = cut(pattern, k)?;
    for factor in [&left, &right] {
        if !factor.is_admissible() {
            return Err(Error::PatternNotAdmissible(factor.to_string()));
        }
    }
    Ok((left, right))
}

fn cut(pattern: &Pattern, k: usize) -> Result<(Pattern, Pattern)> {
    let n = pattern.len();
    if n == 0 {
        return Err(Error::MalformedPattern("need at least one run".into()));
    }
    if k > n {
        return Err(out_of_range("cut position k", k as i64, format!("0..={n}")));
    }
    let reversed = pattern.reversed();
    let (left, right) = match cut_separator(pattern, k) {
        Sep::One => {
            let left = if k == 0 {
                unit_pattern()
            } else {
                pattern.prefix(k)?.append_zero(Sep::One)?
            };
            let right = if k == n {
                unit_pattern()
            } else {
                reversed.prefix(n - k)?.append_zero(Sep::One)?
            };
            (left, right)
        }
        Sep::Three => (
            pattern.prefix(k)?.increment_last()?,
            reversed.prefix(n - k)?.increment_last()?,
        ),
    };
    Ok((left, right))
}

/// `X_P(k)`: the two factors evaluated by `ζ*_P`. Fails if either factor
/// would diverge as `P -> ∞`.
pub fn x_trunc(pattern: &Pattern, k: usize, level: u64) -> Result<Rational> {
    let (left, right) = split_factors(pattern, k)?;
    Ok(product_at(&left, &right, level))
}

fn product_at(left: &Pattern, right: &Pattern, level: u64) -> Rational {
    zeta_star_trunc(&left.to_index(), level) * zeta_star_trunc(&right.to_index(), level)
}

// F_P(n) for the given orientation:
// Σ_{P >= p1 >= ... >= pn >= 1} Π_α C_{jα}(p_{α-1}, p_α) p_α^{-e_α} · pn / (pn + P),
// with p0 = P and e_n = 1.
fn chain_boundary(pattern: &Pattern, level: u64) -> Rational {
    let runs = pattern.runs();
    let n = runs.len();
    let size = level as usize + 1;
    let exponent = |alpha: usize| {
        if alpha == n {
            1
        } else {
            pattern.seps()[alpha - 1].value()
        }
    };

    // weights[t]: total weight of partial chains ending with p_α = t
    let mut weights = vec![Rational::new(); size];
    for t in 1..=level {
        weights[t as usize] = kernel(runs[0] as i32, level, t) * inv_pow(t, exponent(1));
    }
    for alpha in 2..=n {
        let j = runs[alpha - 1] as i32;
        let e = exponent(alpha);
        let mut next = vec![Rational::new(); size];
        for t in 1..=level {
            let mut acc = Rational::new();
            for s in t..=level {
                let w = &weights[s as usize];
                if *w != 0 {
                    acc += kernel(j, s, t) * w;
                }
            }
            next[t as usize] = acc * inv_pow(t, e);
        }
        weights = next;
    }

    let mut total = Rational::new();
    for t in 1..=level {
        total += Rational::from((t, t + level)) * &weights[t as usize];
    }
    total
}

/// `E_P(0)`: the `k = 0` boundary, coupling factor `q1 / (P + q1)`.
pub fn boundary_e0(pattern: &Pattern, level: u64) -> Result<Rational> {
    require_runs(pattern)?;
    Ok(chain_boundary(&pattern.reversed(), level))
}

/// `F_P(n)`: the `k = n` boundary, coupling factor `pn / (pn + P)`.
pub fn boundary_fn(pattern: &Pattern, level: u64) -> Result<Rational> {
    require_runs(pattern)?;
    Ok(chain_boundary(pattern, level))
}

/// `Σ_k (-1)^k X_P(k) - E_P(0) - (-1)^n F_P(n)`; exactly zero for every `P`.
///
/// At a finite level every sum is finite, so unlike [`x_trunc`] this accepts
/// patterns whose limit values diverge.
pub fn telescope_residual(pattern: &Pattern, level: u64) -> Result<Rational> {
    require_runs(pattern)?;
    let n = pattern.len();
    let mut total = Rational::new();
    for k in 0..=n {
        let (left, right) = cut(pattern, k)?;
        let x = product_at(&left, &right, level);
        if k % 2 == 0 {
            total += x;
        } else {
            total -= x;
        }
    }
    total -= boundary_e0(pattern, level)?;
    let f = boundary_fn(pattern, level)?;
    if n.is_multiple_of(2) {
        total -= f;
    } else {
        total += f;
    }
    Ok(total)
}
