//! Exact rational truncated sums and the finite-level machinery built on them.
//!
//! `ζ_p(k1, ..., kn)` sums over `p >= p1 > ... > pn > 0` and `ζ*_p` over
//! `p >= p1 >= ... >= pn >= 1`; both equal `1` on the empty index, even at
//! `p = 0`.

mod ckernel;
mod genfun;
mod telescope;

pub use ckernel::{c_duality_check, c_kernel};
pub use genfun::{
    ccbaa_residual, generating_pair, generating_pair_star, gf_step_t, gf_step_u, Abc, Caps,
    GFMatrix, GFPoly,
};
pub use telescope::{boundary_e0, boundary_fn, split_factors, telescope_residual, x_trunc};

use rug::ops::Pow;
use rug::{Integer, Rational};

use crate::indices::Index;

/// `ζ_p(index)`.
pub fn zeta_trunc(index: &Index, p: u64) -> Rational {
    nested_sum(index.parts(), p, true)
}

/// `ζ*_p(index)`.
pub fn zeta_star_trunc(index: &Index, p: u64) -> Rational {
    nested_sum(index.parts(), p, false)
}

/// `1 / t^k` as an exact rational.
pub(crate) fn inv_pow(t: u64, k: u32) -> Rational {
    Rational::from((Integer::ONE, Integer::from(t).pow(k)))
}

// Suffix partial sums, innermost part first: after processing parts[i..],
// `acc[t]` is the sum over chains whose outermost variable is <= t.
fn nested_sum(parts: &[u32], p: u64, strict: bool) -> Rational {
    let len = p as usize + 1;
    let mut acc = vec![Rational::from(1); len];
    for &k in parts.iter().rev() {
        let mut next = vec![Rational::new(); len];
        let mut running = Rational::new();
        for t in 1..len {
            let inner = if strict { &acc[t - 1] } else { &acc[t] };
            if *inner != 0 {
                running += inv_pow(t as u64, k) * inner;
            }
            next[t] = running.clone();
        }
        acc = next;
    }
    acc.pop().expect("len >= 1")
}
