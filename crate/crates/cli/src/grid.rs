//! Parameter grids for `scan`, enumerated in a fixed order.

use zetakit::truncated::split_factors;
use zetakit::{Pattern, Sep};

/// All `(m, n)` with `m, n >= lo` and `weight(m, n) <= max_weight`, by `m` then `n`.
pub fn pairs(lo: u32, max_weight: u32, weight: impl Fn(u32, u32) -> u32) -> Vec<(u32, u32)> {
    let mut out = Vec::new();
    for m in lo..=max_weight {
        for n in lo..=max_weight {
            if weight(m, n) <= max_weight {
                out.push((m, n));
            }
        }
    }
    out
}

/// Every vector of the given length with entries in `0..=jmax`, lexicographic.
pub fn vectors(len: usize, jmax: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v| {
                (0..=jmax).map(move |j| {
                    let mut w = v.clone();
                    w.push(j);
                    w
                })
            })
            .collect();
    }
    out
}

/// Non-decreasing vectors: one representative per multiset.
pub fn multisets(len: usize, jmax: u32) -> Vec<Vec<u32>> {
    vectors(len, jmax)
        .into_iter()
        .filter(|v| v.windows(2).all(|w| w[0] <= w[1]))
        .collect()
}

/// Patterns with `1..=n` runs, runs in `0..=jmax`, keeping those that are
/// admissible in both orientations.
pub fn patterns(n: usize, jmax: u32) -> Vec<Pattern> {
    let mut out = Vec::new();
    for len in 1..=n {
        for runs in vectors(len, jmax) {
            for seps in vectors(len - 1, 1) {
                let seps = seps
                    .iter()
                    .map(|&s| if s == 0 { Sep::One } else { Sep::Three })
                    .collect();
                let p = Pattern::new(runs.clone(), seps).expect("lengths agree");
                if p.is_admissible() && p.reversed().is_admissible() {
                    out.push(p);
                }
            }
        }
    }
    out
}

/// Whether every product factor of the alternating sum has a finite limit.
/// Fails only for the single zero run.
pub fn factors_converge(p: &Pattern) -> bool {
    (0..=p.len()).all(|k| split_factors(p, k).is_ok())
}
