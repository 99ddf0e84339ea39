use rug::Rational;
use serde_json::json;

use super::{exact_report, params, IdentityReport};
use crate::error::{out_of_range, Result};
use crate::indices::{Index, Pattern};
use crate::truncated::{
    boundary_e0, boundary_fn, ccbaa_residual, telescope_residual, zeta_star_trunc, zeta_trunc, Abc,
};

fn twos(n: u32) -> Index {
    Index::twos(n)
}

fn signed(k: u32, x: Rational) -> Rational {
    if k.is_multiple_of(2) {
        x
    } else {
        -x
    }
}

/// `Σ_k (-1)^k X_P(k)` against the boundary terms `E_P(0) + (-1)^n F_P(n)`.
pub fn verify_telescope(pattern: &Pattern, level: u64) -> Result<IdentityReport> {
    let residual = telescope_residual(pattern, level)?;
    let rhs =
        boundary_e0(pattern, level)? + signed(pattern.len() as u32, boundary_fn(pattern, level)?);
    let lhs = Rational::from(&residual + &rhs);
    let p = params([("pattern", json!(pattern.to_string())), ("P", json!(level))]);
    Ok(exact_report("telescope", p, lhs, rhs))
}

/// `ζ*_p({c}^m, b, {a}^n)` against its expansion in `ζ_p` and star powers.
pub fn verify_ccbaa(p: u64, m: u32, n: u32, abc: Abc) -> Result<IdentityReport> {
    let lhs = zeta_star_trunc(
        &Index::new(vec![abc.c; m as usize])?
            .with(abc.b)
            .concat(&Index::new(vec![abc.a; n as usize])?),
        p,
    );
    let rhs = Rational::from(&lhs - &ccbaa_residual(p, m, n, abc));
    let prm = params([
        ("p", json!(p)),
        ("m", json!(m)),
        ("n", json!(n)),
        ("abc", json!([abc.a, abc.b, abc.c])),
    ]);
    Ok(exact_report("ccbaa", prm, lhs, rhs))
}

/// The finite-level form of main2, valid for `m >= 0`, `n >= 1`:
///
/// ```text
/// ζ*_p({2}^m,1,{2}^n) + ζ*_p({2}^{n-1},3,{2}^m)
///   = Σ_k (-1)^k ζ_p(1,{2}^k) ζ*_p({2}^{m-k}) ζ*_p({2}^n)
///   + Σ_{k,l>=1} (-1)^{k+l} {ζ_p({2}^l,1,{2}^k) - ζ_p({2}^k,3,{2}^{l-1})}
///                 ζ*_p({2}^{m-k}) ζ*_p({2}^{n-l})
/// ```
pub fn verify_main2_finite(m: u32, n: u32, p: u64) -> Result<IdentityReport> {
    if n == 0 {
        return Err(out_of_range("n", 0, ">= 1"));
    }
    let star = |k: u32| zeta_star_trunc(&twos(k), p);
    let lhs = zeta_star_trunc(&twos(m).with(1).with_twos(n), p)
        + zeta_star_trunc(&twos(n - 1).with(3).with_twos(m), p);
    let mut rhs = Rational::new();
    for k in 0..=m {
        let head = zeta_trunc(&Index::empty().with(1).with_twos(k), p);
        rhs += signed(k, head * star(m - k) * star(n));
        for l in 1..=n {
            let diff = zeta_trunc(&twos(l).with(1).with_twos(k), p)
                - zeta_trunc(&twos(k).with(3).with_twos(l - 1), p);
            rhs += signed(k + l, diff * star(m - k) * star(n - l));
        }
    }
    let prm = params([("m", json!(m)), ("n", json!(n)), ("p", json!(p))]);
    Ok(exact_report("main2-finite", prm, lhs, rhs))
}

/// `ζ*_p(1) ζ*_p({2}^n) = Σ_{l=0}^{n} ζ*_p({2}^l,1,{2}^{n-l}) - Σ_{l=0}^{n-1} ζ*_p({2}^l,3,{2}^{n-1-l})`.
pub fn verify_harmonic_finite(n: u32, p: u64) -> Result<IdentityReport> {
    let lhs = zeta_star_trunc(&Index::empty().with(1), p) * zeta_star_trunc(&twos(n), p);
    let mut rhs = Rational::new();
    for l in 0..=n {
        rhs += zeta_star_trunc(&twos(l).with(1).with_twos(n - l), p);
    }
    for l in 0..n {
        rhs -= zeta_star_trunc(&twos(l).with(3).with_twos(n - 1 - l), p);
    }
    let prm = params([("n", json!(n)), ("p", json!(p))]);
    Ok(exact_report("harmonic-finite", prm, lhs, rhs))
}

/// The finite-level predecessor of prop-m0, with the correction
/// `Σ_{l=1}^{n} (-1)^l {ζ_p({2}^l,1) - ζ_p(3,{2}^{l-1})} ζ*_p({2}^{n-l})`.
pub fn verify_prop_m0_finite(n: u32, p: u64) -> Result<IdentityReport> {
    if n == 0 {
        return Err(out_of_range("n", 0, ">= 1"));
    }
    let lhs = zeta_star_trunc(&twos(n - 1).with(3), p);
    let mut rhs = Rational::new();
    for l in 1..=n {
        rhs += zeta_star_trunc(&twos(l).with(1).with_twos(n - l), p);
        let diff = zeta_trunc(&twos(l).with(1), p)
            - zeta_trunc(&Index::empty().with(3).with_twos(l - 1), p);
        rhs += signed(l, diff * zeta_star_trunc(&twos(n - l), p));
    }
    for l in 0..n {
        rhs -= zeta_star_trunc(&twos(l).with(3).with_twos(n - 1 - l), p);
    }
    let prm = params([("n", json!(n)), ("p", json!(p))]);
    Ok(exact_report("prop-m0-finite", prm, lhs, rhs))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn telescope_report() {
        let r = verify_telescope(&"j=1,1;e=1".parse().unwrap(), 8).unwrap();
        assert!(r.passed());
        assert_eq!(r.residual, "0");
        assert!(r.ladder.is_empty());
    }

    #[test]
    fn finite_predecessors() {
        for p in 0..=6 {
            for n in 1..=3 {
                assert!(verify_prop_m0_finite(n, p).unwrap().passed(), "n={n} p={p}");
                assert!(
                    verify_harmonic_finite(n, p).unwrap().passed(),
                    "n={n} p={p}"
                );
                for m in 0..=2 {
                    assert!(
                        verify_main2_finite(m, n, p).unwrap().passed(),
                        "m={m} n={n} p={p}"
                    );
                }
            }
        }
    }

    #[test]
    fn ccbaa_report() {
        let r = verify_ccbaa(5, 2, 1, Abc::new(2, 1, 2)).unwrap();
        assert!(r.passed());
        assert_eq!(r.params["abc"], json!([2, 1, 2]));
    }
}
