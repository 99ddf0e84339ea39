use std::cell::RefCell;
use std::collections::HashMap;

use rug::{Integer, Rational};
use serde_json::json;

use super::{numeric_report, params, IdentityReport};
use crate::error::{out_of_range, Error, Result};
use crate::indices::{Index, Pattern};
use crate::numeric::{mzsv_numeric, zeta_int, NumericValue, PrecisionContext};
use crate::truncated::split_factors;

type Sides = (NumericValue, NumericValue);

/// ζ* values memoized for the duration of one checker call.
struct Star<'a> {
    ctx: &'a PrecisionContext,
    memo: RefCell<HashMap<Index, NumericValue>>,
}

impl<'a> Star<'a> {
    fn new(ctx: &'a PrecisionContext) -> Self {
        Star {
            ctx,
            memo: RefCell::new(HashMap::new()),
        }
    }

    fn of(&self, index: &Index) -> Result<NumericValue> {
        if let Some(v) = self.memo.borrow().get(index) {
            return Ok(v.clone());
        }
        let v = mzsv_numeric(index, self.ctx)?;
        self.memo.borrow_mut().insert(index.clone(), v.clone());
        Ok(v)
    }

    fn zero(&self) -> NumericValue {
        NumericValue::zero(self.ctx.bits)
    }
}

fn at_least_one(what: &'static str, v: u32) -> Result<()> {
    if v == 0 {
        Err(out_of_range(what, 0, ">= 1"))
    } else {
        Ok(())
    }
}

fn twos(n: u32) -> Index {
    Index::twos(n)
}

/// `ζ*({2}^m,1) ζ*({2}^n,1)` and `ζ*({2}^m,1,{2}^n,1) + ζ*({2}^n,1,{2}^m,1)`.
pub fn main1_sides(m: u32, n: u32, ctx: &PrecisionContext) -> Result<Sides> {
    at_least_one("m", m)?;
    at_least_one("n", n)?;
    let z = Star::new(ctx);
    let a = twos(m).with(1);
    let b = twos(n).with(1);
    let lhs = z.of(&a)?.mul(&z.of(&b)?);
    let rhs = z.of(&a.clone().concat(&b))?.add(&z.of(&b.concat(&a))?);
    Ok((lhs, rhs))
}

pub fn verify_main1(m: u32, n: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let sides = main1_sides(m, n, ctx)?;
    let p = params([("m", json!(m)), ("n", json!(n))]);
    Ok(numeric_report("main1", p, sides, 2 * (m + n + 1), ctx))
}

/// `ζ*({2}^m,1) ζ*({2}^n)` and `ζ*({2}^m,1,{2}^n) + ζ*({2}^{n-1},3,{2}^m)`.
pub fn main2_sides(m: u32, n: u32, ctx: &PrecisionContext) -> Result<Sides> {
    if m == 0 {
        return Err(Error::Divergent(
            "both sides of main2 diverge when m=0; use the finite-level form main2-finite".into(),
        ));
    }
    at_least_one("n", n)?;
    let z = Star::new(ctx);
    let lhs = z.of(&twos(m).with(1))?.mul(&z.of(&twos(n))?);
    let rhs = z
        .of(&twos(m).with(1).with_twos(n))?
        .add(&z.of(&twos(n - 1).with(3).with_twos(m))?);
    Ok((lhs, rhs))
}

pub fn verify_main2(m: u32, n: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let sides = main2_sides(m, n, ctx)?;
    let p = params([("m", json!(m)), ("n", json!(n))]);
    Ok(numeric_report("main2", p, sides, 2 * (m + n) + 1, ctx))
}

/// `ζ*({2}^m) ζ*({2}^n)` and
/// `ζ*({2}^{m-1},3,{2}^{n-1},1) + ζ*({2}^{n-1},3,{2}^{m-1},1)`.
pub fn main3_sides(m: u32, n: u32, ctx: &PrecisionContext) -> Result<Sides> {
    at_least_one("m", m)?;
    at_least_one("n", n)?;
    let z = Star::new(ctx);
    let lhs = z.of(&twos(m))?.mul(&z.of(&twos(n))?);
    let term = |a: u32, b: u32| twos(a - 1).with(3).with_twos(b - 1).with(1);
    let rhs = z.of(&term(m, n))?.add(&z.of(&term(n, m))?);
    Ok((lhs, rhs))
}

pub fn verify_main3(m: u32, n: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let sides = main3_sides(m, n, ctx)?;
    let p = params([("m", json!(m)), ("n", json!(n))]);
    Ok(numeric_report("main3", p, sides, 2 * (m + n), ctx))
}

fn twos_one_chain<'a>(runs: impl Iterator<Item = &'a u32>) -> Index {
    runs.fold(Index::empty(), |acc, &j| acc.with_twos(j).with(1))
}

/// Even-`k` and odd-`k` parts of
/// `Σ_k (-1)^k ζ*({2}^{j1},1,...,{2}^{jk},1) ζ*({2}^{jn},1,...,{2}^{j(k+1)},1)`.
pub fn ext1_sides(js: &[u32], ctx: &PrecisionContext) -> Result<Sides> {
    let n = js.len();
    if n == 0 {
        return Err(Error::MalformedPattern(
            "1ext needs at least one run".into(),
        ));
    }
    if js[0] == 0 || js[n - 1] == 0 {
        return Err(out_of_range("first and last run", 0, ">= 1"));
    }
    let z = Star::new(ctx);
    let (mut even, mut odd) = (z.zero(), z.zero());
    for k in 0..=n {
        let left = twos_one_chain(js[..k].iter());
        let right = twos_one_chain(js[k..].iter().rev());
        let x = z.of(&left)?.mul(&z.of(&right)?);
        if k % 2 == 0 {
            even = even.add(&x);
        } else {
            odd = odd.add(&x);
        }
    }
    Ok((even, odd))
}

pub fn verify_1ext(js: &[u32], ctx: &PrecisionContext) -> Result<IdentityReport> {
    let sides = ext1_sides(js, ctx)?;
    let weight = 2 * js.iter().sum::<u32>() + js.len() as u32;
    Ok(numeric_report(
        "1ext",
        params([("j", json!(js))]),
        sides,
        weight,
        ctx,
    ))
}

// {2}^{j0},3,{2}^{j1},1,{2}^{j2},3,... with a separator after every run
fn alternating_31(js: &[u32]) -> Index {
    js.iter().enumerate().fold(Index::empty(), |acc, (i, &j)| {
        acc.with_twos(j).with(if i % 2 == 0 { 3 } else { 1 })
    })
}

/// Both sides of the 3-1 extension for `j1, ..., j2n`:
/// `Σ_{k=0}^{n} A_k B_k` and `Σ_{k=1}^{n} A'_k B'_k`, where `A_k`, `B_k` cut
/// after run `2k` and `A'_k`, `B'_k` cut inside the pair ending at run `2k`.
pub fn ext3_sides(js: &[u32], ctx: &PrecisionContext) -> Result<Sides> {
    if js.is_empty() || js.len() % 2 == 1 {
        return Err(Error::MalformedPattern(format!(
            "3ext needs an even, non-zero number of runs, got {}",
            js.len()
        )));
    }
    let n = js.len() / 2;
    let rev: Vec<u32> = js.iter().rev().copied().collect();
    let z = Star::new(ctx);
    let mut lhs = z.zero();
    for k in 0..=n {
        let left = alternating_31(&js[..2 * k]);
        let right = alternating_31(&rev[..2 * (n - k)]);
        lhs = lhs.add(&z.of(&left)?.mul(&z.of(&right)?));
    }
    let mut rhs = z.zero();
    for k in 1..=n {
        let left = alternating_31(&js[..2 * k - 2]).with_twos(js[2 * k - 2] + 1);
        let right = alternating_31(&rev[..2 * (n - k)]).with_twos(rev[2 * (n - k)] + 1);
        rhs = rhs.add(&z.of(&left)?.mul(&z.of(&right)?));
    }
    Ok((lhs, rhs))
}

pub fn verify_3ext(js: &[u32], ctx: &PrecisionContext) -> Result<IdentityReport> {
    let sides = ext3_sides(js, ctx)?;
    let weight = 2 * js.iter().sum::<u32>() + 2 * js.len() as u32;
    Ok(numeric_report(
        "3ext",
        params([("j", json!(js))]),
        sides,
        weight,
        ctx,
    ))
}

/// Even-`k` and odd-`k` parts of `Σ_k (-1)^k X(k)`.
pub fn thm31_sides(pattern: &Pattern, ctx: &PrecisionContext) -> Result<Sides> {
    if pattern.is_empty() {
        return Err(Error::MalformedPattern("need at least one run".into()));
    }
    for p in [pattern.clone(), pattern.reversed()] {
        if !p.is_admissible() {
            return Err(Error::PatternNotAdmissible(p.to_string()));
        }
    }
    let z = Star::new(ctx);
    let (mut even, mut odd) = (z.zero(), z.zero());
    for k in 0..=pattern.len() {
        let (left, right) = split_factors(pattern, k)?;
        let x = z.of(&left.to_index())?.mul(&z.of(&right.to_index())?);
        if k % 2 == 0 {
            even = even.add(&x);
        } else {
            odd = odd.add(&x);
        }
    }
    Ok((even, odd))
}

pub fn verify_thm31_numeric(pattern: &Pattern, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let sides = thm31_sides(pattern, ctx)?;
    let (left, right) = split_factors(pattern, 0)?;
    let weight = left.to_index().weight() + right.to_index().weight();
    let p = params([("pattern", json!(pattern.to_string()))]);
    Ok(numeric_report("thm31", p, sides, weight, ctx))
}

/// `ζ*({2}^m,1,{2}^n,1)` and `4 ζ*(2m+1, 2n+1) - 2 ζ(2m+2n+2)`.
pub fn two_one_sides(m: u32, n: u32, ctx: &PrecisionContext) -> Result<Sides> {
    at_least_one("m", m)?;
    at_least_one("n", n)?;
    let z = Star::new(ctx);
    let lhs = z.of(&twos(m).with(1).with_twos(n).with(1))?;
    let pair = Index::new(vec![2 * m + 1, 2 * n + 1])?;
    let rhs = z
        .of(&pair)?
        .scale(&Rational::from(4))
        .sub(&zeta_int(2 * m + 2 * n + 2, ctx)?.scale(&Rational::from(2)));
    Ok((lhs, rhs))
}

pub fn verify_two_one(m: u32, n: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let sides = two_one_sides(m, n, ctx)?;
    let p = params([("m", json!(m)), ("n", json!(n))]);
    Ok(numeric_report("two-one", p, sides, 2 * (m + n + 1), ctx))
}

/// `binom(a, b)`, zero when `b < 0` or `b > a`.
fn binom(a: i64, b: i64) -> Integer {
    if b < 0 || b > a {
        Integer::new()
    } else {
        Integer::from(Integer::binomial_u(a as u32, b as u32))
    }
}

// ζ*({2}^k) = 2 (1 - 2^{1-2k}) ζ(2k), and 1 for k = 0
fn star_twos_closed(k: u32, ctx: &PrecisionContext) -> Result<NumericValue> {
    if k == 0 {
        return Ok(NumericValue::one(ctx.bits));
    }
    let factor = Rational::from(2) * (Rational::from(1) - Rational::from((1, 1u64 << (2 * k - 1))));
    Ok(zeta_int(2 * k, ctx)?.scale(&factor))
}

// Σ_{r=1}^{m+n+1} coeff(r) ζ(2r+1) ζ*({2}^{m+n+1-r})
fn odd_zeta_sum(
    top: u32,
    coeff: impl Fn(u32) -> Rational,
    ctx: &PrecisionContext,
) -> Result<NumericValue> {
    let mut total = NumericValue::zero(ctx.bits);
    for r in 1..=top {
        let c = coeff(r);
        if c == 0 {
            continue;
        }
        let term = zeta_int(2 * r + 1, ctx)?.mul(&star_twos_closed(top - r, ctx)?);
        total = total.add(&term.scale(&c));
    }
    Ok(total)
}

fn one_minus_quarter_power(r: u32) -> Rational {
    Rational::from(1) - Rational::from((Integer::from(1), Integer::from(1) << (2 * r)))
}

/// `ζ*({2}^m,3,{2}^n)` and its odd-zeta evaluation.
pub fn z22322_sides(m: u32, n: u32, ctx: &PrecisionContext) -> Result<Sides> {
    let lhs = mzsv_numeric(&twos(m).with(3).with_twos(n), ctx)?;
    let coeff = |r: u32| {
        let (r2, m, n) = (2 * r as i64, m as i64, n as i64);
        let delta = if r as i64 == n { 1 } else { 0 };
        let c = Rational::from(binom(r2, 2 * n) - delta)
            - one_minus_quarter_power(r) * binom(r2, 2 * m + 1);
        c * -2
    };
    Ok((lhs, odd_zeta_sum(m + n + 1, coeff, ctx)?))
}

pub fn verify_22322(m: u32, n: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let sides = z22322_sides(m, n, ctx)?;
    let p = params([("m", json!(m)), ("n", json!(n))]);
    Ok(numeric_report("22322", p, sides, 2 * (m + n) + 3, ctx))
}

/// `ζ*({2}^{m+1},1,{2}^n)` and its odd-zeta evaluation.
pub fn z22122_sides(m: u32, n: u32, ctx: &PrecisionContext) -> Result<Sides> {
    let lhs = mzsv_numeric(&twos(m + 1).with(1).with_twos(n), ctx)?;
    let coeff = |r: u32| {
        let (r2, m, n) = (2 * r as i64, m as i64, n as i64);
        let c = Rational::from(binom(r2, 2 * m + 2))
            - one_minus_quarter_power(r) * binom(r2, 2 * n - 1);
        c * 2
    };
    Ok((lhs, odd_zeta_sum(m + n + 1, coeff, ctx)?))
}

pub fn verify_22122(m: u32, n: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let sides = z22122_sides(m, n, ctx)?;
    let p = params([("m", json!(m)), ("n", json!(n))]);
    Ok(numeric_report("22122", p, sides, 2 * (m + n) + 3, ctx))
}

/// `ζ*({2}^{n-1},3)` and
/// `Σ_{l=1}^{n} ζ*({2}^l,1,{2}^{n-l}) - Σ_{l=0}^{n-1} ζ*({2}^l,3,{2}^{n-1-l})`.
pub fn prop_m0_sides(n: u32, ctx: &PrecisionContext) -> Result<Sides> {
    at_least_one("n", n)?;
    let z = Star::new(ctx);
    let lhs = z.of(&twos(n - 1).with(3))?;
    let mut rhs = z.zero();
    for l in 1..=n {
        rhs = rhs.add(&z.of(&twos(l).with(1).with_twos(n - l))?);
    }
    for l in 0..n {
        rhs = rhs.sub(&z.of(&twos(l).with(3).with_twos(n - 1 - l))?);
    }
    Ok((lhs, rhs))
}

pub fn verify_prop_m0(n: u32, ctx: &PrecisionContext) -> Result<IdentityReport> {
    let sides = prop_m0_sides(n, ctx)?;
    Ok(numeric_report(
        "prop-m0",
        params([("n", json!(n))]),
        sides,
        2 * n + 1,
        ctx,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ctx() -> PrecisionContext {
        PrecisionContext::default()
    }

    #[test]
    fn small_instances_pass() {
        let c = ctx();
        assert!(verify_main1(1, 1, &c).unwrap().passed());
        assert!(verify_main2(1, 1, &c).unwrap().passed());
        assert!(verify_main3(1, 1, &c).unwrap().passed());
        assert!(verify_two_one(1, 1, &c).unwrap().passed());
        assert!(verify_prop_m0(1, &c).unwrap().passed());
    }

    #[test]
    fn main2_at_m_zero_diverges() {
        let err = verify_main2(0, 1, &ctx()).unwrap_err();
        assert!(matches!(err, Error::Divergent(_)));
        assert!(err.to_string().contains("diverge when m=0"));
    }

    #[test]
    fn closed_forms_at_origin() {
        let c = ctx();
        // ζ*(3) = ζ(3), ζ*(2,1) = 2ζ(3)
        let (_, rhs) = z22322_sides(0, 0, &c).unwrap();
        assert!(rhs.sub(&zeta_int(3, &c).unwrap()).abs().to_f64() < 1e-40);
        let (_, rhs) = z22122_sides(0, 0, &c).unwrap();
        let two_z3 = zeta_int(3, &c).unwrap().scale(&Rational::from(2));
        assert!(rhs.sub(&two_z3).abs().to_f64() < 1e-40);
    }

    #[test]
    fn binomial_convention() {
        assert_eq!(binom(2, -1), 0);
        assert_eq!(binom(2, 3), 0);
        assert_eq!(binom(4, 2), 6);
    }

    #[test]
    fn ext_shapes() {
        assert_eq!(alternating_31(&[1, 0]), "2,3,1".parse().unwrap());
        assert_eq!(alternating_31(&[0, 2, 1]), "3,2,2,1,2,3".parse().unwrap());
        assert!(ext1_sides(&[0, 1], &ctx()).is_err());
        assert!(ext3_sides(&[0, 1, 2], &ctx()).is_err());
    }

    #[test]
    fn ext3_matches_main3_at_origin() {
        let c = ctx();
        let (lhs, rhs) = ext3_sides(&[0, 0], &c).unwrap();
        let (m3_lhs, m3_rhs) = main3_sides(1, 1, &c).unwrap();
        assert!(lhs.sub(&m3_rhs).abs().to_f64() < 1e-40);
        assert!(rhs.sub(&m3_lhs).abs().to_f64() < 1e-40);
    }
}
