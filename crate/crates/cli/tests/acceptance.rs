//! Acceptance suite. Prints one line per criterion and exits non-zero if any
//! criterion fails.
//!
//! Run with `cargo test -p zetakit-cli --test acceptance`.

use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use zetakit::halg::{d_map, harmonic_product, zp_eval, zp_star_eval, Letter};
use zetakit::identities::{self as id, IdentityReport, Status};
use zetakit::numeric::{bernoulli, mzsv_numeric, NumericValue};
use zetakit::truncated::{c_duality_check, ccbaa_residual, telescope_residual};
use zetakit::{
    halg::prop23_residual, Abc, Float, Index, Integer, NCPoly, Pattern, PrecisionContext, Rational,
    Sep, Word,
};

type Check = Result<String, String>;

struct Criterion {
    id: u32,
    name: &'static str,
    budget: Option<Duration>,
    run: fn() -> Check,
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn lib<T>(r: zetakit::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

fn ccbaa() -> Check {
    let mut count = 0;
    for abc in [Abc::new(2, 1, 2), Abc::new(2, 3, 2), Abc::new(3, 1, 2)] {
        for p in 0..=15 {
            for m in 0..=3 {
                for n in 0..=3 {
                    let r = ccbaa_residual(p, m, n, abc);
                    ensure(r == 0, || {
                        format!("p={p} m={m} n={n} {abc:?}: residual {r}")
                    })?;
                    count += 1;
                }
            }
        }
    }
    Ok(format!("{count} coefficients"))
}

fn c_duality() -> Check {
    let mut count = 0;
    for j in -1..=4 {
        for p in 1..=12 {
            for q in 1..=12 {
                let (l, r) = lib(c_duality_check(j, p, q))?;
                ensure(l == r, || format!("j={j} p={p} q={q}: {l} != {r}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} (j,p,q) triples"))
}

fn prop23() -> Check {
    let mut count = 0;
    for abc in [Abc::new(2, 1, 2), Abc::new(2, 3, 2)] {
        for m in 0..=2 {
            for n in 0..=2 {
                let r = prop23_residual(m, n, abc);
                ensure(r.is_zero(), || format!("m={m} n={n} {abc:?}: {r}"))?;
                count += 1;
            }
        }
    }
    Ok(format!("{count} polynomial identities"))
}

fn h1_words(max_len: usize) -> Vec<Word> {
    let mut all = vec![Word::empty()];
    let mut layer = vec![Vec::new()];
    for _ in 0..max_len {
        layer = layer
            .into_iter()
            .flat_map(|w: Vec<Letter>| {
                [Letter::X, Letter::Y].map(|l| {
                    let mut v = w.clone();
                    v.push(l);
                    v
                })
            })
            .collect();
        all.extend(
            layer
                .iter()
                .map(|w| Word::new(w.clone()))
                .filter(Word::in_h1),
        );
    }
    all
}

fn hoffman() -> Check {
    let words = h1_words(6);
    for w in &words {
        let u = NCPoly::from(w.clone());
        let du = lib(d_map(&u))?;
        for p in 0..=10 {
            let (l, r) = (lib(zp_eval(&du, p))?, lib(zp_star_eval(&u, p))?);
            ensure(l == r, || format!("d-suite {w} at p={p}: {l} != {r}"))?;
        }
    }
    let small: Vec<NCPoly> = h1_words(5).into_iter().map(NCPoly::from).collect();
    let mut pairs = 0;
    for u in &small {
        for v in &small {
            let uv = lib(harmonic_product(u, v))?;
            for p in 0..=10 {
                let l = lib(zp_eval(&uv, p))?;
                let r = lib(zp_eval(u, p))? * lib(zp_eval(v, p))?;
                ensure(l == r, || format!("product {u} * {v} at p={p}: {l} != {r}"))?;
            }
            pairs += 1;
        }
    }
    Ok(format!("{} words, {pairs} pairs", words.len()))
}

fn all_patterns() -> Vec<Pattern> {
    let mut out = Vec::new();
    for len in 1..=3usize {
        for code in 0..3u32.pow(len as u32) {
            let runs: Vec<u32> = (0..len).map(|i| code / 3u32.pow(i as u32) % 3).collect();
            for mask in 0..1u32 << (len - 1) {
                let seps = (0..len - 1)
                    .map(|i| {
                        if mask >> i & 1 == 0 {
                            Sep::One
                        } else {
                            Sep::Three
                        }
                    })
                    .collect();
                let p = Pattern::new(runs.clone(), seps).expect("lengths agree");
                if p.is_admissible() {
                    out.push(p);
                }
            }
        }
    }
    out
}

fn telescope() -> Check {
    let patterns = all_patterns();
    for p in &patterns {
        for level in 1..=12 {
            let r = lib(telescope_residual(p, level))?;
            ensure(r == 0, || format!("{p} at P={level}: residual {r}"))?;
        }
    }
    Ok(format!("{} patterns, P = 1..12", patterns.len()))
}

fn mpfr_zeta(s: u32, prec: u32) -> Float {
    Float::with_val(prec, Float::zeta_u(s))
}

fn within(v: &NumericValue, exact: &Float, tol: f64) -> Result<f64, String> {
    let d = Float::with_val(exact.prec(), &v.value - exact)
        .abs()
        .to_f64();
    ensure(d <= tol, || format!("deviation {d:e} exceeds {tol:e}"))?;
    Ok(d)
}

fn calibration() -> Check {
    let ctx = PrecisionContext::default();
    let prec = ctx.working_bits();
    let mut worst = 0f64;
    for n in 1..=5 {
        let v = lib(mzsv_numeric(&Index::twos(n), &ctx))?;
        let lead = Float::with_val(prec, 1) - (Float::with_val(prec, 1) >> (2 * n - 1));
        let exact = lead * mpfr_zeta(2 * n, prec) * 2u32;
        worst = worst.max(within(&v, &exact, 1e-12).map_err(|e| format!("{{2}}^{n}: {e}"))?);
    }
    for m in 1..=4 {
        let v = lib(mzsv_numeric(&Index::twos(m).with(1), &ctx))?;
        let exact = Float::with_val(prec, 2) * mpfr_zeta(2 * m + 1, prec);
        worst = worst.max(within(&v, &exact, 1e-12).map_err(|e| format!("({{2}}^{m},1): {e}"))?);
    }
    Ok(format!("9 values, max deviation {worst:.1e}"))
}

fn expect_pass(r: IdentityReport) -> Result<f64, String> {
    let res = r.residual_f64().unwrap_or(f64::INFINITY);
    ensure(r.status == Status::Pass && res <= 1e-10, || {
        format!(
            "{} {}: {:?}, residual {}",
            r.identity,
            serde_json::Value::Object(r.params.clone()),
            r.status,
            r.residual
        )
    })?;
    Ok(res)
}

fn j_vectors(len: usize, total: u32) -> Vec<Vec<u32>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        out = out
            .into_iter()
            .flat_map(|v: Vec<u32>| {
                let used: u32 = v.iter().sum();
                (0..=total - used).map(move |j| {
                    let mut w = v.clone();
                    w.push(j);
                    w
                })
            })
            .collect();
    }
    out
}

fn sweep() -> Check {
    let ctx = PrecisionContext::default();
    let mut reports = Vec::new();
    for m in 1..=5 {
        for n in 1..=5 {
            if 2 * (m + n + 1) <= 11 {
                reports.push(id::verify_main1(m, n, &ctx));
            }
            if 2 * (m + n) < 11 {
                reports.push(id::verify_main2(m, n, &ctx));
            }
            if 2 * (m + n) <= 11 {
                reports.push(id::verify_main3(m, n, &ctx));
            }
        }
    }
    for len in 1..=3 {
        for js in j_vectors(len, 2) {
            if js[0] >= 1 && js[len - 1] >= 1 {
                reports.push(id::verify_1ext(&js, &ctx));
            }
        }
    }
    for len in [2, 4] {
        for js in j_vectors(len, 2) {
            reports.push(id::verify_3ext(&js, &ctx));
        }
    }
    for m in 0..=3 {
        for n in 0..=3 - m {
            reports.push(id::verify_22322(m, n, &ctx));
            reports.push(id::verify_22122(m, n, &ctx));
        }
    }
    for m in 1..=2 {
        for n in 1..=2 {
            reports.push(id::verify_two_one(m, n, &ctx));
        }
    }
    for n in 1..=3 {
        reports.push(id::verify_prop_m0(n, &ctx));
    }
    let count = reports.len();
    let mut worst = 0f64;
    for r in reports {
        worst = worst.max(expect_pass(lib(r)?)?);
    }
    Ok(format!("{count} instances, max residual {worst:.1e}"))
}

fn spot_values() -> Check {
    let ctx = PrecisionContext::default();
    let prec = ctx.working_bits();
    let v = lib(mzsv_numeric(
        &Index::new(vec![3, 1]).map_err(|e| e.to_string())?,
        &ctx,
    ))?;
    // π⁴/72 = (5/4) ζ(4)
    let exact = mpfr_zeta(4, prec) * 5u32 / 4u32;
    let d = within(&v, &exact, 1e-12).map_err(|e| format!("zeta*(3,1): {e}"))?;
    let r3 = expect_pass(lib(id::verify_22322(0, 0, &ctx))?)?;
    let r21 = expect_pass(lib(id::verify_22122(0, 0, &ctx))?)?;
    Ok(format!("(3,1) {d:.1e}, (3) {r3:.1e}, (2,1) {r21:.1e}"))
}

fn factorial(n: u32) -> u64 {
    (1..=n as u64).product()
}

// ζ*({2}^k) / π^{2k} = (1 - 2^{1-2k}) |B_{2k}| 2^{2k} / (2k)!
fn b0_exact(k: u32) -> Rational {
    let b = bernoulli(2 * k).expect("within the table").abs();
    let two = Integer::from(1) << (2 * k);
    let lead =
        Rational::from(1) - Rational::from((Integer::from(1), Integer::from(1) << (2 * k - 1)));
    lead * b * two / Integer::from(factorial(2 * k))
}

fn recognized(r: &IdentityReport) -> Result<Rational, String> {
    ensure(r.status == Status::Pass, || {
        format!("{}: {:?}", r.identity, r.status)
    })?;
    r.rhs
        .parse::<Rational>()
        .map_err(|_| format!("rhs {} is not a rational", r.rhs))
}

fn conjectures() -> Check {
    let ctx = PrecisionContext::default();
    let mut seen = Vec::new();
    for j0 in 0..=4u32 {
        let max_den = factorial(2 * j0 + 3).max(zetakit::defaults::MAX_DEN);
        let q = recognized(&lib(id::conjecture_b_instance(0, &[j0], &ctx, max_den))?)?;
        let exact = b0_exact(j0 + 1);
        ensure(q == exact, || {
            format!("B_0({j0}) recognized {q}, expected {exact}")
        })?;
        seen.push(q.to_string());
    }
    let a = recognized(&lib(id::conjecture_a_instance(
        1,
        &[0, 0],
        &ctx,
        zetakit::defaults::MAX_DEN,
    ))?)?;
    ensure(a == Rational::from((1, 36)), || {
        format!("A_1(0,0) recognized {a}")
    })?;
    let deep = lib(id::conjecture_a_instance(
        2,
        &[0, 0, 1, 1],
        &ctx,
        zetakit::defaults::MAX_DEN,
    ))?;
    ensure(deep.status != Status::Fail, || {
        "deeper instance reported as fail".into()
    })?;
    Ok(format!(
        "B_0: {}; A_1(0,0) = {a}; A_2(0,0,1,1) {:?}",
        seen.join(", "),
        deep.status
    ))
}

fn determinism() -> Check {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_zetakit"))
            .args(["scan", "main1", "--max-weight", "11", "--format", "json"])
            .output()
            .map_err(|e| e.to_string())?;
        ensure(out.status.success(), || {
            format!("exit {:?}", out.status.code())
        })?;
        Ok::<_, String>(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    ensure(!a.is_empty() && a == b, || "outputs differ".into())?;
    Ok(format!(
        "{} bytes, {} lines",
        a.len(),
        a.iter().filter(|&&c| c == b'\n').count()
    ))
}

fn main() -> ExitCode {
    let secs = |s| Some(Duration::from_secs(s));
    let criteria = [
        Criterion {
            id: 1,
            name: "ccbaa generating-function suite",
            budget: secs(60),
            run: ccbaa,
        },
        Criterion {
            id: 2,
            name: "C-kernel duality",
            budget: secs(30),
            run: c_duality,
        },
        Criterion {
            id: 3,
            name: "algebraic generating-function suite",
            budget: secs(60),
            run: prop23,
        },
        Criterion {
            id: 4,
            name: "d-map and harmonic homomorphism",
            budget: secs(120),
            run: hoffman,
        },
        Criterion {
            id: 5,
            name: "telescoping residual",
            budget: secs(300),
            run: telescope,
        },
        Criterion {
            id: 6,
            name: "numeric calibration",
            budget: None,
            run: calibration,
        },
        Criterion {
            id: 7,
            name: "numeric identity sweep",
            budget: secs(600),
            run: sweep,
        },
        Criterion {
            id: 8,
            name: "spot values",
            budget: None,
            run: spot_values,
        },
        Criterion {
            id: 9,
            name: "conjecture recognition",
            budget: None,
            run: conjectures,
        },
        Criterion {
            id: 10,
            name: "scan determinism",
            budget: None,
            run: determinism,
        },
    ];
    let mut failed = 0;
    for c in &criteria {
        let start = Instant::now();
        let mut result = (c.run)();
        let elapsed = start.elapsed();
        if let (Ok(_), Some(budget)) = (&result, c.budget) {
            if elapsed > budget {
                result = Err(format!("took {elapsed:.1?}, budget {budget:?}"));
            }
        }
        let (tag, detail) = match &result {
            Ok(d) => ("PASS", d),
            Err(e) => {
                failed += 1;
                ("FAIL", e)
            }
        };
        println!(
            "criterion {:>2} {tag} {} [{elapsed:.2?}]: {detail}",
            c.id, c.name
        );
    }
    println!(
        "acceptance: {} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
