use rayon::prelude::*;
use zetakit::identities::{self as id, IdentityReport, Status};
use zetakit::numeric::{mzsv_numeric, mzv_numeric};
use zetakit::truncated::{zeta_star_trunc, zeta_trunc};
use zetakit::{Abc, Index, Pattern, PrecisionContext};

use crate::args::{Family, Format, IdentityId, Mode, Params};
use crate::config::RunConfig;
use crate::grid;
use crate::output::render;
use crate::UsageError;

/// What a subcommand prints and the exit code it asks for.
pub struct Outcome {
    pub stdout: String,
    pub code: i32,
}

fn lib<T>(r: zetakit::Result<T>) -> Result<T, UsageError> {
    r.map_err(|e| UsageError(e.to_string()))
}

fn parse<T: std::str::FromStr<Err = zetakit::Error>>(s: &str) -> Result<T, UsageError> {
    lib(s.parse())
}

pub fn compute(
    star: bool,
    index: Option<&str>,
    pattern: Option<&str>,
    mode: Mode,
    config: &RunConfig,
) -> Result<Outcome, UsageError> {
    let index: Index = match (index, pattern) {
        (Some(s), _) => parse(s)?,
        (None, Some(s)) => parse::<Pattern>(s)?.to_index(),
        (None, None) => return Err(UsageError("need --index or --pattern".into())),
    };
    let value = match mode {
        Mode::ExactP => {
            let p = config.cap()?;
            let q = if star {
                zeta_star_trunc(&index, p)
            } else {
                zeta_trunc(&index, p)
            };
            q.to_string()
        }
        Mode::Numeric => {
            let ctx = config.context()?;
            let v = if star {
                mzsv_numeric(&index, &ctx)
            } else {
                mzv_numeric(&index, &ctx)
            };
            lib(v)?.render()
        }
    };
    let stdout = match config.format {
        Some(Format::Json) => format!(
            "{}\n",
            serde_json::json!({
                "index": index.to_string(),
                "star": star,
                "mode": match mode { Mode::ExactP => "exact-p", Mode::Numeric => "numeric" },
                "trunc": config.cap,
                "value": value,
            })
        ),
        Some(Format::Tsv) => format!("index\tstar\tvalue\n{index}\t{star}\t{value}\n"),
        None => format!("{value}\n"),
    };
    Ok(Outcome { stdout, code: 0 })
}

fn need<T: Copy>(v: Option<T>, flag: &str) -> Result<T, UsageError> {
    v.ok_or_else(|| UsageError(format!("this identity needs --{flag}")))
}

fn check(
    identity: IdentityId,
    params: &Params,
    ctx: &PrecisionContext,
    config: &RunConfig,
) -> Result<IdentityReport, UsageError> {
    let m = || need(params.m, "m");
    let n = || need(params.n, "n");
    let js = || {
        params
            .j
            .clone()
            .ok_or_else(|| UsageError("this identity needs --j".into()))
    };
    let pattern = || match &params.pattern {
        Some(s) => parse::<Pattern>(s),
        None => Err(UsageError("this identity needs --pattern".into())),
    };
    let report = match identity {
        IdentityId::Main1 => id::verify_main1(m()?, n()?, ctx),
        IdentityId::Main2 => id::verify_main2(m()?, n()?, ctx),
        IdentityId::Main3 => id::verify_main3(m()?, n()?, ctx),
        IdentityId::Ext1 => id::verify_1ext(&js()?, ctx),
        IdentityId::Ext3 => id::verify_3ext(&js()?, ctx),
        IdentityId::Thm31 => id::verify_thm31_numeric(&pattern()?, ctx),
        IdentityId::TwoOne => id::verify_two_one(m()?, n()?, ctx),
        IdentityId::Z22322 => id::verify_22322(m()?, n()?, ctx),
        IdentityId::Z22122 => id::verify_22122(m()?, n()?, ctx),
        IdentityId::PropM0 => id::verify_prop_m0(n()?, ctx),
        IdentityId::ConjectureA => {
            let js = js()?;
            let n = params.n.unwrap_or(js.len() as u32 / 2);
            id::conjecture_a_instance(n, &js, ctx, config.max_den)
        }
        IdentityId::ConjectureB => {
            let js = js()?;
            let n = params.n.unwrap_or(js.len().saturating_sub(1) as u32 / 2);
            id::conjecture_b_instance(n, &js, ctx, config.max_den)
        }
        IdentityId::Telescope => id::verify_telescope(&pattern()?, config.cap()?),
        IdentityId::Ccbaa => {
            let abc = match params.abc.as_deref() {
                Some(&[a, b, c]) => Abc::new(a, b, c),
                Some(_) => return Err(UsageError("--abc takes three values".into())),
                None => Abc::new(2, 1, 2),
            };
            id::verify_ccbaa(config.cap()?, m()?, n()?, abc)
        }
        IdentityId::Main2Finite => id::verify_main2_finite(m()?, n()?, config.cap()?),
        IdentityId::PropM0Finite => id::verify_prop_m0_finite(n()?, config.cap()?),
        IdentityId::HarmonicFinite => id::verify_harmonic_finite(n()?, config.cap()?),
    };
    lib(report)
}

fn exit_code(reports: &[IdentityReport]) -> i32 {
    if reports.iter().all(IdentityReport::passed) {
        0
    } else {
        1
    }
}

pub fn verify(
    identity: IdentityId,
    params: &Params,
    config: &RunConfig,
) -> Result<Outcome, UsageError> {
    let ctx = config.context()?;
    let report = check(identity, params, &ctx, config)?;
    let reports = [report];
    Ok(Outcome {
        stdout: render(&reports, config.report_format()),
        code: exit_code(&reports),
    })
}

fn with_mn(m: u32, n: u32) -> Params {
    Params {
        m: Some(m),
        n: Some(n),
        j: None,
        pattern: None,
        abc: None,
    }
}

fn with_j(js: Vec<u32>) -> Params {
    Params {
        m: None,
        n: None,
        j: Some(js),
        pattern: None,
        abc: None,
    }
}

fn with_pattern(p: &Pattern) -> Params {
    Params {
        m: None,
        n: None,
        j: None,
        pattern: Some(p.to_string()),
        abc: None,
    }
}

fn scan_grid(family: Family, max_weight: u32, n: u32, jmax: u32) -> Vec<(IdentityId, Params)> {
    let mn = |id: IdentityId, lo: u32, weight: fn(u32, u32) -> u32| {
        grid::pairs(lo, max_weight, weight)
            .into_iter()
            .map(|(m, n)| (id, with_mn(m, n)))
            .collect::<Vec<_>>()
    };
    let n = n as usize;
    match family {
        Family::Main1 => mn(IdentityId::Main1, 1, |m, n| 2 * (m + n + 1)),
        Family::Main2 => mn(IdentityId::Main2, 1, |m, n| 2 * (m + n) + 1),
        Family::Main3 => mn(IdentityId::Main3, 1, |m, n| 2 * (m + n)),
        Family::TwoOne => mn(IdentityId::TwoOne, 1, |m, n| 2 * (m + n + 1)),
        Family::Z22322 => mn(IdentityId::Z22322, 0, |m, n| 2 * (m + n) + 3),
        Family::Z22122 => mn(IdentityId::Z22122, 0, |m, n| 2 * (m + n) + 3),
        Family::PropM0 => (1..)
            .take_while(|k| 2 * k < max_weight)
            .map(|k| {
                (
                    IdentityId::PropM0,
                    Params {
                        m: None,
                        ..with_mn(0, k)
                    },
                )
            })
            .collect(),
        Family::Ext1 => (1..=n)
            .flat_map(|len| grid::vectors(len, jmax))
            .filter(|v| v[0] >= 1 && v[v.len() - 1] >= 1)
            .map(|v| (IdentityId::Ext1, with_j(v)))
            .collect(),
        Family::Ext3 => (1..=n)
            .flat_map(|pairs| grid::vectors(2 * pairs, jmax))
            .map(|v| (IdentityId::Ext3, with_j(v)))
            .collect(),
        Family::Thm31 => grid::patterns(n, jmax)
            .iter()
            .filter(|p| grid::factors_converge(p))
            .map(|p| (IdentityId::Thm31, with_pattern(p)))
            .collect(),
        Family::Telescope => grid::patterns(n, jmax)
            .iter()
            .map(|p| (IdentityId::Telescope, with_pattern(p)))
            .collect(),
        Family::ConjectureA => grid::multisets(2 * n.max(1), jmax)
            .into_iter()
            .map(|v| (IdentityId::ConjectureA, with_j(v)))
            .collect(),
        Family::ConjectureB => grid::multisets(2 * n + 1, jmax)
            .into_iter()
            .map(|v| (IdentityId::ConjectureB, with_j(v)))
            .collect(),
    }
}

/// Runs every grid instance on a pool of `config.jobs` threads. Reports come
/// back in grid order. Unrecognized conjecture instances do not fail a scan.
pub fn scan(
    family: Family,
    max_weight: u32,
    n: u32,
    jmax: u32,
    config: &RunConfig,
) -> Result<Outcome, UsageError> {
    let ctx = config.context()?;
    if family == Family::Telescope {
        config.cap()?;
    }
    let grid = scan_grid(family, max_weight, n, jmax);
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.jobs)
        .build()
        .map_err(|e| UsageError(e.to_string()))?;
    let reports: Vec<IdentityReport> = pool.install(|| {
        grid.par_iter()
            .map(|(identity, params)| check(*identity, params, &ctx, config))
            .collect::<Result<_, _>>()
    })?;
    let failed = reports.iter().any(|r| r.status == Status::Fail);
    Ok(Outcome {
        stdout: render(&reports, config.report_format()),
        code: i32::from(failed),
    })
}
