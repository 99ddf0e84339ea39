use zetakit::{defaults, PrecisionContext};

use crate::args::{Format, Global};
use crate::UsageError;

pub const JOBS_ENV: &str = "ZETAKIT_JOBS";

/// Validated run settings shared by every subcommand.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub bits: u32,
    pub cap: Option<u64>,
    pub ladder: Vec<u64>,
    pub order: usize,
    pub jobs: usize,
    pub format: Option<Format>,
    pub max_den: u64,
}

impl RunConfig {
    pub fn from_args(global: &Global, jobs_env: Option<&str>) -> Result<Self, UsageError> {
        let jobs = match jobs_env {
            Some(v) => v
                .trim()
                .parse()
                .map_err(|_| UsageError(format!("{JOBS_ENV}={v} is not a job count")))?,
            None => global.jobs,
        };
        let config = RunConfig {
            bits: global.bits,
            cap: global.trunc,
            ladder: global.ladder.clone().unwrap_or_else(defaults::ladder),
            order: global.order,
            jobs,
            format: global.format,
            max_den: global.max_den,
        };
        config.validate()?;
        Ok(config)
    }

    fn validate(&self) -> Result<(), UsageError> {
        if self.bits < 64 {
            return Err(UsageError(format!(
                "--bits must be at least 64, got {}",
                self.bits
            )));
        }
        if self.cap == Some(0) {
            return Err(UsageError("--trunc must be at least 1".into()));
        }
        if self.jobs == 0 {
            return Err(UsageError("job count must be at least 1".into()));
        }
        if self.max_den == 0 {
            return Err(UsageError("--max-den must be at least 1".into()));
        }
        self.context().map(|_| ())
    }

    pub fn context(&self) -> Result<PrecisionContext, UsageError> {
        PrecisionContext::new(self.bits, self.ladder.clone(), self.order)
            .map_err(|e| UsageError(e.to_string()))
    }

    pub fn cap(&self) -> Result<u64, UsageError> {
        self.cap
            .ok_or_else(|| UsageError("--trunc is required here".into()))
    }

    pub fn report_format(&self) -> Format {
        self.format.unwrap_or(Format::Json)
    }
}
