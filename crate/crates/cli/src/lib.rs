//! The `zetakit` command line: `compute`, `verify` and `scan`.
//!
//! Exit codes: 0 on pass, 1 when a check fails or a value is not
//! recognized, 2 on usage errors (bad flags, unparseable input, divergent
//! instances).

pub mod args;
pub mod commands;
pub mod config;
pub mod grid;
pub mod output;

use std::ffi::OsString;
use std::fmt;

use clap::Parser;

use args::{Cli, Command};
use config::{RunConfig, JOBS_ENV};

/// A problem with the request rather than with the mathematics.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UsageError(pub String);

impl fmt::Display for UsageError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for UsageError {}

/// Parses `argv`, runs the subcommand, prints its output and returns the
/// process exit code.
pub fn run<I, T>(argv: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { 2 } else { 0 };
        }
    };
    let jobs_env = std::env::var(JOBS_ENV).ok();
    match execute(&cli, jobs_env.as_deref()) {
        Ok(outcome) => {
            print!("{}", outcome.stdout);
            outcome.code
        }
        Err(e) => {
            eprintln!("error: {e}");
            2
        }
    }
}

pub fn execute(cli: &Cli, jobs_env: Option<&str>) -> Result<commands::Outcome, UsageError> {
    let config = RunConfig::from_args(&cli.global, jobs_env)?;
    match &cli.command {
        Command::Compute {
            star,
            index,
            pattern,
            mode,
        } => commands::compute(*star, index.as_deref(), pattern.as_deref(), *mode, &config),
        Command::Verify { identity, params } => commands::verify(*identity, params, &config),
        Command::Scan {
            family,
            max_weight,
            n,
            jmax,
        } => commands::scan(*family, *max_weight, *n, *jmax, &config),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outcome(args: &[&str]) -> Result<commands::Outcome, UsageError> {
        let cli =
            Cli::try_parse_from(std::iter::once("zetakit").chain(args.iter().copied())).unwrap();
        execute(&cli, None)
    }

    #[test]
    fn exact_compute() {
        let o = outcome(&[
            "compute", "--star", "--index", "2,1", "--trunc", "2", "--mode", "exact-p",
        ])
        .unwrap();
        assert_eq!(o.stdout, "11/8\n");
    }

    #[test]
    fn config_validation() {
        assert!(outcome(&["compute", "--index", "2", "--bits", "32"]).is_err());
        assert!(
            outcome(&["compute", "--index", "2", "--trunc", "0", "--mode", "exact-p"]).is_err()
        );
        let cli = Cli::try_parse_from(["zetakit", "compute", "--index", "2"]).unwrap();
        assert!(execute(&cli, Some("0")).is_err());
        assert!(execute(&cli, Some("two")).is_err());
    }

    #[test]
    fn env_overrides_jobs_flag() {
        let cli =
            Cli::try_parse_from(["zetakit", "--jobs", "3", "compute", "--index", "2"]).unwrap();
        assert_eq!(
            RunConfig::from_args(&cli.global, Some("5")).unwrap().jobs,
            5
        );
        assert_eq!(RunConfig::from_args(&cli.global, None).unwrap().jobs, 3);
    }

    #[test]
    fn divergent_main2_is_a_usage_error() {
        let e = outcome(&["verify", "main2", "--m", "0", "--n", "1"])
            .err()
            .unwrap();
        assert!(e.0.contains("diverge when m=0"));
    }

    #[test]
    fn missing_parameters() {
        assert!(outcome(&["verify", "main1", "--m", "1"]).is_err());
        assert!(outcome(&["verify", "telescope", "--pattern", "j=1"]).is_err());
    }
}
