//! Indices (compositions) and the 2-3-1 patterns built from runs of 2s.
//!
//! An [`Index`] `(k1, ..., kn)` is stored outermost-first: `k1` belongs to the
//! largest summation variable. A [`Pattern`] `(j, e)` stands for the index
//! `({2}^j1, e1, {2}^j2, ..., e_{n-1}, {2}^jn)` with every `e_i` in `{1, 3}`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{out_of_range, Error, Result};

/// A composition of positive integers, the argument of `ζ` and `ζ*`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
pub struct Index(Vec<u32>);

impl Index {
    pub fn new(parts: Vec<u32>) -> Result<Self> {
        if let Some(&bad) = parts.iter().find(|&&k| k == 0) {
            return Err(out_of_range(
                "index part",
                bad as i64,
                "every part must be >= 1",
            ));
        }
        Ok(Index(parts))
    }

    /// The empty index `∅` of depth 0.
    pub fn empty() -> Self {
        Index(Vec::new())
    }

    /// `{2}^n`.
    pub fn twos(n: u32) -> Self {
        Index(vec![2; n as usize])
    }

    /// Appends one part. Panics if `part == 0`.
    pub fn with(mut self, part: u32) -> Self {
        assert!(part >= 1, "index parts are positive");
        self.0.push(part);
        self
    }

    /// Appends `{2}^n`.
    pub fn with_twos(mut self, n: u32) -> Self {
        self.0.extend(std::iter::repeat_n(2, n as usize));
        self
    }

    pub fn concat(mut self, other: &Index) -> Self {
        self.0.extend_from_slice(&other.0);
        self
    }

    pub fn parts(&self) -> &[u32] {
        &self.0
    }

    pub fn depth(&self) -> usize {
        self.0.len()
    }

    pub fn weight(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `true` when the series converges: empty, or `k1 >= 2`.
    pub fn is_admissible(&self) -> bool {
        self.0.first().is_none_or(|&k| k >= 2)
    }

    /// The MZV dual: write the index as `x^{k1-1} y ... x^{kn-1} y`, reverse
    /// the word and swap `x <-> y`.
    pub fn dual(&self) -> Result<Index> {
        if self.is_empty() || !self.is_admissible() {
            return Err(Error::NotAdmissible(self.to_string()));
        }
        // true = y, false = x
        let mut word = Vec::with_capacity(self.weight() as usize);
        for &k in &self.0 {
            word.extend(std::iter::repeat_n(false, k as usize - 1));
            word.push(true);
        }
        let dual: Vec<bool> = word.iter().rev().map(|&b| !b).collect();
        let mut parts = Vec::new();
        let mut run = 1;
        for letter in dual {
            if letter {
                parts.push(run);
                run = 1;
            } else {
                run += 1;
            }
        }
        Ok(Index(parts))
    }
}

impl fmt::Display for Index {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.0.is_empty() {
            return f.write_str("∅");
        }
        for (i, k) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{k}")?;
        }
        Ok(())
    }
}

impl FromStr for Index {
    type Err = Error;

    /// Comma-separated parts, e.g. `"2,1,2"`. `""` and `"∅"` give the empty index.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        if s.is_empty() || s == "∅" {
            return Ok(Index::empty());
        }
        let parts = parse_list(s).ok_or_else(|| Error::Parse {
            what: "index",
            input: s.to_string(),
        })?;
        Index::new(parts)
    }
}

fn parse_list(s: &str) -> Option<Vec<u32>> {
    s.split(',').map(|p| p.trim().parse::<u32>().ok()).collect()
}

/// Separator between two runs of 2s.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Sep {
    One,
    Three,
}

impl Sep {
    pub fn value(self) -> u32 {
        match self {
            Sep::One => 1,
            Sep::Three => 3,
        }
    }

    pub fn from_value(v: u32) -> Result<Sep> {
        match v {
            1 => Ok(Sep::One),
            3 => Ok(Sep::Three),
            other => Err(out_of_range("separator", other as i64, "1 or 3")),
        }
    }
}

/// A 2-3-1 pattern `(j, e)`.
///
/// `Empty` stands for the depth-0 pattern whose value is `1`; every other
/// pattern has at least one run.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Pattern {
    Empty,
    Runs { runs: Vec<u32>, seps: Vec<Sep> },
}

impl Pattern {
    pub fn new(runs: Vec<u32>, seps: Vec<Sep>) -> Result<Self> {
        if runs.is_empty() {
            return Err(Error::MalformedPattern(
                "a pattern needs at least one run; use Pattern::Empty".into(),
            ));
        }
        if seps.len() + 1 != runs.len() {
            return Err(Error::MalformedPattern(format!(
                "{} runs need {} separators, got {}",
                runs.len(),
                runs.len() - 1,
                seps.len()
            )));
        }
        Ok(Pattern::Runs { runs, seps })
    }

    /// Convenience constructor from raw separator values.
    pub fn from_values(runs: &[u32], seps: &[u32]) -> Result<Self> {
        let seps = seps
            .iter()
            .map(|&e| Sep::from_value(e))
            .collect::<Result<Vec<_>>>()?;
        Pattern::new(runs.to_vec(), seps)
    }

    /// Number of runs `n` (0 for the empty pattern).
    pub fn len(&self) -> usize {
        match self {
            Pattern::Empty => 0,
            Pattern::Runs { runs, .. } => runs.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        matches!(self, Pattern::Empty)
    }

    pub fn runs(&self) -> &[u32] {
        match self {
            Pattern::Empty => &[],
            Pattern::Runs { runs, .. } => runs,
        }
    }

    pub fn seps(&self) -> &[Sep] {
        match self {
            Pattern::Empty => &[],
            Pattern::Runs { seps, .. } => seps,
        }
    }

    /// Diverges exactly when `n >= 2`, `j1 = 0` and `e1 = 1`.
    pub fn is_admissible(&self) -> bool {
        match self {
            Pattern::Empty => true,
            Pattern::Runs { runs, seps } => {
                !(runs.len() >= 2 && runs[0] == 0 && seps[0] == Sep::One)
            }
        }
    }

    /// Flattens to `({2}^j1, e1, ..., e_{n-1}, {2}^jn)`.
    pub fn to_index(&self) -> Index {
        let mut index = Index::empty();
        if let Pattern::Runs { runs, seps } = self {
            for (i, &j) in runs.iter().enumerate() {
                if i > 0 {
                    index = index.with(seps[i - 1].value());
                }
                index = index.with_twos(j);
            }
        }
        index
    }

    /// `j_+`: appends a zero run, joined by `sep`.
    pub fn append_zero(&self, sep: Sep) -> Result<Pattern> {
        match self {
            Pattern::Empty => Err(Error::MalformedPattern(
                "cannot append a run to the empty pattern".into(),
            )),
            Pattern::Runs { runs, seps } => {
                let mut runs = runs.clone();
                let mut seps = seps.clone();
                runs.push(0);
                seps.push(sep);
                Ok(Pattern::Runs { runs, seps })
            }
        }
    }

    /// `j^+`: increments the last run.
    pub fn increment_last(&self) -> Result<Pattern> {
        match self {
            Pattern::Empty => Err(Error::MalformedPattern(
                "the empty pattern has no last run".into(),
            )),
            Pattern::Runs { runs, seps } => {
                let mut runs = runs.clone();
                *runs.last_mut().expect("non-empty") += 1;
                Ok(Pattern::Runs {
                    runs,
                    seps: seps.clone(),
                })
            }
        }
    }

    /// `j'`: runs and separators reversed.
    pub fn reversed(&self) -> Pattern {
        match self {
            Pattern::Empty => Pattern::Empty,
            Pattern::Runs { runs, seps } => Pattern::Runs {
                runs: runs.iter().rev().copied().collect(),
                seps: seps.iter().rev().copied().collect(),
            },
        }
    }

    /// `j|_k`: the first `k` runs with the first `k - 1` separators.
    pub fn prefix(&self, k: usize) -> Result<Pattern> {
        let n = self.len();
        if k > n {
            return Err(out_of_range("prefix length", k as i64, format!("0..={n}")));
        }
        if k == 0 {
            return Ok(Pattern::Empty);
        }
        Ok(Pattern::Runs {
            runs: self.runs()[..k].to_vec(),
            seps: self.seps()[..k - 1].to_vec(),
        })
    }
}

impl fmt::Display for Pattern {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Pattern::Empty => f.write_str("empty"),
            Pattern::Runs { runs, seps } => {
                let runs: Vec<String> = runs.iter().map(u32::to_string).collect();
                let seps: Vec<String> = seps.iter().map(|e| e.value().to_string()).collect();
                write!(f, "j={};e={}", runs.join(","), seps.join(","))
            }
        }
    }
}

impl FromStr for Pattern {
    type Err = Error;

    /// `"j=1,0;e=1"`; the `e=` part may be omitted or empty for one run.
    fn from_str(s: &str) -> Result<Self> {
        let s = s.trim();
        let bad = || Error::Parse {
            what: "pattern",
            input: s.to_string(),
        };
        if s.is_empty() || s == "empty" {
            return Ok(Pattern::Empty);
        }
        let mut runs = None;
        let mut seps = Vec::new();
        for field in s.split(';') {
            let (key, value) = field.split_once('=').ok_or_else(bad)?;
            let value = value.trim();
            match key.trim() {
                "j" => runs = Some(parse_list(value).ok_or_else(bad)?),
                "e" if value.is_empty() => {}
                "e" => seps = parse_list(value).ok_or_else(bad)?,
                _ => return Err(bad()),
            }
        }
        let runs = runs.ok_or_else(bad)?;
        Pattern::from_values(&runs, &seps)
    }
}
