//! Arbitrary-precision evaluation of MZVs, MZSVs, π and `ζ(s)`, and rational
//! recognition of the results.

mod constants;
mod mzv;
mod recognize;
mod value;

pub use constants::{bernoulli, const_pi, zeta_int};
pub use mzv::{mzsv_numeric, mzv_numeric};
pub use recognize::recognize_rational;
pub use value::NumericValue;

use serde::{Deserialize, Serialize};

use crate::defaults;
use crate::error::{out_of_range, Error, Result};

/// Extra bits carried internally beyond `PrecisionContext::bits`.
pub const GUARD_BITS: u32 = 32;

/// How limits of nested sums are evaluated.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Evaluator {
    /// Split the iterated integral at `split.0 / split.1` and sum products of
    /// multiple polylogarithm series.
    Convolution { split: (u32, u32) },
    /// Richardson extrapolation in `1/p` of truncated sums along the ladder.
    Richardson,
}

impl Default for Evaluator {
    fn default() -> Self {
        Evaluator::Convolution { split: (1, 2) }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PrecisionContext {
    pub bits: u32,
    pub ladder: Vec<u64>,
    pub order: usize,
    pub evaluator: Evaluator,
}

impl Default for PrecisionContext {
    fn default() -> Self {
        PrecisionContext {
            bits: defaults::BITS,
            ladder: defaults::ladder(),
            order: defaults::ORDER,
            evaluator: Evaluator::default(),
        }
    }
}

impl PrecisionContext {
    pub fn new(bits: u32, ladder: Vec<u64>, order: usize) -> Result<Self> {
        PrecisionContext {
            bits,
            ladder,
            order,
            evaluator: Evaluator::default(),
        }
        .validated()
    }

    pub fn with_bits(self, bits: u32) -> Result<Self> {
        PrecisionContext { bits, ..self }.validated()
    }

    pub fn with_order(self, order: usize) -> Result<Self> {
        PrecisionContext { order, ..self }.validated()
    }

    pub fn with_evaluator(self, evaluator: Evaluator) -> Result<Self> {
        PrecisionContext { evaluator, ..self }.validated()
    }

    pub fn working_bits(&self) -> u32 {
        self.bits + GUARD_BITS
    }

    fn validated(self) -> Result<Self> {
        if self.bits < 16 {
            return Err(out_of_range("precision bits", self.bits as i64, ">= 16"));
        }
        if self.ladder.is_empty() || self.ladder[0] == 0 {
            return Err(Error::Precision(
                "ladder must be non-empty and positive".into(),
            ));
        }
        if self.ladder.windows(2).any(|w| w[0] >= w[1]) {
            return Err(Error::Precision(
                "ladder must be strictly increasing".into(),
            ));
        }
        if self.order >= self.ladder.len() {
            return Err(out_of_range(
                "extrapolation order",
                self.order as i64,
                format!("< ladder length {}", self.ladder.len()),
            ));
        }
        if let Evaluator::Convolution { split: (num, den) } = self.evaluator {
            if num == 0 || num >= den {
                return Err(Error::Precision(format!(
                    "split point {num}/{den} not in (0, 1)"
                )));
            }
        }
        Ok(self)
    }
}
