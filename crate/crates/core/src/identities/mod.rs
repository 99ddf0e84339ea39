//! Checkers for the identities among ζ* values. Each returns an
//! [`IdentityReport`] with both sides, the residual and a verdict.
//!
//! Limit identities are checked numerically. Their finite-level
//! predecessors are checked exactly in rational arithmetic.

mod conjecture;
mod exact;
mod limits;

pub use conjecture::{conjecture_a_instance, conjecture_b_instance};
pub use exact::{
    verify_ccbaa, verify_harmonic_finite, verify_main2_finite, verify_prop_m0_finite,
    verify_telescope,
};
pub use limits::{
    ext1_sides, ext3_sides, main1_sides, main2_sides, main3_sides, prop_m0_sides, thm31_sides,
    two_one_sides, verify_1ext, verify_22122, verify_22322, verify_3ext, verify_main1,
    verify_main2, verify_main3, verify_prop_m0, verify_thm31_numeric, verify_two_one, z22122_sides,
    z22322_sides,
};

use rug::Rational;
use serde::{Deserialize, Serialize};
use serde_json::{Map, Value};

use crate::numeric::{NumericValue, PrecisionContext};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Method {
    Exact,
    Numeric,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Fail,
    Unrecognized,
}

/// The outcome of one identity check. Field order is the serialized order.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct IdentityReport {
    pub identity: String,
    pub params: Map<String, Value>,
    pub lhs: String,
    pub rhs: String,
    pub residual: String,
    pub tolerance: f64,
    pub method: Method,
    pub status: Status,
    pub precision_bits: u32,
    pub ladder: Vec<u64>,
}

impl IdentityReport {
    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    /// The residual as a float; `None` when there is none.
    pub fn residual_f64(&self) -> Option<f64> {
        self.residual.parse().ok()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("report serializes")
    }
}

/// `max(1e-10, 2^{weight - bits/3})`.
pub fn tolerance(weight: u32, bits: u32) -> f64 {
    1e-10f64.max(2f64.powf(weight as f64 - bits as f64 / 3.0))
}

pub(crate) fn format_residual(x: f64) -> String {
    format!("{x:.3e}")
}

pub(crate) fn numeric_report(
    identity: &str,
    params: Map<String, Value>,
    (lhs, rhs): (NumericValue, NumericValue),
    weight: u32,
    ctx: &PrecisionContext,
) -> IdentityReport {
    let residual = lhs.sub(&rhs).abs().to_f64();
    let tol = tolerance(weight, ctx.bits);
    IdentityReport {
        identity: identity.to_string(),
        params,
        lhs: lhs.render(),
        rhs: rhs.render(),
        residual: format_residual(residual),
        tolerance: tol,
        method: Method::Numeric,
        status: if residual <= tol {
            Status::Pass
        } else {
            Status::Fail
        },
        precision_bits: ctx.bits,
        ladder: ctx.ladder.clone(),
    }
}

pub(crate) fn exact_report(
    identity: &str,
    params: Map<String, Value>,
    lhs: Rational,
    rhs: Rational,
) -> IdentityReport {
    let residual = Rational::from(&lhs - &rhs);
    IdentityReport {
        identity: identity.to_string(),
        params,
        lhs: lhs.to_string(),
        rhs: rhs.to_string(),
        residual: residual.to_string(),
        tolerance: 0.0,
        method: Method::Exact,
        status: if residual == 0 {
            Status::Pass
        } else {
            Status::Fail
        },
        precision_bits: 0,
        ladder: Vec::new(),
    }
}

/// Builds a parameter map from `(name, value)` pairs.
pub(crate) fn params<const N: usize>(pairs: [(&str, Value); N]) -> Map<String, Value> {
    pairs.into_iter().map(|(k, v)| (k.to_string(), v)).collect()
}
