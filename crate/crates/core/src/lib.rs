//! Multiple zeta(-star) values with 2-3-1 indices: exact truncated sums,
//! generating-function recursions, the harmonic algebra, arbitrary-precision
//! evaluation and identity checkers.

pub mod error;
pub mod halg;
pub mod identities;
pub mod indices;
pub mod numeric;
pub mod truncated;

pub use error::{Error, Result};
pub use halg::{Letter, NCPoly, Word};
pub use identities::{IdentityReport, Method, Status};
pub use indices::{Index, Pattern, Sep};
pub use numeric::{Evaluator, NumericValue, PrecisionContext};
pub use truncated::{Abc, Caps, GFMatrix, GFPoly};

pub use rug::{Float, Integer, Rational};

/// Pinned defaults shared by the library and the command line.
pub mod defaults {
    pub const BITS: u32 = 192;
    pub const ORDER: usize = 4;
    pub const MAX_DEN: u64 = 1_000_000;

    /// `1024 · 2^k` for `k = 0..=4`.
    pub fn ladder() -> Vec<u64> {
        (0..5).map(|k| 1024 << k).collect()
    }
}
