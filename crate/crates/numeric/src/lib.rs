//! Numeric kernel for the bitangent tools.
//!
//! Exact rational arithmetic is used for everything that is constructed
//! (forms, eliminants, resultants); dyadic intervals with outward rounding
//! are used to evaluate at algebraic points. All sign decisions made by the
//! higher layers go through [`RInterval::sign`] or exact evaluation.

pub mod aberth;
pub mod dyadic;
pub mod error;
pub mod interval;
pub mod mpoly;
pub mod rat;
pub mod resultant;
pub mod roots;
pub mod scalar;
pub mod sign;
pub mod upoly;

pub use aberth::complex_root_clusters;
pub use dyadic::{Dyadic, Round};
pub use error::NumericError;
pub use interval::RInterval;
pub use mpoly::MultiPoly;
pub use rat::{rat, rat_frac, Rat};
pub use resultant::{resultant, resultant_dense, subresultant_chain};
pub use roots::{isolate_real_roots, refine_root, RealRoot};
pub use scalar::Scalar;
pub use sign::{decide_sign, sign_at, Coord, Sign};
pub use upoly::UniPoly;

/// Working-precision policy for interval evaluation.
///
/// Evaluation starts at `start_bits` significant bits and doubles until a
/// decision is made or `cap_bits` is exceeded.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Precision {
    pub start_bits: u32,
    pub cap_bits: u32,
}

/// Environment variable overriding [`Precision::cap_bits`].
pub const PRECISION_CAP_ENV: &str = "BITANGENT_PRECISION_CAP";

impl Default for Precision {
    fn default() -> Self {
        Precision {
            start_bits: 64,
            cap_bits: 4096,
        }
    }
}

impl Precision {
    pub fn with_cap(cap_bits: u32) -> Self {
        Precision {
            cap_bits: cap_bits.max(64),
            ..Default::default()
        }
    }

    /// Default precision with the cap taken from `BITANGENT_PRECISION_CAP`
    /// when it is set to a valid integer.
    pub fn from_env() -> Self {
        match std::env::var(PRECISION_CAP_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u32>().ok())
        {
            Some(cap) => Precision::with_cap(cap),
            None => Precision::default(),
        }
    }

    /// The doubling schedule `start, 2*start, ...` up to and including the cap.
    pub fn schedule(&self) -> impl Iterator<Item = u32> {
        let cap = self.cap_bits;
        std::iter::successors(Some(self.start_bits.min(cap)), move |&p| {
            if p >= cap {
                None
            } else {
                Some((p * 2).min(cap))
            }
        })
    }
}
