//! Exact continued-fraction arithmetic for `α = [0; a_1, a_2, …]`.
//!
//! Convergents use the seeds `p_{-1} = 1, q_{-1} = 0, p_0 = 0, q_0 = 1`, so
//! `p_1 = 1` and `q_1 = a_1`. Everything here is exact big-integer or
//! big-rational arithmetic except the growth estimates, which are
//! floating-point logarithms of exact integers.

mod convergents;
mod enclosure;
mod growth;
mod poly;
mod surd;

pub use convergents::{convergents, Convergent, ConvergentTable};
pub use enclosure::{alpha_enclosure, cylinder, Enclosure};
pub use growth::{continuant_checks, growth_stats, ln_big, ContinuantReport, GrowthStats};
pub use poly::{
    build_pn_preperiodic, build_pn_pure, evaluate_poly_enclosure, Degeneracy, QuadraticApproximant,
    QuadraticPoly,
};
pub use surd::{surd_cf_expansion, QuadraticSurd, SurdExpansion};

use num_bigint::BigInt;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CfError {
    #[error("partial quotient a_{position} is 0, expected at least 1")]
    NonPositiveDigit { position: usize },
    #[error("convergent index {index} is beyond the computed range 0..={available}")]
    IndexOutOfRange { index: usize, available: usize },
    #[error("growth estimates need at least 16 convergents, got {0}")]
    GrowthTooShort(usize),
    #[error("{0} must be at least 1")]
    ZeroLength(&'static str),
    #[error("surd needs a positive non-square radicand, got {0}")]
    SquareRadicand(BigInt),
    #[error("surd denominator must be non-zero")]
    ZeroDenominator,
    #[error("no period found within {0} steps")]
    IterationCap(usize),
    #[error("degenerate approximant {poly}: {kind}")]
    Degenerate {
        poly: Box<QuadraticPoly>,
        kind: Box<Degeneracy>,
    },
}
