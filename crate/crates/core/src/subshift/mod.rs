//! Factor complexity and recurrence of words, and the prefix powers that
//! linear recurrence and morphic generation force.

mod complexity;
mod morphic;
mod recurrence;
mod suffix;

pub use complexity::{
    complexity, complexity_gap_probe, morse_hedlund_gate, ComplexityProfile, GapClass, GapProbe,
    GateReport,
};
pub use morphic::{
    lemma2_constant, theorem3_witnesses, Lemma2Constant, Theorem3Report, Theorem3Witness,
    LEMMA2_CHECK_DEPTH, THEOREM3_MAX_LEN,
};
pub use recurrence::{recurrence_stats, theorem5_witness, GapRow, RecurrenceStats};
pub use suffix::{lcp_array, suffix_array};

use thiserror::Error;

use crate::word::{Letter, WordError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SubshiftError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error("letter {0} occurs only once in the fixed point, so the generator is not recurrent")]
    NotRecurrent(Letter),
    #[error("recurrence hypothesis violated at n = {n}: the prefix of length {n} does not return within {k}·{n} letters")]
    RecurrenceViolated { n: usize, k: usize },
    #[error("prefix too short: need {needed} letters, have {got}")]
    PrefixTooShort { needed: usize, got: usize },
    #[error("invalid parameter: {0}")]
    Parameter(String),
}
