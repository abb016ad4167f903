//! Stammering continued fractions: prefix repetitions in words, exact
//! convergent arithmetic, the quadratic approximants that repetitions
//! produce, and finite-evidence transcendence certificates.

pub mod cf;
pub mod cli;
pub mod criteria;
pub mod repetition;
pub mod ser;
pub mod subshift;
pub mod word;

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/words.md")]
    mod words {}
    #[doc = include_str!("../../../book/src/repetitions.md")]
    mod repetitions {}
    #[doc = include_str!("../../../book/src/convergents.md")]
    mod convergents {}
    #[doc = include_str!("../../../book/src/approximants.md")]
    mod approximants {}
    #[doc = include_str!("../../../book/src/certificates.md")]
    mod certificates {}
    #[doc = include_str!("../../../book/src/subshifts.md")]
    mod subshifts {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
