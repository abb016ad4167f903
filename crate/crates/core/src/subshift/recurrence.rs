use num_traits::ToPrimitive;
use serde::Serialize;

use super::suffix::{lcp_array, suffix_array};
use super::SubshiftError;
use crate::ser::Approx;
use crate::repetition::{z_array, RepetitionWitness};
use crate::word::{Letter, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapRow {
    pub n: usize,
    /// Largest distance between consecutive occurrences of a length-`n`
    /// factor; `None` if no factor of that length occurs twice.
    pub worst_gap: Option<usize>,
    /// Length-`n` factors seen exactly once in the prefix.
    pub nonrecurrent: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct RecurrenceStats {
    pub prefix_len: usize,
    pub n_max: usize,
    pub rows: Vec<GapRow>,
    /// `max(1, max_n G(n)/n)`.
    pub c_hat: f64,
    /// Some factor never recurs, so `c_hat` only bounds the true constant
    /// from below.
    pub lower_bound_only: bool,
}

impl RecurrenceStats {
    /// `⌈ĉ⌉`, the default recurrence constant for the prefix-power witness.
    pub fn suggested_k(&self) -> usize {
        self.c_hat.ceil().to_usize().unwrap_or(usize::MAX).max(1)
    }
}

impl Serialize for RecurrenceStats {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("RecurrenceStats", 5)?;
        st.serialize_field("N", &self.prefix_len)?;
        st.serialize_field("n_max", &self.n_max)?;
        st.serialize_field("rows", &self.rows)?;
        st.serialize_field("c_hat", &Approx::new(self.c_hat))?;
        st.serialize_field("lower_bound_only", &self.lower_bound_only)?;
        st.end()
    }
}

/// Worst return gaps of all factors of length `1 ..= n_max` in the prefix.
///
/// Occurrences of one factor form a contiguous block of the suffix array
/// where the LCP stays `≥ n`; the gaps are read off the sorted positions.
/// Gaps that would end past the prefix are not seen, so every figure is a
/// lower bound for the infinite word.
pub fn recurrence_stats(prefix: &[Letter], n_max: usize) -> RecurrenceStats {
    let len = prefix.len();
    let sa = suffix_array(prefix);
    let lcp = lcp_array(prefix, &sa);
    let mut rows = Vec::with_capacity(n_max);
    let mut block: Vec<usize> = Vec::new();
    for n in 1..=n_max.min(len) {
        let mut worst: Option<usize> = None;
        let mut nonrecurrent = 0;
        let mut flush = |block: &mut Vec<usize>| {
            if block.len() == 1 {
                nonrecurrent += 1;
            } else if block.len() > 1 {
                block.sort_unstable();
                let g = block.windows(2).map(|w| w[1] - w[0]).max().unwrap();
                worst = Some(worst.map_or(g, |x: usize| x.max(g)));
            }
            block.clear();
        };
        for (i, &p) in sa.iter().enumerate() {
            if len - p < n {
                continue;
            }
            if lcp[i] < n {
                flush(&mut block);
            }
            block.push(p);
        }
        flush(&mut block);
        rows.push(GapRow {
            n,
            worst_gap: worst,
            nonrecurrent,
        });
    }
    let c_hat = rows
        .iter()
        .filter_map(|r| r.worst_gap.map(|g| g as f64 / r.n as f64))
        .fold(1.0, f64::max);
    let lower_bound_only = rows.iter().any(|r| r.nonrecurrent > 0);
    RecurrenceStats {
        prefix_len: len,
        n_max,
        rows,
        c_hat,
        lower_bound_only,
    }
}

/// The prefix power `(U A)^{(|UA| + n)/|UA|}` built from the first return of
/// the prefix `U` of length `n` inside the next `k n` letters.
///
/// The return is searched at shifts `j ∈ [n, k n]`, so the root `UA` has
/// length `j` and the exponent is at least `1 + 1/k`.
pub fn theorem5_witness(
    prefix: &[Letter],
    k: usize,
    n: usize,
) -> Result<RepetitionWitness, SubshiftError> {
    if k == 0 || n == 0 {
        return Err(SubshiftError::Parameter(format!(
            "k and n must be positive, got k={k}, n={n}"
        )));
    }
    let needed = (k + 1) * n;
    if prefix.len() < needed {
        return Err(SubshiftError::PrefixTooShort {
            needed,
            got: prefix.len(),
        });
    }
    let z = z_array(&prefix[..needed]);
    let j = (n..=k * n)
        .find(|&j| z[j] >= n)
        .ok_or(SubshiftError::RecurrenceViolated { n, k })?;
    let wit = RepetitionWitness {
        r: 0,
        s: j,
        m: n,
        truncated: false,
    };
    debug_assert!(wit.exponent() >= Rational::new(k as u64 + 1, k as u64));
    Ok(wit)
}
