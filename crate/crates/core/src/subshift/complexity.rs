use serde::Serialize;

use super::suffix::{lcp_array, suffix_array};
use crate::repetition::{detect_eventual_period, PeriodicityEvidence};
use crate::word::Letter;

/// Exact factor counts `p(n)` of a finite prefix, `1 ≤ n ≤ n_max`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ComplexityProfile {
    prefix_len: usize,
    alphabet_size: usize,
    values: Vec<usize>,
}

impl ComplexityProfile {
    pub fn prefix_len(&self) -> usize {
        self.prefix_len
    }

    pub fn alphabet_size(&self) -> usize {
        self.alphabet_size
    }

    pub fn n_max(&self) -> usize {
        self.values.len()
    }

    /// `p(n)`, for `1 ≤ n ≤ n_max`.
    pub fn get(&self, n: usize) -> Option<usize> {
        n.checked_sub(1).and_then(|i| self.values.get(i)).copied()
    }

    /// `(n, p(n))` pairs.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.values.iter().enumerate().map(|(i, &p)| (i + 1, p))
    }

    /// Counts past `N/2` may miss factors of the infinite word that the
    /// prefix has not reached yet.
    pub fn possibly_undercounted(&self, n: usize) -> bool {
        2 * n > self.prefix_len
    }

    /// Largest `n` whose count is not flagged.
    pub fn exact_limit(&self) -> usize {
        self.n_max().min(self.prefix_len / 2)
    }
}

#[derive(Serialize)]
struct ProfileRow {
    n: usize,
    p_n: usize,
    undercount: bool,
}

/// JSON shape: `{"N", "alphabet_size", "values": [{"n", "p_n", "undercount"}]}`.
impl Serialize for ComplexityProfile {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let rows: Vec<ProfileRow> = self
            .iter()
            .map(|(n, p_n)| ProfileRow {
                n,
                p_n,
                undercount: self.possibly_undercounted(n),
            })
            .collect();
        let mut st = s.serialize_struct("ComplexityProfile", 3)?;
        st.serialize_field("N", &self.prefix_len)?;
        st.serialize_field("alphabet_size", &self.alphabet_size)?;
        st.serialize_field("values", &rows)?;
        st.end()
    }
}

/// Distinct factors of every length from one suffix array: the suffix at
/// rank `i` contributes a new factor for each length in
/// `(lcp[i], N − sa[i]]`.
pub fn complexity(prefix: &[Letter], n_max: usize) -> ComplexityProfile {
    let n = prefix.len();
    let sa = suffix_array(prefix);
    let lcp = lcp_array(prefix, &sa);
    let mut diff = vec![0i64; n + 2];
    for (i, &p) in sa.iter().enumerate() {
        diff[lcp[i] + 1] += 1;
        diff[n - p + 1] -= 1;
    }
    let mut acc = 0i64;
    let mut values: Vec<usize> = diff[1..=n.min(n_max)]
        .iter()
        .map(|d| {
            acc += d;
            acc as usize
        })
        .collect();
    values.resize(n_max, 0);
    let mut letters: Vec<Letter> = prefix.to_vec();
    letters.sort_unstable();
    letters.dedup();
    ComplexityProfile {
        prefix_len: n,
        alphabet_size: letters.len(),
        values,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GateReport {
    /// Smallest unflagged `n` with `p(n) ≤ n`.
    pub fired_at: Option<usize>,
    pub periodicity: Option<PeriodicityEvidence>,
    /// The gate and the period detector reach the same conclusion.
    pub agrees: bool,
}

/// `p(n) ≤ n` for some `n` forces eventual periodicity. Only counts up to
/// `N/2` are consulted, since every prefix satisfies the inequality near
/// its own length.
pub fn morse_hedlund_gate(profile: &ComplexityProfile, prefix: &[Letter]) -> GateReport {
    let fired_at = profile
        .iter()
        .take(profile.exact_limit())
        .find(|&(n, p)| p <= n)
        .map(|(n, _)| n);
    let periodicity = detect_eventual_period(prefix);
    GateReport {
        fired_at,
        agrees: fired_at.is_some() == periodicity.is_some(),
        periodicity,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(tag = "class", rename_all = "snake_case")]
pub enum GapClass {
    /// `p(n) − n ≤ 0` at `n`.
    NonPositive { first_n: usize },
    /// `p(n) − n = a` for all sampled `n ≥ from`.
    EventuallyConstant { a: i64, from: usize },
    /// Non-decreasing and not eventually constant.
    Increasing,
    Irregular,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GapProbe {
    pub class: GapClass,
    /// `(n, p(n) − n)` over the unflagged range.
    pub differences: Vec<(usize, i64)>,
}

/// Classifies the trend of `p(n) − n` on the unflagged part of the profile.
/// A constant stretch counts only if it covers at least the second half of
/// the sampled range.
pub fn complexity_gap_probe(profile: &ComplexityProfile) -> GapProbe {
    let differences: Vec<(usize, i64)> = profile
        .iter()
        .take(profile.exact_limit())
        .map(|(n, p)| (n, p as i64 - n as i64))
        .collect();
    let class = classify(&differences);
    GapProbe { class, differences }
}

fn classify(d: &[(usize, i64)]) -> GapClass {
    if let Some(&(n, _)) = d.iter().find(|&&(_, x)| x <= 0) {
        return GapClass::NonPositive { first_n: n };
    }
    let Some(&(last_n, last)) = d.last() else {
        return GapClass::Irregular;
    };
    let start = d.iter().rposition(|&(_, x)| x != last).map_or(0, |i| i + 1);
    let from = d[start].0;
    if d.len() >= 2 && 2 * (last_n - from + 1) >= d.len() {
        return GapClass::EventuallyConstant { a: last, from };
    }
    if d.windows(2).all(|w| w[0].1 <= w[1].1) {
        GapClass::Increasing
    } else {
        GapClass::Irregular
    }
}
