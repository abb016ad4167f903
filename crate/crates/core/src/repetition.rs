//! Prefix repetitions: witnesses of shape `U V^w` at the start of a word,
//! their normalization, and evidence of eventual periodicity.
//!
//! All scans work on a finite prefix `a_1 … a_N` passed as a slice; the
//! scan bound `N` is the slice length. Positions in the public types are
//! lengths (`r = |U|`, `s = |V|`), so they do not depend on 0- or 1-based
//! indexing.

use serde::Serialize;
use thiserror::Error;

use crate::ser;
use crate::word::{Letter, Rational};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RepetitionError {
    #[error("repetition exponent must exceed 1, got {0}")]
    ExponentTooSmall(Rational),
    #[error("scan bound {0} is too small, need at least 2 letters")]
    ScanTooShort(usize),
}

/// Certifies that `a_1 … a_{r+s+m}` equals `U V^{(s+m)/s}` where
/// `U = a_1 … a_r` and `V = a_{r+1} … a_{r+s}`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RepetitionWitness {
    pub r: usize,
    pub s: usize,
    /// Matched length beyond the first copy of `V`.
    pub m: usize,
    /// `m` hit the end of the scanned prefix; the true match may be longer.
    pub truncated: bool,
}

impl RepetitionWitness {
    pub fn exponent(&self) -> Rational {
        Rational::new((self.s + self.m) as u64, self.s as u64)
    }

    /// `|U| / |V|`.
    pub fn ratio(&self) -> Rational {
        Rational::new(self.r as u64, self.s as u64)
    }

    /// Length of the certified prefix `U V^{exponent}`.
    pub fn len(&self) -> usize {
        self.r + self.s + self.m
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// Re-checks the witness letter by letter against `prefix`.
    pub fn verify(&self, prefix: &[Letter]) -> bool {
        self.s >= 1
            && self.len() <= prefix.len()
            && (0..self.m).all(|i| prefix[self.r + i] == prefix[self.r + self.s + i])
    }

    pub fn clears(&self, w: Rational) -> bool {
        exponent_clears(self.s, self.m, w)
    }
}

/// JSON shape: `{"r", "s", "m", "exponent": "p/q", "ratio": "p/q", "truncated"}`.
impl Serialize for RepetitionWitness {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let w = self;
        let mut st = ser.serialize_struct("RepetitionWitness", 6)?;
        st.serialize_field("r", &w.r)?;
        st.serialize_field("s", &w.s)?;
        st.serialize_field("m", &w.m)?;
        st.serialize_field("exponent", &ser::ratio(&w.exponent()))?;
        st.serialize_field("ratio", &ser::ratio(&w.ratio()))?;
        st.serialize_field("truncated", &w.truncated)?;
        st.end()
    }
}

/// `a_{ℓ+p} = a_ℓ` for all `q < ℓ ≤ N − p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct PeriodicityEvidence {
    pub preperiod: usize,
    pub period: usize,
    pub checked_len: usize,
}

impl PeriodicityEvidence {
    pub fn verify(&self, prefix: &[Letter]) -> bool {
        self.period >= 1
            && self.checked_len <= prefix.len()
            && (self.preperiod..self.checked_len.saturating_sub(self.period))
                .all(|i| prefix[i] == prefix[i + self.period])
    }
}

/// Result of a shifted longest-common-prefix query.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ShiftMatch {
    pub m: usize,
    pub truncated: bool,
}

/// Z-array: `z[i]` is the length of the longest common prefix of `word`
/// and `word[i..]`, with `z[0] = word.len()`.
pub fn z_array(word: &[Letter]) -> Vec<usize> {
    let n = word.len();
    let mut z = vec![0; n];
    if n == 0 {
        return z;
    }
    z[0] = n;
    let (mut l, mut r) = (0, 0);
    for i in 1..n {
        if i < r {
            z[i] = (r - i).min(z[i - l]);
        }
        while i + z[i] < n && word[z[i]] == word[i + z[i]] {
            z[i] += 1;
        }
        if i + z[i] > r {
            l = i;
            r = i + z[i];
        }
    }
    z
}

/// Largest `m` with `a_{r+i} = a_{r+s+i}` for `1 ≤ i ≤ m`, inside the
/// scanned prefix. Requires `s ≥ 1`; offsets past the end give `m = 0`.
pub fn shifted_lcp(prefix: &[Letter], r: usize, s: usize) -> ShiftMatch {
    assert!(s >= 1, "shift must be positive");
    let n = prefix.len();
    if r + s >= n {
        return ShiftMatch { m: 0, truncated: true };
    }
    let room = n - r - s;
    let m = prefix[r..]
        .iter()
        .zip(&prefix[r + s..])
        .take_while(|(a, b)| a == b)
        .count();
    ShiftMatch {
        m,
        truncated: m == room,
    }
}

fn exponent_clears(s: usize, m: usize, w: Rational) -> bool {
    // (s + m) / s >= num / den
    (s + m) as u128 * *w.denom() as u128 >= *w.numer() as u128 * s as u128
}

fn ratio_within(r: usize, s: usize, bound: Rational) -> bool {
    r as u128 * *bound.denom() as u128 <= *bound.numer() as u128 * s as u128
}

fn check_exponent(w: Rational) -> Result<(), RepetitionError> {
    if w <= Rational::from_integer(1) {
        Err(RepetitionError::ExponentTooSmall(w))
    } else {
        Ok(())
    }
}

/// Witnesses `V^w` at the very start of the word, at most one per root
/// length `s`, in increasing order of `s`.
pub fn detect_star(prefix: &[Letter], w: Rational) -> Result<Vec<RepetitionWitness>, RepetitionError> {
    detect_star_star(prefix, w, Rational::from_integer(0))
}

/// Witnesses `U V^w` with `|U| / |V| ≤ w′`.
///
/// For every root length `s` the smallest admissible `r` is reported, so
/// the returned roots are strictly increasing and `w′ = 0` reproduces
/// [`detect_star`] exactly. One Z-array per offset `r` gives all shifts at
/// once; offsets stop at `N·w′/(w+w′)`, past which no root can fit.
pub fn detect_star_star(
    prefix: &[Letter],
    w: Rational,
    wprime: Rational,
) -> Result<Vec<RepetitionWitness>, RepetitionError> {
    check_exponent(w)?;
    let n = prefix.len();
    if n < 2 {
        return Err(RepetitionError::ScanTooShort(n));
    }
    // r + ⌈w s⌉ ≤ N and r ≤ w′ s imply r·(w + w′) ≤ N·w′
    let max_r = {
        let wr = w + wprime;
        let bound = Rational::from_integer(n as u64) * wprime / wr;
        bound.to_integer() as usize
    };
    let mut best: Vec<Option<RepetitionWitness>> = vec![None; n];
    for r in 0..=max_r.min(n - 1) {
        let z = z_array(&prefix[r..]);
        let len = n - r;
        for (s, &zs) in z.iter().enumerate().skip(1) {
            if best[s].is_some() || !ratio_within(r, s, wprime) {
                continue;
            }
            let m = zs;
            if exponent_clears(s, m, w) {
                best[s] = Some(RepetitionWitness {
                    r,
                    s,
                    m,
                    truncated: s + m == len,
                });
            }
        }
    }
    Ok(best.into_iter().flatten().collect())
}

/// Moves the split point left while the last letters of `U` and `V`
/// agree: if `a` begins with `U x (V x)^w` it also begins with
/// `U (x V)^w`, and `|U|/|xV| ≤ |Ux|/|Vx|`. The result has `r = 0` or
/// `a_r ≠ a_{r+s}`; the match is recomputed at the new offset.
pub fn normalize_witness(prefix: &[Letter], wit: RepetitionWitness) -> RepetitionWitness {
    let mut r = wit.r;
    let s = wit.s;
    while r > 0 && r + s <= prefix.len() && prefix[r - 1] == prefix[r + s - 1] {
        r -= 1;
    }
    if r == wit.r {
        return wit;
    }
    let ShiftMatch { m, truncated } = shifted_lcp(prefix, r, s);
    RepetitionWitness { r, s, m, truncated }
}

/// Minimum number of full periods the tail must contain before it counts
/// as periodic. Three would flag long prefixes of Sturmian words such as
/// the Fibonacci word, whose factors reach exponent `2 + φ ≈ 3.62`.
pub const MIN_PERIOD_REPEATS: usize = 4;

/// Smallest `(q, p)` in lexicographic order such that the tail
/// `a_{q+1} … a_N` has period `p`, covers at least half of the prefix
/// (`q ≤ N/2`) and holds at least [`MIN_PERIOD_REPEATS`] periods.
///
/// The smallest period of every suffix comes from one prefix-function pass
/// over the reversed prefix, so the whole scan is linear.
pub fn detect_eventual_period(prefix: &[Letter]) -> Option<PeriodicityEvidence> {
    let n = prefix.len();
    if n < 2 {
        return None;
    }
    let rev: Vec<Letter> = prefix.iter().rev().copied().collect();
    let pi = prefix_function(&rev);
    (0..=n / 2).find_map(|q| {
        let tail = n - q;
        let p = tail - pi[tail - 1];
        (p * MIN_PERIOD_REPEATS <= tail).then_some(PeriodicityEvidence {
            preperiod: q,
            period: p,
            checked_len: n,
        })
    })
}

/// KMP failure function: `pi[i]` is the length of the longest proper border
/// of `word[..=i]`.
pub fn prefix_function(word: &[Letter]) -> Vec<usize> {
    let mut pi = vec![0; word.len()];
    for i in 1..word.len() {
        let mut k = pi[i - 1];
        while k > 0 && word[i] != word[k] {
            k = pi[k - 1];
        }
        if word[i] == word[k] {
            k += 1;
        }
        pi[i] = k;
    }
    pi
}

/// Finite evidence for one of the stammering conditions.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionEvidence {
    pub witnesses: Vec<RepetitionWitness>,
    pub periodicity: Option<PeriodicityEvidence>,
    pub min_witnesses: usize,
}

impl ConditionEvidence {
    /// Enough witnesses and no sign of eventual periodicity.
    pub fn evidenced(&self) -> bool {
        self.periodicity.is_none() && self.witnesses.len() >= self.min_witnesses
    }
}

pub fn star_evidence(
    prefix: &[Letter],
    w: Rational,
    min_witnesses: usize,
) -> Result<ConditionEvidence, RepetitionError> {
    Ok(ConditionEvidence {
        witnesses: detect_star(prefix, w)?,
        periodicity: detect_eventual_period(prefix),
        min_witnesses,
    })
}

pub fn star_star_evidence(
    prefix: &[Letter],
    w: Rational,
    wprime: Rational,
    min_witnesses: usize,
) -> Result<ConditionEvidence, RepetitionError> {
    Ok(ConditionEvidence {
        witnesses: detect_star_star(prefix, w, wprime)?,
        periodicity: detect_eventual_period(prefix),
        min_witnesses,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::word::InfiniteWord;

    fn q(n: u64, d: u64) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn z_array_basic() {
        assert_eq!(z_array(&[0, 1, 0, 0, 1, 0]), vec![6, 0, 1, 3, 0, 1]);
        assert!(z_array(&[]).is_empty());
    }

    #[test]
    fn shifted_lcp_examples() {
        let fib = InfiniteWord::fibonacci().prefix(100);
        assert_eq!(shifted_lcp(&fib, 0, 3), ShiftMatch { m: 3, truncated: false });
        let ones = vec![1; 50];
        assert_eq!(shifted_lcp(&ones, 0, 1), ShiftMatch { m: 49, truncated: true });
        let alt = InfiniteWord::periodic(vec![0, 1]).unwrap().prefix(50);
        assert_eq!(shifted_lcp(&alt, 1, 2), ShiftMatch { m: 47, truncated: true });
    }

    #[test]
    fn star_on_fibonacci() {
        let fib = InfiniteWord::fibonacci().prefix(2000);
        let wits = detect_star(&fib, q(2, 1)).unwrap();
        assert!(wits.len() >= 5, "{wits:?}");
        assert!(wits.windows(2).all(|p| p[0].s < p[1].s));
        assert!(wits.iter().all(|w| w.r == 0 && w.clears(q(2, 1)) && w.verify(&fib)));
        assert!(detect_eventual_period(&fib).is_none());
    }

    #[test]
    fn star_on_periodic_word() {
        let p = InfiniteWord::periodic(vec![1, 2]).unwrap().prefix(1000);
        let ev = star_evidence(&p, q(2, 1), 3).unwrap();
        assert!(!ev.witnesses.is_empty());
        assert_eq!(
            ev.periodicity,
            Some(PeriodicityEvidence {
                preperiod: 0,
                period: 2,
                checked_len: 1000
            })
        );
        assert!(!ev.evidenced());
    }

    #[test]
    fn star_on_distinct_letters() {
        let w: Vec<Letter> = (1..=500).collect();
        assert!(detect_star(&w, q(2, 1)).unwrap().is_empty());
        assert!(detect_star(&w, q(11, 10)).unwrap().is_empty());
    }

    #[test]
    fn star_rejects_small_exponent() {
        assert_eq!(
            detect_star(&[1, 1], q(1, 1)),
            Err(RepetitionError::ExponentTooSmall(q(1, 1)))
        );
        assert_eq!(detect_star(&[1], q(2, 1)), Err(RepetitionError::ScanTooShort(1)));
    }

    #[test]
    fn star_star_examples() {
        let fib = InfiniteWord::fibonacci().prefix(2000);
        let star = detect_star(&fib, q(2, 1)).unwrap();
        assert_eq!(detect_star_star(&fib, q(2, 1), q(0, 1)).unwrap(), star);
        let ss = detect_star_star(&fib, q(2, 1), q(1, 1)).unwrap();
        assert!(ss.len() >= star.len());

        let w = InfiniteWord::eventually_periodic(vec![3], vec![1, 2]).unwrap().prefix(200);
        let ss = detect_star_star(&w, q(2, 1), q(1, 1)).unwrap();
        let first = ss.iter().find(|x| x.s == 2).unwrap();
        assert_eq!(first.r, 1);
        assert!(first.exponent() >= q(2, 1));
    }

    #[test]
    fn normalization() {
        let w = InfiniteWord::periodic(vec![2, 1]).unwrap().prefix(50);
        let wit = RepetitionWitness { r: 1, s: 2, m: 47, truncated: true };
        let n = normalize_witness(&w, wit);
        assert_eq!(n.r, 0);
        assert_eq!(n.s, 2);
        assert_eq!(n.m, 48);

        let r0 = RepetitionWitness { r: 0, s: 2, m: 48, truncated: true };
        assert_eq!(normalize_witness(&w, r0), r0);

        // 3 1 2 (1 2)^ω: a_1 = 3 differs from a_3 = 2, nothing to do
        let w = InfiniteWord::eventually_periodic(vec![3], vec![1, 2]).unwrap().prefix(40);
        let wit = RepetitionWitness { r: 1, s: 2, m: 37, truncated: true };
        assert_eq!(normalize_witness(&w, wit), wit);
        // split after 3 1: a_2 = 1 equals a_4 = 1, so it shifts back to r = 1
        let wit = RepetitionWitness { r: 2, s: 2, m: 36, truncated: true };
        assert_eq!(normalize_witness(&w, wit).r, 1);
    }

    #[test]
    fn eventual_period_examples() {
        let p = InfiniteWord::periodic(vec![1, 2]).unwrap().prefix(100);
        assert_eq!(
            detect_eventual_period(&p).map(|e| (e.preperiod, e.period)),
            Some((0, 2))
        );
        let p = InfiniteWord::eventually_periodic(vec![3], vec![1, 2]).unwrap().prefix(100);
        assert_eq!(
            detect_eventual_period(&p).map(|e| (e.preperiod, e.period)),
            Some((1, 2))
        );
        let fib = InfiniteWord::fibonacci().prefix(10_000);
        assert_eq!(detect_eventual_period(&fib), None);
        let tm = InfiniteWord::thue_morse().prefix(10_000);
        assert_eq!(detect_eventual_period(&tm), None);
    }

    #[test]
    fn periodicity_evidence_verifies() {
        let p = InfiniteWord::eventually_periodic(vec![5, 5, 4], vec![1, 2, 3]).unwrap().prefix(90);
        let ev = detect_eventual_period(&p).unwrap();
        assert!(ev.verify(&p));
        assert_eq!((ev.preperiod, ev.period), (3, 3));
    }

    #[test]
    fn prefix_function_basic() {
        assert_eq!(prefix_function(&[1, 2, 1, 2, 1]), vec![0, 0, 1, 2, 3]);
    }
}
