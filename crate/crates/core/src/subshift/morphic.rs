use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use serde::Serialize;

use super::SubshiftError;
use crate::repetition::{shifted_lcp, RepetitionWitness};
use crate::ser;
use crate::word::{Coding, FiniteWord, InfiniteWord, Letter, Morphism, Rational, WordError};

/// Lengths are checked up to this depth when certifying the constant.
pub const LEMMA2_CHECK_DEPTH: usize = 12;

/// `c = s^{-n_0}` with `|σ^n(a)| ≥ c |σ^n(b)|` for every letter `b` of the
/// fixed point and every `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lemma2Constant {
    pub c: BigRational,
    /// `max |σ(b)|` over the letters of the fixed point.
    pub s: usize,
    /// `max n_b`, where `n_b` is the least `n` with `b` in `σ^n(a)`.
    pub n0: usize,
    pub depths: BTreeMap<Letter, usize>,
    /// The inequality held for all `n ≤ LEMMA2_CHECK_DEPTH`.
    pub verified: bool,
}

impl Serialize for Lemma2Constant {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Lemma2Constant", 5)?;
        st.serialize_field("c", &ser::big_ratio(&self.c))?;
        st.serialize_field("s", &self.s)?;
        st.serialize_field("n0", &self.n0)?;
        st.serialize_field("depths", &self.depths)?;
        st.serialize_field("verified", &self.verified)?;
        st.end()
    }
}

/// `|σ^n(b)|` for every letter of `alphabet` and `0 ≤ n ≤ depth`, exact.
fn image_lengths(
    sigma: &Morphism,
    alphabet: &[Letter],
    depth: usize,
) -> Result<Vec<BTreeMap<Letter, BigInt>>, WordError> {
    let mut rows = vec![alphabet.iter().map(|&b| (b, BigInt::one())).collect::<BTreeMap<_, _>>()];
    for _ in 0..depth {
        let prev = rows.last().unwrap();
        let mut next = BTreeMap::new();
        for &b in alphabet {
            let len: BigInt = sigma.image(b)?.iter().map(|c| &prev[c]).sum();
            next.insert(b, len);
        }
        rows.push(next);
    }
    Ok(rows)
}

/// The constant of the growth comparison lemma, computed on the letters
/// that actually occur in the fixed point of `σ` starting with `a`.
pub fn lemma2_constant(sigma: &Morphism, a: Letter) -> Result<Lemma2Constant, SubshiftError> {
    sigma.require_prolongable(a)?;
    let depths = sigma.first_occurrence_depths(a)?;
    let alphabet: Vec<Letter> = depths.keys().copied().collect();
    let s = alphabet
        .iter()
        .map(|&b| sigma.image(b).map(|w| w.len()))
        .collect::<Result<Vec<_>, _>>()?
        .into_iter()
        .max()
        .unwrap_or(0);
    let n0 = depths.values().copied().max().unwrap_or(0);
    let scale = BigInt::from(s).pow(n0 as u32);
    let c = BigRational::new(BigInt::one(), scale.clone());
    let lens = image_lengths(sigma, &alphabet, LEMMA2_CHECK_DEPTH)?;
    let verified = lens
        .iter()
        .all(|row| alphabet.iter().all(|b| &row[&a] * &scale >= row[b]));
    Ok(Lemma2Constant {
        c,
        s,
        n0,
        depths,
        verified,
    })
}

/// One prefix power from the morphic construction at depth `n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem3Witness {
    pub n: usize,
    /// `|V_n| = |σ^n(aW)|`.
    pub root_len: usize,
    /// `|σ^n(a)|`.
    pub tail_len: usize,
    /// `(|V_n| + |σ^n(a)|) / |V_n|`, certified by the construction.
    pub exponent: Rational,
    /// The coded prefix begins with `V_n^{exponent}`.
    pub verified: bool,
    /// `exponent ≥ 1 + c_W`.
    pub meets_guarantee: bool,
    /// Longest observed prefix power with root `V_n`.
    pub measured: RepetitionWitness,
}

impl Serialize for Theorem3Witness {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Theorem3Witness", 7)?;
        st.serialize_field("n", &self.n)?;
        st.serialize_field("root_len", &self.root_len)?;
        st.serialize_field("tail_len", &self.tail_len)?;
        st.serialize_field("exponent", &ser::ratio(&self.exponent))?;
        st.serialize_field("verified", &self.verified)?;
        st.serialize_field("meets_guarantee", &self.meets_guarantee)?;
        st.serialize_field("measured", &self.measured)?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Theorem3Report {
    pub start: Letter,
    /// Shortest `W` with `aWa` a prefix of the fixed point.
    pub w: FiniteWord,
    pub lemma2: Lemma2Constant,
    /// `c / |aW|`: since `|σ^n(aW)| ≤ |aW| · max_b |σ^n(b)|`, every witness
    /// has exponent at least `1 + c_W`.
    pub c_w: BigRational,
    pub witnesses: Vec<Theorem3Witness>,
    /// Depths skipped because the prefix would exceed the length cap.
    pub truncated_at: Option<usize>,
}

impl Serialize for Theorem3Report {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Theorem3Report", 6)?;
        st.serialize_field("start", &self.start)?;
        st.serialize_field("W", &self.w.to_string())?;
        st.serialize_field("lemma2", &self.lemma2)?;
        st.serialize_field("c_W", &ser::big_ratio(&self.c_w))?;
        st.serialize_field("witnesses", &self.witnesses)?;
        st.serialize_field("truncated_at", &self.truncated_at)?;
        st.end()
    }
}

/// Longest prefix examined by the morphic pipeline.
pub const THEOREM3_MAX_LEN: usize = 1 << 22;

/// Prefix powers `φ(σ^n(aW))^{e_n}` of the coded fixed point for
/// `1 ≤ n ≤ n_max`, where `aWa` is the shortest such prefix. Each witness
/// is re-checked letter by letter.
pub fn theorem3_witnesses(
    sigma: &Morphism,
    coding: Option<&Coding>,
    a: Letter,
    n_max: usize,
) -> Result<Theorem3Report, SubshiftError> {
    if !sigma.is_recurrent_generator(a)? {
        return Err(SubshiftError::NotRecurrent(a));
    }
    let fixed = InfiniteWord::fixed_point(sigma.clone(), a)?;
    let mut probe = 16;
    let w = loop {
        let p = fixed.prefix(probe);
        if let Some(j) = p.iter().skip(1).position(|&x| x == a) {
            break FiniteWord::new(p[1..=j].to_vec());
        }
        if probe >= THEOREM3_MAX_LEN {
            return Err(SubshiftError::NotRecurrent(a));
        }
        probe *= 2;
    };
    let lemma2 = lemma2_constant(sigma, a)?;
    let aw_len = w.len() + 1;
    let c_w = &lemma2.c / BigInt::from(aw_len);
    let one = BigRational::one();

    let mut aw = vec![a];
    aw.extend_from_slice(&w);
    let mut witnesses = Vec::new();
    let mut truncated_at = None;
    for n in 1..=n_max {
        let root_len = sigma.iterate_word(&aw, n)?.len();
        let tail_len = sigma.iterate(a, n)?.len();
        // room for the certified power and one more copy of the root
        let want = 2 * root_len + tail_len;
        if want > THEOREM3_MAX_LEN {
            truncated_at = Some(n);
            break;
        }
        let raw = fixed.prefix(want);
        let word = match coding {
            Some(phi) => phi.apply(&raw)?,
            None => raw,
        };
        let exponent = Rational::new((root_len + tail_len) as u64, root_len as u64);
        let certified = RepetitionWitness {
            r: 0,
            s: root_len,
            m: tail_len,
            truncated: false,
        };
        let m = shifted_lcp(&word, 0, root_len);
        let e = BigRational::new(
            BigInt::from(root_len + tail_len),
            BigInt::from(root_len),
        );
        witnesses.push(Theorem3Witness {
            n,
            root_len,
            tail_len,
            exponent,
            verified: certified.verify(&word),
            meets_guarantee: e >= &one + &c_w,
            measured: RepetitionWitness {
                r: 0,
                s: root_len,
                m: m.m,
                truncated: m.truncated,
            },
        });
    }
    Ok(Theorem3Report {
        start: a,
        w,
        lemma2,
        c_w,
        witnesses,
        truncated_at,
    })
}
