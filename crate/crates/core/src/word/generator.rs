use std::collections::BTreeSet;

use super::{Coding, Dfao, FiniteWord, Letter, Morphism, WordError};

/// A deterministic, lazily evaluated infinite word `a_1 a_2 …`.
///
/// Every generator is immutable once built; `prefix` and `letter_at` are
/// pure, so a word can be shared freely between threads.
///
/// `ExplicitPrefix` is the one finite kind: it stands for a word known only
/// through a stored prefix, and `prefix(n)` is silently truncated to the
/// letters available.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum InfiniteWord {
    Periodic {
        period: FiniteWord,
    },
    EventuallyPeriodic {
        preperiod: FiniteWord,
        period: FiniteWord,
    },
    MorphicFixedPoint {
        morphism: Morphism,
        start: Letter,
    },
    Automatic(Dfao),
    /// Directives are repeated cyclically, so `[1]` is `(1, 1, 1, …)`.
    SturmianStandard {
        directives: Vec<u32>,
    },
    ExplicitPrefix(FiniteWord),
    Coded {
        base: Box<InfiniteWord>,
        coding: Coding,
    },
    Prepended {
        head: FiniteWord,
        tail: Box<InfiniteWord>,
    },
}

impl InfiniteWord {
    pub fn periodic(period: impl Into<FiniteWord>) -> Result<Self, WordError> {
        let period = period.into();
        if period.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        Ok(InfiniteWord::Periodic { period })
    }

    pub fn eventually_periodic(
        preperiod: impl Into<FiniteWord>,
        period: impl Into<FiniteWord>,
    ) -> Result<Self, WordError> {
        let period = period.into();
        if period.is_empty() {
            return Err(WordError::EmptyPeriod);
        }
        Ok(InfiniteWord::EventuallyPeriodic {
            preperiod: preperiod.into(),
            period,
        })
    }

    /// The fixed point `lim σ^n(a)`; fails unless `σ` is prolongable on `a`.
    pub fn fixed_point(morphism: Morphism, start: Letter) -> Result<Self, WordError> {
        morphism.require_prolongable(start)?;
        Ok(InfiniteWord::MorphicFixedPoint { morphism, start })
    }

    pub fn automatic(dfao: Dfao) -> Self {
        InfiniteWord::Automatic(dfao)
    }

    pub fn explicit(prefix: impl Into<FiniteWord>) -> Self {
        InfiniteWord::ExplicitPrefix(prefix.into())
    }

    /// `head` followed by `tail`.
    pub fn prepend(head: impl Into<FiniteWord>, tail: InfiniteWord) -> Self {
        InfiniteWord::Prepended {
            head: head.into(),
            tail: Box::new(tail),
        }
    }

    /// The Fibonacci word `0100101001…`.
    pub fn fibonacci() -> Self {
        Self::fixed_point(Morphism::fibonacci(), 0).unwrap()
    }

    /// The Thue–Morse word `0110100110010…`.
    pub fn thue_morse() -> Self {
        Self::fixed_point(Morphism::thue_morse(), 0).unwrap()
    }

    /// `None` for the finite `ExplicitPrefix` kind.
    pub fn available_len(&self) -> Option<usize> {
        match self {
            InfiniteWord::ExplicitPrefix(p) => Some(p.len()),
            InfiniteWord::Coded { base, .. } => base.available_len(),
            InfiniteWord::Prepended { head, tail } => tail.available_len().map(|n| n + head.len()),
            _ => None,
        }
    }

    /// A finite superset of the letters that can occur.
    pub fn alphabet(&self) -> BTreeSet<Letter> {
        match self {
            InfiniteWord::Periodic { period } => period.iter().copied().collect(),
            InfiniteWord::EventuallyPeriodic { preperiod, period } => {
                preperiod.iter().chain(period.iter()).copied().collect()
            }
            InfiniteWord::MorphicFixedPoint { morphism, .. } => morphism.alphabet().collect(),
            InfiniteWord::Automatic(d) => d.outputs().iter().copied().collect(),
            InfiniteWord::SturmianStandard { .. } => BTreeSet::from([0, 1]),
            InfiniteWord::ExplicitPrefix(p) => p.iter().copied().collect(),
            InfiniteWord::Coded { coding, .. } => coding.image_alphabet(),
            InfiniteWord::Prepended { head, tail } => {
                let mut a = tail.alphabet();
                a.extend(head.iter().copied());
                a
            }
        }
    }

    /// The first `n` letters.
    pub fn prefix(&self, n: usize) -> FiniteWord {
        match self {
            InfiniteWord::Periodic { period } => period.iter().copied().cycle().take(n).collect(),
            InfiniteWord::EventuallyPeriodic { preperiod, period } => preperiod
                .iter()
                .copied()
                .chain(period.iter().copied().cycle())
                .take(n)
                .collect(),
            InfiniteWord::MorphicFixedPoint { morphism, start } => {
                fixed_point_prefix(morphism, *start, n)
            }
            InfiniteWord::Automatic(d) => (0..n as u64).map(|i| d.letter(i)).collect(),
            InfiniteWord::SturmianStandard { directives } => sturmian_prefix(directives, n),
            InfiniteWord::ExplicitPrefix(p) => p[..n.min(p.len())].into(),
            InfiniteWord::Coded { base, coding } => base
                .prefix(n)
                .iter()
                .map(|&l| coding.get(l).expect("coding checked total at construction"))
                .collect(),
            InfiniteWord::Prepended { head, tail } => {
                if n <= head.len() {
                    head[..n].into()
                } else {
                    let mut out = head.to_vec();
                    out.extend_from_slice(&tail.prefix(n - head.len()));
                    FiniteWord::new(out)
                }
            }
        }
    }

    /// The letter `a_i`, for `i ≥ 1`. Returns `None` for `i = 0` or past the
    /// end of an explicit prefix.
    pub fn letter_at(&self, i: usize) -> Option<Letter> {
        if i == 0 {
            return None;
        }
        match self {
            InfiniteWord::Periodic { period } => Some(period[(i - 1) % period.len()]),
            InfiniteWord::EventuallyPeriodic { preperiod, period } => Some(if i <= preperiod.len() {
                preperiod[i - 1]
            } else {
                period[(i - 1 - preperiod.len()) % period.len()]
            }),
            InfiniteWord::Automatic(d) => Some(d.letter(i as u64 - 1)),
            InfiniteWord::ExplicitPrefix(p) => p.get(i - 1).copied(),
            InfiniteWord::Coded { base, coding } => base.letter_at(i).map(|l| coding.get(l).unwrap()),
            InfiniteWord::Prepended { head, tail } => {
                if i <= head.len() {
                    Some(head[i - 1])
                } else {
                    tail.letter_at(i - head.len())
                }
            }
            _ => self.prefix(i).get(i - 1).copied(),
        }
    }
}

/// Prefix of the fixed point `σ^ω(a)`.
///
/// Uses the self-similar expansion `x = σ(x_1) σ(x_2) …`, reading letters
/// of the output as it is produced. With erasing letters the reader can in
/// principle catch up with the writer; in that case fall back to plain
/// iteration `σ^k(a)`, which grows strictly for a prolongable pair.
fn fixed_point_prefix(morphism: &Morphism, start: Letter, n: usize) -> FiniteWord {
    let mut out = vec![start];
    let mut read = 0;
    while out.len() < n {
        if read == out.len() {
            return iterate_until(morphism, start, n);
        }
        let img = morphism.image(out[read]).expect("alphabet checked");
        if read == 0 {
            out.extend_from_slice(&img[1..]);
        } else {
            out.extend_from_slice(img);
        }
        read += 1;
    }
    out.truncate(n);
    FiniteWord::new(out)
}

fn iterate_until(morphism: &Morphism, start: Letter, n: usize) -> FiniteWord {
    let mut cur = vec![start];
    while cur.len() < n {
        let mut next = morphism.apply(&cur).expect("alphabet checked").into_vec();
        next.truncate(n);
        cur = next;
    }
    cur.truncate(n);
    FiniteWord::new(cur)
}

/// Standard word limit: `s_{-1} = 1`, `s_0 = 0`, `s_k = s_{k-1}^{d_k} s_{k-2}`.
fn sturmian_prefix(directives: &[u32], n: usize) -> FiniteWord {
    let mut prev: Vec<Letter> = vec![1];
    let mut cur: Vec<Letter> = vec![0];
    let mut k = 0;
    while cur.len() < n || k == 0 {
        let d = directives[k % directives.len()] as usize;
        let mut next = Vec::with_capacity(cur.len() * d + prev.len());
        for _ in 0..d {
            next.extend_from_slice(&cur);
        }
        next.extend_from_slice(&prev);
        prev = cur;
        cur = next;
        k += 1;
    }
    cur.truncate(n);
    FiniteWord::new(cur)
}

/// The characteristic (standard) Sturmian word with the given directive
/// sequence, repeated cyclically. Directives `(1, 1, …)` give the Fibonacci
/// word.
pub fn sturmian_standard(directives: Vec<u32>) -> Result<InfiniteWord, WordError> {
    if directives.is_empty() {
        return Err(WordError::NonPositiveDirective { index: 1 });
    }
    if let Some(i) = directives.iter().position(|&d| d == 0) {
        return Err(WordError::NonPositiveDirective { index: i + 1 });
    }
    Ok(InfiniteWord::SturmianStandard { directives })
}

/// Pointwise image `φ(u)`; the coding must be total on `u`'s alphabet.
pub fn coded_word(u: InfiniteWord, coding: Coding) -> Result<InfiniteWord, WordError> {
    for l in u.alphabet() {
        coding.get(l)?;
    }
    Ok(InfiniteWord::Coded {
        base: Box::new(u),
        coding,
    })
}
