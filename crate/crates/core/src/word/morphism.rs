use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{FiniteWord, Letter, WordError};

/// A morphism of the free monoid over a finite alphabet, stored as the
/// image of every alphabet letter.
///
/// Text format: `0->01;1->0`. Images are read digit by digit unless they
/// contain commas, in which case they are comma separated (`0->1,10;10->0`).
/// An empty image (`1->`) makes the morphism erasing.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Morphism {
    images: BTreeMap<Letter, FiniteWord>,
}

impl Morphism {
    /// Builds a morphism, rejecting images that use letters outside the
    /// alphabet (the set of keys).
    pub fn new(images: BTreeMap<Letter, FiniteWord>) -> Result<Self, WordError> {
        for img in images.values() {
            if let Some(&l) = img.iter().find(|l| !images.contains_key(l)) {
                return Err(WordError::UnknownLetter(l));
            }
        }
        Ok(Morphism { images })
    }

    pub fn from_rules<I>(rules: I) -> Result<Self, WordError>
    where
        I: IntoIterator<Item = (Letter, Vec<Letter>)>,
    {
        Self::new(
            rules
                .into_iter()
                .map(|(a, img)| (a, FiniteWord::new(img)))
                .collect(),
        )
    }

    /// `0 -> 01, 1 -> 0`.
    pub fn fibonacci() -> Self {
        Self::from_rules([(0, vec![0, 1]), (1, vec![0])]).unwrap()
    }

    /// `0 -> 01, 1 -> 10`.
    pub fn thue_morse() -> Self {
        Self::from_rules([(0, vec![0, 1]), (1, vec![1, 0])]).unwrap()
    }

    pub fn parse(s: &str) -> Result<Self, WordError> {
        let mut images = BTreeMap::new();
        let mut offset = 0usize;
        for rule in s.split(';') {
            let col = offset + 1;
            offset += rule.len() + 1;
            if rule.trim().is_empty() {
                continue;
            }
            let (lhs, rhs) = rule
                .split_once("->")
                .ok_or_else(|| WordError::parse(col, format!("expected `a->image` in {rule:?}")))?;
            let letter = parse_letter(lhs.trim(), col)?;
            let image = parse_image(rhs.trim(), col + lhs.len() + 2)?;
            if images.insert(letter, image).is_some() {
                return Err(WordError::parse(col, format!("letter {letter} defined twice")));
            }
        }
        if images.is_empty() {
            return Err(WordError::parse(1, "morphism has no rules"));
        }
        Self::new(images)
    }

    pub fn alphabet(&self) -> impl Iterator<Item = Letter> + '_ {
        self.images.keys().copied()
    }

    pub fn contains(&self, a: Letter) -> bool {
        self.images.contains_key(&a)
    }

    pub fn image(&self, a: Letter) -> Result<&FiniteWord, WordError> {
        self.images.get(&a).ok_or(WordError::UnknownLetter(a))
    }

    /// Common image length when every image has the same non-zero length.
    pub fn uniform_width(&self) -> Option<usize> {
        let mut lens = self.images.values().map(|w| w.len());
        let first = lens.next()?;
        (first > 0 && lens.all(|l| l == first)).then_some(first)
    }

    pub fn max_image_len(&self) -> usize {
        self.images.values().map(|w| w.len()).max().unwrap_or(0)
    }

    pub fn apply(&self, word: &[Letter]) -> Result<FiniteWord, WordError> {
        let mut out = Vec::with_capacity(word.len() * self.max_image_len().max(1));
        for &l in word {
            out.extend_from_slice(self.image(l)?);
        }
        Ok(FiniteWord::new(out))
    }

    /// `σ^n(a)`, with `σ^0(a) = a`.
    pub fn iterate(&self, a: Letter, n: usize) -> Result<FiniteWord, WordError> {
        self.iterate_word(&[a], n)
    }

    pub fn iterate_word(&self, word: &[Letter], n: usize) -> Result<FiniteWord, WordError> {
        if let Some(&l) = word.iter().find(|l| !self.contains(**l)) {
            return Err(WordError::UnknownLetter(l));
        }
        let mut cur = FiniteWord::from(word);
        for _ in 0..n {
            cur = self.apply(&cur)?;
        }
        Ok(cur)
    }

    /// Letters erased by some iterate of the morphism.
    ///
    /// Least fixed point: a letter is mortal when every letter of its image
    /// is mortal (an empty image qualifies immediately).
    pub fn mortal_letters(&self) -> BTreeSet<Letter> {
        let mut mortal = BTreeSet::new();
        loop {
            let before = mortal.len();
            for (&a, img) in &self.images {
                if !mortal.contains(&a) && img.iter().all(|l| mortal.contains(l)) {
                    mortal.insert(a);
                }
            }
            if mortal.len() == before {
                return mortal;
            }
        }
    }

    /// True iff `σ(a) = aW` with `σ^n(W)` non-empty for every `n`, i.e. `W`
    /// holds at least one immortal letter.
    pub fn is_prolongable(&self, a: Letter) -> bool {
        let Ok(img) = self.image(a) else {
            return false;
        };
        if img.first() != Some(&a) {
            return false;
        }
        let mortal = self.mortal_letters();
        img[1..].iter().any(|l| !mortal.contains(l))
    }

    pub(crate) fn require_prolongable(&self, a: Letter) -> Result<(), WordError> {
        if self.is_prolongable(a) {
            Ok(())
        } else {
            Err(WordError::NotProlongable(a))
        }
    }

    /// Whether every letter occurring in the fixed point starting with `a`
    /// occurs at least twice.
    ///
    /// The fixed point is `a W σ(W) σ²(W) …`. We track, for every letter, its
    /// number of occurrences in `σ^n(W)` saturated at 2. Saturating counts
    /// compose exactly under `σ` (min(x·y, 2) only depends on min(x, 2) and
    /// min(y, 2)), so the state lives in the finite set {0,1,2}^A and the
    /// sequence of states is eventually periodic. Once a state repeats, every
    /// letter seen with a positive count inside the cycle recurs infinitely
    /// often; letters seen only in the preperiod keep their accumulated
    /// count. This settles the question exactly, without any prefix bound.
    pub fn is_recurrent_generator(&self, a: Letter) -> Result<bool, WordError> {
        self.require_prolongable(a)?;
        let letters: Vec<Letter> = self.alphabet().collect();
        let index: BTreeMap<Letter, usize> =
            letters.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let k = letters.len();
        let sat = |x: u8| x.min(2);

        // image_counts[b][c] = saturated count of c in σ(b)
        let image_counts: Vec<Vec<u8>> = letters
            .iter()
            .map(|b| {
                let mut row = vec![0u8; k];
                for l in self.images[b].iter() {
                    row[index[l]] = sat(row[index[l]] + 1);
                }
                row
            })
            .collect();

        let mut state = vec![0u8; k];
        for l in self.images[&a][1..].iter() {
            state[index[l]] = sat(state[index[l]] + 1);
        }
        let mut seen: Vec<Vec<u8>> = Vec::new();
        let cycle_start = loop {
            if let Some(pos) = seen.iter().position(|s| *s == state) {
                break pos;
            }
            let mut next = vec![0u8; k];
            for (b, &cb) in state.iter().enumerate() {
                if cb == 0 {
                    continue;
                }
                for (c, &bc) in image_counts[b].iter().enumerate() {
                    next[c] = sat(next[c] + sat(cb * bc));
                }
            }
            seen.push(std::mem::replace(&mut state, next));
        };

        let mut total = vec![0u8; k];
        total[index[&a]] = 1;
        for (i, s) in seen.iter().enumerate() {
            for c in 0..k {
                if s[c] > 0 {
                    total[c] = if i >= cycle_start {
                        2
                    } else {
                        sat(total[c] + s[c])
                    };
                }
            }
        }
        Ok(total.iter().all(|&t| t != 1))
    }

    /// Letters reachable from `a`, i.e. the letters that occur in the fixed
    /// point, with the least `n` such that the letter occurs in `σ^n(a)`.
    pub(crate) fn first_occurrence_depths(&self, a: Letter) -> Result<BTreeMap<Letter, usize>, WordError> {
        self.image(a)?;
        let mut depth = BTreeMap::from([(a, 0usize)]);
        let mut frontier = vec![a];
        let mut n = 0;
        while !frontier.is_empty() {
            n += 1;
            let mut next = Vec::new();
            for b in frontier {
                for &c in self.image(b)?.iter() {
                    if let std::collections::btree_map::Entry::Vacant(e) = depth.entry(c) {
                        e.insert(n);
                        next.push(c);
                    }
                }
            }
            frontier = next;
        }
        Ok(depth)
    }
}

impl fmt::Display for Morphism {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let wide = self.images.keys().any(|&l| l > 9);
        for (i, (a, img)) in self.images.iter().enumerate() {
            if i > 0 {
                f.write_str(";")?;
            }
            write!(f, "{a}->")?;
            if wide {
                let parts: Vec<String> = img.iter().map(|l| l.to_string()).collect();
                f.write_str(&parts.join(","))?;
            } else {
                f.write_str(&img.to_digit_string())?;
            }
        }
        Ok(())
    }
}

/// A letter-to-letter map. Text format: `0=>1;1=>2`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Coding {
    map: BTreeMap<Letter, Letter>,
}

impl Coding {
    pub fn new(map: BTreeMap<Letter, Letter>) -> Self {
        Coding { map }
    }

    pub fn parse(s: &str) -> Result<Self, WordError> {
        let mut map = BTreeMap::new();
        let mut offset = 0usize;
        for rule in s.split(';') {
            let col = offset + 1;
            offset += rule.len() + 1;
            if rule.trim().is_empty() {
                continue;
            }
            let (lhs, rhs) = rule
                .split_once("=>")
                .ok_or_else(|| WordError::parse(col, format!("expected `a=>b` in {rule:?}")))?;
            let from = parse_letter(lhs.trim(), col)?;
            let to = parse_letter(rhs.trim(), col + lhs.len() + 2)?;
            if map.insert(from, to).is_some() {
                return Err(WordError::parse(col, format!("letter {from} coded twice")));
            }
        }
        if map.is_empty() {
            return Err(WordError::parse(1, "coding has no rules"));
        }
        Ok(Coding { map })
    }

    pub fn domain(&self) -> impl Iterator<Item = Letter> + '_ {
        self.map.keys().copied()
    }

    pub fn image_alphabet(&self) -> BTreeSet<Letter> {
        self.map.values().copied().collect()
    }

    pub fn get(&self, a: Letter) -> Result<Letter, WordError> {
        self.map.get(&a).copied().ok_or(WordError::UnknownLetter(a))
    }

    pub fn apply(&self, word: &[Letter]) -> Result<FiniteWord, WordError> {
        word.iter().map(|&l| self.get(l)).collect::<Result<Vec<_>, _>>().map(FiniteWord::new)
    }
}

fn parse_letter(s: &str, col: usize) -> Result<Letter, WordError> {
    s.parse::<Letter>()
        .map_err(|_| WordError::parse(col, format!("expected a letter, found {s:?}")))
}

fn parse_image(s: &str, col: usize) -> Result<FiniteWord, WordError> {
    if s.contains(',') {
        s.split(',')
            .map(|p| parse_letter(p.trim(), col))
            .collect::<Result<Vec<_>, _>>()
            .map(FiniteWord::new)
    } else {
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                c.to_digit(10)
                    .ok_or_else(|| WordError::parse(col + i, format!("expected a digit, found {c:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(FiniteWord::new)
    }
}
