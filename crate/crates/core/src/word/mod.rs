//! Finite and infinite words over small integer alphabets.
//!
//! Letters are plain `u32` symbols. When a word is fed to the continued
//! fraction layer every letter is read as a partial quotient and must be at
//! least 1; before that point (morphisms, automata) `0` is an ordinary
//! symbol.

mod dfao;
mod generator;
mod morphism;

pub use dfao::Dfao;
pub use generator::{coded_word, sturmian_standard, InfiniteWord};
pub use morphism::{Coding, Morphism};

use std::fmt;
use std::ops::Deref;

use num_rational::Ratio;
use thiserror::Error;

/// A single symbol; a partial quotient once the word reaches the CF layer.
pub type Letter = u32;

/// Exact non-negative rational used for exponents and ratios of lengths.
pub type Rational = Ratio<u64>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error("empty root")]
    EmptyRoot,
    #[error("exponent must be positive, got {0}")]
    NonPositiveExponent(Rational),
    #[error("letter {0} is outside the alphabet")]
    UnknownLetter(Letter),
    #[error("morphism is not prolongable on letter {0}")]
    NotProlongable(Letter),
    #[error("letter {0} occurs only once in the fixed point")]
    NotRecurrent(Letter),
    #[error("directive {index} must be a positive integer")]
    NonPositiveDirective { index: usize },
    #[error("partial quotient at position {position} is {value}, expected at least 1")]
    NonPositiveDigit { position: usize, value: Letter },
    #[error("periodic word needs a non-empty period")]
    EmptyPeriod,
    #[error("invalid automaton: {0}")]
    InvalidDfao(String),
    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },
}

impl WordError {
    pub(crate) fn parse(column: usize, message: impl Into<String>) -> Self {
        WordError::Parse {
            line: 1,
            column,
            message: message.into(),
        }
    }
}

/// An owned finite word.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FiniteWord(Vec<Letter>);

impl FiniteWord {
    pub fn new(letters: Vec<Letter>) -> Self {
        FiniteWord(letters)
    }

    pub fn empty() -> Self {
        FiniteWord(Vec::new())
    }

    /// Parses a compact string of single decimal digits, e.g. `"0110"`.
    pub fn from_digits(s: &str) -> Result<Self, WordError> {
        s.chars()
            .enumerate()
            .map(|(i, c)| {
                c.to_digit(10)
                    .ok_or_else(|| WordError::parse(i + 1, format!("expected a digit, found {c:?}")))
            })
            .collect::<Result<Vec<_>, _>>()
            .map(FiniteWord)
    }

    /// Renders the word as a compact digit string. Letters above 9 are
    /// wrapped in parentheses so the output stays unambiguous.
    pub fn to_digit_string(&self) -> String {
        let mut out = String::with_capacity(self.0.len());
        for &l in &self.0 {
            if l < 10 {
                out.push(char::from_digit(l, 10).unwrap());
            } else {
                out.push_str(&format!("({l})"));
            }
        }
        out
    }

    pub fn letters(&self) -> &[Letter] {
        &self.0
    }

    pub fn into_vec(self) -> Vec<Letter> {
        self.0
    }

    /// Checks that every letter is a valid partial quotient (≥ 1).
    pub fn check_cf_digits(&self) -> Result<(), WordError> {
        check_cf_digits(&self.0)
    }
}

pub(crate) fn check_cf_digits(letters: &[Letter]) -> Result<(), WordError> {
    match letters.iter().position(|&l| l == 0) {
        Some(i) => Err(WordError::NonPositiveDigit {
            position: i + 1,
            value: 0,
        }),
        None => Ok(()),
    }
}

impl Deref for FiniteWord {
    type Target = [Letter];

    fn deref(&self) -> &[Letter] {
        &self.0
    }
}

impl From<Vec<Letter>> for FiniteWord {
    fn from(v: Vec<Letter>) -> Self {
        FiniteWord(v)
    }
}

impl From<&[Letter]> for FiniteWord {
    fn from(v: &[Letter]) -> Self {
        FiniteWord(v.to_vec())
    }
}

impl FromIterator<Letter> for FiniteWord {
    fn from_iter<I: IntoIterator<Item = Letter>>(iter: I) -> Self {
        FiniteWord(iter.into_iter().collect())
    }
}

/// Space separated letters, the format used by the `gen` command.
impl fmt::Display for FiniteWord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{l}")?;
        }
        Ok(())
    }
}

/// Length of `W^x` for a root of length `len`: `[x]·len + ⌈{x}·len⌉`.
pub fn power_length(len: usize, x: Rational) -> usize {
    let len = len as u64;
    let whole = x.to_integer();
    let frac = x.fract();
    let tail = (*frac.numer() * len).div_ceil(*frac.denom());
    (whole * len + tail) as usize
}

/// The fractional power `W^x`: `[x]` full copies of `W` followed by the
/// prefix of `W` of length `⌈(x − [x])·|W|⌉`.
///
/// ```
/// use cfstammer::word::{word_power, FiniteWord, Rational};
/// let root = FiniteWord::from_digits("112").unwrap();
/// let p = word_power(&root, Rational::new(7, 3)).unwrap();
/// assert_eq!(p.to_digit_string(), "1121121");
/// ```
pub fn word_power(root: &[Letter], x: Rational) -> Result<FiniteWord, WordError> {
    if root.is_empty() {
        return Err(WordError::EmptyRoot);
    }
    if x <= Rational::from_integer(0) {
        return Err(WordError::NonPositiveExponent(x));
    }
    let total = power_length(root.len(), x);
    Ok(root.iter().copied().cycle().take(total).collect())
}

/// True when `word` begins with `root^x`.
pub fn starts_with_power(word: &[Letter], root: &[Letter], x: Rational) -> bool {
    match word_power(root, x) {
        Ok(p) => word.starts_with(&p),
        Err(_) => false,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn w(s: &str) -> FiniteWord {
        // map a,b,c to 1,2,3 for readability
        s.chars()
            .map(|c| match c {
                'a' => 1,
                'b' => 2,
                'c' => 3,
                _ => panic!("bad test letter"),
            })
            .collect()
    }

    #[test]
    fn power_examples() {
        assert_eq!(word_power(&w("ab"), Rational::new(3, 2)).unwrap(), w("aba"));
        assert_eq!(word_power(&w("abc"), Rational::from_integer(1)).unwrap(), w("abc"));
        assert_eq!(word_power(&w("aab"), Rational::new(7, 3)).unwrap(), w("aabaaba"));
    }

    #[test]
    fn power_errors() {
        assert_eq!(
            word_power(&[], Rational::new(3, 2)),
            Err(WordError::EmptyRoot)
        );
        assert!(matches!(
            word_power(&w("ab"), Rational::from_integer(0)),
            Err(WordError::NonPositiveExponent(_))
        ));
    }

    #[test]
    fn power_length_exhaustive() {
        for len in 1..=12usize {
            let root: Vec<Letter> = (0..len as u32).collect();
            for p in 1..=12u64 {
                for q in 1..=12u64 {
                    let x = Rational::new(p, q);
                    let got = word_power(&root, x).unwrap();
                    let whole = (p / q) as usize;
                    // ceil((x - [x]) * len) computed independently in integers
                    let rem = p % q;
                    let tail = (rem as usize * len).div_ceil(q as usize);
                    assert_eq!(got.len(), whole * len + tail, "len={len} x={p}/{q}");
                    for (i, l) in got.iter().enumerate() {
                        assert_eq!(*l, root[i % len]);
                    }
                }
            }
        }
    }

    #[test]
    fn digit_strings() {
        let f = FiniteWord::from_digits("0110").unwrap();
        assert_eq!(f.letters(), &[0, 1, 1, 0]);
        assert_eq!(f.to_string(), "0 1 1 0");
        assert_eq!(FiniteWord::new(vec![1, 12]).to_digit_string(), "1(12)");
        assert!(FiniteWord::from_digits("01x").is_err());
    }

    #[test]
    fn cf_digit_check() {
        assert!(FiniteWord::new(vec![1, 2, 3]).check_cf_digits().is_ok());
        assert_eq!(
            FiniteWord::new(vec![1, 0]).check_cf_digits(),
            Err(WordError::NonPositiveDigit {
                position: 2,
                value: 0
            })
        );
    }
}
