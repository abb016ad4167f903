use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::CfError;

/// The real number `(P + √D) / Q` with `D > 0` not a perfect square,
/// `Q ≠ 0` and `Q | D − P²`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct QuadraticSurd {
    p: BigInt,
    q: BigInt,
    d: BigInt,
}

pub(crate) fn is_square(x: &BigInt) -> bool {
    if x.is_negative() {
        return false;
    }
    let r = x.sqrt();
    &r * &r == *x
}

/// Sign of `a + b·√d` for a non-square `d > 0`.
pub(crate) fn sign_with_root(a: &BigInt, b: &BigInt, d: &BigInt) -> Ordering {
    let za = a.sign();
    let zb = b.sign();
    use num_bigint::Sign::*;
    match (za, zb) {
        (NoSign, NoSign) => Ordering::Equal,
        (Plus | NoSign, Plus | NoSign) => Ordering::Greater,
        (Minus | NoSign, Minus | NoSign) => Ordering::Less,
        _ => {
            // opposite signs: compare a² with b²d, which never tie
            let lhs = a * a;
            let rhs = b * b * d;
            let root_wins = rhs > lhs;
            match (zb == Plus, root_wins) {
                (true, true) | (false, false) => Ordering::Greater,
                _ => Ordering::Less,
            }
        }
    }
}

impl QuadraticSurd {
    /// Builds `(p + √d)/q`, scaling by `|q|` when needed so that
    /// `q | d − p²` holds.
    pub fn new(p: BigInt, q: BigInt, d: BigInt) -> Result<Self, CfError> {
        if q.is_zero() {
            return Err(CfError::ZeroDenominator);
        }
        if !d.is_positive() || is_square(&d) {
            return Err(CfError::SquareRadicand(d));
        }
        let rem = (&d - &p * &p) % &q;
        if rem.is_zero() {
            return Ok(QuadraticSurd { p, q, d });
        }
        let aq = q.abs();
        Ok(QuadraticSurd {
            p: &p * &aq,
            d: &d * &q * &q,
            q: &q * &aq,
        })
    }

    /// The root `(−B ± √Δ)/(2A)` of `A X² + B X + C` with `Δ = B² − 4AC`.
    pub fn quadratic_root(a: &BigInt, b: &BigInt, c: &BigInt, plus: bool) -> Result<Self, CfError> {
        let disc = b * b - BigInt::from(4) * a * c;
        let two_a = BigInt::from(2) * a;
        if plus {
            Self::new(-b, two_a, disc)
        } else {
            Self::new(b.clone(), -two_a, disc)
        }
    }

    pub fn p(&self) -> &BigInt {
        &self.p
    }

    pub fn q(&self) -> &BigInt {
        &self.q
    }

    pub fn d(&self) -> &BigInt {
        &self.d
    }

    pub fn signum(&self) -> Ordering {
        let s = sign_with_root(&self.p, &BigInt::from(1), &self.d);
        if self.q.is_negative() {
            s.reverse()
        } else {
            s
        }
    }

    /// Exact comparison with a rational.
    pub fn cmp_rational(&self, t: &BigRational) -> Ordering {
        // x − t = ((p·den − num·q) + den·√d) / (q·den), den > 0
        let a = &self.p * t.denom() - t.numer() * &self.q;
        let s = sign_with_root(&a, t.denom(), &self.d);
        if self.q.is_negative() {
            s.reverse()
        } else {
            s
        }
    }

    pub fn floor(&self) -> BigInt {
        let s: BigInt = self.d.sqrt();
        if self.q.is_positive() {
            (&self.p + s).div_floor(&self.q)
        } else {
            (&self.p + s + BigInt::from(1)).div_floor(&self.q)
        }
    }

    /// Lies strictly between the two rationals (in either order).
    pub fn strictly_between(&self, x: &BigRational, y: &BigRational) -> bool {
        let (lo, hi) = if x <= y { (x, y) } else { (y, x) };
        self.cmp_rational(lo) == Ordering::Greater && self.cmp_rational(hi) == Ordering::Less
    }

    pub fn to_f64(&self) -> f64 {
        use num_traits::ToPrimitive;
        let d = self.d.to_f64().unwrap_or(f64::NAN);
        (self.p.to_f64().unwrap_or(f64::NAN) + d.sqrt()) / self.q.to_f64().unwrap_or(f64::NAN)
    }
}

impl fmt::Display for QuadraticSurd {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({} + √{})/{}", self.p, self.d, self.q)
    }
}

/// JSON shape: `{"P": "…", "Q": "…", "D": "…"}`.
impl Serialize for QuadraticSurd {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("QuadraticSurd", 3)?;
        st.serialize_field("P", &self.p.to_string())?;
        st.serialize_field("Q", &self.q.to_string())?;
        st.serialize_field("D", &self.d.to_string())?;
        st.end()
    }
}

/// Eventually periodic continued fraction of a quadratic surd.
///
/// The terms are `a_0, a_1, …` except that a leading `a_0 = 0` is dropped,
/// so a number in `(0, 1)` lists exactly its partial quotients
/// `a_1, a_2, …`. Both parts are minimal.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SurdExpansion {
    pub preperiod: Vec<BigInt>,
    pub period: Vec<BigInt>,
}

/// JSON shape: `{"preperiod": ["1"], "period": ["2"]}`.
impl Serialize for SurdExpansion {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let strings = |v: &[BigInt]| v.iter().map(|x| x.to_string()).collect::<Vec<_>>();
        let mut st = ser.serialize_struct("SurdExpansion", 2)?;
        st.serialize_field("preperiod", &strings(&self.preperiod))?;
        st.serialize_field("period", &strings(&self.period))?;
        st.end()
    }
}

impl SurdExpansion {
    /// Reduces `preperiod · period^ω` to its minimal representation: the
    /// period becomes primitive and the preperiod as short as possible.
    pub fn canonical(mut preperiod: Vec<BigInt>, mut period: Vec<BigInt>) -> Self {
        let n = period.len();
        if let Some(k) = (1..=n).find(|&k| n.is_multiple_of(k) && (k..n).all(|i| period[i] == period[i - k])) {
            period.truncate(k);
        }
        while !period.is_empty() && preperiod.last() == period.last() {
            preperiod.pop();
            period.rotate_right(1);
        }
        SurdExpansion { preperiod, period }
    }

    /// The first `n` terms of the (dropped-zero) expansion.
    pub fn terms(&self, n: usize) -> Vec<BigInt> {
        self.preperiod
            .iter()
            .chain(self.period.iter().cycle())
            .take(n)
            .cloned()
            .collect()
    }
}

/// Expands `x` by the classical `(P, Q)` recurrence, stopping at the first
/// repeated state. Fails if no state repeats within `max_steps`.
pub fn surd_cf_expansion(x: &QuadraticSurd, max_steps: usize) -> Result<SurdExpansion, CfError> {
    let d = &x.d;
    let mut p = x.p.clone();
    let mut q = x.q.clone();
    let mut seen: HashMap<(BigInt, BigInt), usize> = HashMap::new();
    let mut terms: Vec<BigInt> = Vec::new();
    for step in 0..max_steps {
        if let Some(&start) = seen.get(&(p.clone(), q.clone())) {
            let period = terms.split_off(start);
            if terms.first().is_some_and(|t| t.is_zero()) {
                terms.remove(0);
            }
            return Ok(SurdExpansion {
                preperiod: terms,
                period,
            });
        }
        seen.insert((p.clone(), q.clone()), step);
        let cur = QuadraticSurd {
            p: p.clone(),
            q: q.clone(),
            d: d.clone(),
        };
        let a = cur.floor();
        let p_next = &a * &q - &p;
        let q_next = (d - &p_next * &p_next) / &q;
        terms.push(a);
        p = p_next;
        q = q_next;
    }
    Err(CfError::IterationCap(max_steps))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn b(x: i64) -> BigInt {
        BigInt::from(x)
    }

    fn terms(v: &[BigInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn sqrt2() {
        let s = QuadraticSurd::new(b(0), b(1), b(2)).unwrap();
        let e = surd_cf_expansion(&s, 100).unwrap();
        assert_eq!(terms(&e.preperiod), vec![1]);
        assert_eq!(terms(&e.period), vec![2]);
    }

    #[test]
    fn golden_conjugate() {
        // (√5 − 1)/2
        let s = QuadraticSurd::new(b(-1), b(2), b(5)).unwrap();
        let e = surd_cf_expansion(&s, 100).unwrap();
        assert!(e.preperiod.is_empty());
        assert_eq!(terms(&e.period), vec![1]);
    }

    #[test]
    fn inverse_sqrt2() {
        // root of 2X² − 1 in (0, 1)
        let s = QuadraticSurd::quadratic_root(&b(2), &b(0), &b(-1), true).unwrap();
        let e = surd_cf_expansion(&s, 100).unwrap();
        assert_eq!(terms(&e.preperiod), vec![1]);
        assert_eq!(terms(&e.period), vec![2]);
    }

    #[test]
    fn canonical_expansion() {
        let v = |xs: &[i64]| xs.iter().map(|&x| b(x)).collect::<Vec<_>>();
        let e = SurdExpansion::canonical(v(&[3, 1, 2]), v(&[1, 2, 1, 2]));
        assert_eq!(e.preperiod, v(&[3]));
        assert_eq!(e.period, v(&[1, 2]));
        let e = SurdExpansion::canonical(v(&[2]), v(&[2]));
        assert!(e.preperiod.is_empty());
        assert_eq!(e.terms(3), v(&[2, 2, 2]));
    }

    #[test]
    fn canonicalization() {
        // (1 + √3)/2: 3 − 1 = 2 is divisible by 2, kept
        let s = QuadraticSurd::new(b(1), b(2), b(3)).unwrap();
        assert_eq!((s.p(), s.q(), s.d()), (&b(1), &b(2), &b(3)));
        // (0 + √3)/2: 3 not divisible by 2, scaled to (0 + √12)/4
        let s = QuadraticSurd::new(b(0), b(2), b(3)).unwrap();
        assert_eq!((s.p(), s.q(), s.d()), (&b(0), &b(4), &b(12)));
        assert!((s.to_f64() - 3f64.sqrt() / 2.0).abs() < 1e-12);
        assert!(QuadraticSurd::new(b(0), b(1), b(4)).is_err());
        assert!(QuadraticSurd::new(b(0), b(0), b(2)).is_err());
    }

    #[test]
    fn comparisons() {
        let s = QuadraticSurd::new(b(0), b(1), b(2)).unwrap();
        let r = |n: i64, d: i64| BigRational::new(b(n), b(d));
        assert_eq!(s.cmp_rational(&r(141, 100)), Ordering::Greater);
        assert_eq!(s.cmp_rational(&r(142, 100)), Ordering::Less);
        let neg = QuadraticSurd::new(b(0), b(-1), b(2)).unwrap();
        assert_eq!(neg.signum(), Ordering::Less);
        assert_eq!(neg.floor(), b(-2));
        assert_eq!(s.floor(), b(1));
        let t = QuadraticSurd::new(b(-3), b(1), b(2)).unwrap();
        assert_eq!(t.signum(), Ordering::Less);
        assert_eq!(t.floor(), b(-2));
    }

    #[test]
    fn floor_matches_float() {
        for p in -20i64..20 {
            for q in [-7i64, -3, -2, -1, 1, 2, 3, 5] {
                for d in [2i64, 3, 5, 6, 7, 10, 13, 99] {
                    let s = QuadraticSurd::new(b(p), b(q), b(d)).unwrap();
                    let f = ((p as f64) + (d as f64).sqrt()) / q as f64;
                    assert_eq!(s.floor(), b(f.floor() as i64), "p={p} q={q} d={d}");
                }
            }
        }
    }
}
