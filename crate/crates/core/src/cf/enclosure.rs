use std::cmp::Ordering;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::{CfError, ConvergentTable, QuadraticSurd};
use crate::ser;

/// Closed rational interval `[lo, hi]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Enclosure {
    pub lo: BigRational,
    pub hi: BigRational,
}

impl Enclosure {
    /// Orders the endpoints.
    pub fn new(a: BigRational, b: BigRational) -> Self {
        if a <= b {
            Enclosure { lo: a, hi: b }
        } else {
            Enclosure { lo: b, hi: a }
        }
    }

    pub fn point(x: BigRational) -> Self {
        Enclosure {
            lo: x.clone(),
            hi: x,
        }
    }

    pub fn width(&self) -> BigRational {
        &self.hi - &self.lo
    }

    pub fn midpoint(&self) -> BigRational {
        (&self.lo + &self.hi) / BigInt::from(2)
    }

    pub fn contains(&self, x: &BigRational) -> bool {
        &self.lo <= x && x <= &self.hi
    }

    pub fn contains_surd(&self, x: &QuadraticSurd) -> bool {
        x.cmp_rational(&self.lo) != Ordering::Less && x.cmp_rational(&self.hi) != Ordering::Greater
    }

    pub fn straddles_zero(&self) -> bool {
        !self.lo.is_positive() && !self.hi.is_negative()
    }

    /// Enclosure of `{|x| : x ∈ self}`.
    pub fn abs(&self) -> Enclosure {
        if self.straddles_zero() {
            let m = self.lo.abs().max(self.hi.abs());
            Enclosure {
                lo: BigRational::zero(),
                hi: m,
            }
        } else {
            Enclosure::new(self.lo.abs(), self.hi.abs())
        }
    }

    pub fn scale(&self, k: &BigRational) -> Enclosure {
        Enclosure::new(&self.lo * k, &self.hi * k)
    }

    pub fn shift(&self, k: &BigRational) -> Enclosure {
        Enclosure {
            lo: &self.lo + k,
            hi: &self.hi + k,
        }
    }
}

/// JSON shape: `{"lo": "p/q", "hi": "p/q"}`.
impl Serialize for Enclosure {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Enclosure", 2)?;
        st.serialize_field("lo", &ser::big_ratio(&self.lo))?;
        st.serialize_field("hi", &ser::big_ratio(&self.hi))?;
        st.end()
    }
}

fn frac(p: &BigInt, q: &BigInt) -> BigRational {
    BigRational::new(p.clone(), q.clone())
}

/// `α` lies between consecutive convergents `p_L/q_L` and
/// `p_{L+1}/q_{L+1}`; the width is `1/(q_L q_{L+1}) < q_L^{-2}`.
pub fn alpha_enclosure(table: &ConvergentTable, level: usize) -> Result<Enclosure, CfError> {
    let a = frac(table.p(level)?, table.q(level)?);
    let b = frac(table.p(level + 1)?, table.q(level + 1)?);
    Ok(Enclosure::new(a, b))
}

/// The set of numbers whose expansion starts with `a_1 … a_ℓ`: the open
/// interval between `p_ℓ/q_ℓ` and `(p_ℓ + p_{ℓ−1})/(q_ℓ + q_{ℓ−1})`,
/// returned closed.
pub fn cylinder(table: &ConvergentTable, level: usize) -> Result<Enclosure, CfError> {
    if level == 0 {
        return Err(CfError::ZeroLength("cylinder depth"));
    }
    let (p, q) = (table.p(level)?, table.q(level)?);
    let (pp, qp) = (table.p(level - 1)?, table.q(level - 1)?);
    Ok(Enclosure::new(frac(p, q), frac(&(p + pp), &(q + qp))))
}
