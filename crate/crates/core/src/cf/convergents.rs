use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use super::CfError;
use crate::word::Letter;

/// A single convergent `p_ℓ / q_ℓ`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Convergent {
    pub index: usize,
    pub p: BigInt,
    pub q: BigInt,
}

impl Serialize for Convergent {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = ser.serialize_struct("Convergent", 3)?;
        st.serialize_field("index", &self.index)?;
        st.serialize_field("p", &self.p.to_string())?;
        st.serialize_field("q", &self.q.to_string())?;
        st.end()
    }
}

/// Convergents `p_ℓ, q_ℓ` for `0 ≤ ℓ ≤ N` of `[0; a_1, …, a_N]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConvergentTable {
    digits: Vec<Letter>,
    p: Vec<BigInt>,
    q: Vec<BigInt>,
}

/// Runs the recurrences `p_ℓ = a_ℓ p_{ℓ−1} + p_{ℓ−2}`,
/// `q_ℓ = a_ℓ q_{ℓ−1} + q_{ℓ−2}` over all of `digits`.
pub fn convergents(digits: &[Letter]) -> Result<ConvergentTable, CfError> {
    if let Some(i) = digits.iter().position(|&a| a == 0) {
        return Err(CfError::NonPositiveDigit { position: i + 1 });
    }
    let n = digits.len();
    let mut p = Vec::with_capacity(n + 1);
    let mut q = Vec::with_capacity(n + 1);
    p.push(BigInt::zero());
    q.push(BigInt::one());
    let (mut p_prev, mut q_prev) = (BigInt::one(), BigInt::zero());
    for &a in digits {
        let a = BigInt::from(a);
        let p_next = &a * p.last().unwrap() + &p_prev;
        let q_next = &a * q.last().unwrap() + &q_prev;
        p_prev = p.last().unwrap().clone();
        q_prev = q.last().unwrap().clone();
        p.push(p_next);
        q.push(q_next);
    }
    Ok(ConvergentTable {
        digits: digits.to_vec(),
        p,
        q,
    })
}

impl ConvergentTable {
    /// Largest available index `N`.
    pub fn len(&self) -> usize {
        self.digits.len()
    }

    pub fn is_empty(&self) -> bool {
        self.digits.is_empty()
    }

    pub fn digits(&self) -> &[Letter] {
        &self.digits
    }

    fn check(&self, index: usize) -> Result<(), CfError> {
        if index > self.len() {
            Err(CfError::IndexOutOfRange {
                index,
                available: self.len(),
            })
        } else {
            Ok(())
        }
    }

    pub fn p(&self, index: usize) -> Result<&BigInt, CfError> {
        self.check(index)?;
        Ok(&self.p[index])
    }

    pub fn q(&self, index: usize) -> Result<&BigInt, CfError> {
        self.check(index)?;
        Ok(&self.q[index])
    }

    pub fn get(&self, index: usize) -> Result<Convergent, CfError> {
        self.check(index)?;
        Ok(Convergent {
            index,
            p: self.p[index].clone(),
            q: self.q[index].clone(),
        })
    }

    pub fn denominators(&self) -> &[BigInt] {
        &self.q
    }

    pub fn numerators(&self) -> &[BigInt] {
        &self.p
    }

    /// `p_ℓ q_{ℓ−1} − p_{ℓ−1} q_ℓ`, which equals `(−1)^{ℓ+1}`.
    pub fn determinant(&self, index: usize) -> Result<BigInt, CfError> {
        if index == 0 {
            return Err(CfError::ZeroLength("index"));
        }
        self.check(index)?;
        Ok(&self.p[index] * &self.q[index - 1] - &self.p[index - 1] * &self.q[index])
    }
}
