//! JSON encodings shared by the reports: exact numbers travel as strings,
//! approximate ones carry an explicit marker.

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use serde::Serialize;

/// Exact rational as `"p/q"` (always with a denominator).
pub fn ratio<T: std::fmt::Display>(r: &Ratio<T>) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn big_ratio(r: &BigRational) -> String {
    format!("{}/{}", r.numer(), r.denom())
}

pub fn bigint(x: &BigInt) -> String {
    x.to_string()
}

/// A floating-point estimate, serialized as `{"value": x, "approx": true}`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Approx {
    pub value: f64,
    pub approx: bool,
}

impl Approx {
    pub fn new(value: f64) -> Self {
        Approx { value, approx: true }
    }
}

/// Parses `"p/q"` or `"p"` into an exact non-negative rational.
pub fn parse_ratio(s: &str) -> Result<Ratio<u64>, String> {
    let s = s.trim();
    let (n, d) = match s.split_once('/') {
        Some((n, d)) => (n.trim(), d.trim()),
        None => (s, "1"),
    };
    let n: u64 = n.parse().map_err(|_| format!("invalid rational {s:?}"))?;
    let d: u64 = d.parse().map_err(|_| format!("invalid rational {s:?}"))?;
    if d == 0 {
        return Err(format!("zero denominator in {s:?}"));
    }
    Ok(Ratio::new(n, d))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rationals() {
        assert_eq!(parse_ratio("3/2"), Ok(Ratio::new(3, 2)));
        assert_eq!(parse_ratio("2"), Ok(Ratio::new(2, 1)));
        assert_eq!(parse_ratio(" 4 / 6 "), Ok(Ratio::new(2, 3)));
        assert!(parse_ratio("1/0").is_err());
        assert!(parse_ratio("-1/2").is_err());
        assert!(parse_ratio("x").is_err());
        assert_eq!(ratio(&Ratio::new(4u64, 2)), "2/1");
    }
}
