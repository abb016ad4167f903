use std::f64::consts::LN_2;

use num_bigint::BigInt;
use num_traits::{Signed, ToPrimitive};
use serde::Serialize;

use super::{CfError, ConvergentTable};
use crate::ser::Approx;

/// Natural logarithm of a positive big integer.
///
/// The top 64 bits go through `f64::ln` and the rest is added as a multiple
/// of `ln 2`, so the absolute error stays near `1e-15 · ln x`.
pub fn ln_big(x: &BigInt) -> f64 {
    assert!(x.is_positive(), "ln_big of a non-positive integer");
    let bits = x.bits();
    let shift = bits.saturating_sub(64);
    let top = (x >> shift).to_u64().expect("fits in 64 bits");
    (top as f64).ln() + shift as f64 * LN_2
}

/// Tail-window estimates of `limsup` and `liminf` of `q_ℓ^{1/ℓ}`.
#[derive(Debug, Clone, PartialEq)]
pub struct GrowthStats {
    pub n: usize,
    pub big_m: f64,
    pub small_m: f64,
    pub window: (usize, usize),
    pub bounded_evidence: bool,
}

/// JSON shape: `{"N", "M": approx, "m": approx, "window": [lo, hi], "bounded_evidence"}`.
impl Serialize for GrowthStats {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("GrowthStats", 5)?;
        st.serialize_field("N", &self.n)?;
        st.serialize_field("M", &Approx::new(self.big_m))?;
        st.serialize_field("m", &Approx::new(self.small_m))?;
        st.serialize_field("window", &self.window)?;
        st.serialize_field("bounded_evidence", &self.bounded_evidence)?;
        st.end()
    }
}

impl GrowthStats {
    pub fn ln_ratio(&self) -> f64 {
        self.big_m.ln() / self.small_m.ln()
    }
}

/// `M̂` and `m̂` are the max and min of `q_ℓ^{1/ℓ}` over `ℓ ∈ [N/2, N]`.
/// `bounded_evidence` holds when every value over `[4, N]` is below `2M̂`,
/// which only rules out early blow-ups, not slow drift.
pub fn growth_stats(table: &ConvergentTable, n: usize) -> Result<GrowthStats, CfError> {
    if n < 16 {
        return Err(CfError::GrowthTooShort(n));
    }
    table.q(n)?;
    let q = table.denominators();
    let root = |l: usize| (ln_big(&q[l]) / l as f64).exp();
    let lo = n / 2;
    let (mut big_m, mut small_m) = (f64::MIN, f64::MAX);
    for l in lo..=n {
        let v = root(l);
        big_m = big_m.max(v);
        small_m = small_m.min(v);
    }
    let bounded_evidence = (4..=n).all(|l| root(l) < 2.0 * big_m);
    Ok(GrowthStats {
        n,
        big_m,
        small_m,
        window: (lo, n),
        bounded_evidence,
    })
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ContinuantReport {
    /// Indices `ℓ` where `q_{ℓ+2} < 2 q_ℓ`.
    pub doubling_violations: Vec<usize>,
    /// Splits `(m, n)` where `q_{m+n} < q_m K(a_{m+1} … a_{m+n})`.
    pub superadditivity_violations: Vec<(usize, usize)>,
    pub splits_checked: usize,
    /// `(ℓ, ln q_{ℓ+1} / ln q_ℓ)` for every `ℓ ≥ 1` with `q_ℓ > 1`.
    pub roth_exponents: Vec<(usize, f64)>,
}

impl ContinuantReport {
    pub fn is_clean(&self) -> bool {
        self.doubling_violations.is_empty() && self.superadditivity_violations.is_empty()
    }

    /// Largest monitored exponent at indices `≥ from`.
    pub fn max_roth_from(&self, from: usize) -> Option<f64> {
        self.roth_exponents
            .iter()
            .filter(|(l, _)| *l >= from)
            .map(|&(_, e)| e)
            .reduce(f64::max)
    }
}

fn splits(n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    if n <= 64 {
        for t in 2..=n {
            for m in 1..t {
                out.push((m, t - m));
            }
        }
        return out;
    }
    let step = (n / 64).max(1);
    for t in (2..=n).step_by(step) {
        let mut m = 1;
        while m < t {
            out.push((m, t - m));
            m *= 2;
        }
        out.push((t / 2, t - t / 2));
    }
    out.sort_unstable();
    out.dedup();
    out
}

/// Continuant `K(a_i … a_j)` of a block of partial quotients.
fn continuant(block: &[crate::word::Letter]) -> BigInt {
    let (mut prev, mut cur) = (BigInt::from(0), BigInt::from(1));
    for &a in block {
        let next = BigInt::from(a) * &cur + &prev;
        prev = std::mem::replace(&mut cur, next);
    }
    cur
}

/// Checks `q_{ℓ+2} ≥ 2 q_ℓ` everywhere and `q_{m+n} ≥ q_m K(a_{m+1} … a_{m+n})`
/// on all splits (exhaustive up to 64, sampled beyond), and records the
/// exponents `ln q_{ℓ+1} / ln q_ℓ` without judging them.
///
/// When the block `a_{m+1} … a_{m+n}` equals `a_1 … a_n` the continuant is
/// `q_n`, which gives `q_{2s} ≥ q_s²` for prefix squares.
pub fn continuant_checks(table: &ConvergentTable) -> Result<ContinuantReport, CfError> {
    let n = table.len();
    if n < 4 {
        return Err(CfError::IndexOutOfRange {
            index: 4,
            available: n,
        });
    }
    let q = table.denominators();
    let two = BigInt::from(2);
    let doubling_violations = (0..=n - 2)
        .filter(|&l| q[l + 2] < &two * &q[l])
        .collect();
    let sp = splits(n);
    let superadditivity_violations = sp
        .iter()
        .copied()
        .filter(|&(a, b)| q[a + b] < &q[a] * continuant(&table.digits()[a..a + b]))
        .collect();
    let roth_exponents = (1..n)
        .filter(|&l| q[l] > BigInt::from(1))
        .map(|l| (l, ln_big(&q[l + 1]) / ln_big(&q[l])))
        .collect();
    Ok(ContinuantReport {
        doubling_violations,
        superadditivity_violations,
        splits_checked: sp.len(),
        roth_exponents,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cf::convergents;

    const PHI: f64 = 1.618_033_988_749_895;
    const SILVER: f64 = 2.414_213_562_373_095;

    #[test]
    fn ln_big_matches_float() {
        for x in [1u64, 2, 3, 10, 1 << 40, u64::MAX] {
            let got = ln_big(&BigInt::from(x));
            assert!((got - (x as f64).ln()).abs() < 1e-12);
        }
        let big = BigInt::from(3).pow(1000);
        assert!((ln_big(&big) - 1000.0 * 3f64.ln()).abs() < 1e-9);
    }

    #[test]
    fn golden_growth() {
        let t = convergents(&[1; 200]).unwrap();
        let q64 = (ln_big(t.q(64).unwrap()) / 64.0).exp();
        assert!((q64 - PHI).abs() < 1e-2);
        let g = growth_stats(&t, 128).unwrap();
        assert!((g.big_m - PHI).abs() < 1e-2);
        assert!((g.small_m - PHI).abs() < 1e-2);
        assert!(g.small_m <= g.big_m);
        assert!(g.bounded_evidence);
        assert_eq!(g.window, (64, 128));
    }

    #[test]
    fn silver_growth() {
        let t = convergents(&[2; 200]).unwrap();
        let g = growth_stats(&t, 64).unwrap();
        assert!((g.big_m - SILVER).abs() < 1e-2);
        let g = growth_stats(&t, 128).unwrap();
        assert!((g.small_m - SILVER).abs() < 1e-2);
    }

    #[test]
    fn window_start_lags_the_limit() {
        // q_ℓ^{1/ℓ} approaches the limit from below like O(1/ℓ)
        let t = convergents(&[1; 64]).unwrap();
        let g = growth_stats(&t, 64).unwrap();
        assert!((g.big_m - PHI).abs() < 1e-2);
        assert!(g.small_m < PHI - 1e-2);
    }

    #[test]
    fn doubling_n_is_stable() {
        let mut fib = crate::word::InfiniteWord::fibonacci().prefix(1024).into_vec();
        for x in &mut fib {
            *x += 1;
        }
        for digits in [vec![1; 1024], [1, 2].repeat(512), fib] {
            let t = convergents(&digits).unwrap();
            let a = growth_stats(&t, 256).unwrap();
            let b = growth_stats(&t, 512).unwrap();
            assert!((a.big_m / b.big_m - 1.0).abs() < 0.05);
            assert!((a.small_m / b.small_m - 1.0).abs() < 0.05);
        }
    }

    #[test]
    fn too_short() {
        let t = convergents(&[1; 20]).unwrap();
        assert_eq!(growth_stats(&t, 15), Err(CfError::GrowthTooShort(15)));
        assert!(growth_stats(&t, 21).is_err());
    }

    #[test]
    fn continuants_on_fibonacci() {
        let t = convergents(&[1; 100]).unwrap();
        let r = continuant_checks(&t).unwrap();
        assert!(r.is_clean());
        assert!(r.splits_checked > 100);
        assert!(r.max_roth_from(20).unwrap() < 1.1);
    }

    #[test]
    fn continuant_of_block() {
        let t = convergents(&[3, 1, 4, 1, 5]).unwrap();
        assert_eq!(continuant(&[3, 1, 4]), *t.q(3).unwrap());
        assert_eq!(continuant(&[]), BigInt::from(1));
        // a prefix-only product bound would fail here: q_2 = 6 < q_1² = 25
        let t = convergents(&[5, 1, 1, 1]).unwrap();
        assert!(continuant_checks(&t).unwrap().is_clean());
    }

    #[test]
    fn continuants_on_mixed_digits() {
        let digits: Vec<u32> = (0..150).map(|i| 1 + (i * 7 % 5) as u32).collect();
        let r = continuant_checks(&convergents(&digits).unwrap()).unwrap();
        assert!(r.is_clean());
    }
}
