//! Finite-evidence certificates for the stammering transcendence criteria.
//!
//! A certificate never proves anything about the infinite word. It records
//! which hypotheses the scanned prefix supports (repetition witnesses,
//! absence of a visible period, growth estimates) together with the
//! quadratic approximants the witnesses induce, so a reader can judge the
//! evidence. Thresholds are part of the report.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::cf::{
    alpha_enclosure, build_pn_preperiodic, build_pn_pure, convergents, evaluate_poly_enclosure,
    growth_stats, ln_big, surd_cf_expansion, CfError, ConvergentTable, Enclosure, GrowthStats,
    QuadraticApproximant, SurdExpansion,
};
use crate::repetition::{
    detect_eventual_period, detect_star, detect_star_star, normalize_witness, z_array,
    PeriodicityEvidence, RepetitionError, RepetitionWitness,
};
use crate::ser::{self, Approx};
use crate::word::{FiniteWord, InfiniteWord, Letter, Rational, WordError};

#[derive(Debug, Clone, PartialEq, Error)]
pub enum CriteriaError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Repetition(#[from] RepetitionError),
    #[error("growth gate: {0}")]
    GrowthGate(String),
    #[error(transparent)]
    Cf(#[from] CfError),
    #[error("invalid parameter: {0}")]
    Parameter(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum TheoremId {
    /// Condition `(*)_w` with `w ≥ 2`.
    T1a,
    /// Condition `(*)_w` with `w > 1` and bounded `q_ℓ^{1/ℓ}`.
    T1b,
    /// Condition `(**)_{w,w′}` under the growth inequality.
    T2,
    /// Condition `(**)_{w,w′}` with `w > w′ + 1` and convergent `q_ℓ^{1/ℓ}`.
    C1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    EvidenceTranscendental,
    EvidenceQuadraticOrRational,
    Inconclusive,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum T1Mode {
    /// Prefix squares or more: `w = 2`.
    AtLeastSquare,
    /// Best exponent `w > 1` reached by `min_witnesses` roots; needs bounded growth.
    AboveOne,
}

/// Knobs shared by the certifiers.
#[derive(Debug, Clone, PartialEq)]
pub struct CertifyConfig {
    /// Scan bound `N`.
    pub n: usize,
    pub min_witnesses: usize,
    /// Required `w − threshold` for the growth inequality.
    pub safety_margin: f64,
    /// Largest `M̂/m̂ − 1` accepted as convergence of `q_ℓ^{1/ℓ}`.
    pub convergence_tolerance: f64,
    /// At most this many witnesses get approximant diagnostics.
    pub max_diagnostics: usize,
}

impl Default for CertifyConfig {
    fn default() -> Self {
        CertifyConfig {
            n: 10_000,
            min_witnesses: 3,
            safety_margin: 0.05,
            convergence_tolerance: 0.02,
            max_diagnostics: 32,
        }
    }
}

impl CertifyConfig {
    pub fn with_n(n: usize) -> Self {
        CertifyConfig {
            n,
            ..Self::default()
        }
    }
}

/// Outcome of `w > (2w′ + 1)·ln M̂ / ln m̂ − w′`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct InequalityCheck {
    pub holds: bool,
    pub threshold: f64,
    pub margin: f64,
}

impl Serialize for InequalityCheck {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("InequalityCheck", 3)?;
        st.serialize_field("holds", &self.holds)?;
        st.serialize_field("threshold", &Approx::new(self.threshold))?;
        st.serialize_field("margin", &Approx::new(self.margin))?;
        st.end()
    }
}

fn to_f64(r: Rational) -> f64 {
    *r.numer() as f64 / *r.denom() as f64
}

pub fn check_inequality_1(
    w: Rational,
    wprime: Rational,
    big_m: f64,
    small_m: f64,
) -> Result<InequalityCheck, CriteriaError> {
    if small_m.is_nan() || small_m <= 1.0 {
        return Err(CriteriaError::GrowthGate(format!(
            "m̂ = {small_m} is not above 1"
        )));
    }
    if big_m < small_m {
        return Err(CriteriaError::GrowthGate(format!(
            "M̂ = {big_m} is below m̂ = {small_m}"
        )));
    }
    let wp = to_f64(wprime);
    let threshold = (2.0 * wp + 1.0) * (big_m.ln() / small_m.ln()) - wp;
    let margin = to_f64(w) - threshold;
    Ok(InequalityCheck {
        holds: margin > 0.0,
        threshold,
        margin,
    })
}

/// Per-witness view of the quadratic approximant `P_n` and its distance to
/// `α`, all from exact arithmetic except the monitored ratio.
#[derive(Debug, Clone, PartialEq)]
pub struct ApproximantDiagnostics {
    pub witness: RepetitionWitness,
    pub approximant: Option<QuadraticApproximant>,
    /// Why no approximant is attached.
    pub degenerate: Option<String>,
    /// The surd expansion reproduces `a_1 … a_r` and the period.
    pub expansion_verified: bool,
    /// Enclosure of `|P_n(α)|`.
    pub p_at_alpha: Option<Enclosure>,
    /// Enclosure of `|q_s α − p_s|`.
    pub convergent_gap: Enclosure,
    /// `|q_s α − p_s| ≤ 1/q_s` on the whole enclosure.
    pub convergent_gap_ok: bool,
    /// For pure squares: `|P_n(α)| < q_s^{-2}` on the whole enclosure.
    pub below_inverse_square: Option<bool>,
    pub q_r: BigInt,
    pub q_r_s: BigInt,
    /// `q_{r + ⌊w s⌋}`.
    pub q_r_ws: BigInt,
    /// Upper end of `|P_n(α)|` divided by `q_r q_{r+s} q_{r+⌊ws⌋}^{-2}`.
    pub monitored_ratio: Option<f64>,
}

impl Serialize for ApproximantDiagnostics {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("ApproximantDiagnostics", 12)?;
        st.serialize_field("witness", &self.witness)?;
        st.serialize_field("approximant", &self.approximant)?;
        st.serialize_field("degenerate", &self.degenerate)?;
        st.serialize_field("expansion_verified", &self.expansion_verified)?;
        st.serialize_field("p_at_alpha", &self.p_at_alpha)?;
        st.serialize_field("convergent_gap", &self.convergent_gap)?;
        st.serialize_field("convergent_gap_ok", &self.convergent_gap_ok)?;
        st.serialize_field("below_inverse_square", &self.below_inverse_square)?;
        st.serialize_field("q_r", &ser::bigint(&self.q_r))?;
        st.serialize_field("q_r_s", &ser::bigint(&self.q_r_s))?;
        st.serialize_field("q_r_ws", &ser::bigint(&self.q_r_ws))?;
        st.serialize_field("monitored_ratio", &self.monitored_ratio.map(Approx::new))?;
        st.end()
    }
}

fn ln_rational(x: &BigRational) -> Option<f64> {
    x.is_positive()
        .then(|| ln_big(x.numer()) - ln_big(x.denom()))
}

fn inverse_square(q: &BigInt) -> BigRational {
    BigRational::new(BigInt::from(1), q * q)
}

/// Diagnostics for one witness `U V^{w}` of the word with convergent table
/// `table`. `w` is the exponent of the condition being certified.
pub fn approximant_gap_report(
    table: &ConvergentTable,
    wit: &RepetitionWitness,
    w: Rational,
) -> Result<ApproximantDiagnostics, CriteriaError> {
    let n = table.len();
    let (r, s) = (wit.r, wit.s);
    if s == 0 || wit.len() > n {
        return Err(CriteriaError::Parameter(format!(
            "witness (r={r}, s={s}, m={}) does not fit a prefix of length {n}",
            wit.m
        )));
    }
    let ws = (w * Rational::from_integer(s as u64)).to_integer() as usize;
    let r_ws = (r + ws).min(n);
    // enclosure depth: well past the point where α and α_n separate
    let level = (2 * wit.len() + 8).min(n - 1).max(s.min(n - 1));
    let alpha = alpha_enclosure(table, level)?;

    let (p_s, q_s) = (table.p(s)?.clone(), table.q(s)?.clone());
    let q_s_r = BigRational::from_integer(q_s.clone());
    let gap = alpha
        .scale(&q_s_r)
        .shift(&BigRational::from_integer(-p_s))
        .abs();
    let convergent_gap_ok = gap.hi <= BigRational::new(BigInt::from(1), q_s.clone());

    let built = if r == 0 {
        build_pn_pure(table, s)
    } else {
        build_pn_preperiodic(table, r, s)
    };
    let q_r = table.q(r)?.clone();
    let q_r_s = table.q(r + s)?.clone();
    let q_r_ws = table.q(r_ws)?.clone();
    let mut out = ApproximantDiagnostics {
        witness: *wit,
        approximant: None,
        degenerate: None,
        expansion_verified: false,
        p_at_alpha: None,
        convergent_gap: gap,
        convergent_gap_ok,
        below_inverse_square: None,
        q_r,
        q_r_s,
        q_r_ws,
        monitored_ratio: None,
    };
    let ap = match built {
        Ok(ap) => ap,
        Err(CfError::Degenerate { poly, kind }) => {
            out.degenerate = Some(format!("{poly}: {kind}"));
            return Ok(out);
        }
        Err(e) => return Err(e.into()),
    };
    let digits = table.digits();
    let expected = SurdExpansion::canonical(
        digits[..r].iter().map(|&a| BigInt::from(a)).collect(),
        digits[r..r + s].iter().map(|&a| BigInt::from(a)).collect(),
    );
    out.expansion_verified = surd_cf_expansion(&ap.root, 4 * (r + s) + 16)
        .map(|e| e == expected)
        .unwrap_or(false);
    let p_alpha = evaluate_poly_enclosure(&ap.poly, &alpha).abs();
    if r == 0 && wit.exponent() >= Rational::from_integer(2) {
        out.below_inverse_square = Some(p_alpha.hi < inverse_square(&q_s));
    }
    out.monitored_ratio = if p_alpha.hi.is_zero() {
        Some(0.0)
    } else {
        ln_rational(&p_alpha.hi).map(|lhs| {
            let bound = ln_big(&out.q_r) + ln_big(&out.q_r_s) - 2.0 * ln_big(&out.q_r_ws);
            (lhs - bound).exp()
        })
    };
    out.p_at_alpha = Some(p_alpha);
    out.approximant = Some(ap);
    Ok(out)
}

/// Parameters echoed in a report.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Params {
    pub w: Option<Rational>,
    pub wprime: Option<Rational>,
}

impl Serialize for Params {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        use serde::ser::SerializeStruct;
        let mut st = s.serialize_struct("Params", 2)?;
        st.serialize_field("w", &self.w.map(|r| ser::ratio(&r)))?;
        st.serialize_field("wprime", &self.wprime.map(|r| ser::ratio(&r)))?;
        st.end()
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CriterionReport {
    pub theorem: TheoremId,
    pub params: Params,
    #[serde(rename = "N")]
    pub n: usize,
    pub min_witnesses: usize,
    pub witnesses: Vec<RepetitionWitness>,
    pub growth: Option<GrowthStats>,
    pub periodicity: Option<PeriodicityEvidence>,
    pub inequality: Option<InequalityCheck>,
    pub verdict: Verdict,
    pub diagnostics: Vec<ApproximantDiagnostics>,
    pub notes: Vec<String>,
}

impl CriterionReport {
    /// Re-checks every witness and the periodicity evidence against `prefix`.
    pub fn reverify(&self, prefix: &[Letter]) -> bool {
        self.witnesses.iter().all(|w| w.verify(prefix))
            && self.periodicity.is_none_or(|p| p.verify(prefix))
            && self
                .diagnostics
                .iter()
                .all(|d| d.approximant.is_none() || d.expansion_verified)
    }
}

struct Scan {
    prefix: FiniteWord,
    table: ConvergentTable,
    notes: Vec<String>,
}

fn scan(word: &InfiniteWord, n: usize) -> Result<Scan, CriteriaError> {
    if n < 2 {
        return Err(RepetitionError::ScanTooShort(n).into());
    }
    let prefix = word.prefix(n);
    let mut notes = Vec::new();
    if prefix.len() < n {
        notes.push(format!(
            "word supplies only {} letters, scan bound lowered from {n}",
            prefix.len()
        ));
    }
    if prefix.len() < 2 {
        return Err(RepetitionError::ScanTooShort(prefix.len()).into());
    }
    prefix.check_cf_digits()?;
    let table = convergents(&prefix)?;
    Ok(Scan {
        prefix,
        table,
        notes,
    })
}

fn growth(table: &ConvergentTable) -> Result<GrowthStats, CriteriaError> {
    growth_stats(table, table.len()).map_err(|e| CriteriaError::GrowthGate(e.to_string()))
}

fn diagnostics(
    sc: &mut Scan,
    witnesses: &[RepetitionWitness],
    w: Rational,
    cap: usize,
) -> Result<Vec<ApproximantDiagnostics>, CriteriaError> {
    if witnesses.len() > cap {
        sc.notes.push(format!(
            "diagnostics limited to the first {cap} of {} witnesses",
            witnesses.len()
        ));
    }
    witnesses
        .iter()
        .take(cap)
        .map(|wit| approximant_gap_report(&sc.table, wit, w))
        .collect()
}

/// Best exponent among one witness per root length: the `k`-th largest
/// `(s + m)/s` with `m ≥ 1`, and the witnesses reaching it.
fn best_exponent(prefix: &[Letter], k: usize) -> Option<(Rational, Vec<RepetitionWitness>)> {
    let z = z_array(prefix);
    let n = prefix.len();
    let mut all: Vec<RepetitionWitness> = (1..n)
        .filter(|&s| z[s] >= 1)
        .map(|s| RepetitionWitness {
            r: 0,
            s,
            m: z[s],
            truncated: s + z[s] == n,
        })
        .collect();
    if k == 0 || all.len() < k {
        return None;
    }
    let mut exps: Vec<Rational> = all.iter().map(|w| w.exponent()).collect();
    exps.sort_unstable_by(|a, b| b.cmp(a));
    let w = exps[k - 1];
    all.retain(|x| x.exponent() >= w);
    Some((w, all))
}

fn verdict(
    periodicity: &Option<PeriodicityEvidence>,
    enough: bool,
    gates: bool,
) -> Verdict {
    if periodicity.is_some() {
        Verdict::EvidenceQuadraticOrRational
    } else if enough && gates {
        Verdict::EvidenceTranscendental
    } else {
        Verdict::Inconclusive
    }
}

/// Evidence for the first criterion: prefix powers `V^w` with growing `|V|`.
///
/// [`T1Mode::AtLeastSquare`] looks for `w = 2`. [`T1Mode::AboveOne`] picks the
/// largest `w` reached by `min_witnesses` distinct roots and also requires
/// the growth estimates to look bounded.
pub fn certify_theorem1(
    word: &InfiniteWord,
    cfg: &CertifyConfig,
    mode: T1Mode,
) -> Result<CriterionReport, CriteriaError> {
    let mut sc = scan(word, cfg.n)?;
    let periodicity = detect_eventual_period(&sc.prefix);
    let (theorem, w, witnesses, growth, gates) = match mode {
        T1Mode::AtLeastSquare => {
            let w = Rational::from_integer(2);
            let wits = detect_star(&sc.prefix, w)?;
            (TheoremId::T1a, Some(w), wits, None, true)
        }
        T1Mode::AboveOne => {
            let g = growth(&sc.table)?;
            let bounded = g.bounded_evidence;
            if !bounded {
                sc.notes.push("growth of q_ℓ^{1/ℓ} does not look bounded".into());
            }
            match best_exponent(&sc.prefix, cfg.min_witnesses) {
                Some((w, wits)) => (TheoremId::T1b, Some(w), wits, Some(g), bounded),
                None => (TheoremId::T1b, None, Vec::new(), Some(g), bounded),
            }
        }
    };
    let diags = match w {
        Some(w) => diagnostics(&mut sc, &witnesses, w, cfg.max_diagnostics)?,
        None => Vec::new(),
    };
    let enough = witnesses.len() >= cfg.min_witnesses;
    Ok(CriterionReport {
        theorem,
        params: Params { w, wprime: None },
        n: sc.prefix.len(),
        min_witnesses: cfg.min_witnesses,
        verdict: verdict(&periodicity, enough, gates),
        witnesses,
        growth,
        periodicity,
        inequality: None,
        diagnostics: diags,
        notes: sc.notes,
    })
}

fn certify_star_star(
    word: &InfiniteWord,
    cfg: &CertifyConfig,
    w: Rational,
    wprime: Rational,
    theorem: TheoremId,
) -> Result<CriterionReport, CriteriaError> {
    let mut sc = scan(word, cfg.n)?;
    let periodicity = detect_eventual_period(&sc.prefix);
    let g = growth(&sc.table)?;
    let ineq = check_inequality_1(w, wprime, g.big_m, g.small_m)?;
    let mut witnesses: Vec<RepetitionWitness> = detect_star_star(&sc.prefix, w, wprime)?
        .into_iter()
        .map(|wit| normalize_witness(&sc.prefix, wit))
        .collect();
    witnesses.sort_by_key(|x| (x.s, x.r));
    witnesses.dedup();
    let mut gates = g.bounded_evidence;
    if !g.bounded_evidence {
        sc.notes.push("growth of q_ℓ^{1/ℓ} does not look bounded".into());
    }
    match theorem {
        TheoremId::C1 => {
            let spread = g.big_m / g.small_m - 1.0;
            let converges = spread <= cfg.convergence_tolerance;
            if !converges {
                sc.notes.push(format!(
                    "M̂/m̂ − 1 = {spread:.4} exceeds the convergence tolerance {}",
                    cfg.convergence_tolerance
                ));
            }
            let clears = w > wprime + Rational::from_integer(1);
            if !clears {
                sc.notes.push("w does not exceed w′ + 1".into());
            }
            gates &= converges && clears;
        }
        _ => {
            let ok = ineq.holds && ineq.margin >= cfg.safety_margin;
            if !ok {
                sc.notes.push(format!(
                    "growth inequality margin {:.4} is below the safety margin {}",
                    ineq.margin, cfg.safety_margin
                ));
            }
            gates &= ok;
        }
    }
    let diags = diagnostics(&mut sc, &witnesses, w, cfg.max_diagnostics)?;
    let enough = witnesses.len() >= cfg.min_witnesses;
    Ok(CriterionReport {
        theorem,
        params: Params {
            w: Some(w),
            wprime: Some(wprime),
        },
        n: sc.prefix.len(),
        min_witnesses: cfg.min_witnesses,
        verdict: verdict(&periodicity, enough, gates),
        witnesses,
        growth: Some(g),
        periodicity,
        inequality: Some(ineq),
        diagnostics: diags,
        notes: sc.notes,
    })
}

fn check_params(w: Rational) -> Result<(), CriteriaError> {
    if w <= Rational::from_integer(1) {
        return Err(CriteriaError::Parameter(format!(
            "w must exceed 1, got {}",
            ser::ratio(&w)
        )));
    }
    Ok(())
}

/// Evidence for the second criterion: normalized witnesses `U V^w` with
/// `|U|/|V| ≤ w′`, gated by the growth inequality with a safety margin.
pub fn certify_theorem2(
    word: &InfiniteWord,
    cfg: &CertifyConfig,
    w: Rational,
    wprime: Rational,
) -> Result<CriterionReport, CriteriaError> {
    check_params(w)?;
    certify_star_star(word, cfg, w, wprime, TheoremId::T2)
}

/// Like [`certify_theorem2`] but gated by `w > w′ + 1` and by `M̂` and `m̂`
/// agreeing within the convergence tolerance.
pub fn certify_corollary1(
    word: &InfiniteWord,
    cfg: &CertifyConfig,
    w: Rational,
    wprime: Rational,
) -> Result<CriterionReport, CriteriaError> {
    check_params(w)?;
    certify_star_star(word, cfg, w, wprime, TheoremId::C1)
}
