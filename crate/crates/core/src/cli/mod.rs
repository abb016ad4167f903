//! Command-line front end. `main.rs` only initializes logging and maps the
//! result of [`run`] to an exit code.

mod source;

pub use source::{parse_letters, SourceArgs};

use std::path::PathBuf;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use log::info;
use serde::Serialize;
use thiserror::Error;

use crate::criteria::{
    certify_corollary1, certify_theorem1, certify_theorem2, CertifyConfig, CriteriaError, T1Mode,
    Verdict,
};
use crate::repetition::{
    detect_eventual_period, detect_star, detect_star_star, PeriodicityEvidence, RepetitionError,
    RepetitionWitness,
};
use crate::ser;
use crate::subshift::{
    complexity, complexity_gap_probe, morse_hedlund_gate, recurrence_stats, theorem3_witnesses,
    theorem5_witness, ComplexityProfile, RecurrenceStats, SubshiftError,
};
use crate::word::{Rational, WordError};

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Word(#[from] WordError),
    #[error(transparent)]
    Repetition(#[from] RepetitionError),
    #[error(transparent)]
    Criteria(#[from] CriteriaError),
    #[error(transparent)]
    Subshift(#[from] SubshiftError),
    #[error("{0}")]
    Io(String),
    #[error("{0}")]
    Usage(String),
}

#[derive(Debug, Parser)]
#[command(name = "cfstammer", version, about = "Repetitions in continued fractions and the transcendence criteria they feed")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a prefix of the word.
    Gen(GenArgs),
    /// Find prefix repetitions.
    #[command(subcommand)]
    Detect(DetectCmd),
    /// Build a transcendence certificate; the exit code encodes the verdict.
    #[command(subcommand)]
    Certify(CertifyCmd),
    /// Complexity and recurrence analytics.
    #[command(subcommand)]
    Subshift(SubshiftCmd),
}

#[derive(Debug, Clone, Args)]
pub struct Output {
    /// Prefix length N.
    #[arg(short = 'n', long = "len", default_value_t = 10_000)]
    pub n: usize,
    /// Write to this file instead of stdout.
    #[arg(long, value_name = "PATH")]
    pub out: Option<PathBuf>,
    /// JSON output.
    #[arg(long, conflicts_with = "csv")]
    pub json: bool,
    /// CSV output.
    #[arg(long)]
    pub csv: bool,
}

#[derive(Debug, Args)]
pub struct GenArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: Output,
    /// Require every letter to be a valid partial quotient (at least 1).
    #[arg(long)]
    pub cf: bool,
}

/// Exact rational given as `p/q` or `p`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct RatArg(pub Rational);

impl FromStr for RatArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        ser::parse_ratio(s).map(RatArg)
    }
}

#[derive(Debug, Args)]
pub struct DetectArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: Output,
    /// Exponent w.
    #[arg(long, default_value = "2")]
    pub w: RatArg,
    #[arg(long, default_value_t = 3)]
    pub min_witnesses: usize,
}

#[derive(Debug, Subcommand)]
pub enum DetectCmd {
    /// Prefixes `V^w`.
    Star(DetectArgs),
    /// Prefixes `U V^w` with `|U|/|V| ≤ w′`.
    Starstar {
        #[command(flatten)]
        args: DetectArgs,
        /// Ratio bound w′.
        #[arg(long, default_value = "1")]
        wprime: RatArg,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum ModeArg {
    /// `w = 2`.
    Square,
    /// Best `w > 1`, with bounded growth.
    AboveOne,
}

#[derive(Debug, Args)]
pub struct CertifyCommon {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: Output,
    #[arg(long, default_value_t = 3)]
    pub min_witnesses: usize,
    /// Witnesses that get approximant diagnostics.
    #[arg(long, default_value_t = 32)]
    pub max_diagnostics: usize,
}

#[derive(Debug, Subcommand)]
pub enum CertifyCmd {
    /// Condition `(*)_w`.
    T1 {
        #[command(flatten)]
        common: CertifyCommon,
        #[arg(long, value_enum, default_value = "square")]
        mode: ModeArg,
    },
    /// Condition `(**)_{w,w′}` under the growth inequality.
    T2 {
        #[command(flatten)]
        common: CertifyCommon,
        #[arg(long, default_value = "2")]
        w: RatArg,
        #[arg(long, default_value = "1")]
        wprime: RatArg,
        /// Gate on `w > w′ + 1` and convergent growth instead.
        #[arg(long)]
        corollary: bool,
        #[arg(long, default_value_t = 0.05)]
        safety_margin: f64,
        #[arg(long, default_value_t = 0.02)]
        convergence_tolerance: f64,
    },
}

/// `auto` or a positive integer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KArg {
    Auto,
    Fixed(usize),
}

impl FromStr for KArg {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if s == "auto" {
            return Ok(KArg::Auto);
        }
        match s.parse::<usize>() {
            Ok(k) if k >= 1 => Ok(KArg::Fixed(k)),
            _ => Err(format!("expected `auto` or a positive integer, found {s:?}")),
        }
    }
}

#[derive(Debug, Args)]
pub struct AnalyticsArgs {
    #[command(flatten)]
    pub source: SourceArgs,
    #[command(flatten)]
    pub output: Output,
    /// Largest factor length.
    #[arg(long, default_value_t = 64)]
    pub n_max: usize,
}

#[derive(Debug, Subcommand)]
pub enum SubshiftCmd {
    /// Factor counts p(n) and the Morse–Hedlund gate.
    Complexity(AnalyticsArgs),
    /// Trend of p(n) − n.
    Gap(AnalyticsArgs),
    /// Worst return gaps and the recurrence constant.
    Recur {
        #[command(flatten)]
        args: AnalyticsArgs,
        #[arg(short = 'k', long, default_value = "auto")]
        k: KArg,
    },
    /// Prefix powers from linear recurrence.
    Thm5 {
        #[command(flatten)]
        args: AnalyticsArgs,
        #[arg(short = 'k', long, default_value = "auto")]
        k: KArg,
        /// Prefix lengths n; default: powers of two that fit.
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
    },
    /// Prefix powers of a morphic word.
    Thm3 {
        #[command(flatten)]
        source: SourceArgs,
        #[command(flatten)]
        output: Output,
        #[arg(long, default_value_t = 8)]
        n_max: usize,
    },
}

/// Rendered output plus the exit code.
struct Emitted {
    text: String,
    code: i32,
}

fn json<T: Serialize>(value: &T) -> Result<String, CliError> {
    let mut s = serde_json::to_string_pretty(value).map_err(|e| CliError::Io(e.to_string()))?;
    s.push('\n');
    Ok(s)
}

fn csv_text<R: Serialize>(rows: &[R]) -> Result<String, CliError> {
    let mut w = csv::Writer::from_writer(Vec::new());
    for r in rows {
        w.serialize(r).map_err(|e| CliError::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| CliError::Io(e.to_string()))
}

fn write_out(out: &Output, text: &str) -> Result<(), CliError> {
    match &out.out {
        Some(path) => std::fs::write(path, text)
            .map_err(|e| CliError::Io(format!("{}: {e}", path.display()))),
        None => {
            use std::io::Write;
            let mut stdout = std::io::stdout().lock();
            stdout
                .write_all(text.as_bytes())
                .map_err(|e| CliError::Io(e.to_string()))
        }
    }
}

fn no_csv(out: &Output, what: &str) -> Result<(), CliError> {
    if out.csv {
        Err(CliError::Usage(format!("{what} has no CSV form")))
    } else {
        Ok(())
    }
}

fn positive(name: &str, v: usize) -> Result<(), CliError> {
    if v == 0 {
        Err(CliError::Usage(format!("{name} must be positive")))
    } else {
        Ok(())
    }
}

/// Parses arguments, runs the command and writes its output. Returns the
/// process exit code.
pub fn run(cli: Cli) -> Result<i32, CliError> {
    let (emitted, out) = match cli.command {
        Command::Gen(a) => (cmd_gen(&a)?, a.output),
        Command::Detect(DetectCmd::Star(a)) => (cmd_detect(&a, None)?, a.output),
        Command::Detect(DetectCmd::Starstar { args, wprime }) => {
            (cmd_detect(&args, Some(wprime.0))?, args.output)
        }
        Command::Certify(c) => {
            let out = match &c {
                CertifyCmd::T1 { common, .. } | CertifyCmd::T2 { common, .. } => {
                    common.output.clone()
                }
            };
            (cmd_certify(&c)?, out)
        }
        Command::Subshift(s) => {
            let out = match &s {
                SubshiftCmd::Complexity(a) | SubshiftCmd::Gap(a) => a.output.clone(),
                SubshiftCmd::Recur { args, .. } | SubshiftCmd::Thm5 { args, .. } => {
                    args.output.clone()
                }
                SubshiftCmd::Thm3 { output, .. } => output.clone(),
            };
            (cmd_subshift(&s)?, out)
        }
    };
    write_out(&out, &emitted.text)?;
    Ok(emitted.code)
}

fn cmd_gen(a: &GenArgs) -> Result<Emitted, CliError> {
    no_csv(&a.output, "gen")?;
    let word = a.source.build()?.prefix(a.output.n);
    if a.cf {
        word.check_cf_digits()?;
    }
    let text = if a.output.json {
        json(&word.letters())?
    } else {
        format!("{word}\n")
    };
    Ok(Emitted { text, code: 0 })
}

#[derive(Serialize)]
#[serde(rename_all = "snake_case")]
enum DetectVerdict {
    Periodic,
    Evidenced,
    Insufficient,
}

#[derive(Serialize)]
struct DetectReport {
    condition: &'static str,
    #[serde(rename = "N")]
    n: usize,
    w: String,
    wprime: Option<String>,
    min_witnesses: usize,
    witnesses: Vec<RepetitionWitness>,
    periodicity: Option<PeriodicityEvidence>,
    verdict: DetectVerdict,
}

#[derive(Serialize)]
struct WitnessRow {
    r: usize,
    s: usize,
    m: usize,
    exponent: String,
    ratio: String,
    truncated: bool,
}

fn cmd_detect(a: &DetectArgs, wprime: Option<Rational>) -> Result<Emitted, CliError> {
    if a.output.n < 2 {
        return Err(CliError::Usage("-n must be at least 2".into()));
    }
    let prefix = a.source.build()?.prefix(a.output.n);
    info!("scanning {} letters", prefix.len());
    let witnesses = match wprime {
        None => detect_star(&prefix, a.w.0)?,
        Some(wp) => detect_star_star(&prefix, a.w.0, wp)?,
    };
    let periodicity = detect_eventual_period(&prefix);
    if a.output.csv {
        let rows: Vec<WitnessRow> = witnesses
            .iter()
            .map(|w| WitnessRow {
                r: w.r,
                s: w.s,
                m: w.m,
                exponent: ser::ratio(&w.exponent()),
                ratio: ser::ratio(&w.ratio()),
                truncated: w.truncated,
            })
            .collect();
        return Ok(Emitted {
            text: csv_text(&rows)?,
            code: 0,
        });
    }
    let verdict = if periodicity.is_some() {
        DetectVerdict::Periodic
    } else if witnesses.len() >= a.min_witnesses {
        DetectVerdict::Evidenced
    } else {
        DetectVerdict::Insufficient
    };
    let report = DetectReport {
        condition: if wprime.is_some() { "starstar" } else { "star" },
        n: prefix.len(),
        w: ser::ratio(&a.w.0),
        wprime: wprime.map(|r| ser::ratio(&r)),
        min_witnesses: a.min_witnesses,
        witnesses,
        periodicity,
        verdict,
    };
    Ok(Emitted {
        text: json(&report)?,
        code: 0,
    })
}

fn verdict_code(v: Verdict) -> i32 {
    match v {
        Verdict::EvidenceTranscendental => 0,
        Verdict::EvidenceQuadraticOrRational => 2,
        Verdict::Inconclusive => 3,
    }
}

fn cmd_certify(c: &CertifyCmd) -> Result<Emitted, CliError> {
    let common = match c {
        CertifyCmd::T1 { common, .. } | CertifyCmd::T2 { common, .. } => common,
    };
    no_csv(&common.output, "certify")?;
    positive("--min-witnesses", common.min_witnesses)?;
    let word = common.source.build()?;
    let mut cfg = CertifyConfig::with_n(common.output.n);
    cfg.min_witnesses = common.min_witnesses;
    cfg.max_diagnostics = common.max_diagnostics;
    let report = match c {
        CertifyCmd::T1 { mode, .. } => {
            let mode = match mode {
                ModeArg::Square => T1Mode::AtLeastSquare,
                ModeArg::AboveOne => T1Mode::AboveOne,
            };
            certify_theorem1(&word, &cfg, mode)?
        }
        CertifyCmd::T2 {
            w,
            wprime,
            corollary,
            safety_margin,
            convergence_tolerance,
            ..
        } => {
            cfg.safety_margin = *safety_margin;
            cfg.convergence_tolerance = *convergence_tolerance;
            if *corollary {
                certify_corollary1(&word, &cfg, w.0, wprime.0)?
            } else {
                certify_theorem2(&word, &cfg, w.0, wprime.0)?
            }
        }
    };
    info!("verdict {:?}", report.verdict);
    Ok(Emitted {
        text: json(&report)?,
        code: verdict_code(report.verdict),
    })
}

#[derive(Serialize)]
struct AnalyticsRow {
    n: usize,
    p_n: usize,
    p_n_minus_n: i64,
    worst_gap: Option<usize>,
    gap_ratio: Option<String>,
}

fn analytics_rows(profile: &ComplexityProfile, stats: &RecurrenceStats) -> Vec<AnalyticsRow> {
    profile
        .iter()
        .zip(&stats.rows)
        .map(|((n, p), g)| AnalyticsRow {
            n,
            p_n: p,
            p_n_minus_n: p as i64 - n as i64,
            worst_gap: g.worst_gap,
            gap_ratio: g.worst_gap.map(|x| format!("{:.6}", x as f64 / n as f64)),
        })
        .collect()
}

fn resolve_k(k: KArg, stats: &RecurrenceStats) -> usize {
    match k {
        KArg::Fixed(k) => k,
        KArg::Auto => stats.suggested_k(),
    }
}

#[derive(Serialize)]
struct Thm5Row {
    n: usize,
    witness: RepetitionWitness,
    bound: String,
    meets_bound: bool,
}

fn cmd_subshift(s: &SubshiftCmd) -> Result<Emitted, CliError> {
    if let SubshiftCmd::Thm3 {
        source,
        output,
        n_max,
    } = s
    {
        no_csv(output, "subshift thm3")?;
        let (sigma, a) = source
            .morphism()?
            .ok_or_else(|| CliError::Usage("thm3 needs --morphism".into()))?;
        let coding = source.coding()?;
        let rep = theorem3_witnesses(&sigma, coding.as_ref(), a, *n_max)?;
        return Ok(Emitted {
            text: json(&rep)?,
            code: 0,
        });
    }
    let (args, k) = match s {
        SubshiftCmd::Complexity(a) | SubshiftCmd::Gap(a) => (a, None),
        SubshiftCmd::Recur { args, k } | SubshiftCmd::Thm5 { args, k, .. } => (args, Some(*k)),
        SubshiftCmd::Thm3 { .. } => unreachable!(),
    };
    positive("--n-max", args.n_max)?;
    let prefix = args.source.build()?.prefix(args.output.n);
    let profile = complexity(&prefix, args.n_max);
    let stats = recurrence_stats(&prefix, args.n_max);
    if args.output.csv {
        if matches!(s, SubshiftCmd::Thm5 { .. }) {
            return Err(CliError::Usage("subshift thm5 has no CSV form".into()));
        }
        return Ok(Emitted {
            text: csv_text(&analytics_rows(&profile, &stats))?,
            code: 0,
        });
    }
    let text = match s {
        SubshiftCmd::Complexity(_) => {
            let gate = morse_hedlund_gate(&profile, &prefix);
            json(&serde_json::json!({ "profile": profile, "gate": gate }))?
        }
        SubshiftCmd::Gap(_) => {
            let gate = morse_hedlund_gate(&profile, &prefix);
            json(&serde_json::json!({ "probe": complexity_gap_probe(&profile), "gate": gate }))?
        }
        SubshiftCmd::Recur { .. } => {
            let k = resolve_k(k.unwrap(), &stats);
            json(&serde_json::json!({ "stats": stats, "k": k }))?
        }
        SubshiftCmd::Thm5 { sizes, .. } => {
            let k = resolve_k(k.unwrap(), &stats);
            let sizes: Vec<usize> = if sizes.is_empty() {
                (0..)
                    .map(|i| 1usize << i)
                    .take_while(|&n| (k + 1) * n <= prefix.len() && n <= args.n_max)
                    .collect()
            } else {
                sizes.clone()
            };
            let bound = Rational::new(k as u64 + 1, k as u64);
            let rows = sizes
                .iter()
                .map(|&n| {
                    theorem5_witness(&prefix, k, n).map(|w| Thm5Row {
                        n,
                        meets_bound: w.exponent() >= bound && w.verify(&prefix),
                        witness: w,
                        bound: ser::ratio(&bound),
                    })
                })
                .collect::<Result<Vec<_>, _>>()?;
            json(&serde_json::json!({ "k": k, "witnesses": rows }))?
        }
        SubshiftCmd::Thm3 { .. } => unreachable!(),
    };
    Ok(Emitted { text, code: 0 })
}
