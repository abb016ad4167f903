//! Gates of the certifiers.

use cfstammer::criteria::{
    certify_corollary1, certify_theorem1, certify_theorem2, check_inequality_1, CertifyConfig,
    T1Mode, Verdict,
};
use cfstammer::word::{Coding, InfiniteWord, Morphism, Rational};
use proptest::prelude::*;

fn fibonacci_cf() -> InfiniteWord {
    let phi = Coding::parse("0=>1;1=>2").unwrap();
    cfstammer::word::coded_word(InfiniteWord::fixed_point(Morphism::fibonacci(), 0).unwrap(), phi)
        .unwrap()
}

proptest! {
    #[test]
    fn equal_growth_reduces_to_corollary(m in 1.01f64..50.0, wn in 2u64..40, wd in 1u64..8, wpn in 0u64..20, wpd in 1u64..8) {
        let w = Rational::new(wn + wd, wd);
        let wp = Rational::new(wpn, wpd);
        let chk = check_inequality_1(w, wp, m, m).unwrap();
        let wf = *w.numer() as f64 / *w.denom() as f64;
        let wpf = *wp.numer() as f64 / *wp.denom() as f64;
        prop_assert!((chk.threshold - (wpf + 1.0)).abs() < 1e-12);
        if (wf - wpf - 1.0).abs() > 1e-9 {
            prop_assert_eq!(chk.holds, wf > wpf + 1.0);
        }
    }

    #[test]
    fn margin_monotone_in_parameters(big in 1.5f64..20.0, ratio in 0.3f64..1.0, wn in 2u64..30, wp in 0u64..10) {
        let small = 1.0 + (big - 1.0) * ratio;
        let w = Rational::new(wn, 2);
        let w2 = Rational::new(wn + 1, 2);
        let wp1 = Rational::new(wp + 1, 1);
        let wp0 = Rational::new(wp, 1);
        prop_assume!(w > Rational::from_integer(1));
        let base = check_inequality_1(w, wp1, big, small).unwrap();
        let more_w = check_inequality_1(w2, wp1, big, small).unwrap();
        let less_wp = check_inequality_1(w, wp0, big, small).unwrap();
        prop_assert!(more_w.margin >= base.margin);
        prop_assert!(less_wp.margin >= base.margin - 1e-12);
        prop_assert!(!base.holds || more_w.holds);
        prop_assert!(!base.holds || less_wp.holds);
    }

    #[test]
    fn threshold_grows_with_spread(m in 1.1f64..10.0, spread in 0.0f64..5.0) {
        let w = Rational::new(3, 1);
        let wp = Rational::new(1, 2);
        let a = check_inequality_1(w, wp, m, m).unwrap();
        let b = check_inequality_1(w, wp, m + spread, m).unwrap();
        prop_assert!(b.threshold >= a.threshold - 1e-12);
    }
}

#[test]
fn growth_gate_errors() {
    let w = Rational::new(3, 1);
    let wp = Rational::new(1, 1);
    assert!(check_inequality_1(w, wp, 2.0, 1.0).unwrap_err().to_string().contains("growth gate"));
    assert!(check_inequality_1(w, wp, 1.5, 2.0).is_err());
}

#[test]
fn corollary_agrees_with_theorem2() {
    // whenever the corollary certifies, the full inequality also holds
    let word = fibonacci_cf();
    let cfg = CertifyConfig::with_n(3000);
    for (w, wp) in [((5, 2), (0, 1)), ((3, 1), (1, 1)), ((2, 1), (1, 2))] {
        let (w, wp) = (Rational::new(w.0, w.1), Rational::new(wp.0, wp.1));
        let c = certify_corollary1(&word, &cfg, w, wp).unwrap();
        let t = certify_theorem2(&word, &cfg, w, wp).unwrap();
        if c.verdict == Verdict::EvidenceTranscendental {
            assert!(t.inequality.unwrap().holds);
        }
        assert!(c.reverify(&word.prefix(3000)));
    }
}

#[test]
fn periodic_input_is_flagged() {
    let word = InfiniteWord::periodic(vec![1, 2]).unwrap();
    let cfg = CertifyConfig::with_n(1000);
    let rep = certify_theorem1(&word, &cfg, T1Mode::AtLeastSquare).unwrap();
    assert_eq!(rep.verdict, Verdict::EvidenceQuadraticOrRational);
    let p = rep.periodicity.unwrap();
    assert_eq!((p.preperiod, p.period), (0, 2));
    let rep = certify_theorem2(&word, &cfg, Rational::new(2, 1), Rational::new(1, 1)).unwrap();
    assert_eq!(rep.verdict, Verdict::EvidenceQuadraticOrRational);
}

#[test]
fn fibonacci_certified() {
    let rep = certify_theorem1(&fibonacci_cf(), &CertifyConfig::with_n(2000), T1Mode::AtLeastSquare)
        .unwrap();
    assert_eq!(rep.verdict, Verdict::EvidenceTranscendental);
    assert!(rep.witnesses.len() >= 5);
    assert!(rep.reverify(&fibonacci_cf().prefix(2000)));
}
