//! Complexity and recurrence analytics against naive enumeration.

use std::collections::HashSet;

use cfstammer::repetition::detect_eventual_period;
use cfstammer::subshift::{complexity, morse_hedlund_gate, recurrence_stats, theorem5_witness};
use cfstammer::word::{InfiniteWord, Letter, Rational};
use proptest::prelude::*;

fn naive_count(w: &[Letter], n: usize) -> usize {
    w.windows(n).collect::<HashSet<_>>().len()
}

fn naive_worst_gap(w: &[Letter], n: usize) -> Option<usize> {
    let mut worst = None;
    for f in w.windows(n).collect::<HashSet<_>>() {
        let pos: Vec<usize> = (0..=w.len() - n).filter(|&i| &w[i..i + n] == f).collect();
        for p in pos.windows(2) {
            worst = worst.max(Some(p[1] - p[0]));
        }
    }
    worst
}

proptest! {
    #[test]
    fn complexity_matches_enumeration(w in prop::collection::vec(0u32..3, 1..300), n_max in 1usize..16) {
        let prof = complexity(&w, n_max);
        for n in 1..=n_max {
            let expect = if n <= w.len() { naive_count(&w, n) } else { 0 };
            prop_assert_eq!(prof.get(n), Some(expect));
        }
    }

    #[test]
    fn complexity_is_monotone_on_exact_range(w in prop::collection::vec(0u32..2, 20..300)) {
        // p(n + 1) ≥ p(n) as long as every factor of length n extends
        let prof = complexity(&w, 10);
        for n in 1..prof.exact_limit().min(10) {
            prop_assert!(prof.get(n + 1).unwrap() + 1 >= prof.get(n).unwrap());
        }
    }

    #[test]
    fn gate_fires_on_periodic_words(pre in prop::collection::vec(0u32..3, 0..8),
                                    period in prop::collection::vec(0u32..3, 1..5),
                                    reps in 20usize..40) {
        let mut w = pre;
        for _ in 0..reps {
            w.extend_from_slice(&period);
        }
        let prof = complexity(&w, 64.min(w.len()));
        let gate = morse_hedlund_gate(&prof, &w);
        prop_assert!(gate.fired_at.is_some());
        prop_assert!(gate.agrees);
        prop_assert!(detect_eventual_period(&w).is_some());
    }

    #[test]
    fn gate_silent_on_sturmian(len in 40usize..400) {
        // a prefix shows every factor of length n once n is small against N
        let w = InfiniteWord::fibonacci().prefix(len);
        let prof = complexity(&w, len / 4);
        prop_assert_eq!(morse_hedlund_gate(&prof, &w).fired_at, None);
    }

    #[test]
    fn worst_gaps_match(w in prop::collection::vec(0u32..2, 2..120), n_max in 1usize..6) {
        let st = recurrence_stats(&w, n_max);
        for row in &st.rows {
            if row.n <= w.len() {
                prop_assert_eq!(row.worst_gap, naive_worst_gap(&w, row.n));
            }
        }
    }

    #[test]
    fn theorem5_meets_bound(k in 2usize..5, n in 1usize..40) {
        let w = InfiniteWord::fibonacci().prefix(6 * 40);
        let wit = theorem5_witness(&w, k, n).unwrap();
        prop_assert!(wit.verify(&w));
        prop_assert!(wit.exponent() >= Rational::new(k as u64 + 1, k as u64));
    }
}

#[test]
fn sturmian_complexity() {
    let w = InfiniteWord::fibonacci().prefix(5000);
    let prof = complexity(&w, 30);
    for n in 1..=30 {
        assert_eq!(prof.get(n), Some(n + 1));
    }
}
