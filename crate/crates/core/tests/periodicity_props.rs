use proptest::prelude::*;

use selfpow::digits::BaseProfile;
use selfpow::periodicity::{
    breaks_at, divisors, empirical_period, first_predicate_mismatch, first_tail_violation,
    is_periodic_from_start, period_report, preperiod_start, Window,
};

#[test]
fn predicate_theory_and_measurement_agree_up_to_200() {
    for b in 2..=200u64 {
        let p = BaseProfile::new(b).unwrap();
        let h = p.cap_h();
        let start = preperiod_start(&p);
        assert_eq!(
            first_predicate_mismatch(&p, 64.max(u64::from(p.max_exponent()))),
            None,
            "b={b}"
        );
        assert_eq!(first_tail_violation(&p, start, 3 * h), None, "b={b}");
        assert_eq!(is_periodic_from_start(&p), start == 1, "b={b}");
        let report = period_report(b, Window::from_start(3 * h + start).unwrap()).unwrap();
        assert!(report.is_consistent(), "b={b}: {:?}", report.issues);
        assert_eq!(report.empirical_period, h);
        for &(t, n) in &report.refutations {
            assert_ne!(p.last_digit(n).unwrap(), p.last_digit(n + t).unwrap());
        }
        assert_eq!(report.refutations.len(), divisors(h).len() - 1);
    }
}

#[test]
fn breaks_are_below_max_exponent() {
    for b in [
        8u64,
        16,
        32,
        64,
        128,
        1024,
        3u64.pow(7),
        2 * 3u64.pow(5),
        1 << 31,
    ] {
        let p = BaseProfile::new(b).unwrap();
        for m in 1..=64 {
            if breaks_at(m, &p).unwrap() {
                assert!(m < u64::from(p.max_exponent()), "b={b} M={m}");
            }
        }
    }
}

#[test]
fn larger_window_start_is_clamped() {
    let p = BaseProfile::new(128).unwrap();
    let m = empirical_period(&p, Window::new(5, 5 + 3 * 128).unwrap()).unwrap();
    assert_eq!((m.period, m.start), (128, 7));
}

proptest! {
    #[test]
    fn predicate_matches_sequence_for_random_bases(b in 2u64..1_000_000, m in 1u64..=64) {
        let p = BaseProfile::new(b).unwrap();
        let h = p.cap_h();
        let differs = p.last_digit(m).unwrap() != p.last_digit(m + h).unwrap();
        prop_assert_eq!(breaks_at(m, &p).unwrap(), differs);
    }

    #[test]
    fn h_is_a_period_from_preperiod_start(b in 2u64..1_000_000, offset in 0u64..10_000) {
        let p = BaseProfile::new(b).unwrap();
        let n = preperiod_start(&p) + offset;
        prop_assert_eq!(p.last_digit(n).unwrap(), p.last_digit(n + p.cap_h()).unwrap());
    }
}
