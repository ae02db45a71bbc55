use selfpow::digits::{BaseProfile, Oracle};
use selfpow::lnz_analysis::{conjecture_scan, empirical_lnz_period, nonperiodicity_scan, Verdict};

#[test]
fn scan_is_identical_across_thread_counts() {
    let run = |threads: usize| {
        rayon::ThreadPoolBuilder::new()
            .num_threads(threads)
            .build()
            .unwrap()
            .install(|| conjecture_scan(2, 80, 60, 20_000).unwrap())
    };
    let one = run(1);
    assert_eq!(one, run(4));
    assert_eq!(one, run(7));
}

#[test]
fn tower_bases_miss_exactly_multiples_of_their_period() {
    let (t_max, n_max) = (300, 20_000);
    for b in [2u64, 4, 16, 256, 65536] {
        let p = BaseProfile::new(b).unwrap();
        let period = empirical_lnz_period(&p, n_max)
            .unwrap()
            .expect("towers are periodic");
        assert_eq!(b % period, 0);
        let table = nonperiodicity_scan(&p, t_max, n_max).unwrap();
        let multiples: Vec<u64> = (1..=t_max).filter(|t| t % period == 0).collect();
        assert_eq!(table.none_found(), multiples, "b={b}, period {period}");
    }
}

#[test]
fn witnesses_revalidate_against_oracle() {
    let oracle = Oracle::default();
    for b in [3u64, 5, 6, 7, 8, 9, 10, 25, 27, 30, 12, 100] {
        let p = BaseProfile::new(b).unwrap();
        let table = nonperiodicity_scan(&p, 100, 100_000).unwrap();
        assert!(table.all_witnessed(), "b={b}: {:?}", table.none_found());
        assert!(
            table.revalidate(&p, &oracle, 5_000).unwrap().is_empty(),
            "b={b}"
        );
    }
}

#[test]
fn prime_powers_with_non_power_exponent_are_refuted() {
    // p^t with t not a power of p: every candidate period should fall.
    for b in [8u64, 32, 64, 9, 81, 25, 125, 49] {
        let table = nonperiodicity_scan(&BaseProfile::new(b).unwrap(), 100, 100_000).unwrap();
        assert_eq!(table.verdict(), Verdict::WitnessedNonperiodic, "b={b}");
    }
}
