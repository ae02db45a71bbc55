use num_bigint::BigUint;
use proptest::prelude::*;

use selfpow::digits::{
    last_nonzero_digit_exact, oracle_grid_mismatches, BaseProfile, Oracle, DEFAULT_ORACLE_BOUND,
};

#[test]
fn grid_agrees_with_exact_evaluation() {
    let mismatches = oracle_grid_mismatches(&Oracle::default(), 1500, 100).unwrap();
    assert!(
        mismatches.is_empty(),
        "first mismatches: {:?}",
        &mismatches[..mismatches.len().min(5)]
    );
}

#[test]
fn last_nonzero_equals_last_digit_when_not_divisible() {
    for b in 2..=60u64 {
        let p = BaseProfile::new(b).unwrap();
        for n in 1..=2000u64 {
            let last = p.last_digit(n).unwrap().value();
            let lnz = p.last_nonzero_digit(n).unwrap().value();
            assert!(lnz >= 1 && lnz < b);
            if last != 0 {
                assert_eq!(lnz, last, "b={b} n={n}");
            }
        }
    }
}

#[test]
fn last_digit_is_zero_exactly_when_base_divides() {
    let oracle = Oracle::default();
    for b in [4u64, 6, 8, 12, 18, 30, 36, 72, 100] {
        let p = BaseProfile::new(b).unwrap();
        for n in 1..=300u64 {
            let divisible = (oracle.self_power(n).unwrap() % b) == BigUint::from(0u32);
            assert_eq!(
                p.last_digit(n).unwrap().value() == 0,
                divisible,
                "b={b} n={n}"
            );
        }
    }
}

proptest! {
    #[test]
    fn random_points_match_oracle(n in 1u64..=DEFAULT_ORACLE_BOUND, b in 2u64..5000) {
        let p = BaseProfile::new(b).unwrap();
        let oracle = Oracle::default();
        prop_assert_eq!(p.last_nonzero_digit(n).unwrap(), oracle.last_nonzero(n, b).unwrap());
        prop_assert_eq!(p.last_digit(n).unwrap(), oracle.last_digit(n, b).unwrap());
    }

    #[test]
    fn trailing_base_powers_do_not_change_last_nonzero(
        x in 1u64..u64::MAX, b in 2u64..1000, k in 0u32..=5,
    ) {
        let x = BigUint::from(x);
        let shifted = &x * num_traits::pow(BigUint::from(b), k as usize);
        prop_assert_eq!(
            last_nonzero_digit_exact(&shifted, b).unwrap(),
            last_nonzero_digit_exact(&x, b).unwrap()
        );
    }

    #[test]
    fn large_indices_match_modular_reference(n in 1u64..(1u64 << 63), b in 2u64..200) {
        // n^n mod b^(v+1) by big-integer modpow, then strip b^v.
        let p = BaseProfile::new(b).unwrap();
        let f = p.factorization();
        let v = f
            .factors()
            .iter()
            .map(|&(q, s)| u128::from(selfpow::arith::p_adic_valuation(n, q)) * u128::from(n) / u128::from(s))
            .min()
            .unwrap();
        // Keep the reference modulus small enough to stay cheap.
        prop_assume!(v <= 4096);
        let bb = BigUint::from(b);
        let big_mod = num_traits::pow(bb.clone(), v as usize + 1);
        let residue = BigUint::from(n).modpow(&BigUint::from(n), &big_mod);
        let expected = (residue / num_traits::pow(bb.clone(), v as usize)) % &bb;
        prop_assert_eq!(BigUint::from(p.last_nonzero_digit(n).unwrap().value()), expected);
    }
}
