//! Exact big-integer evaluation of `n^n` and its base-`b` digits.
//!
//! This path shares nothing with the valuation/CRT kernels in the parent
//! module; it exists to check them.

use num_bigint::BigUint;
use num_integer::Integer;
use num_traits::{ToPrimitive, Zero};

use super::{Digit, DigitKind};
use crate::error::{Error, Result};

/// Default largest `n` for which `n^n` is materialized.
pub const DEFAULT_ORACLE_BOUND: u64 = 2000;

/// Last non-zero digit of an exact positive integer in base `b`:
/// `(x / b^v) mod b` with `v` the number of trailing zero digits.
pub fn last_nonzero_digit_exact(x: &BigUint, b: u64) -> Result<Digit> {
    if b < 2 {
        return Err(Error::BaseOutOfRange(b));
    }
    if x.is_zero() {
        return Err(Error::ZeroInput);
    }
    let base = BigUint::from(b);
    // Ladder b, b^2, b^4, ... up to the size of x; stripping from the top
    // needs O(log v) divisions instead of v.
    let mut ladder = vec![base.clone()];
    while ladder.last().unwrap().bits() * 2 <= x.bits() + 1 {
        let top = ladder.last().unwrap();
        ladder.push(top * top);
    }
    let mut rest = x.clone();
    for power in ladder.iter().rev() {
        loop {
            let (q, r) = rest.div_rem(power);
            if !r.is_zero() {
                break;
            }
            rest = q;
        }
    }
    let digit = (rest % &base).to_u64().expect("digit < b");
    Digit::new(digit, b, DigitKind::LastNonzero)
}

/// Exact evaluator for `n <= bound`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Oracle {
    bound: u64,
}

impl Default for Oracle {
    fn default() -> Self {
        Oracle {
            bound: DEFAULT_ORACLE_BOUND,
        }
    }
}

impl Oracle {
    pub fn new(bound: u64) -> Self {
        Oracle { bound }
    }

    pub fn bound(&self) -> u64 {
        self.bound
    }

    pub fn covers(&self, n: u64) -> bool {
        (1..=self.bound).contains(&n)
    }

    /// `n^n` as an exact integer.
    pub fn self_power(&self, n: u64) -> Result<BigUint> {
        if n == 0 {
            return Err(Error::IndexOutOfRange(0));
        }
        if n > self.bound {
            return Err(Error::OracleBoundExceeded {
                n,
                bound: self.bound,
            });
        }
        let exponent = u32::try_from(n).expect("oracle bound fits in u32");
        Ok(num_traits::pow(BigUint::from(n), exponent as usize))
    }

    /// Last digit of `n^n` in base `b`.
    pub fn last_digit(&self, n: u64, b: u64) -> Result<Digit> {
        if b < 2 {
            return Err(Error::BaseOutOfRange(b));
        }
        let x = self.self_power(n)?;
        let d = (x % b).to_u64().expect("digit < b");
        Digit::new(d, b, DigitKind::Last)
    }

    /// Last non-zero digit of `n^n` in base `b`.
    pub fn last_nonzero(&self, n: u64, b: u64) -> Result<Digit> {
        last_nonzero_digit_exact(&self.self_power(n)?, b)
    }
}

/// [`Oracle::last_nonzero`] with the default bound.
pub fn frak_s_oracle(n: u64, b: u64) -> Result<Digit> {
    Oracle::default().last_nonzero(n, b)
}

/// A disagreement between the fast kernels and the exact route.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OracleMismatch {
    pub n: u64,
    pub b: u64,
    pub kind: DigitKind,
    pub fast: u64,
    pub exact: u64,
}

/// Compare both fast sequences against exact evaluation on the grid
/// `1 <= n <= n_max`, `2 <= b <= b_max`. Mismatches come back ordered by
/// `(n, b)`.
pub fn oracle_grid_mismatches(
    oracle: &Oracle,
    n_max: u64,
    b_max: u64,
) -> Result<Vec<OracleMismatch>> {
    if n_max > oracle.bound() {
        return Err(Error::OracleBoundExceeded {
            n: n_max,
            bound: oracle.bound(),
        });
    }
    let profiles = (2..=b_max)
        .map(super::BaseProfile::new)
        .collect::<Result<Vec<_>>>()?;
    let rows = crate::par::map_range(1, n_max, |n| -> Result<Vec<OracleMismatch>> {
        let x = oracle.self_power(n)?;
        let mut out = Vec::new();
        for profile in &profiles {
            let b = profile.base();
            let exact_last = (&x % b).to_u64().expect("digit < b");
            let fast_last = profile.last_digit_raw(n);
            if exact_last != fast_last {
                out.push(OracleMismatch {
                    n,
                    b,
                    kind: DigitKind::Last,
                    fast: fast_last,
                    exact: exact_last,
                });
            }
            let exact = last_nonzero_digit_exact(&x, b)?.value();
            let fast = profile.last_nonzero_raw(n);
            if exact != fast {
                out.push(OracleMismatch {
                    n,
                    b,
                    kind: DigitKind::LastNonzero,
                    fast,
                    exact,
                });
            }
        }
        Ok(out)
    });
    let mut all = Vec::new();
    for row in rows {
        all.extend(row?);
    }
    Ok(all)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn exact(x: u64, b: u64) -> u64 {
        last_nonzero_digit_exact(&BigUint::from(x), b)
            .unwrap()
            .value()
    }

    #[test]
    fn exact_examples() {
        for b in 2..40 {
            assert_eq!(exact(1, b), 1);
        }
        assert_eq!(exact(3125, 10), 5);
        assert_eq!(exact(96, 12), 8);
        assert_eq!(
            last_nonzero_digit_exact(&BigUint::zero(), 10),
            Err(Error::ZeroInput)
        );
    }

    #[test]
    fn exact_strips_long_runs_of_zeros() {
        let x = num_traits::pow(BigUint::from(10u32), 777) * 3u32;
        assert_eq!(last_nonzero_digit_exact(&x, 10).unwrap().value(), 3);
        let x = num_traits::pow(BigUint::from(12u32), 1000) * 96u32;
        assert_eq!(last_nonzero_digit_exact(&x, 12).unwrap().value(), 8);
    }

    #[test]
    fn oracle_examples() {
        assert_eq!(frak_s_oracle(5, 10).unwrap().value(), 5);
        for b in 2..50 {
            assert_eq!(frak_s_oracle(1, b).unwrap().value(), 1);
        }
        assert_eq!(
            frak_s_oracle(2001, 10),
            Err(Error::OracleBoundExceeded {
                n: 2001,
                bound: 2000
            })
        );
        assert_eq!(Oracle::new(5000).last_nonzero(2001, 2).unwrap().value(), 1);
        assert_eq!(Oracle::default().last_digit(5, 3).unwrap().value(), 2);
    }

    #[test]
    fn small_grid_agrees() {
        assert!(oracle_grid_mismatches(&Oracle::default(), 200, 40)
            .unwrap()
            .is_empty());
        assert!(oracle_grid_mismatches(&Oracle::new(10), 11, 5).is_err());
    }
}
