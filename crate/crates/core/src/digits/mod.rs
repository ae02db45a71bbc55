//! The two digit sequences of `n^n` in base `b`.
//!
//! `S_b(n)` is the last digit, `n^n mod b`. `LNZ_b(n)` is the last non-zero
//! digit, `L_b(n^n)` where `L_b(x) = (x / b^v) mod b` strips the `v` trailing
//! zero digits of `x`. Both are evaluated for `n` up to `2^63 - 1` without
//! ever forming `n^n`; [`oracle`] holds the exact big-integer route.

pub mod oracle;

use std::fmt;

use crate::arith::{
    carmichael, factorize, lcm, radical, valuation_u64, CrtBasis, Exponent, ExponentReducer,
    Factorization, Modulus, MODULUS_CAP,
};
use crate::error::{Error, Result};

pub use oracle::{
    frak_s_oracle, last_nonzero_digit_exact, oracle_grid_mismatches, Oracle, OracleMismatch,
    DEFAULT_ORACLE_BOUND,
};

/// Exclusive upper bound on bases.
pub const BASE_LIMIT: u64 = 1 << 32;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DigitKind {
    /// Last digit, `0 <= d < b`.
    Last,
    /// Last non-zero digit, `1 <= d < b`.
    LastNonzero,
}

/// A single base-`b` digit.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Digit {
    value: u64,
    base: u64,
    kind: DigitKind,
}

impl Digit {
    pub fn new(value: u64, base: u64, kind: DigitKind) -> Result<Self> {
        let lowest = match kind {
            DigitKind::Last => 0,
            DigitKind::LastNonzero => 1,
        };
        if base < 2 || !(lowest..base).contains(&value) {
            return Err(Error::InvalidParameter(format!(
                "{value} is not a valid {kind:?} digit in base {base}"
            )));
        }
        Ok(Digit { value, base, kind })
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn base(&self) -> u64 {
        self.base
    }

    pub fn kind(&self) -> DigitKind {
        self.kind
    }
}

impl fmt::Display for Digit {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.value.fmt(f)
    }
}

/// Per prime power `q = p^s` of the base.
#[derive(Debug, Clone)]
struct PrimePowerPart {
    p: u64,
    s: u32,
    q: u64,
    reducer: ExponentReducer,
}

/// A base together with everything derived from its factorization.
#[derive(Debug, Clone)]
pub struct BaseProfile {
    b: u64,
    factorization: Factorization,
    lambda: u64,
    cap_h: u64,
    rad: u64,
    is_even_squarefree: bool,
    is_odd_prime_power: bool,
    is_two_power_tower: bool,
    reducer: ExponentReducer,
    parts: Vec<PrimePowerPart>,
    crt: CrtBasis,
}

/// `b = 2^k` with `k` a power of two.
fn two_power_tower(b: u64) -> bool {
    b.is_power_of_two() && b.trailing_zeros().is_power_of_two()
}

impl BaseProfile {
    pub fn new(b: u64) -> Result<Self> {
        if !(2..BASE_LIMIT).contains(&b) {
            return Err(Error::BaseOutOfRange(b));
        }
        let factorization = factorize(b)?;
        let lambda = carmichael(&factorization);
        let cap_h = lcm(b, lambda).expect("b * lambda(b) < 2^64");
        let rad = radical(&factorization);
        let parts = factorization
            .factors()
            .iter()
            .map(|&(p, s)| {
                let q = p.pow(s);
                let lambda_q = carmichael(&factorize(q)?);
                Ok(PrimePowerPart {
                    p,
                    s,
                    q,
                    reducer: ExponentReducer::new(Modulus::new(q)?, lambda_q),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        let moduli: Vec<u64> = parts.iter().map(|part| part.q).collect();
        let crt = CrtBasis::new(&moduli)?;
        let factors = factorization.factors();
        Ok(BaseProfile {
            b,
            is_even_squarefree: b.is_multiple_of(2) && factorization.is_squarefree(),
            is_odd_prime_power: factors.len() == 1 && factors[0].0 != 2,
            is_two_power_tower: two_power_tower(b),
            reducer: ExponentReducer::new(Modulus::new(b)?, lambda),
            factorization,
            lambda,
            cap_h,
            rad,
            parts,
            crt,
        })
    }

    pub fn base(&self) -> u64 {
        self.b
    }

    pub fn factorization(&self) -> &Factorization {
        &self.factorization
    }

    /// Carmichael function of the base.
    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    /// `lcm(b, lambda(b))`.
    pub fn cap_h(&self) -> u64 {
        self.cap_h
    }

    pub fn radical(&self) -> u64 {
        self.rad
    }

    pub fn is_even_squarefree(&self) -> bool {
        self.is_even_squarefree
    }

    pub fn is_odd_prime_power(&self) -> bool {
        self.is_odd_prime_power
    }

    /// `b = 2^(2^s)` for some `s >= 0`.
    pub fn is_two_power_tower(&self) -> bool {
        self.is_two_power_tower
    }

    /// Largest exponent in the factorization of the base.
    pub fn max_exponent(&self) -> u32 {
        self.parts.iter().map(|part| part.s).max().unwrap_or(0)
    }

    /// `n^n mod b`.
    pub fn last_digit(&self, n: u64) -> Result<Digit> {
        check_index(n)?;
        Digit::new(self.last_digit_raw(n), self.b, DigitKind::Last)
    }

    /// Last non-zero base-`b` digit of `n^n`.
    pub fn last_nonzero_digit(&self, n: u64) -> Result<Digit> {
        check_index(n)?;
        Digit::new(self.last_nonzero_raw(n), self.b, DigitKind::LastNonzero)
    }

    /// Unchecked `n^n mod b`; `n` must be in `1..2^63`.
    #[inline]
    pub(crate) fn last_digit_raw(&self, n: u64) -> u64 {
        self.reducer.pow(n % self.b, Exponent::from(n))
    }

    /// Unchecked last non-zero digit of `n^n`; `n` must be in `1..2^63`.
    ///
    /// Writes `n = c * prod p_i^e_i` with `gcd(c, b) = 1`, so the number of
    /// trailing zeros of `n^n` is `v = min_i floor(n e_i / s_i)` and
    /// `n^n / b^v = c^n * prod p_i^(n e_i - v s_i)`. That cofactor is reduced
    /// modulo each `p_j^s_j` separately and recombined by CRT.
    pub(crate) fn last_nonzero_raw(&self, n: u64) -> u64 {
        // A base below 2^32 has at most nine distinct primes.
        let mut e = [0u64; 9];
        let mut c = n;
        let mut shared = false;
        for (slot, part) in e.iter_mut().zip(&self.parts) {
            if c.is_multiple_of(part.p) {
                let k = valuation_u64(c, part.p);
                c /= part.p.pow(k);
                *slot = u64::from(k);
                shared = true;
            }
        }
        if !shared {
            return self.last_digit_raw(n);
        }
        let parts = &self.parts;
        let v = parts
            .iter()
            .zip(&e)
            .map(|(part, &ei)| Exponent::product(n, ei).get() / u128::from(part.s))
            .min()
            .expect("base has a prime factor");
        let mut exps = [Exponent::ZERO; 9];
        for ((slot, part), &ei) in exps.iter_mut().zip(parts).zip(&e) {
            let total = Exponent::product(n, ei).get();
            *slot = Exponent::new(total - v * u128::from(part.s)).expect("exponent below cap");
        }
        let mut residues = [0u64; 9];
        for (j, part) in parts.iter().enumerate() {
            let m = part.reducer.modulus();
            let own = exps[j].get();
            let mut r = if own >= u128::from(part.s) {
                0
            } else {
                part.p.pow(own as u32)
            };
            if r != 0 {
                r = m.mul(r, part.reducer.pow(c % part.q, Exponent::from(n)));
                for (i, other) in parts.iter().enumerate() {
                    if i != j && exps[i] != Exponent::ZERO {
                        r = m.mul(r, part.reducer.pow(other.p % part.q, exps[i]));
                    }
                }
            }
            residues[j] = r;
        }
        let digit = self.crt.combine(&residues[..parts.len()]);
        debug_assert!(digit != 0, "b^(v+1) divides n^n for n={n}, b={}", self.b);
        digit
    }
}

/// Profile of base `b`, see [`BaseProfile::new`].
pub fn base_profile(b: u64) -> Result<BaseProfile> {
    BaseProfile::new(b)
}

/// `S_b(n) = n^n mod b`.
pub fn s_b(n: u64, profile: &BaseProfile) -> Result<Digit> {
    profile.last_digit(n)
}

/// Last non-zero base-`b` digit of `n^n` by valuations and CRT.
pub fn frak_s_fast(n: u64, profile: &BaseProfile) -> Result<Digit> {
    profile.last_nonzero_digit(n)
}

/// `L_b(x)` for a machine integer `x >= 1`.
pub fn last_nonzero_digit_of(x: u64, b: u64) -> Result<Digit> {
    if b < 2 {
        return Err(Error::BaseOutOfRange(b));
    }
    if x == 0 {
        return Err(Error::ZeroInput);
    }
    let mut x = x;
    while x.is_multiple_of(b) {
        x /= b;
    }
    Digit::new(x % b, b, DigitKind::LastNonzero)
}

pub(crate) fn check_index(n: u64) -> Result<()> {
    if n == 0 || n > MODULUS_CAP {
        return Err(Error::IndexOutOfRange(n));
    }
    Ok(())
}
