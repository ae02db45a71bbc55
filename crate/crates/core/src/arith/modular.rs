//! Modular kernels with 128-bit intermediates.
//!
//! Moduli are capped at `2^63 - 1`, so a product of two reduced residues
//! always fits in a `u128` and a sum of two reduced residues fits in a `u64`.

use std::fmt;

use crate::error::{Error, Result};

/// Largest admissible modulus (and sequence index): `2^63 - 1`.
pub const MODULUS_CAP: u64 = (1 << 63) - 1;

/// A modulus `m` with `1 <= m <= 2^63 - 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Modulus(u64);

impl Modulus {
    pub fn new(m: u64) -> Result<Self> {
        if m == 0 || m > MODULUS_CAP {
            return Err(Error::ModulusOutOfRange(m));
        }
        Ok(Modulus(m))
    }

    #[inline]
    pub fn get(self) -> u64 {
        self.0
    }

    #[inline]
    pub fn reduce(self, a: u64) -> u64 {
        a % self.0
    }

    #[inline]
    pub fn mul(self, a: u64, b: u64) -> u64 {
        ((a as u128 * b as u128) % self.0 as u128) as u64
    }
}

impl fmt::Display for Modulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// Largest admissible exponent: `2^127 - 1`.
pub const EXPONENT_CAP: u128 = (1 << 127) - 1;

/// A non-negative exponent that may exceed 64 bits.
///
/// Exponents such as `n * v_p(n)` overflow `u64` once `n` is near `2^63`, so
/// they live in their own type and never mix with raw residues.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Exponent(u128);

impl Exponent {
    pub const ZERO: Exponent = Exponent(0);

    pub fn new(e: u128) -> Option<Self> {
        (e <= EXPONENT_CAP).then_some(Exponent(e))
    }

    #[inline]
    pub fn get(self) -> u128 {
        self.0
    }

    /// `n * k`, exact. Cannot overflow for `n < 2^64` and `k < 2^63`.
    #[inline]
    pub fn product(n: u64, k: u64) -> Self {
        Exponent(n as u128 * k as u128)
    }

    pub fn checked_add(self, rhs: Exponent) -> Option<Self> {
        self.0.checked_add(rhs.0).and_then(Exponent::new)
    }

    pub fn checked_sub(self, rhs: Exponent) -> Option<Self> {
        self.0.checked_sub(rhs.0).map(Exponent)
    }

    /// `self mod m` as a machine integer.
    #[inline]
    pub fn rem_u64(self, m: u64) -> u64 {
        (self.0 % m as u128) as u64
    }
}

impl From<u64> for Exponent {
    fn from(e: u64) -> Self {
        Exponent(e as u128)
    }
}

impl From<u32> for Exponent {
    fn from(e: u32) -> Self {
        Exponent(e as u128)
    }
}

impl fmt::Display for Exponent {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

pub fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// `lcm(a, b)`, or `None` when it does not fit in a `u64`.
pub fn lcm(a: u64, b: u64) -> Option<u64> {
    if a == 0 || b == 0 {
        return Some(0);
    }
    (a / gcd(a, b)).checked_mul(b)
}

/// Inverse of `a` modulo `m`, if `gcd(a, m) = 1`.
pub fn mod_inverse(a: u64, m: u64) -> Option<u64> {
    if m == 1 {
        return Some(0);
    }
    let (mut old_r, mut r) = (a as i128 % m as i128, m as i128);
    let (mut old_s, mut s) = (1i128, 0i128);
    while r != 0 {
        let q = old_r / r;
        (old_r, r) = (r, old_r - q * r);
        (old_s, s) = (s, old_s - q * s);
    }
    if old_r != 1 {
        return None;
    }
    Some(old_s.rem_euclid(m as i128) as u64)
}

/// `a^e mod m` by square-and-multiply. `e = 0` yields `1 mod m`.
pub fn mod_pow(a: u64, e: Exponent, m: Modulus) -> u64 {
    let mut result = m.reduce(1);
    let mut base = m.reduce(a);
    let mut e = e.get();
    while e > 0 {
        if e & 1 == 1 {
            result = m.mul(result, base);
        }
        e >>= 1;
        if e > 0 {
            base = m.mul(base, base);
        }
    }
    result
}

/// Precomputed exponent reduction for a fixed modulus.
///
/// For every residue `a` (coprime to `m` or not), `a^e = a^r (mod m)` where
/// `r = reduce(e)`. Exponents below `threshold = max(lambda(m), bitlen(m))`
/// are returned unchanged; larger ones are mapped to the unique
/// `r` in `[threshold, threshold + lambda(m))` with `r = e (mod lambda(m))`.
/// Keeping `r >= bitlen(m) >= max_p v_p(m)` makes the prime-power part of a
/// non-coprime `a` vanish on both sides.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ExponentReducer {
    modulus: Modulus,
    lambda: u64,
    threshold: u64,
}

impl ExponentReducer {
    /// `lambda` must be the Carmichael function of `modulus`.
    pub fn new(modulus: Modulus, lambda: u64) -> Self {
        let bits = u64::from(64 - modulus.get().leading_zeros());
        ExponentReducer {
            modulus,
            lambda,
            threshold: lambda.max(bits),
        }
    }

    pub fn modulus(&self) -> Modulus {
        self.modulus
    }

    pub fn lambda(&self) -> u64 {
        self.lambda
    }

    pub fn threshold(&self) -> u64 {
        self.threshold
    }

    #[inline]
    pub fn reduce(&self, e: Exponent) -> Exponent {
        let e = e.get();
        let threshold = self.threshold as u128;
        if e < threshold {
            return Exponent(e);
        }
        let lambda = self.lambda as u128;
        Exponent(threshold + (e - threshold) % lambda)
    }

    /// `a^e mod m` through the reduced exponent.
    #[inline]
    pub fn pow(&self, a: u64, e: Exponent) -> u64 {
        mod_pow(a, self.reduce(e), self.modulus)
    }
}

/// Reduce `e` for modulus `m >= 2`, see [`ExponentReducer`].
pub fn reduced_exponent(e: Exponent, m: u64) -> Result<Exponent> {
    if m < 2 {
        return Err(Error::InvalidParameter(format!(
            "exponent reduction needs a modulus >= 2, got {m}"
        )));
    }
    let modulus = Modulus::new(m)?;
    let lambda = super::carmichael(&super::factorize(m)?);
    Ok(ExponentReducer::new(modulus, lambda).reduce(e))
}
