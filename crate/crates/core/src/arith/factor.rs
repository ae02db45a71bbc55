//! Factorization of 63-bit integers and the multiplicative functions built
//! on it.
//!
//! Trial division removes every prime below [`TRIAL_DIVISION_LIMIT`]; any
//! cofactor left over is split by Brent's variant of Pollard rho, with a
//! deterministic Miller-Rabin test deciding when to stop.

use std::sync::OnceLock;

use super::modular::{gcd, lcm, MODULUS_CAP};
use crate::error::{Error, Result};

pub const TRIAL_DIVISION_LIMIT: u64 = 100_000;

/// Witnesses that make Miller-Rabin exact for every `n < 2^64`.
const MR_WITNESSES: [u64; 12] = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37];

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let limit = TRIAL_DIVISION_LIMIT as usize;
        let mut composite = vec![false; limit + 1];
        let mut primes = Vec::new();
        for i in 2..=limit {
            if !composite[i] {
                primes.push(i as u32);
                for j in (i * i..=limit).step_by(i) {
                    composite[j] = true;
                }
            }
        }
        primes
    })
}

#[inline]
fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

/// Deterministic primality test for 64-bit integers.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for &p in &MR_WITNESSES {
        if n.is_multiple_of(p) {
            return n == p;
        }
    }
    let s = (n - 1).trailing_zeros();
    let d = (n - 1) >> s;
    'witness: for &a in &MR_WITNESSES {
        let mut x = pow_mod_u64(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 1..s {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn pow_mod_u64(mut a: u64, mut e: u64, m: u64) -> u64 {
    let mut r = 1 % m;
    a %= m;
    while e > 0 {
        if e & 1 == 1 {
            r = mul_mod(r, a, m);
        }
        a = mul_mod(a, a, m);
        e >>= 1;
    }
    r
}

/// Brent's cycle-finding rho on `x -> x^2 + c`. Returns a proper divisor or
/// `None` if this `c` cycles without splitting `n`.
fn brent_rho(n: u64, c: u64) -> Option<u64> {
    const BATCH: u64 = 128;
    let f = |x: u64| (mul_mod(x, x, n) + c) % n;
    let (mut x, mut y, mut ys) = (2u64, 2u64, 2u64);
    let mut q = 1u64;
    let mut g = 1u64;
    let mut r = 1u64;
    while g == 1 {
        x = y;
        for _ in 0..r {
            y = f(y);
        }
        let mut k = 0;
        while k < r && g == 1 {
            ys = y;
            for _ in 0..BATCH.min(r - k) {
                y = f(y);
                q = mul_mod(q, x.abs_diff(y), n);
            }
            g = gcd(q, n);
            k += BATCH;
        }
        r <<= 1;
    }
    if g == n {
        // The batch overshot; replay one step at a time.
        loop {
            ys = f(ys);
            g = gcd(x.abs_diff(ys), n);
            if g > 1 {
                break;
            }
        }
    }
    (g != n).then_some(g)
}

fn split_composite(n: u64) -> u64 {
    (1..)
        .find_map(|c| brent_rho(n, c))
        .expect("rho terminates for composite n")
}

fn push_large_factors(n: u64, out: &mut Vec<u64>) {
    if n == 1 {
        return;
    }
    if is_prime(n) {
        out.push(n);
        return;
    }
    let d = split_composite(n);
    push_large_factors(d, out);
    push_large_factors(n / d, out);
}

/// Canonical prime factorization of a positive integer.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Factorization {
    factors: Vec<(u64, u32)>,
    value: u64,
}

impl Factorization {
    /// `(prime, exponent)` pairs with strictly increasing primes.
    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn primes(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, _)| p)
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn is_squarefree(&self) -> bool {
        self.factors.iter().all(|&(_, a)| a == 1)
    }

    /// Exponent of `p` in the factored value (0 if absent).
    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .iter()
            .find(|&&(q, _)| q == p)
            .map_or(0, |&(_, a)| a)
    }

    /// The prime powers `p^a`, in prime order.
    pub fn prime_powers(&self) -> impl Iterator<Item = u64> + '_ {
        self.factors.iter().map(|&(p, a)| p.pow(a))
    }
}

/// Factor `n` with `1 <= n <= 2^63 - 1`.
pub fn factorize(n: u64) -> Result<Factorization> {
    if n == 0 {
        return Err(Error::ZeroInput);
    }
    if n > MODULUS_CAP {
        return Err(Error::IndexOutOfRange(n));
    }
    let value = n;
    let mut rest = n;
    let mut factors = Vec::new();
    for &p in small_primes() {
        let p = u64::from(p);
        if p * p > rest {
            break;
        }
        if rest.is_multiple_of(p) {
            let mut a = 0;
            while rest.is_multiple_of(p) {
                rest /= p;
                a += 1;
            }
            factors.push((p, a));
        }
    }
    if rest > 1 {
        let bound = TRIAL_DIVISION_LIMIT * TRIAL_DIVISION_LIMIT;
        if rest < bound || is_prime(rest) {
            // No prime factor below the trial limit remains, so a cofactor
            // below limit^2 is itself prime.
            factors.push((rest, 1));
        } else {
            let mut large = Vec::new();
            push_large_factors(rest, &mut large);
            large.sort_unstable();
            for p in large {
                match factors.last_mut() {
                    Some((q, a)) if *q == p => *a += 1,
                    _ => factors.push((p, 1)),
                }
            }
        }
    }
    Ok(Factorization { factors, value })
}

/// Euler's totient from a factorization.
pub fn euler_phi(f: &Factorization) -> u64 {
    f.factors
        .iter()
        .map(|&(p, a)| p.pow(a - 1) * (p - 1))
        .product()
}

fn carmichael_prime_power(p: u64, a: u32) -> u64 {
    match (p, a) {
        (2, 1) => 1,
        (2, 2) => 2,
        (2, a) => 1 << (a - 2),
        (p, a) => p.pow(a - 1) * (p - 1),
    }
}

/// Carmichael's function: the least universal exponent of the unit group.
pub fn carmichael(f: &Factorization) -> u64 {
    f.factors.iter().fold(1, |acc, &(p, a)| {
        // lambda(n) <= n, so the lcm always fits.
        lcm(acc, carmichael_prime_power(p, a)).expect("lambda(n) <= n")
    })
}

/// Product of the distinct primes.
pub fn radical(f: &Factorization) -> u64 {
    f.primes().product()
}

/// Largest `k` with `p^k | x`. Requires `x >= 1` and `p >= 2`.
pub fn p_adic_valuation(x: impl Into<u128>, p: u64) -> u32 {
    let x: u128 = x.into();
    debug_assert!(x >= 1 && p >= 2);
    if p == 2 {
        return x.trailing_zeros();
    }
    match u64::try_from(x) {
        Ok(x) => valuation_u64(x, p),
        Err(_) => {
            let p = u128::from(p);
            let (mut x, mut k) = (x, 0);
            while x % p == 0 {
                x /= p;
                k += 1;
            }
            k
        }
    }
}

#[inline]
pub(crate) fn valuation_u64(mut x: u64, p: u64) -> u32 {
    let mut k = 0;
    while x.is_multiple_of(p) {
        x /= p;
        k += 1;
    }
    k
}
