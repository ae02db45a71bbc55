//! Last digit and last non-zero digit of `n^n` in base `b`.
//!
//! * [`arith`]: factorization, Carmichael function, CRT and exponent
//!   reduction valid for non-coprime bases.
//! * [`digits`]: the sequences `S_b(n) = n^n mod b` and `LNZ_b(n)`, the last
//!   non-zero base-`b` digit of `n^n`, plus an exact big-integer oracle.
//! * [`periodicity`]: eventual period `lcm(b, lambda(b))` of `S_b`, its break
//!   indices and empirical verification.
//! * [`lnz_analysis`]: self-similarity checks, the shift identity for
//!   `b = 2^(2^s)`, witness searches against candidate periods and the
//!   base-range scan.

pub mod arith;
pub mod digits;
mod error;
pub mod lnz_analysis;
pub mod par;
pub mod periodicity;

pub use error::{Error, Result};
