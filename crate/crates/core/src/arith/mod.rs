//! Exact integer and modular arithmetic: factorization, multiplicative
//! functions, CRT, and exponent reduction that stays valid for residues
//! sharing factors with the modulus.

mod crt;
mod factor;
mod modular;

pub use crt::{crt_combine, CrtBasis};
pub(crate) use factor::valuation_u64;
pub use factor::{
    carmichael, euler_phi, factorize, is_prime, p_adic_valuation, radical, Factorization,
    TRIAL_DIVISION_LIMIT,
};
pub use modular::{
    gcd, lcm, mod_inverse, mod_pow, reduced_exponent, Exponent, ExponentReducer, Modulus,
    EXPONENT_CAP, MODULUS_CAP,
};
