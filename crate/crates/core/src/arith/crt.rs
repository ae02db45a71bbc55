use super::modular::{gcd, mod_inverse, Modulus, MODULUS_CAP};
use crate::error::{Error, Result};

/// Precomputed Chinese-remainder reconstruction for fixed pairwise-coprime
/// moduli `q_1, ..., q_k`.
///
/// Reconstruction uses the Garner mixed-radix form, so every intermediate
/// stays below the product of the moduli.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrtBasis {
    moduli: Vec<u64>,
    // inverse of (q_1 * ... * q_{j-1}) modulo q_j
    prefix_inverses: Vec<u64>,
    product: Modulus,
}

impl CrtBasis {
    pub fn new(moduli: &[u64]) -> Result<Self> {
        let mut product: u64 = 1;
        let mut prefix_inverses = Vec::with_capacity(moduli.len());
        for (j, &q) in moduli.iter().enumerate() {
            Modulus::new(q)?;
            if let Some(&other) = moduli[..j].iter().find(|&&o| gcd(o, q) != 1) {
                return Err(Error::NonCoprimeModuli(other, q));
            }
            prefix_inverses.push(mod_inverse(product % q, q).expect("moduli are coprime"));
            product = product
                .checked_mul(q)
                .filter(|&p| p <= MODULUS_CAP)
                .ok_or(Error::CrtOverflow)?;
        }
        Ok(CrtBasis {
            moduli: moduli.to_vec(),
            prefix_inverses,
            product: Modulus::new(product)?,
        })
    }

    pub fn moduli(&self) -> &[u64] {
        &self.moduli
    }

    pub fn product(&self) -> u64 {
        self.product.get()
    }

    /// The unique `x < prod q_j` with `x = residues[j] (mod q_j)`.
    ///
    /// Residues must already be reduced; this is not rechecked here.
    #[inline]
    pub fn combine(&self, residues: &[u64]) -> u64 {
        debug_assert_eq!(residues.len(), self.moduli.len());
        let mut x: u64 = 0;
        let mut prefix: u64 = 1;
        for ((&q, &inv), &r) in self.moduli.iter().zip(&self.prefix_inverses).zip(residues) {
            // x + prefix * t = r (mod q)
            let x_mod = x % q;
            let diff = (r + q - x_mod) % q;
            let t = ((diff as u128 * inv as u128) % q as u128) as u64;
            x += prefix * t;
            prefix *= q;
        }
        x
    }
}

/// Combine `(residue, modulus)` pairs with pairwise coprime moduli.
pub fn crt_combine(parts: &[(u64, u64)]) -> Result<u64> {
    let moduli: Vec<u64> = parts.iter().map(|&(_, q)| q).collect();
    let basis = CrtBasis::new(&moduli)?;
    let residues: Vec<u64> = parts
        .iter()
        .map(|&(r, q)| {
            if r < q {
                Ok(r)
            } else {
                Err(Error::UnreducedResidue {
                    residue: r,
                    modulus: q,
                })
            }
        })
        .collect::<Result<_>>()?;
    Ok(basis.combine(&residues))
}
