//! Instance generators from arithmetic: p-adic distances on `{0, …, size-1}`
//! and congruence chains of powers of an ideal in `ℤ/m`.

use alloc::format;
use alloc::vec::Vec;

use num_traits::Zero;

use crate::error::{Error, Result};
use crate::finite::{check_size, Relation};
use crate::pseudometric::{Distance, Pseudometric};
use crate::uniformity::DiagonalBasis;

pub fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// Exponent of `p` in a nonzero integer.
pub fn valuation(mut value: u64, p: u64) -> u32 {
    assert!(value != 0 && p >= 2);
    let mut v = 0;
    while value % p == 0 {
        value /= p;
        v += 1;
    }
    v
}

/// `d(x, y) = p^(-v_p(x - y))` and `d(x, x) = 0` on `{0, …, size-1}`.
pub fn padic_metric(p: u64, size: usize) -> Result<Pseudometric> {
    if !is_prime(p) {
        return Err(Error::InvalidParameter(format!("p = {p} is not prime")));
    }
    check_size(size)?;
    let p = i64::try_from(p).map_err(|_| Error::InvalidParameter(format!("p = {p} is too large")))?;
    Pseudometric::from_fn(size, |x, y| {
        if x == y {
            Distance::zero()
        } else {
            let v = valuation(x.abs_diff(y) as u64, p as u64);
            Distance::new(1, p.pow(v))
        }
    })
}

fn gcd(mut a: u64, mut b: u64) -> u64 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

fn pow_mod(base: u64, mut exp: u32, modulus: u64) -> u64 {
    let mut result = 1 % modulus;
    let mut b = base % modulus;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % modulus;
        }
        b = b * b % modulus;
        exp >>= 1;
    }
    result
}

/// Congruence modulo the ideal `(a^k)` of `ℤ/m`, on the residues `0..m`.
///
/// `x ≡ y` exactly when `gcd(a^k mod m, m)` divides `x - y`.
pub fn ideal_congruence(modulus: usize, generator: u64, power: u32) -> Result<Relation> {
    check_size(modulus)?;
    let m = modulus as u64;
    let step = gcd(pow_mod(generator, power, m), m);
    Ok(Relation::from_fn(modulus, |x, y| x.abs_diff(y) as u64 % step == 0))
}

/// Congruences modulo `(a^0) ⊇ (a^1) ⊇ … ⊇ (a^depth)` on `ℤ/m`, duplicates
/// dropped.
pub fn ideal_chain_basis(modulus: usize, generator: u64, depth: u32) -> Result<DiagonalBasis> {
    if generator == 0 {
        return Err(Error::InvalidParameter("ideal generator must be positive".into()));
    }
    let relations = (0..=depth)
        .map(|k| ideal_congruence(modulus, generator, k))
        .collect::<Result<Vec<_>>>()?;
    DiagonalBasis::new(modulus, relations)
}
