//! Integer and prime-field helpers.

use num_bigint::{BigInt, Sign};
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

const TRIAL_LIMIT: u64 = 1 << 20;

pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    ((a as u128 * b as u128) % m as u128) as u64
}

pub(crate) fn pow_mod(mut base: u64, mut exp: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

/// Inverse of a nonzero residue modulo a prime.
pub(crate) fn inv_mod(a: u64, p: u64) -> u64 {
    debug_assert!(a % p != 0);
    pow_mod(a, p - 2, p)
}

/// Deterministic Miller–Rabin for the full `u64` range.
pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n % p == 0 {
            return n == p;
        }
    }
    let mut d = n - 1;
    let mut s = 0;
    while d % 2 == 0 {
        d /= 2;
        s += 1;
    }
    'witness: for a in [2u64, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        let mut x = pow_mod(a, d, n);
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

pub fn check_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

pub fn primes_up_to(bound: u64) -> Vec<u64> {
    (2..=bound).filter(|&n| is_prime(n)).collect()
}

/// Largest `e` with `p^e | n`.
pub fn padic_valuation(n: &BigInt, p: u64) -> Result<u32> {
    check_prime(p)?;
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let p = BigInt::from(p);
    let mut n = n.abs();
    let mut e = 0;
    loop {
        let (q, r) = n.div_rem(&p);
        if !r.is_zero() {
            return Ok(e);
        }
        n = q;
        e += 1;
    }
}

/// Residue of an integer in `[0, p)`.
pub fn residue(n: &BigInt, p: u64) -> u64 {
    let r = n.mod_floor(&BigInt::from(p));
    r.to_u64().expect("residue fits in u64")
}

/// Distinct prime divisors of `n`, ascending. Fails if a cofactor
/// beyond the trial-division bound is neither 1 nor a `u64` prime.
pub fn prime_divisors(n: &BigInt) -> Result<Vec<u64>> {
    if n.is_zero() {
        return Err(Error::ZeroArgument);
    }
    let mut n = n.abs();
    let mut out = Vec::new();
    let mut d: u64 = 2;
    while d <= TRIAL_LIMIT {
        let bd = BigInt::from(d);
        if &bd * &bd > n {
            break;
        }
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if !n.is_one() {
        match n.to_u64() {
            Some(m) if is_prime(m) => out.push(m),
            _ => return Err(Error::CoefficientTooLarge(n.to_string())),
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Exact `e`-th root of an integer, if it exists.
pub fn exact_int_root(n: &BigInt, e: u32) -> Option<BigInt> {
    if e == 0 {
        return None;
    }
    if n.sign() == Sign::Minus && e % 2 == 0 {
        return None;
    }
    let r = n.nth_root(e);
    if num_traits::pow(r.clone(), e as usize) == *n {
        Some(r)
    } else {
        None
    }
}

/// Exact `e`-th root of a rational, if it exists.
pub fn exact_rational_root(q: &BigRational, e: u32) -> Option<BigRational> {
    let num = exact_int_root(q.numer(), e)?;
    let den = exact_int_root(q.denom(), e)?;
    Some(BigRational::new(num, den))
}

pub fn gcd_all<'a>(values: impl IntoIterator<Item = &'a BigInt>) -> BigInt {
    values
        .into_iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn primality() {
        let small: Vec<u64> = primes_up_to(30);
        assert_eq!(small, vec![2, 3, 5, 7, 11, 13, 17, 19, 23, 29]);
        assert!(is_prime(1_000_000_007));
        assert!(!is_prime(1_000_000_007 * 3));
        assert!(!is_prime(0) && !is_prime(1));
    }

    #[test]
    fn padic_examples() {
        assert_eq!(padic_valuation(&BigInt::from(8), 2), Ok(3));
        assert_eq!(padic_valuation(&BigInt::from(-1), 7), Ok(0));
        assert_eq!(padic_valuation(&BigInt::from(12), 2), Ok(2));
        assert_eq!(padic_valuation(&BigInt::zero(), 2), Err(Error::ZeroArgument));
        assert_eq!(padic_valuation(&BigInt::from(12), 4), Err(Error::NotPrime(4)));
    }

    #[test]
    fn divisors() {
        assert_eq!(prime_divisors(&BigInt::from(-360)).unwrap(), vec![2, 3, 5]);
        assert_eq!(prime_divisors(&BigInt::from(1)).unwrap(), Vec::<u64>::new());
        let big = BigInt::from(1_000_000_007u64) * BigInt::from(4);
        assert_eq!(prime_divisors(&big).unwrap(), vec![2, 1_000_000_007]);
    }

    #[test]
    fn roots() {
        assert_eq!(exact_int_root(&BigInt::from(-27), 3), Some(BigInt::from(-3)));
        assert_eq!(exact_int_root(&BigInt::from(-4), 2), None);
        let q = BigRational::new(BigInt::from(4), BigInt::from(9));
        assert_eq!(
            exact_rational_root(&q, 2),
            Some(BigRational::new(BigInt::from(2), BigInt::from(3)))
        );
    }
}
