//! Exact arithmetic foundation: integers, prime fields, sparse Laurent
//! polynomials, resultants and valuations on `Z`.

pub mod integer;
mod laurent;
mod residue;
mod resultant;
pub mod univariate;
mod valuation;

pub use integer::{is_prime, padic_valuation};
pub use laurent::{default_vars, Exponent, LaurentPolynomial};
pub use residue::{reduce_mod_p, ResiduePolynomial};
pub use resultant::{resultant_univariate, z_resultant};
pub use valuation::CoefficientValuation;

use num_bigint::BigInt;
use num_rational::BigRational;

/// Exact rational number.
pub type Rational = BigRational;

pub(crate) fn rat(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// `gcd` of all coefficients of a nonzero polynomial.
pub fn content(f: &LaurentPolynomial) -> crate::Result<BigInt> {
    f.content()
}

/// Primes dividing at least one coefficient, ascending.
pub fn coefficient_primes(f: &LaurentPolynomial) -> crate::Result<Vec<u64>> {
    let mut out = std::collections::BTreeSet::new();
    for (_, c) in f.terms() {
        out.extend(integer::prime_divisors(c)?);
    }
    Ok(out.into_iter().collect())
}
