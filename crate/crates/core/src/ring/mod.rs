//! Ring-theoretic hypotheses for `A = Z[Q]/(f)`: torsion, primality of
//! `(f)` over `Q` and `F_p`, prime-by-prime checks, monomial algebraicity
//! and the Krull dimension verdict.

mod factor;
mod strategy;

pub use factor::{factor_mod_p, max_support};
pub use strategy::{
    Candidate, Field, IrreducibilityStrategy, LinearInVariable, Method, MinkowskiSearch, ModPLift,
    StrategyRegistry, Verdict,
};

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use serde::Serialize;

use crate::algebra::integer::{prime_divisors, primes_up_to};
use crate::algebra::univariate::trim;
use crate::algebra::{coefficient_primes, reduce_mod_p, z_resultant, Exponent, LaurentPolynomial};
use crate::error::{Error, Result};
use crate::polyhedra::newton_polytope;
use factor::{canonical_direction, linear_coefficients, MAX_SEARCH_PRIME};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IrreducibilityStatus {
    pub verdict: Verdict,
    pub field: Field,
    pub method: Option<Method>,
}

/// Runs the default strategy pipeline after clearing monomial units.
pub fn irreducibility_status(f: &LaurentPolynomial, field: Field) -> Result<IrreducibilityStatus> {
    irreducibility_status_with(&StrategyRegistry::default(), f, field)
}

pub fn irreducibility_status_with(
    registry: &StrategyRegistry,
    f: &LaurentPolynomial,
    field: Field,
) -> Result<IrreducibilityStatus> {
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let status = |verdict, method| IrreducibilityStatus { verdict, field, method };
    let candidate = match field {
        Field::Q => {
            let (g, _) = f.clear_monomial();
            if g.len() == 1 {
                return Ok(status(Verdict::Unit, None));
            }
            Candidate::Rational(g.primitive_part()?)
        }
        Field::Fp(p) => {
            let g = reduce_mod_p(f, p)?;
            if g.is_zero() {
                return Ok(status(Verdict::Zero, None));
            }
            if g.is_unit() {
                return Ok(status(Verdict::Unit, None));
            }
            Candidate::Residue(g.normalized())
        }
    };
    let (verdict, method) = registry.run(&candidate);
    Ok(status(verdict, method))
}

/// `A` is `Z`-torsion-free iff the content of `f` is 1.
pub fn torsionfree_check(f: &LaurentPolynomial) -> Result<bool> {
    Ok(f.content()?.is_one())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct ModPDomain {
    /// `None` when irreducibility mod `p` could not be decided.
    pub domain: Option<bool>,
    pub infinite: bool,
}

pub fn mod_p_domain_check(f: &LaurentPolynomial, p: u64) -> Result<ModPDomain> {
    let g = reduce_mod_p(f, p)?;
    if g.is_zero() {
        return Err(Error::ZeroResidue(p));
    }
    let domain = match irreducibility_status(f, Field::Fp(p))?.verdict {
        Verdict::Irreducible => Some(true),
        Verdict::Undetermined => None,
        _ => Some(false),
    };
    Ok(ModPDomain {
        domain,
        infinite: !g.is_unit(),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum CertificateStatus {
    Certified,
    FiniteListOnly,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCheck {
    pub prime: u64,
    #[serde(flatten)]
    pub result: ModPDomain,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PrimeCertificate {
    pub status: CertificateStatus,
    pub checked: Vec<PrimeCheck>,
}

impl PrimeCertificate {
    /// Every checked prime gives an infinite domain.
    pub fn all_pass(&self) -> bool {
        self.checked
            .iter()
            .all(|c| c.result.domain == Some(true) && c.result.infinite)
    }

    pub fn primes(&self) -> Vec<u64> {
        self.checked.iter().map(|c| c.prime).collect()
    }
}

/// Checks `A/pA` prime by prime.
///
/// For `f = A·y + B` (degree one in a variable) only finitely many primes
/// can break coprimality of `A` and `B`: those dividing `Res(A, B)` or an
/// extreme coefficient of `A` or `B`. Those, and the primes dividing a
/// coefficient of `f`, are checked directly and the rest are certified.
/// Otherwise only the coefficient primes and the primes up to 13 are checked.
pub fn all_primes_certificate(f: &LaurentPolynomial) -> Result<PrimeCertificate> {
    let c = f.content()?;
    if !c.is_one() {
        let p = prime_divisors(&c)?[0];
        return Err(Error::ZeroResidue(p));
    }
    let mut primes: BTreeSet<u64> = coefficient_primes(f)?.into_iter().collect();
    let status = match linear_resultant_primes(f)? {
        Some(extra) => {
            primes.extend(extra);
            CertificateStatus::Certified
        }
        None => {
            primes.extend(primes_up_to(MAX_SEARCH_PRIME));
            CertificateStatus::FiniteListOnly
        }
    };
    let checked = primes
        .into_iter()
        .map(|p| Ok(PrimeCheck { prime: p, result: mod_p_domain_check(f, p)? }))
        .collect::<Result<_>>()?;
    Ok(PrimeCertificate { status, checked })
}

/// Primes that can spoil coprimality of `A`, `B` in `f = A·v + B`, or
/// `None` when `f` is not of that shape or the resultant vanishes.
fn linear_resultant_primes(f: &LaurentPolynomial) -> Result<Option<Vec<u64>>> {
    let (g, _) = f.clear_monomial();
    if g.rank() != 2 {
        return Ok(None);
    }
    let Some(var) = [1, 0].into_iter().find(|&v| g.degree_in(v) == 1) else {
        return Ok(None);
    };
    let (a, b) = linear_coefficients(&g, var);
    let strip = |p: Vec<BigInt>| -> Vec<BigInt> {
        let p = trim(p);
        let k = p.iter().take_while(|c| c.is_zero()).count();
        p[k..].to_vec()
    };
    let (a, b) = (strip(a), strip(b));
    let res = z_resultant(&a, &b);
    if res.is_zero() {
        return Ok(None);
    }
    let mut out = BTreeSet::new();
    for n in [&res, &a[0], &a[a.len() - 1], &b[0], &b[b.len() - 1]] {
        out.extend(prime_divisors(n)?);
    }
    Ok(Some(out.into_iter().collect()))
}

/// Primitive exponent directions `w` with `x^w` algebraic over `Q` in `A`:
/// none for a two-dimensional Newton polytope, the segment direction
/// otherwise.
pub fn algebraic_monomial_directions(f: &LaurentPolynomial) -> Result<Vec<Exponent>> {
    match irreducibility_status(f, Field::Q)?.verdict {
        Verdict::Irreducible => {}
        Verdict::Unit => return Err(Error::UnitPolynomial),
        Verdict::Undetermined => return Err(Error::IrreducibilityUndetermined),
        _ => return Err(Error::NotIrreducible),
    }
    let np = newton_polytope(f)?;
    Ok(match np.dim() {
        1 => {
            let v = np.vertices();
            let d: Exponent = v[1].iter().zip(&v[0]).map(|(a, b)| a - b).collect();
            vec![canonical_direction(&d)]
        }
        _ => Vec::new(),
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct KrullVerdict {
    pub dim: Option<usize>,
    pub justification: String,
}

/// Krull dimension of `Z[x_1^±1..x_s^±1]/(f)`; the zero polynomial stands
/// for the zero ideal.
pub fn krull_dimension_verdict(f: &LaurentPolynomial) -> Result<KrullVerdict> {
    let s = f.rank();
    if f.is_zero() {
        return Ok(KrullVerdict {
            dim: Some(s + 1),
            justification: format!("Krulldim Z[x_1^±1..x_{s}^±1] = {s} + Krulldim Z = {}", s + 1),
        });
    }
    if f.is_unit() {
        return Err(Error::UnitPolynomial);
    }
    let undetermined = |why: &str| KrullVerdict {
        dim: None,
        justification: why.to_string(),
    };
    if !torsionfree_check(f)? {
        return Ok(undetermined("content is not 1, so (f) is not prime"));
    }
    Ok(match irreducibility_status(f, Field::Q)?.verdict {
        Verdict::Irreducible => {
            debug_assert!(torsionfree_check(f)?);
            KrullVerdict {
                dim: Some(s),
                justification: format!(
                    "(f) is a height-one prime in a ring of Krull dimension {}",
                    s + 1
                ),
            }
        }
        Verdict::Reducible(_) => undetermined("f is reducible, so A is not a domain"),
        _ => undetermined("irreducibility of f is undetermined"),
    })
}
