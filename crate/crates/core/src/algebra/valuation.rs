use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::integer::{check_prime, padic_valuation};
use crate::error::Result;

/// Valuation on the coefficient ring `Z`.
///
/// * `Zero` is the trivial valuation.
/// * `PAdic(p)` is the `p`-adic valuation normalized by `v(p) = 1`.
/// * `ResidueZero(p)` has kernel `pZ` and is trivial on `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CoefficientValuation {
    Zero,
    PAdic(u64),
    ResidueZero(u64),
}

impl CoefficientValuation {
    pub fn padic(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::PAdic(p))
    }

    pub fn residue(p: u64) -> Result<Self> {
        check_prime(p)?;
        Ok(Self::ResidueZero(p))
    }

    pub fn prime(&self) -> Option<u64> {
        match self {
            Self::Zero => None,
            Self::PAdic(p) | Self::ResidueZero(p) => Some(*p),
        }
    }

    /// Height of a nonzero integer coefficient. For `ResidueZero` the
    /// coefficient is assumed to be a unit mod `p`.
    pub fn height(&self, c: &BigInt) -> Result<BigRational> {
        let v = match self {
            Self::Zero | Self::ResidueZero(_) => 0,
            Self::PAdic(p) => padic_valuation(c, *p)?,
        };
        Ok(BigRational::from_integer(BigInt::from(v)))
    }
}

impl fmt::Display for CoefficientValuation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Zero => f.write_str("zero"),
            Self::PAdic(p) => write!(f, "p={p}"),
            Self::ResidueZero(p) => write!(f, "residue={p}"),
        }
    }
}
