use num_bigint::BigInt;
use num_rational::BigRational;
use serde::Serialize;

use super::field::FieldElement;
use super::newton::{puiseux_expand, PuiseuxBranch};
use super::relation::find_integer_relation;
use super::series::FractionalSeries;
use crate::algebra::LaurentPolynomial;
use crate::error::{Error, Result};

/// Largest accepted bound for [`homothety_scan`].
pub const MAX_SCAN_BOUND: u32 = 4;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum HomothetyOutcome {
    /// The substitution is a well-defined ring map.
    Holds,
    /// The image of the defining relation does not vanish on the curve.
    Fails,
    /// Only a truncated series test was available and it saw no obstruction.
    Undetermined,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct HomothetyScan {
    pub accepted: Vec<(u32, u32, u32)>,
    pub undetermined: Vec<(u32, u32, u32)>,
}

struct Curve {
    f: LaurentPolynomial,
    degree: u32,
    monic_in: Option<usize>,
}

impl Curve {
    fn new(f: &LaurentPolynomial) -> Result<Self> {
        if f.rank() != 2 {
            return Err(Error::UnsupportedRank(f.rank()));
        }
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        let (f, _) = f.clear_monomial();
        if f.degree_in(1) == 0 {
            return Err(Error::NotACurve);
        }
        let monic_in = [1, 0].into_iter().find(|&var| {
            f.coefficients_in(var)
                .last_key_value()
                .is_some_and(|(&top, c)| top > 0 && c.is_unit())
        });
        Ok(Self {
            degree: f.total_degree() as u32,
            f,
            monic_in,
        })
    }

    fn branch(&self, terms: usize) -> Result<PuiseuxBranch> {
        puiseux_expand(&self.f, terms)?
            .into_iter()
            .next()
            .ok_or(Error::NotACurve)
    }

    /// Minimal relation between `x^n` and `y^n` on the curve, with the
    /// branch it was computed from.
    fn relation(&self, n: u32) -> Result<(Option<LaurentPolynomial>, PuiseuxBranch)> {
        let bound = n * self.degree;
        let mut terms = 8 * (bound as usize + 1);
        let mut retried = false;
        loop {
            let branch = self.branch(terms)?;
            let u = FractionalSeries::monomial(
                branch.series.field().clone(),
                FieldElement::one(),
                BigRational::from_integer(BigInt::from(n)),
            );
            let v = branch.series.pow(n);
            match find_integer_relation(&u, &v, bound) {
                Err(Error::InsufficientPrecision { needed, available }) if !retried => {
                    // doubling alone can fall short once (bound+1)^2 dominates
                    retried = true;
                    terms = (2 * terms).max(terms + needed.saturating_sub(available) + 8);
                }
                other => return Ok((other?, branch)),
            }
        }
    }

    fn test(&self, relation: &LaurentPolynomial, branch: &PuiseuxBranch, c1: u32, c2: u32) -> HomothetyOutcome {
        let image = relation.map_exponents(2, |e| vec![e[0] * c1 as i64, e[1] * c2 as i64]);
        if let Some(var) = self.monic_in {
            return if reduce_monic(&image, &self.f, var).is_zero() {
                HomothetyOutcome::Holds
            } else {
                HomothetyOutcome::Fails
            };
        }
        let y = &branch.series;
        let mut acc = FractionalSeries::zero(y.field().clone());
        for (e, c) in image.terms() {
            let term = y
                .pow(e[1] as u32)
                .shift(&BigRational::from_integer(BigInt::from(e[0])))
                .scale(&FieldElement::integer(c.clone()));
            acc = acc.add(&term);
        }
        if acc.is_empty() {
            HomothetyOutcome::Undetermined
        } else {
            HomothetyOutcome::Fails
        }
    }
}

/// Remainder of `p` modulo `f` in the variable `var`, where the leading
/// coefficient of `f` in `var` is a unit monomial.
fn reduce_monic(p: &LaurentPolynomial, f: &LaurentPolynomial, var: usize) -> LaurentPolynomial {
    let fc = f.coefficients_in(var);
    let (&df, lc) = fc.last_key_value().expect("nonzero");
    let (lc_exp, lc_coeff) = lc.terms().next().map(|(e, c)| (e.clone(), c.clone())).expect("monomial");
    let inv_shift: Vec<i64> = lc_exp.iter().map(|v| -v).collect();
    let mut p = p.clone();
    loop {
        let pc = p.coefficients_in(var);
        let Some((&dp, c)) = pc.last_key_value() else { break };
        if dp < df {
            break;
        }
        let mut shift = inv_shift.clone();
        shift[var] += dp - df;
        let q = c.shift(&shift).scale(&lc_coeff);
        p = &p - &(&q * f);
    }
    p
}

/// Whether `x^n -> x^c1, y^n -> y^c2` defines a ring map on the
/// coordinate ring of `f = 0`.
pub fn homothety_check(f: &LaurentPolynomial, n: u32, c1: u32, c2: u32) -> Result<HomothetyOutcome> {
    if n == 0 || c1 == 0 || c2 == 0 {
        return Err(Error::InvalidArgument("n, c1, c2 must be positive".into()));
    }
    let curve = Curve::new(f)?;
    let (relation, branch) = curve.relation(n)?;
    Ok(match relation {
        Some(r) => curve.test(&r, &branch, c1, c2),
        None => HomothetyOutcome::Undetermined,
    })
}

/// All triples in `[1, bound]^3` for which [`homothety_check`] holds;
/// undetermined triples are listed separately.
pub fn homothety_scan(f: &LaurentPolynomial, bound: u32) -> Result<HomothetyScan> {
    if bound == 0 || bound > MAX_SCAN_BOUND {
        return Err(Error::InvalidArgument(format!("scan bound must lie in 1..={MAX_SCAN_BOUND}")));
    }
    let curve = Curve::new(f)?;
    let mut scan = HomothetyScan::default();
    for n in 1..=bound {
        let (relation, branch) = curve.relation(n)?;
        for c1 in 1..=bound {
            for c2 in 1..=bound {
                let outcome = match &relation {
                    Some(r) => curve.test(r, &branch, c1, c2),
                    None => HomothetyOutcome::Undetermined,
                };
                match outcome {
                    HomothetyOutcome::Holds => scan.accepted.push((n, c1, c2)),
                    HomothetyOutcome::Undetermined => scan.undetermined.push((n, c1, c2)),
                    HomothetyOutcome::Fails => {}
                }
            }
        }
    }
    Ok(scan)
}
