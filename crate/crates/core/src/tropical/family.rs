use super::{locus, TropicalComplex};
use crate::algebra::{CoefficientValuation, LaurentPolynomial};
use crate::error::Result;

/// A family of coefficient valuations contributing corner loci.
pub trait ValuationFamily: Send + Sync {
    fn name(&self) -> &'static str;
    fn complexes(&self, f: &LaurentPolynomial, exceptional: &[u64]) -> Result<Vec<TropicalComplex>>;
}

pub struct ZeroFamily;
pub struct PAdicFamily;
/// Residue loci at exceptional primes, one complex per prime holding the
/// union of all branches (the locus of `f mod p`).
pub struct ResidueFamily;

impl ValuationFamily for ZeroFamily {
    fn name(&self) -> &'static str {
        "zero"
    }

    fn complexes(&self, f: &LaurentPolynomial, _: &[u64]) -> Result<Vec<TropicalComplex>> {
        Ok(vec![locus(f, CoefficientValuation::Zero)?])
    }
}

impl ValuationFamily for PAdicFamily {
    fn name(&self) -> &'static str {
        "p-adic"
    }

    fn complexes(&self, f: &LaurentPolynomial, exceptional: &[u64]) -> Result<Vec<TropicalComplex>> {
        exceptional.iter().map(|&p| locus(f, CoefficientValuation::PAdic(p))).collect()
    }
}

impl ValuationFamily for ResidueFamily {
    fn name(&self) -> &'static str {
        "residue"
    }

    fn complexes(&self, f: &LaurentPolynomial, exceptional: &[u64]) -> Result<Vec<TropicalComplex>> {
        exceptional.iter().map(|&p| locus(f, CoefficientValuation::ResidueZero(p))).collect()
    }
}

pub struct FamilyRegistry {
    entries: Vec<Box<dyn ValuationFamily>>,
}

impl Default for FamilyRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(ZeroFamily));
        r.register(Box::new(PAdicFamily));
        r.register(Box::new(ResidueFamily));
        r
    }
}

impl FamilyRegistry {
    pub fn empty() -> Self {
        Self { entries: Vec::new() }
    }

    pub fn register(&mut self, family: Box<dyn ValuationFamily>) {
        self.entries.retain(|e| e.name() != family.name());
        self.entries.push(family);
    }

    pub fn get(&self, name: &str) -> Option<&dyn ValuationFamily> {
        self.entries.iter().find(|e| e.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    pub fn complexes(&self, f: &LaurentPolynomial, exceptional: &[u64]) -> Result<Vec<TropicalComplex>> {
        let mut out = Vec::new();
        for family in &self.entries {
            out.extend(family.complexes(f, exceptional)?);
        }
        Ok(out)
    }
}
