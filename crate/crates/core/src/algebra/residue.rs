use std::collections::BTreeMap;
use std::fmt;

use super::integer::{check_prime, inv_mod, mul_mod, residue};
use super::laurent::{default_vars, Exponent, LaurentPolynomial};
use crate::error::Result;

/// Laurent polynomial over the prime field `F_p`; coefficients in `[1, p-1]`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct ResiduePolynomial {
    prime: u64,
    rank: usize,
    terms: BTreeMap<Exponent, u64>,
}

impl ResiduePolynomial {
    pub fn zero(rank: usize, prime: u64) -> Self {
        Self {
            prime,
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn from_terms(
        rank: usize,
        prime: u64,
        terms: impl IntoIterator<Item = (Exponent, u64)>,
    ) -> Self {
        let mut out = Self::zero(rank, prime);
        for (e, c) in terms {
            assert_eq!(e.len(), rank, "exponent arity");
            out.add_term(e, c % prime);
        }
        out
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: u64) {
        let c = c % self.prime;
        if c == 0 {
            return;
        }
        let p = self.prime;
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let s = (*o.get() + c) % p;
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn prime(&self) -> u64 {
        self.prime
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Units of `F_p[x^±1, ...]` are the nonzero monomials.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &u64)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coefficient(&self, e: &[i64]) -> u64 {
        self.terms.get(e).copied().unwrap_or(0)
    }

    pub fn leading(&self) -> Option<(&Exponent, &u64)> {
        self.terms.iter().next_back()
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = Self::zero(self.rank, self.prime);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), mul_mod(*v, c % self.prime, self.prime));
        }
        out
    }

    /// Scales so that the lexicographically last coefficient is 1.
    pub fn monic(&self) -> Self {
        match self.leading() {
            None => self.clone(),
            Some((_, &c)) => self.scale(inv_mod(c, self.prime)),
        }
    }

    pub fn shift(&self, shift: &[i64]) -> Self {
        Self {
            prime: self.prime,
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), *c))
                .collect(),
        }
    }

    pub fn min_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    /// Shifts so that every variable's minimal exponent is zero.
    pub fn clear_monomial(&self) -> Self {
        match self.min_exponents() {
            None => self.clone(),
            Some(m) => {
                let neg: Exponent = m.iter().map(|v| -v).collect();
                self.shift(&neg)
            }
        }
    }

    /// Canonical associate: monomial cleared and monic.
    pub fn normalized(&self) -> Self {
        self.clear_monomial().monic()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.prime, self.rank), (rhs.prime, rhs.rank));
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), *c);
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.prime - 1)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!((self.prime, self.rank), (rhs.prime, rhs.rank));
        let mut out = Self::zero(self.rank, self.prime);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(
                    a.iter().zip(b).map(|(x, y)| x + y).collect(),
                    mul_mod(*ca, *cb, self.prime),
                );
            }
        }
        out
    }

    /// Exact division in the Laurent ring, `None` if `divisor` does not divide.
    ///
    /// Uses lexicographic leading terms; the quotient must lie in the
    /// exponent box `[min(self) - min(d), max(self) - max(d)]`.
    pub fn div_exact(&self, divisor: &Self) -> Option<Self> {
        assert!(!divisor.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(self.clone());
        }
        let p = self.prime;
        let (lo_s, hi_s) = (self.min_exponents()?, max_exponents(&self.terms)?);
        let (lo_d, hi_d) = (divisor.min_exponents()?, max_exponents(&divisor.terms)?);
        let lo: Vec<i64> = lo_s.iter().zip(&lo_d).map(|(a, b)| a - b).collect();
        let hi: Vec<i64> = hi_s.iter().zip(&hi_d).map(|(a, b)| a - b).collect();
        let (lead_e, lead_c) = divisor.leading()?;
        let inv = inv_mod(*lead_c, p);
        let mut rem = self.clone();
        let mut quot = Self::zero(self.rank, p);
        while let Some((e, c)) = rem.leading().map(|(e, c)| (e.clone(), *c)) {
            let qe: Exponent = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().zip(&lo).any(|(a, b)| a < b) || qe.iter().zip(&hi).any(|(a, b)| a > b) {
                return None;
            }
            let qc = mul_mod(c, inv, p);
            let term = Self::from_terms(self.rank, p, [(qe.clone(), qc)]);
            rem = rem.sub(&term.mul(divisor));
            quot.add_term(qe, qc);
        }
        Some(quot)
    }

    /// Lifts coefficients to integers in `[1, p-1]`.
    pub fn lift(&self) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(self.rank, self.terms.iter().map(|(e, c)| (e.clone(), *c)))
            .expect("arity preserved")
    }

    pub fn to_text(&self, vars: &[&str]) -> String {
        self.lift().to_text(vars)
    }
}

fn max_exponents(terms: &BTreeMap<Exponent, u64>) -> Option<Exponent> {
    let mut it = terms.keys();
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.max(b)).collect()))
}

impl fmt::Display for ResiduePolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_vars(self.rank);
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        write!(f, "{} (mod {})", self.to_text(&names), self.prime)
    }
}

/// Coefficientwise reduction modulo a prime; the result may be zero.
pub fn reduce_mod_p(f: &LaurentPolynomial, p: u64) -> Result<ResiduePolynomial> {
    check_prime(p)?;
    Ok(ResiduePolynomial::from_terms(
        f.rank(),
        p,
        f.terms().map(|(e, c)| (e.clone(), residue(c, p))),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::error::Error;

    fn lp(terms: &[(&[i64], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    #[test]
    fn reduction_examples() {
        let f = lp(&[(&[0, 1], 1), (&[1, 0], -1), (&[0, 0], -2)]);
        let r2 = reduce_mod_p(&f, 2).unwrap();
        assert_eq!(r2, ResiduePolynomial::from_terms(2, 2, [(vec![0, 1], 1), (vec![1, 0], 1)]));
        let r3 = reduce_mod_p(&f, 3).unwrap();
        assert_eq!(
            r3,
            ResiduePolynomial::from_terms(
                2,
                3,
                [(vec![0, 1], 1), (vec![1, 0], 2), (vec![0, 0], 1)]
            )
        );
        let g = lp(&[(&[1, 0], 3)]);
        assert!(reduce_mod_p(&g, 3).unwrap().is_zero());
        assert_eq!(reduce_mod_p(&f, 6), Err(Error::NotPrime(6)));
    }

    #[test]
    fn exact_division() {
        // y^2 - x^2 = (y - x)(y + x) over F_7
        let f = reduce_mod_p(&lp(&[(&[0, 2], 1), (&[2, 0], -1)]), 7).unwrap();
        let g = reduce_mod_p(&lp(&[(&[0, 1], 1), (&[1, 0], -1)]), 7).unwrap();
        let q = f.div_exact(&g).unwrap();
        assert_eq!(q, reduce_mod_p(&lp(&[(&[0, 1], 1), (&[1, 0], 1)]), 7).unwrap());
        let h = reduce_mod_p(&lp(&[(&[0, 1], 1), (&[0, 0], 1)]), 7).unwrap();
        assert!(f.div_exact(&h).is_none());
    }
}
