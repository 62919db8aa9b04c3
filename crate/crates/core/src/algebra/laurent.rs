use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::integer::gcd_all;
use crate::error::{Error, Result};

/// Exponent vector of a Laurent monomial.
pub type Exponent = Vec<i64>;

/// Sparse Laurent polynomial with integer coefficients in `rank` variables.
///
/// Terms are kept in a `BTreeMap`, so iteration (and therefore printing
/// and serialization) is in lexicographic exponent order. Zero
/// coefficients are never stored.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct LaurentPolynomial {
    rank: usize,
    terms: BTreeMap<Exponent, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero(rank: usize) -> Self {
        Self {
            rank,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(rank: usize, c: impl Into<BigInt>) -> Self {
        Self::monomial(rank, c, vec![0; rank])
    }

    /// `c * x^e`. Panics if `e.len() != rank`.
    pub fn monomial(rank: usize, c: impl Into<BigInt>, e: Exponent) -> Self {
        assert_eq!(e.len(), rank, "exponent arity");
        let c = c.into();
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(e, c);
        }
        Self { rank, terms }
    }

    /// The `i`-th variable.
    pub fn variable(rank: usize, i: usize) -> Self {
        let mut e = vec![0; rank];
        e[i] = 1;
        Self::monomial(rank, 1, e)
    }

    /// Builds a polynomial from (exponent, coefficient) pairs, summing
    /// repeated exponents and dropping zeros.
    pub fn from_terms<C: Into<BigInt>>(
        rank: usize,
        terms: impl IntoIterator<Item = (Exponent, C)>,
    ) -> Result<Self> {
        let mut out = Self::zero(rank);
        for (e, c) in terms {
            if e.len() != rank {
                return Err(Error::ArityMismatch {
                    expected: rank,
                    found: e.len(),
                });
            }
            out.add_term(e, c.into());
        }
        Ok(out)
    }

    pub(crate) fn add_term(&mut self, e: Exponent, c: BigInt) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
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

    pub fn terms(&self) -> impl Iterator<Item = (&Exponent, &BigInt)> {
        self.terms.iter()
    }

    pub fn support(&self) -> impl Iterator<Item = &Exponent> {
        self.terms.keys()
    }

    pub fn coefficient(&self, e: &[i64]) -> BigInt {
        self.terms.get(e).cloned().unwrap_or_default()
    }

    pub fn is_monomial(&self) -> bool {
        self.terms.len() == 1
    }

    /// Units of `Z[x^±1, ...]` are exactly `±x^e`.
    pub fn is_unit(&self) -> bool {
        self.terms.len() == 1 && self.terms.values().all(|c| c.abs().is_one())
    }

    /// Gcd of all coefficients (positive).
    pub fn content(&self) -> Result<BigInt> {
        if self.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(gcd_all(self.terms.values()))
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.rank);
        }
        Self {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, v)| (e.clone(), v * c)).collect(),
        }
    }

    /// Exact division of every coefficient by `c`. Panics if inexact.
    pub fn div_scalar(&self, c: &BigInt) -> Self {
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, v)| {
                    assert!((v % c).is_zero(), "inexact scalar division");
                    (e.clone(), v / c)
                })
                .collect(),
        }
    }

    /// Divides by the content and makes the lexicographically last
    /// coefficient positive.
    pub fn primitive_part(&self) -> Result<Self> {
        let c = self.content()?;
        let p = self.div_scalar(&c);
        let last = p.terms.values().next_back().expect("nonzero");
        Ok(if last.is_negative() { -&p } else { p })
    }

    /// Multiplies by the monomial `x^shift`.
    pub fn shift(&self, shift: &[i64]) -> Self {
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| (e.iter().zip(shift).map(|(a, b)| a + b).collect(), c.clone()))
                .collect(),
        }
    }

    /// Componentwise minimum exponent.
    pub fn min_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.min(b)).collect()))
    }

    pub fn max_exponents(&self) -> Option<Exponent> {
        let mut it = self.terms.keys();
        let first = it.next()?.clone();
        Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.max(b)).collect()))
    }

    /// Multiplies by the unit monomial that makes every variable's minimal
    /// exponent zero. Returns the normalized polynomial and the shift used.
    pub fn clear_monomial(&self) -> (Self, Exponent) {
        match self.min_exponents() {
            None => (self.clone(), vec![0; self.rank]),
            Some(m) => {
                let neg: Exponent = m.iter().map(|v| -v).collect();
                (self.shift(&neg), neg)
            }
        }
    }

    /// Spread `max - min` of the exponent of variable `var`.
    pub fn degree_in(&self, var: usize) -> i64 {
        match (self.min_exponents(), self.max_exponents()) {
            (Some(lo), Some(hi)) => hi[var] - lo[var],
            _ => 0,
        }
    }

    /// Total degree after monomial clearing.
    pub fn total_degree(&self) -> i64 {
        let (cleared, _) = self.clear_monomial();
        cleared
            .terms
            .keys()
            .map(|e| e.iter().sum::<i64>())
            .max()
            .unwrap_or(0)
    }

    pub fn swap_variables(&self, i: usize, j: usize) -> Self {
        Self {
            rank: self.rank,
            terms: self
                .terms
                .iter()
                .map(|(e, c)| {
                    let mut e = e.clone();
                    e.swap(i, j);
                    (e, c.clone())
                })
                .collect(),
        }
    }

    /// Applies an exponent map `e -> m(e)` (summing collisions).
    pub fn map_exponents(&self, rank: usize, m: impl Fn(&[i64]) -> Exponent) -> Self {
        let mut out = Self::zero(rank);
        for (e, c) in &self.terms {
            out.add_term(m(e), c.clone());
        }
        out
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::constant(self.rank, 1);
        for _ in 0..k {
            acc = &acc * self;
        }
        acc
    }

    /// Exact quotient over `Z`, or `None` if `d` does not divide `self`.
    ///
    /// Long division by the lexicographic leading term; every quotient
    /// exponent must stay inside the box forced by the exponent ranges.
    pub fn div_exact(&self, d: &Self) -> Option<Self> {
        assert!(!d.is_zero(), "division by zero");
        if self.is_zero() {
            return Some(self.clone());
        }
        let lo: Exponent = self.min_exponents()?.iter().zip(d.min_exponents()?).map(|(a, b)| a - b).collect();
        let hi: Exponent = self.max_exponents()?.iter().zip(d.max_exponents()?).map(|(a, b)| a - b).collect();
        let (lead_e, lead_c) = d.terms.iter().next_back()?;
        let mut rem = self.clone();
        let mut quot = Self::zero(self.rank);
        while let Some((e, c)) = rem.terms.iter().next_back().map(|(e, c)| (e.clone(), c.clone())) {
            let qe: Exponent = e.iter().zip(lead_e).map(|(a, b)| a - b).collect();
            if qe.iter().zip(&lo).any(|(a, b)| a < b) || qe.iter().zip(&hi).any(|(a, b)| a > b) {
                return None;
            }
            if !(&c % lead_c).is_zero() {
                return None;
            }
            let term = Self::monomial(self.rank, &c / lead_c, qe);
            rem = &rem - &(&term * d);
            quot = &quot + &term;
        }
        Some(quot)
    }

    /// Coefficients of powers of variable `var`, as polynomials in the
    /// remaining variables (the `var` slot set to 0). Keys are exponents of `var`.
    pub fn coefficients_in(&self, var: usize) -> BTreeMap<i64, LaurentPolynomial> {
        let mut out: BTreeMap<i64, LaurentPolynomial> = BTreeMap::new();
        for (e, c) in &self.terms {
            let mut rest = e.clone();
            rest[var] = 0;
            out.entry(e[var])
                .or_insert_with(|| Self::zero(self.rank))
                .add_term(rest, c.clone());
        }
        out
    }

    /// Canonical text form with the given variable names.
    pub fn to_text(&self, vars: &[&str]) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let mut s = String::new();
        for (i, (e, c)) in self.terms.iter().enumerate() {
            let neg = c.is_negative();
            if i == 0 {
                if neg {
                    s.push('-');
                }
            } else {
                s.push_str(if neg { " - " } else { " + " });
            }
            let a = c.abs();
            let mono = monomial_text(e, vars);
            match (a.is_one(), mono.is_empty()) {
                (_, true) => s.push_str(&a.to_string()),
                (true, false) => s.push_str(&mono),
                (false, false) => {
                    s.push_str(&a.to_string());
                    s.push('*');
                    s.push_str(&mono);
                }
            }
        }
        s
    }
}

fn monomial_text(e: &[i64], vars: &[&str]) -> String {
    let mut parts = Vec::new();
    for (k, &p) in e.iter().enumerate() {
        let name = vars.get(k).copied().unwrap_or("?");
        match p {
            0 => {}
            1 => parts.push(name.to_string()),
            _ => parts.push(format!("{name}^{p}")),
        }
    }
    parts.join("*")
}

/// Default variable names: `x, y` for rank ≤ 2, `x1..xs` otherwise.
pub fn default_vars(rank: usize) -> Vec<String> {
    match rank {
        1 => vec!["x".into()],
        2 => vec!["x".into(), "y".into()],
        _ => (1..=rank).map(|i| format!("x{i}")).collect(),
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = default_vars(self.rank);
        let names: Vec<&str> = names.iter().map(String::as_str).collect();
        f.write_str(&self.to_text(&names))
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: Self) -> LaurentPolynomial {
        assert_eq!(self.rank, rhs.rank);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: Self) -> LaurentPolynomial {
        assert_eq!(self.rank, rhs.rank);
        let mut out = self.clone();
        for (e, c) in &rhs.terms {
            out.add_term(e.clone(), -c);
        }
        out
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: Self) -> LaurentPolynomial {
        assert_eq!(self.rank, rhs.rank);
        let mut out = LaurentPolynomial::zero(self.rank);
        for (a, ca) in &self.terms {
            for (b, cb) in &rhs.terms {
                out.add_term(a.iter().zip(b).map(|(x, y)| x + y).collect(), ca * cb);
            }
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            rank: self.rank,
            terms: self.terms.iter().map(|(e, c)| (e.clone(), -c)).collect(),
        }
    }
}

macro_rules! forward_owned {
    ($tr:ident, $m:ident) => {
        impl $tr for LaurentPolynomial {
            type Output = LaurentPolynomial;
            fn $m(self, rhs: Self) -> LaurentPolynomial {
                (&self).$m(&rhs)
            }
        }
    };
}
forward_owned!(Add, add);
forward_owned!(Sub, sub);
forward_owned!(Mul, mul);

impl Neg for LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        -&self
    }
}
