use std::collections::btree_map::Entry;
use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::ser::{SerializeMap, SerializeStruct};
use serde::{Serialize, Serializer};

use super::field::{cyclotomic, FieldElement, NumberField};
use crate::algebra::integer::exact_rational_root;
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// Relative precision used when an exact input has an infinite power series.
pub const DEFAULT_RELATIVE_PRECISION: i64 = 24;

/// Truncated series `sum c_e x^e` with rational exponents of bounded
/// denominator, coefficients in a [`NumberField`].
///
/// `precision = Some(N)` means the series is known modulo `x^N`; `None`
/// means the stored terms are the whole (finite) series.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FractionalSeries {
    field: NumberField,
    terms: BTreeMap<Rational, FieldElement>,
    precision: Option<Rational>,
}

impl FractionalSeries {
    pub fn new(
        field: NumberField,
        terms: impl IntoIterator<Item = (Rational, FieldElement)>,
        precision: Option<Rational>,
    ) -> Self {
        let mut s = Self {
            field,
            terms: BTreeMap::new(),
            precision,
        };
        for (e, c) in terms {
            s.add_term(e, c);
        }
        s
    }

    /// Series over `Q` from `(exponent, coefficient)` pairs.
    pub fn from_rational(terms: &[(Rational, Rational)], precision: Option<Rational>) -> Self {
        Self::new(
            NumberField::rationals(),
            terms.iter().map(|(e, c)| (e.clone(), FieldElement::rational(c.clone()))),
            precision,
        )
    }

    pub fn zero(field: NumberField) -> Self {
        Self::new(field, [], None)
    }

    pub fn monomial(field: NumberField, c: FieldElement, e: Rational) -> Self {
        Self::new(field, [(e, c)], None)
    }

    fn add_term(&mut self, e: Rational, c: FieldElement) {
        if c.is_zero() || self.precision.as_ref().is_some_and(|n| e >= *n) {
            return;
        }
        match self.terms.entry(e) {
            Entry::Vacant(v) => {
                v.insert(c);
            }
            Entry::Occupied(mut o) => {
                let sum = o.get().add(&c);
                if sum.is_zero() {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
    }

    pub fn field(&self) -> &NumberField {
        &self.field
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Rational, &FieldElement)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, e: &Rational) -> FieldElement {
        self.terms.get(e).cloned().unwrap_or_else(FieldElement::zero)
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn precision(&self) -> Option<&Rational> {
        self.precision.as_ref()
    }

    pub fn is_exact(&self) -> bool {
        self.precision.is_none()
    }

    /// Lowest exponent with a nonzero coefficient.
    pub fn valuation(&self) -> Option<&Rational> {
        self.terms.keys().next()
    }

    /// Least common denominator of all exponents and of the precision.
    pub fn ramification(&self) -> u64 {
        let mut d = BigInt::one();
        for e in self.terms.keys().chain(self.precision.iter()) {
            d = d.lcm(e.denom());
        }
        d.to_u64().unwrap_or(u64::MAX)
    }

    /// Lower bound for the order of the series: its valuation, or the
    /// precision when nothing is known to be nonzero.
    fn order_bound(&self) -> Option<Rational> {
        self.valuation().cloned().or_else(|| self.precision.clone())
    }

    fn common_field(&self, o: &Self) -> NumberField {
        match (self.field.is_rational(), o.field.is_rational()) {
            (true, _) => o.field.clone(),
            (_, true) => self.field.clone(),
            _ => {
                assert_eq!(self.field, o.field, "series over different extensions");
                self.field.clone()
            }
        }
    }

    /// The same series regarded over `field` (which must contain the coefficients).
    pub fn with_field(&self, field: &NumberField) -> Self {
        Self {
            field: field.clone(),
            terms: self.terms.clone(),
            precision: self.precision.clone(),
        }
    }

    pub fn truncate(&self, n: &Rational) -> Self {
        let precision = match &self.precision {
            Some(p) if p < n => p.clone(),
            _ => n.clone(),
        };
        Self::new(
            self.field.clone(),
            self.terms.iter().map(|(e, c)| (e.clone(), c.clone())),
            Some(precision),
        )
    }

    pub fn add(&self, o: &Self) -> Self {
        let precision = min_opt(self.precision.clone(), o.precision.clone());
        let mut s = Self::new(self.common_field(o), [], precision);
        for (e, c) in self.terms.iter().chain(o.terms.iter()) {
            s.add_term(e.clone(), c.clone());
        }
        s
    }

    pub fn neg(&self) -> Self {
        Self {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c.neg())).collect(),
            precision: self.precision.clone(),
        }
    }

    pub fn sub(&self, o: &Self) -> Self {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Self) -> Self {
        let field = self.common_field(o);
        let exact_zero = |s: &Self| s.is_exact() && s.is_empty();
        if exact_zero(self) || exact_zero(o) {
            return Self::zero(field);
        }
        let left = self.precision.as_ref().zip(o.order_bound()).map(|(p, v)| p + v);
        let right = o.precision.as_ref().zip(self.order_bound()).map(|(p, v)| p + v);
        let precision = min_opt(left, right);
        if field.is_rational() {
            return self.mul_rational(o, precision);
        }
        let mut acc: BTreeMap<Rational, FieldElement> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &o.terms {
                let e = ea + eb;
                if precision.as_ref().is_some_and(|n| e >= *n) {
                    continue;
                }
                let slot = acc.entry(e).or_insert_with(FieldElement::zero);
                *slot = slot.add(&field.mul(ca, cb));
            }
        }
        Self::new(field, acc, precision)
    }

    /// Product over `Q` on integer keys: exponents scaled by their common
    /// denominator, coefficients cleared to integers and divided out once.
    fn mul_rational(&self, o: &Self, precision: Option<Rational>) -> Self {
        let mut den = BigInt::one();
        for e in self.terms.keys().chain(o.terms.keys()).chain(precision.iter()) {
            den = den.lcm(e.denom());
        }
        let key = |e: &Rational| -> BigInt { (e * BigRational::from_integer(den.clone())).to_integer() };
        let cleared = |s: &Self| -> (BigInt, Vec<(BigInt, BigInt)>) {
            let d = s
                .terms
                .values()
                .fold(BigInt::one(), |acc, c| acc.lcm(c.coordinate(0).denom()));
            let scale = BigRational::from_integer(d.clone());
            let terms = s
                .terms
                .iter()
                .map(|(e, c)| (key(e), (c.coordinate(0) * &scale).to_integer()))
                .collect();
            (d, terms)
        };
        let (da, ta) = cleared(self);
        let (db, tb) = cleared(o);
        let cutoff = precision.as_ref().map(key);
        let mut acc: BTreeMap<BigInt, BigInt> = BTreeMap::new();
        for (ka, ca) in &ta {
            for (kb, cb) in &tb {
                let k = ka + kb;
                if cutoff.as_ref().is_some_and(|n| k >= *n) {
                    continue;
                }
                *acc.entry(k).or_insert_with(BigInt::zero) += ca * cb;
            }
        }
        let d = da * db;
        let terms = acc.into_iter().filter(|(_, c)| !c.is_zero()).map(|(k, c)| {
            (
                BigRational::new(k, den.clone()),
                FieldElement::rational(BigRational::new(c, d.clone())),
            )
        });
        Self::new(NumberField::rationals(), terms, precision)
    }

    pub fn scale(&self, c: &FieldElement) -> Self {
        let field = self.field.clone();
        Self::new(
            field.clone(),
            self.terms.iter().map(|(e, a)| (e.clone(), field.mul(a, c))),
            self.precision.clone(),
        )
    }

    /// Multiplies by `x^e`.
    pub fn shift(&self, e: &Rational) -> Self {
        Self {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(k, c)| (k + e, c.clone())).collect(),
            precision: self.precision.as_ref().map(|p| p + e),
        }
    }

    pub fn pow(&self, k: u32) -> Self {
        let mut acc = Self::monomial(self.field.clone(), FieldElement::one(), BigRational::zero());
        let mut base = self.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = acc.mul(&base);
            }
            k >>= 1;
            if k > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }

    /// Substitutes `x -> x^m` for a positive rational `m`.
    pub fn compose_power(&self, m: &Rational) -> Self {
        Self {
            field: self.field.clone(),
            terms: self.terms.iter().map(|(e, c)| (e * m, c.clone())).collect(),
            precision: self.precision.as_ref().map(|p| p * m),
        }
    }

    /// Whether the two series agree up to the smaller of their precisions.
    pub fn agrees_with(&self, o: &Self) -> bool {
        let d = self.sub(o);
        d.is_empty()
    }
}

fn min_opt(a: Option<Rational>, b: Option<Rational>) -> Option<Rational> {
    match (a, b) {
        (Some(a), Some(b)) => Some(a.min(b)),
        (a, None) => a,
        (None, b) => b,
    }
}

/// Generalized binomial coefficient `C(e, k)`.
pub(crate) fn binomial(e: &Rational, k: u32) -> Rational {
    let mut acc = BigRational::one();
    for i in 0..k {
        acc = acc * (e - BigRational::from_integer(BigInt::from(i))) / BigRational::from_integer(BigInt::from(i + 1));
    }
    acc
}

/// `zeta^u` for `zeta` a primitive `order`-th root of unity, if `field` holds it.
fn root_of_unity(field: &NumberField, order: u32, u: u32) -> Option<FieldElement> {
    let g = order.gcd(&u);
    let (order, u) = (order / g, u / g);
    match order {
        1 => Some(FieldElement::one()),
        2 => Some(FieldElement::integer(-1)),
        _ if field.modulus() == Some(&cyclotomic(order)) => Some(field.pow(&field.generator()?, u)),
        _ => None,
    }
}

/// `s^e` times the twist `zeta_b^(u-1)`, where `b` is the denominator of
/// `e`, expanded binomially around the lowest term of `s`. The index `u`
/// counts roots of unity from 1, so `u = 1` is the principal power.
pub fn series_power_twist(s: &FractionalSeries, e: &Rational, u: u32) -> Result<FractionalSeries> {
    if u == 0 {
        return Err(Error::InvalidArgument("root-of-unity index starts at 1".into()));
    }
    let field = s.field.clone();
    let (k0, c0) = match s.terms.iter().next() {
        Some((k, c)) => (k.clone(), c.clone()),
        None => return Err(Error::ZeroSeries),
    };
    if e.is_zero() {
        return Ok(FractionalSeries::monomial(field, FieldElement::one(), BigRational::zero()));
    }
    let a = e.numer().to_i64().ok_or_else(|| Error::InvalidArgument("exponent too large".into()))?;
    let b = e.denom().to_u32().ok_or_else(|| Error::InvalidArgument("exponent too large".into()))?;

    let lead = if b == 1 {
        field.powi(&c0, a).ok_or(Error::ZeroSeries)?
    } else {
        let r = c0
            .as_rational()
            .ok_or_else(|| Error::ExtensionRequired(format!("root of order {b} of {c0}")))?;
        let ra = if a >= 0 {
            num_traits::pow(r, a as usize)
        } else {
            num_traits::pow(r.recip(), a.unsigned_abs() as usize)
        };
        FieldElement::rational(
            exact_rational_root(&ra, b)
                .ok_or_else(|| Error::ExtensionRequired(format!("root of order {b} of {ra}")))?,
        )
    };
    let twist = root_of_unity(&field, b, (u - 1) % b)
        .ok_or_else(|| Error::ExtensionRequired(format!("root of unity of order {b} in {field}")))?;
    let lead = field.mul(&lead, &twist);

    // h = s / (c0 x^k0) - 1, of positive order
    let inv = field.inv(&c0).ok_or(Error::ZeroSeries)?;
    let h = s
        .shift(&-k0.clone())
        .scale(&inv)
        .sub(&FractionalSeries::monomial(field.clone(), FieldElement::one(), BigRational::zero()));

    let one = FractionalSeries::monomial(field.clone(), FieldElement::one(), BigRational::zero());
    let mut body = one.clone();
    if e.is_integer() && !e.is_negative() {
        let mut power = one;
        for k in 1..=a as u32 {
            power = power.mul(&h);
            body = body.add(&power.scale(&FieldElement::rational(binomial(e, k))));
        }
    } else if !(h.is_empty() && h.is_exact()) {
        let rel = h
            .precision
            .clone()
            .unwrap_or_else(|| BigRational::from_integer(BigInt::from(DEFAULT_RELATIVE_PRECISION)));
        let h = h.truncate(&rel);
        let step = h.order_bound().unwrap_or_else(BigRational::one);
        let mut power = one;
        let mut k = 1u32;
        while BigRational::from_integer(BigInt::from(k)) * &step < rel {
            power = power.mul(&h);
            body = body.add(&power.scale(&FieldElement::rational(binomial(e, k))));
            k += 1;
        }
        body = body.truncate(&rel);
    }
    Ok(body.scale(&lead).shift(&(k0 * e)))
}

impl Serialize for FieldElement {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

struct Terms<'a>(&'a BTreeMap<Rational, FieldElement>);

impl Serialize for Terms<'_> {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut m = s.serialize_map(Some(self.0.len()))?;
        for (e, c) in self.0 {
            m.serialize_entry(&e.to_string(), c)?;
        }
        m.end()
    }
}

impl Serialize for FractionalSeries {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        let mut st = s.serialize_struct("FractionalSeries", 4)?;
        st.serialize_field("field", &self.field.to_string())?;
        st.serialize_field("ramification", &self.ramification())?;
        st.serialize_field("terms", &Terms(&self.terms))?;
        st.serialize_field("precision", &self.precision.as_ref().map(|p| p.to_string()))?;
        st.end()
    }
}

impl std::fmt::Display for FractionalSeries {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let mut first = true;
        for (e, c) in &self.terms {
            let (neg, mag) = match c.as_rational() {
                Some(r) if r.is_negative() => (true, FieldElement::rational(-r)),
                _ => (false, c.clone()),
            };
            let sep = match (first, neg) {
                (true, true) => "-",
                (true, false) => "",
                (false, true) => " - ",
                (false, false) => " + ",
            };
            first = false;
            let mono = if e.is_zero() {
                String::new()
            } else if e.is_one() {
                "x".to_string()
            } else if e.is_integer() && !e.is_negative() {
                format!("x^{e}")
            } else {
                format!("x^({e})")
            };
            let body = match (mag == FieldElement::one(), mono.is_empty()) {
                (true, true) => "1".to_string(),
                (true, false) => mono,
                (false, true) => mag.to_string(),
                (false, false) => format!("{mag}*{mono}"),
            };
            write!(f, "{sep}{body}")?;
        }
        if first {
            write!(f, "0")?;
        }
        match &self.precision {
            Some(p) if p.is_integer() => write!(f, " + O(x^{p})"),
            Some(p) => write!(f, " + O(x^({p}))"),
            None => Ok(()),
        }
    }
}
