use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::algebra::univariate::{
    degree, q_divrem, q_monic, q_mul, q_to_primitive_z, q_xgcd, trim, z_is_irreducible, QPoly,
};
use crate::algebra::Rational;
use crate::error::{Error, Result};

/// `Q` or a simple extension `Q[a]/(m(a))` with `m` monic and irreducible.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct NumberField {
    modulus: Option<QPoly>,
}

/// Element of a [`NumberField`]: a polynomial in the generator of degree
/// below the field degree. Constants are valid in every field.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FieldElement(QPoly);

impl FieldElement {
    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self::rational(BigRational::one())
    }

    pub fn rational(r: Rational) -> Self {
        Self(trim(vec![r]))
    }

    pub fn integer(n: impl Into<BigInt>) -> Self {
        Self::rational(BigRational::from_integer(n.into()))
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn as_rational(&self) -> Option<Rational> {
        match self.0.len() {
            0 => Some(BigRational::zero()),
            1 => Some(self.0[0].clone()),
            _ => None,
        }
    }

    /// Coordinate `k` in the power basis.
    pub fn coordinate(&self, k: usize) -> Rational {
        self.0.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn add(&self, o: &Self) -> Self {
        Self(crate::algebra::univariate::q_add(&self.0, &o.0))
    }

    pub fn sub(&self, o: &Self) -> Self {
        Self(crate::algebra::univariate::q_sub(&self.0, &o.0))
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, r: &Rational) -> Self {
        Self(crate::algebra::univariate::q_scale(&self.0, r))
    }
}

impl fmt::Display for FieldElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(r) = self.as_rational() {
            return write!(f, "{r}");
        }
        let mut parts = Vec::new();
        for (k, c) in self.0.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let mag = c.abs();
            let body = match (k, mag.is_one()) {
                (0, _) => format!("{mag}"),
                (1, true) => "a".to_string(),
                (1, false) => format!("{mag}*a"),
                (_, true) => format!("a^{k}"),
                _ => format!("{mag}*a^{k}"),
            };
            let sign = if c.is_negative() { "-" } else { "+" };
            if parts.is_empty() {
                parts.push(if c.is_negative() { format!("-{body}") } else { body });
            } else {
                parts.push(format!("{sign} {body}"));
            }
        }
        write!(f, "({})", parts.join(" "))
    }
}

impl Default for NumberField {
    fn default() -> Self {
        Self::rationals()
    }
}

impl NumberField {
    pub fn rationals() -> Self {
        Self { modulus: None }
    }

    /// `Q[a]/(m(a))`. A linear `m` gives `Q` itself.
    pub fn extension(min_poly: &[Rational]) -> Result<Self> {
        let m = q_monic(&trim(min_poly.to_vec()));
        match degree(&m) {
            None | Some(0) => Err(Error::InvalidArgument("constant minimal polynomial".into())),
            Some(1) => Ok(Self::rationals()),
            Some(_) => match z_is_irreducible(&q_to_primitive_z(&m)) {
                Some(true) => Ok(Self { modulus: Some(m) }),
                Some(false) => Err(Error::ReducibleModulus(poly_text(&m))),
                None => Err(Error::ReducibleModulus(format!("{} (undecided)", poly_text(&m)))),
            },
        }
    }

    pub fn is_rational(&self) -> bool {
        self.modulus.is_none()
    }

    pub fn degree(&self) -> usize {
        self.modulus.as_ref().map_or(1, |m| m.len() - 1)
    }

    pub fn modulus(&self) -> Option<&QPoly> {
        self.modulus.as_ref()
    }

    /// The adjoined element `a` (or `None` over `Q`).
    pub fn generator(&self) -> Option<FieldElement> {
        self.modulus
            .as_ref()
            .map(|_| FieldElement(vec![BigRational::zero(), BigRational::one()]))
    }

    fn reduce(&self, p: QPoly) -> FieldElement {
        match &self.modulus {
            None => FieldElement(trim(p)),
            Some(m) => FieldElement(q_divrem(&p, m).1),
        }
    }

    pub fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        self.reduce(q_mul(&a.0, &b.0))
    }

    pub fn inv(&self, a: &FieldElement) -> Option<FieldElement> {
        if a.is_zero() {
            return None;
        }
        match &self.modulus {
            None => Some(FieldElement::rational(a.0[0].recip())),
            Some(m) => {
                let (g, s, _) = q_xgcd(&a.0, m);
                debug_assert_eq!(g.len(), 1);
                Some(self.reduce(s))
            }
        }
    }

    pub fn div(&self, a: &FieldElement, b: &FieldElement) -> Option<FieldElement> {
        Some(self.mul(a, &self.inv(b)?))
    }

    pub fn pow(&self, a: &FieldElement, k: u32) -> FieldElement {
        let mut acc = FieldElement::one();
        let mut base = a.clone();
        let mut k = k;
        while k > 0 {
            if k & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            k >>= 1;
        }
        acc
    }

    /// Integer power, negative exponents through the inverse.
    pub fn powi(&self, a: &FieldElement, k: i64) -> Option<FieldElement> {
        let p = self.pow(a, k.unsigned_abs() as u32);
        if k < 0 {
            self.inv(&p)
        } else {
            Some(p)
        }
    }

    /// Whether `a` is a legal element of this field (degree below the field degree).
    pub fn contains(&self, a: &FieldElement) -> bool {
        a.0.len() <= self.degree()
    }
}

impl fmt::Display for NumberField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match &self.modulus {
            None => write!(f, "Q"),
            Some(m) => write!(f, "Q[a]/({})", poly_text(m)),
        }
    }
}

fn poly_text(m: &[Rational]) -> String {
    let mut parts = Vec::new();
    for (k, c) in m.iter().enumerate().rev() {
        if c.is_zero() {
            continue;
        }
        let mono = match k {
            0 => format!("{}", c.abs()),
            1 if c.abs().is_one() => "a".to_string(),
            1 => format!("{}*a", c.abs()),
            _ if c.abs().is_one() => format!("a^{k}"),
            _ => format!("{}*a^{k}", c.abs()),
        };
        let sign = if c.is_negative() { "-" } else { "+" };
        if parts.is_empty() {
            parts.push(if c.is_negative() { format!("-{mono}") } else { mono });
        } else {
            parts.push(format!("{sign} {mono}"));
        }
    }
    parts.join(" ")
}

/// `n`-th cyclotomic polynomial over `Q`.
pub(crate) fn cyclotomic(n: u32) -> QPoly {
    let mut p: QPoly = vec![BigRational::zero(); n as usize + 1];
    p[0] = -BigRational::one();
    p[n as usize] = BigRational::one();
    for d in 1..n {
        if n % d == 0 {
            p = q_divrem(&p, &cyclotomic(d)).0;
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;

    fn q(v: &[i64]) -> QPoly {
        v.iter().map(|&c| rat(c)).collect()
    }

    #[test]
    fn sqrt_two_arithmetic() {
        let k = NumberField::extension(&q(&[-2, 0, 1])).unwrap();
        let a = k.generator().unwrap();
        assert_eq!(k.mul(&a, &a), FieldElement::integer(2));
        let b = a.add(&FieldElement::one());
        let inv = k.inv(&b).unwrap();
        assert_eq!(k.mul(&b, &inv), FieldElement::one());
        assert_eq!(inv, FieldElement(q(&[-1, 1])));
        assert_eq!(b.to_string(), "(a + 1)");
    }

    #[test]
    fn reducible_modulus_rejected() {
        assert!(matches!(NumberField::extension(&q(&[-1, 0, 1])), Err(Error::ReducibleModulus(_))));
        assert!(NumberField::extension(&q(&[3, 1])).unwrap().is_rational());
    }

    #[test]
    fn cyclotomic_small() {
        assert_eq!(cyclotomic(1), q(&[-1, 1]));
        assert_eq!(cyclotomic(3), q(&[1, 1, 1]));
        assert_eq!(cyclotomic(4), q(&[1, 0, 1]));
        assert_eq!(cyclotomic(6), q(&[1, -1, 1]));
    }
}
