//! Newton polygon iteration for the branches of `F(x, y) = 0` at `x = 0`.
//!
//! Internally every step works with integer exponents in the current
//! parameter `t`, where `x = t^D`. Bivariate polynomials are stored as maps
//! from `(j, i)` (exponent of `y`, exponent of `t`) to coefficients.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Zero};
use serde::Serialize;

use super::field::{FieldElement, NumberField};
use super::series::{binomial, FractionalSeries};
use crate::algebra::integer::exact_rational_root;
use crate::algebra::univariate::{degree, q_to_primitive_z, z_factor, ZPoly};
use crate::algebra::{LaurentPolynomial, Rational};
use crate::error::{Error, Result};

/// Guard against polynomials with a repeated factor, whose branch
/// multiplicity never drops.
const MAX_SINGULAR_STEPS: usize = 64;

type BiPoly = BTreeMap<(i64, i64), FieldElement>;

/// One branch `x = t^d`, `y = g(t)`, standing for `conjugacy_size` roots
/// of `F` in `y` (its Galois conjugates, twists `t -> zeta t`, and
/// repetitions when `F` has a repeated factor).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PuiseuxBranch {
    pub ramification: u64,
    /// `y` as a series in `x` with exponents in `(1/d) Z`.
    pub series: FractionalSeries,
    pub conjugacy_size: usize,
}

impl PuiseuxBranch {
    /// `g(t)`, the series of `y` in the parameter `t = x^(1/d)`.
    pub fn parameter_series(&self) -> FractionalSeries {
        self.series
            .compose_power(&BigRational::from_integer(BigInt::from(self.ramification)))
    }

    /// `F(t^d, g(t))` with propagated precision; its precision is the
    /// residual frontier and it has no terms when the branch is correct.
    pub fn residual(&self, f: &LaurentPolynomial) -> FractionalSeries {
        let g = self.parameter_series();
        let field = g.field().clone();
        let d = self.ramification as i64;
        let mut acc = FractionalSeries::zero(field.clone());
        for (e, c) in f.terms() {
            let x_part = BigRational::from_integer(BigInt::from(d * e[0]));
            let y_part = if e[1] >= 0 {
                g.pow(e[1] as u32)
            } else {
                // negative powers of y only occur for Laurent input; clear them first
                unreachable!("residual expects a polynomial in y")
            };
            let term = y_part.shift(&x_part).scale(&FieldElement::integer(c.clone()));
            acc = acc.add(&term);
        }
        acc
    }
}

#[derive(Clone)]
struct State {
    field: NumberField,
    g: BiPoly,
    /// `x = t^big_d`
    big_d: i64,
    /// exponent of `t` multiplying the unknown tail `y_k`
    mu: i64,
    /// `y = S(t) + t^mu y_k`
    s: BTreeMap<i64, FieldElement>,
    conj: usize,
}

struct Root {
    field: NumberField,
    c: FieldElement,
    multiplicity: usize,
    weight: usize,
}

/// Expands every branch of `f` at `x = 0`. Each non-exact branch gets
/// at least `nterms` coefficient orders past its leading term.
pub fn puiseux_expand(f: &LaurentPolynomial, nterms: usize) -> Result<Vec<PuiseuxBranch>> {
    if f.rank() != 2 {
        return Err(Error::UnsupportedRank(f.rank()));
    }
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let (f0, _) = f.clear_monomial();
    if f0.degree_in(1) == 0 {
        return Err(Error::NotACurve);
    }
    let g: BiPoly = f0
        .terms()
        .map(|(e, c)| ((e[1], e[0]), FieldElement::integer(c.clone())))
        .collect();
    let state = State {
        field: NumberField::rationals(),
        g,
        big_d: 1,
        mu: 0,
        s: BTreeMap::new(),
        conj: 1,
    };
    let mut out = Vec::new();
    step(state, None, nterms.max(1), 0, &mut out)?;
    Ok(out)
}

fn step(st: State, r: Option<usize>, nterms: usize, depth: usize, out: &mut Vec<PuiseuxBranch>) -> Result<()> {
    if depth > MAX_SINGULAR_STEPS {
        return Err(Error::InvalidArgument(
            "branch multiplicity does not drop; the polynomial has a repeated factor".into(),
        ));
    }
    let jmin = st.g.keys().map(|k| k.0).min().unwrap_or(0);
    let jmax = match r {
        None => st.g.keys().map(|k| k.0).max().unwrap_or(0),
        Some(r) => {
            if jmin > 0 {
                // y_k = 0 is an exact root of multiplicity jmin
                out.push(finish(&st, None, st.conj * jmin as usize));
            }
            if r == 1 && jmin == 0 {
                out.push(regular(&st, nterms));
                return Ok(());
            }
            r as i64
        }
    };
    for ((j1, i1), (j2, i2)) in lower_edges(&st.g, jmax) {
        let (dj, di) = (j2 - j1, i1 - i2);
        let g = dj.gcd(&di);
        let (q, p) = (dj / g, di / g);
        let m = q * i1 + p * j1;
        let mut psi = vec![FieldElement::zero(); (dj / q) as usize + 1];
        for (&(j, i), c) in &st.g {
            if q * i + p * j == m {
                psi[((j - j1) / q) as usize] = c.clone();
            }
        }
        for root in characteristic_roots(&st.field, &psi, q)? {
            let field = root.field.clone();
            let mut s: BTreeMap<i64, FieldElement> = st.s.iter().map(|(k, c)| (k * q, c.clone())).collect();
            let mu = q * st.mu + p;
            s.insert(mu, root.c.clone());
            let next = State {
                g: substitute(&field, &st.g, q, p, &root.c, m),
                field,
                big_d: st.big_d * q,
                mu,
                s,
                conj: st.conj * root.weight,
            };
            step(next, Some(root.multiplicity), nterms, depth + 1, out)?;
        }
    }
    Ok(())
}

/// Edges of the lower convex hull of the support in the `(j, i)` plane,
/// restricted to `j <= jmax`, left to right.
fn lower_edges(g: &BiPoly, jmax: i64) -> Vec<((i64, i64), (i64, i64))> {
    let mut lowest: BTreeMap<i64, i64> = BTreeMap::new();
    for &(j, i) in g.keys() {
        if j <= jmax {
            let e = lowest.entry(j).or_insert(i);
            *e = (*e).min(i);
        }
    }
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for (j, i) in lowest {
        while hull.len() >= 2 {
            let (a, b) = (hull[hull.len() - 2], hull[hull.len() - 1]);
            let cross = (b.0 - a.0) as i128 * (i - a.1) as i128 - (b.1 - a.1) as i128 * (j - a.0) as i128;
            if cross <= 0 {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((j, i));
    }
    hull.windows(2).map(|w| (w[0], w[1])).collect()
}

/// `t^-m G(t^q, t^p (c + y))`.
fn substitute(field: &NumberField, g: &BiPoly, q: i64, p: i64, c: &FieldElement, m: i64) -> BiPoly {
    let jmax = g.keys().map(|k| k.0).max().unwrap_or(0);
    let mut cpow = vec![FieldElement::one()];
    for k in 1..=jmax as usize {
        cpow.push(field.mul(&cpow[k - 1], c));
    }
    let mut out: BiPoly = BTreeMap::new();
    for (&(j, i), a) in g {
        let e = q * i + p * j - m;
        for l in 0..=j {
            let coeff = field.mul(a, &cpow[(j - l) as usize]).scale(&binomial(&int(j), l as u32));
            add_into(&mut out, (l, e), coeff);
        }
    }
    out
}

fn add_into(g: &mut BiPoly, key: (i64, i64), c: FieldElement) {
    if c.is_zero() {
        return;
    }
    let slot = g.entry(key).or_insert_with(FieldElement::zero);
    *slot = slot.add(&c);
    if slot.is_zero() {
        g.remove(&key);
    }
}

fn int(n: i64) -> Rational {
    BigRational::from_integer(BigInt::from(n))
}

/// Roots `c != 0` of `psi(c^q)`, one representative per class of
/// roots identified by Galois conjugation and `t -> zeta_q t`.
fn characteristic_roots(field: &NumberField, psi: &[FieldElement], q: i64) -> Result<Vec<Root>> {
    let rational: Option<Vec<Rational>> = psi.iter().map(|c| c.as_rational()).collect();
    let qu = q as u32;
    if let Some(coeffs) = rational {
        let z = q_to_primitive_z(&coeffs);
        let factors = z_factor(&z)
            .ok_or_else(|| Error::ExtensionRequired("characteristic polynomial could not be factored".into()))?;
        let mut roots = Vec::new();
        for (h, mult) in factors {
            let dh = degree(&h).unwrap_or(0);
            let weight = q as usize * dh;
            if dh == 1 {
                let rho = BigRational::new(-h[0].clone(), h[1].clone());
                if let Some(c) = exact_rational_root(&rho, qu) {
                    roots.push(Root {
                        field: field.clone(),
                        c: FieldElement::rational(c),
                        multiplicity: mult as usize,
                        weight,
                    });
                    continue;
                }
            }
            if !field.is_rational() {
                return Err(Error::ExtensionRequired(format!(
                    "characteristic factor of degree {dh} (power {q}) over {field}"
                )));
            }
            let (ext, c) = adjoin_root_of(&compose_power(&h, q as usize))?;
            roots.push(Root {
                field: ext,
                c,
                multiplicity: mult as usize,
                weight,
            });
        }
        return Ok(roots);
    }
    // coefficients in a proper extension: linear, or a pure power (z - b)^n
    let n = psi.len() - 1;
    let lc = psi[n].clone();
    let beta = field
        .div(&psi[n - 1], &lc.scale(&int(n as i64)))
        .map(|v| v.neg())
        .ok_or_else(|| Error::InvalidArgument("zero leading coefficient".into()))?;
    for (k, c) in psi.iter().enumerate() {
        let expected = field
            .mul(&lc, &field.pow(&beta.neg(), (n - k) as u32))
            .scale(&binomial(&int(n as i64), k as u32));
        if expected != *c {
            return Err(Error::ExtensionRequired(format!(
                "characteristic polynomial of degree {n} over {field}"
            )));
        }
    }
    let c = if q == 1 {
        beta
    } else {
        let b = beta
            .as_rational()
            .and_then(|b| exact_rational_root(&b, qu))
            .ok_or_else(|| Error::ExtensionRequired(format!("root of order {q} over {field}")))?;
        FieldElement::rational(b)
    };
    Ok(vec![Root {
        field: field.clone(),
        c,
        multiplicity: n,
        weight: q as usize,
    }])
}

/// `h(z^q)`.
fn compose_power(h: &ZPoly, q: usize) -> ZPoly {
    let mut out = vec![BigInt::zero(); (h.len() - 1) * q + 1];
    for (k, c) in h.iter().enumerate() {
        out[k * q] = c.clone();
    }
    out
}

/// A root of `h` (irreducible factors over `Q` tried by ascending degree),
/// together with the field it lives in.
fn adjoin_root_of(h: &ZPoly) -> Result<(NumberField, FieldElement)> {
    let mut factors = z_factor(h)
        .ok_or_else(|| Error::ExtensionRequired("characteristic polynomial could not be factored".into()))?;
    factors.sort_by_key(|(f, _)| (f.len(), f.clone()));
    let (m, _) = factors
        .into_iter()
        .next()
        .ok_or_else(|| Error::InvalidArgument("constant characteristic polynomial".into()))?;
    if m.len() == 2 {
        return Ok((
            NumberField::rationals(),
            FieldElement::rational(BigRational::new(-m[0].clone(), m[1].clone())),
        ));
    }
    let mq: Vec<Rational> = m.iter().map(|c| BigRational::from_integer(c.clone())).collect();
    let field = NumberField::extension(&mq)?;
    let a = field.generator().expect("proper extension");
    Ok((field, a))
}

/// Simple-root phase: solves `G(t, y) = 0` for `y = sum_{n>=1} b_n t^n`
/// order by order.
/// Coefficient arithmetic for the order-by-order solve. Over `Q` the
/// plain rational instance avoids the power-basis representation.
trait Coefficients {
    type T: Clone;
    fn zero(&self) -> Self::T;
    fn one(&self) -> Self::T;
    fn is_zero(&self, a: &Self::T) -> bool;
    fn add(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn mul(&self, a: &Self::T, b: &Self::T) -> Self::T;
    fn neg(&self, a: &Self::T) -> Self::T;
}

impl Coefficients for NumberField {
    type T = FieldElement;
    fn zero(&self) -> FieldElement {
        FieldElement::zero()
    }
    fn one(&self) -> FieldElement {
        FieldElement::one()
    }
    fn is_zero(&self, a: &FieldElement) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        a.add(b)
    }
    fn mul(&self, a: &FieldElement, b: &FieldElement) -> FieldElement {
        NumberField::mul(self, a, b)
    }
    fn neg(&self, a: &FieldElement) -> FieldElement {
        a.neg()
    }
}

struct RationalCoefficients;

impl Coefficients for RationalCoefficients {
    type T = Rational;
    fn zero(&self) -> Rational {
        Rational::zero()
    }
    fn one(&self) -> Rational {
        Rational::one()
    }
    fn is_zero(&self, a: &Rational) -> bool {
        a.is_zero()
    }
    fn add(&self, a: &Rational, b: &Rational) -> Rational {
        a + b
    }
    fn mul(&self, a: &Rational, b: &Rational) -> Rational {
        a * b
    }
    fn neg(&self, a: &Rational) -> Rational {
        -a
    }
}

/// Terms `(j, i, c)` of `G(t, y) = sum c t^i y^j`.
type Terms<T> = Vec<(usize, usize, T)>;

fn regular(st: &State, nterms: usize) -> PuiseuxBranch {
    let field = &st.field;
    let a = st.g.get(&(1, 0)).cloned().expect("simple root");
    let a_inv = field.inv(&a).expect("nonzero");
    let (y, exact) = if field.is_rational() {
        let q = |c: &FieldElement| c.as_rational().expect("rational field");
        let g: Terms<Rational> = st.g.iter().map(|(&(j, i), c)| (j as usize, i as usize, q(c))).collect();
        let y = solve_orders(&RationalCoefficients, &g, &q(&a_inv), nterms);
        let exact = vanishes_exactly(&RationalCoefficients, &g, &y);
        (y.into_iter().map(FieldElement::rational).collect(), exact)
    } else {
        let g: Terms<FieldElement> = st.g.iter().map(|(&(j, i), c)| (j as usize, i as usize, c.clone())).collect();
        let y = solve_orders(field, &g, &a_inv, nterms);
        let exact = vanishes_exactly(field, &g, &y);
        (y, exact)
    };
    let mut s = st.s.clone();
    for (n, b) in y.iter().enumerate() {
        if !b.is_zero() {
            s.insert(st.mu + n as i64, b.clone());
        }
    }
    let precision = if exact { None } else { Some(st.mu + nterms as i64 + 1) };
    finish(&State { s, ..st.clone() }, precision, st.conj)
}

/// Coefficients `b_0 = 0, b_1, .., b_order` of the unique root `y` of `G`
/// with `y(0) = 0`, where `a_inv` inverts the coefficient of `y`.
fn solve_orders<C: Coefficients>(ar: &C, g: &Terms<C::T>, a_inv: &C::T, order: usize) -> Vec<C::T> {
    let jmax = g.iter().map(|t| t.0).max().unwrap_or(0);
    // powers[j][k] = [t^k] y^j; y has no constant term, so for j >= 2 the
    // order-n coefficient only involves b_1 .. b_{n-1}
    let mut powers = vec![vec![ar.zero(); order + 1]; jmax + 1];
    powers[0][0] = ar.one();
    for n in 1..=order {
        for j in 2..=jmax {
            let mut acc = ar.zero();
            for k in 1..n {
                let (b, rest) = (&powers[1][k], &powers[j - 1][n - k]);
                if !ar.is_zero(b) && !ar.is_zero(rest) {
                    acc = ar.add(&acc, &ar.mul(b, rest));
                }
            }
            powers[j][n] = acc;
        }
        let mut coeff = ar.zero();
        for (j, i, c) in g {
            if *i > n || (*j == 1 && *i == 0) {
                continue;
            }
            let pc = &powers[*j][n - i];
            if !ar.is_zero(pc) {
                coeff = ar.add(&coeff, &ar.mul(c, pc));
            }
        }
        powers[1][n] = ar.neg(&ar.mul(&coeff, a_inv));
    }
    powers.swap_remove(1)
}

/// Powers `y^j mod t^(n+1)` for `j <= jmax`, as dense coefficient vectors.
fn truncated_powers<C: Coefficients>(ar: &C, y: &[C::T], jmax: usize, n: usize) -> Vec<Vec<C::T>> {
    let mut one = vec![ar.zero(); n + 1];
    one[0] = ar.one();
    let mut out = vec![one];
    for j in 1..=jmax {
        let prev = &out[j - 1];
        let mut next = vec![ar.zero(); n + 1];
        for (a, pa) in prev.iter().enumerate() {
            if ar.is_zero(pa) {
                continue;
            }
            for (b, yb) in y.iter().enumerate().take(n + 1 - a) {
                if !ar.is_zero(yb) {
                    next[a + b] = ar.add(&next[a + b], &ar.mul(pa, yb));
                }
            }
        }
        out.push(next);
    }
    out
}

/// Whether the computed polynomial `y` is an exact root. Only possible
/// when the trailing computed coefficient is zero.
fn vanishes_exactly<C: Coefficients>(ar: &C, g: &Terms<C::T>, y: &[C::T]) -> bool {
    let deg = y.iter().rposition(|c| !ar.is_zero(c)).unwrap_or(0);
    if deg + 1 == y.len() && deg > 0 {
        return false;
    }
    let imax = g.iter().map(|t| t.1).max().unwrap_or(0);
    let jmax = g.iter().map(|t| t.0).max().unwrap_or(0);
    let top = imax + jmax * deg;
    let powers = truncated_powers(ar, &y[..=deg.min(y.len() - 1)], jmax, top);
    let mut acc = vec![ar.zero(); top + 1];
    for (j, i, c) in g {
        for (k, pc) in powers[*j].iter().enumerate() {
            if !ar.is_zero(pc) && i + k <= top {
                acc[i + k] = ar.add(&acc[i + k], &ar.mul(c, pc));
            }
        }
    }
    acc.iter().all(|c| ar.is_zero(c))
}

fn finish(st: &State, precision: Option<i64>, conj: usize) -> PuiseuxBranch {
    let d = BigRational::from_integer(BigInt::from(st.big_d));
    let series = FractionalSeries::new(
        st.field.clone(),
        st.s.iter().map(|(k, c)| (int(*k) / &d, c.clone())),
        precision.map(|p| int(p) / &d),
    );
    PuiseuxBranch {
        ramification: st.big_d as u64,
        series,
        conjugacy_size: conj,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::rat;
    use crate::puiseux::series::series_power_twist;

    fn poly(terms: &[([i64; 2], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    fn check_residual(f: &LaurentPolynomial, b: &PuiseuxBranch, through: i64) {
        let res = b.residual(f);
        assert!(res.is_empty(), "nonzero residual {res}");
        if let Some(p) = res.precision() {
            assert!(*p > rat(through), "frontier {p} too low");
        }
    }

    #[test]
    fn linear_curve() {
        let f = poly(&[([0, 1], 1), ([1, 0], -1), ([0, 0], -1)]);
        let bs = puiseux_expand(&f, 4).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].ramification, 1);
        assert!(bs[0].series.is_exact());
        assert_eq!(
            bs[0].series,
            FractionalSeries::from_rational(&[(rat(0), rat(1)), (rat(1), rat(1))], None)
        );
    }

    #[test]
    fn square_root_curve() {
        let f = poly(&[([0, 2], 1), ([1, 0], -1)]);
        let bs = puiseux_expand(&f, 4).unwrap();
        assert_eq!(bs.len(), 1);
        assert_eq!(bs[0].ramification, 2);
        assert_eq!(bs[0].conjugacy_size, 2);
        assert_eq!(
            bs[0].parameter_series(),
            FractionalSeries::from_rational(&[(rat(1), rat(1))], None)
        );
    }

    #[test]
    fn nodal_cubic_matches_binomial_series() {
        let f = poly(&[([0, 2], 1), ([2, 0], -1), ([3, 0], -1)]);
        let bs = puiseux_expand(&f, 24).unwrap();
        assert_eq!(bs.len(), 2);
        let root = series_power_twist(
            &FractionalSeries::from_rational(&[(rat(0), rat(1)), (rat(1), rat(1))], None),
            &BigRational::new(1.into(), 2.into()),
            1,
        )
        .unwrap()
        .shift(&rat(1));
        let signs: Vec<_> = bs.iter().map(|b| b.series.coefficient(&rat(1))).collect();
        assert!(signs.contains(&FieldElement::integer(1)) && signs.contains(&FieldElement::integer(-1)));
        for b in &bs {
            assert_eq!(b.ramification, 1);
            assert_eq!(b.conjugacy_size, 1);
            let expected = if b.series.coefficient(&rat(1)) == FieldElement::one() { root.clone() } else { root.neg() };
            assert!(b.series.agrees_with(&expected));
            check_residual(&f, b, 20);
        }
    }

    #[test]
    fn extension_branches() {
        // y^2 + x^2 needs i; y^2 - 2x needs sqrt 2 with ramification 2
        let f = poly(&[([0, 2], 1), ([2, 0], 1)]);
        let bs = puiseux_expand(&f, 6).unwrap();
        assert_eq!(bs.iter().map(|b| b.conjugacy_size).sum::<usize>(), 2);
        assert!(!bs[0].series.field().is_rational());
        for b in &bs {
            check_residual(&f, b, 6);
        }
        let f = poly(&[([0, 2], 1), ([1, 0], -2), ([3, 1], 1)]);
        let bs = puiseux_expand(&f, 10).unwrap();
        assert_eq!(bs.iter().map(|b| b.conjugacy_size).sum::<usize>(), 2);
        for b in &bs {
            check_residual(&f, b, 8);
        }
    }

    #[test]
    fn branch_counts_and_poles() {
        // (x y - 1)(y - x): one branch with a pole at x = 0
        let f = poly(&[([1, 2], 1), ([2, 1], -1), ([0, 1], -1), ([1, 0], 1)]);
        let bs = puiseux_expand(&f, 5).unwrap();
        assert_eq!(bs.iter().map(|b| b.conjugacy_size).sum::<usize>(), 2);
        assert!(bs.iter().any(|b| b.series.valuation() == Some(&rat(-1))));
        for b in &bs {
            check_residual(&f, b, 3);
        }
        // repeated factor (y - x)^2 terminates exactly
        let f = poly(&[([0, 2], 1), ([1, 1], -2), ([2, 0], 1)]);
        let bs = puiseux_expand(&f, 5).unwrap();
        assert_eq!(bs.iter().map(|b| b.conjugacy_size).sum::<usize>(), 2);
        assert!(bs.iter().all(|b| b.series.is_exact()));
    }

    #[test]
    fn errors() {
        assert_eq!(puiseux_expand(&poly(&[([1, 0], 1), ([0, 0], 1)]), 3), Err(Error::NotACurve));
        assert_eq!(puiseux_expand(&LaurentPolynomial::zero(2), 3), Err(Error::ZeroPolynomial));
    }
}
