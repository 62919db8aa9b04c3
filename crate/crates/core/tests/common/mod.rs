#![allow(dead_code)]

use proptest::prelude::*;
use sigma_forge::LaurentPolynomial;

pub fn xy(text: &str) -> LaurentPolynomial {
    sigma_forge::report::parse_poly(text, &["x", "y"]).expect("fixture parses")
}

fn nonzero_coefficient(max: i64) -> impl Strategy<Value = i64> {
    (1..=max, any::<bool>()).prop_map(|(c, neg)| if neg { -c } else { c })
}

/// Sparse rank-`rank` polynomial with up to `terms` terms, exponents in
/// `[-span, span]` and coefficients in `[-coef, coef]`. May be a monomial.
pub fn sparse(rank: usize, terms: usize, span: i64, coef: i64) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec((prop::collection::vec(-span..=span, rank), nonzero_coefficient(coef)), 1..=terms)
        .prop_map(move |ts| LaurentPolynomial::from_terms(rank, ts).expect("rank matches"))
        .prop_filter("nonzero", |f| !f.is_zero())
}

/// Like [`sparse`] but with at least two terms, so never a unit.
pub fn nonmonomial(rank: usize, terms: usize, span: i64, coef: i64) -> impl Strategy<Value = LaurentPolynomial> {
    sparse(rank, terms.max(2), span, coef).prop_filter("two terms", |f| f.len() >= 2)
}

/// Ordinary polynomial in one variable with degree at most `deg`.
pub fn univariate(deg: i64, coef: i64) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec(-coef..=coef, 1..=(deg as usize + 1))
        .prop_map(|cs| {
            LaurentPolynomial::from_terms(1, cs.into_iter().enumerate().map(|(i, c)| (vec![i as i64], c)))
                .expect("rank 1")
        })
        .prop_filter("nonzero", |f| !f.is_zero())
}

/// Polynomial curve in `x, y` with positive `y`-degree and no monomial factor.
pub fn curve(max_deg: i64, coef: i64) -> impl Strategy<Value = LaurentPolynomial> {
    prop::collection::vec(((0..=max_deg, 0..=max_deg), nonzero_coefficient(coef)), 2..=5)
        .prop_map(|ts| LaurentPolynomial::from_terms(2, ts.into_iter().map(|((a, b), c)| (vec![a, b], c))).unwrap())
        .prop_map(|f| f.clear_monomial().0)
        .prop_filter("curve", |f| f.len() >= 2 && f.degree_in(1) > 0)
}
