mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use proptest::prelude::*;

use common::{nonmonomial, xy};
use sigma_forge::algebra::reduce_mod_p;
use sigma_forge::puiseux::{puiseux_expand, series_power_twist, FractionalSeries};
use sigma_forge::ring::{
    algebraic_monomial_directions, irreducibility_status, krull_dimension_verdict, torsionfree_check, Field, Verdict,
};
use sigma_forge::LaurentPolynomial;

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn same_up_to_unit(a: &LaurentPolynomial, b: &LaurentPolynomial) -> bool {
    let (a, _) = a.primitive_part().unwrap().clear_monomial();
    let (b, _) = b.primitive_part().unwrap().clear_monomial();
    a == b || a == -&b
}

fn kind(v: &Verdict) -> &'static str {
    match v {
        Verdict::Irreducible => "irreducible",
        Verdict::Reducible(_) => "reducible",
        Verdict::Unit => "unit",
        Verdict::Zero => "zero",
        Verdict::Undetermined => "undetermined",
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(60))]

    #[test]
    fn rational_witnesses_multiply_back(g in nonmonomial(2, 3, 2, 5), h in nonmonomial(2, 3, 2, 5)) {
        let f = &g * &h;
        prop_assume!(!f.is_zero());
        if let Verdict::Reducible(factors) = irreducibility_status(&f, Field::Q).unwrap().verdict {
            prop_assert!(factors.len() >= 2);
            let product = factors.iter().skip(1).fold(factors[0].clone(), |acc, x| &acc * x);
            prop_assert!(same_up_to_unit(&product, &f), "{} vs {}", product, f);
        }
    }

    #[test]
    fn residue_witnesses_multiply_back(f in nonmonomial(2, 4, 2, 9), pi in 0usize..3) {
        let p = [2u64, 3, 5][pi];
        if let Verdict::Reducible(factors) = irreducibility_status(&f, Field::Fp(p)).unwrap().verdict {
            let product = factors.iter().skip(1).fold(factors[0].clone(), |acc, x| &acc * x);
            let lhs = reduce_mod_p(&product, p).unwrap().normalized();
            let rhs = reduce_mod_p(&f, p).unwrap().normalized();
            prop_assert_eq!(lhs, rhs);
        }
    }

    #[test]
    fn irreducibility_is_stable(f in nonmonomial(2, 4, 2, 9), a in -2i64..=2, b in -2i64..=2) {
        let base = kind(&irreducibility_status(&f, Field::Q).unwrap().verdict);
        let swapped = kind(&irreducibility_status(&f.swap_variables(0, 1), Field::Q).unwrap().verdict);
        let m = LaurentPolynomial::monomial(2, -1, vec![a, b]);
        let shifted = kind(&irreducibility_status(&(&m * &f), Field::Q).unwrap().verdict);
        prop_assert_eq!(base, swapped);
        prop_assert_eq!(base, shifted);
    }

    #[test]
    fn krull_two_needs_a_prime_ideal(f in nonmonomial(2, 4, 2, 9)) {
        let k = krull_dimension_verdict(&f).unwrap();
        if k.dim == Some(2) {
            prop_assert!(torsionfree_check(&f).unwrap());
            prop_assert_eq!(irreducibility_status(&f, Field::Q).unwrap().verdict, Verdict::Irreducible);
        }
    }
}

/// Rank over `Q` of a small dense matrix by fraction elimination.
fn rank(mut rows: Vec<Vec<Q>>) -> usize {
    let ncols = rows.first().map_or(0, |r| r.len());
    let mut r = 0;
    for col in 0..ncols {
        let Some(p) = (r..rows.len()).find(|&i| !rows[i][col].is_zero()) else { continue };
        rows.swap(r, p);
        let pivot = rows[r].clone();
        for row in rows.iter_mut().skip(r + 1) {
            let f = &row[col] / &pivot[col];
            for (c, pc) in row.iter_mut().zip(&pivot) {
                *c -= &f * pc;
            }
        }
        r += 1;
    }
    r
}

/// `1, m, m^2, m^3` are linearly independent as truncated series.
fn transcendental_to_degree_3(m: &FractionalSeries) -> bool {
    let one = FractionalSeries::from_rational(&[(q(0), q(1))], None);
    let powers = [one.clone(), m.clone(), m.mul(m), m.mul(m).mul(m)];
    let frontier = powers.iter().filter_map(|s| s.precision()).min().cloned();
    let mut exps: Vec<Q> = powers.iter().flat_map(|s| s.terms().map(|(e, _)| e.clone())).collect();
    exps.sort();
    exps.dedup();
    let rows: Vec<Vec<Q>> = exps
        .into_iter()
        .filter(|e| frontier.as_ref().is_none_or(|n| e < n))
        .map(|e| powers.iter().map(|s| s.coefficient(&e).as_rational().unwrap()).collect())
        .collect();
    rank(rows) == 4
}

#[test]
fn no_algebraic_monomials_along_branches() {
    let fixtures = ["y - x - 1", "y - x - 2", "y^2 - x^2*(x + 1)", "x^2 + y^2 - 1", "x*y - x - y - 3"];
    let mut checked = 0;
    for (i, text) in fixtures.iter().enumerate() {
        let f = xy(text);
        assert!(algebraic_monomial_directions(&f).unwrap().is_empty(), "{text}");
        let branch = puiseux_expand(&f, 24)
            .unwrap()
            .into_iter()
            .find(|b| b.series.field().is_rational())
            .expect("a rational branch");
        let y = &branch.series;
        for (k, (a, b)) in (-2i64..=2).flat_map(|a| (-2i64..=2).map(move |b| (a, b))).enumerate() {
            if (a == 0 && b == 0) || (k + i) % 2 == 1 {
                continue;
            }
            let yb = if b == 0 {
                FractionalSeries::from_rational(&[(q(0), q(1))], None)
            } else {
                series_power_twist(y, &q(b), 1).unwrap()
            };
            let mut m = yb.shift(&q(a));
            // algebraicity is invariant under inversion; keep the window wide
            if m.valuation().is_some_and(|v| *v < q(0)) {
                m = series_power_twist(&m, &q(-1), 1).unwrap();
            }
            assert!(transcendental_to_degree_3(&m), "{text}: x^{a} y^{b} looks algebraic");
            checked += 1;
        }
    }
    assert!(checked >= 55);
}
