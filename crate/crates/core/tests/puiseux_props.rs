mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::{curve, xy};
use sigma_forge::puiseux::{
    find_integer_relation, homothety_check, puiseux_expand, series_power_twist, FractionalSeries, HomothetyOutcome,
};
use sigma_forge::{Error, LaurentPolynomial};

type Q = BigRational;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

/// Branches, or `None` when the curve needs more than one field extension.
fn branches(f: &LaurentPolynomial, nterms: usize) -> Option<Vec<sigma_forge::puiseux::PuiseuxBranch>> {
    match puiseux_expand(f, nterms) {
        Ok(b) => Some(b),
        Err(Error::ExtensionRequired(_)) => None,
        Err(e) => panic!("unexpected error for {f}: {e}"),
    }
}

fn series_strategy() -> impl Strategy<Value = FractionalSeries> {
    (1i64..=4, -2i64..=2, prop::collection::vec(-5i64..=5, 1..=6), 8i64..=12).prop_map(|(root, k0, tail, prec)| {
        let mut terms = vec![(q(k0), q(root * root))];
        terms.extend(tail.into_iter().enumerate().map(|(i, c)| (q(k0 + 1 + i as i64), q(c))));
        FractionalSeries::from_rational(&terms, Some(q(k0 + prec)))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn branches_account_for_every_root(f in curve(3, 6)) {
        if let Some(bs) = branches(&f, 6) {
            let total: usize = bs.iter().map(|b| b.conjugacy_size).sum();
            prop_assert_eq!(total as i64, f.degree_in(1));
        }
    }

    #[test]
    fn residuals_vanish_below_the_frontier(f in curve(3, 6)) {
        if let Some(bs) = branches(&f, 6) {
            for b in bs {
                let r = b.residual(&f);
                prop_assert!(r.is_empty(), "{}: residual {}", f, r);
            }
        }
    }

    #[test]
    fn power_twist_round_trips(s in series_strategy(), ei in 0usize..3) {
        let e = [q(2), q(3), Q::new(1.into(), 2.into())][ei].clone();
        let there = series_power_twist(&s, &e, 1).unwrap();
        let back = series_power_twist(&there, &e.recip(), 1).unwrap();
        prop_assert!(back.agrees_with(&s), "{} vs {}", back, s);
        let lead = s.valuation().unwrap().clone();
        prop_assert!(back.precision().is_some_and(|p| p - &lead >= q(4)), "precision collapsed: {}", back);
    }

    #[test]
    fn lines_are_their_own_relation(a in 1i64..=5, b in -5i64..=5, c in -5i64..=5, neg in any::<bool>()) {
        prop_assume!(b != 0);
        let a = if neg { -a } else { a };
        let f = LaurentPolynomial::from_terms(2, [(vec![0, 1], a), (vec![1, 0], b), (vec![0, 0], c)])
            .unwrap()
            .primitive_part()
            .unwrap();
        let bs = branches(&f, 8).unwrap();
        prop_assert_eq!(bs.len(), 1);
        let u = FractionalSeries::from_rational(&[(q(1), q(1))], None);
        let r = find_integer_relation(&u, &bs[0].series, 1).unwrap().expect("a line has a linear relation");
        prop_assert!(r == f || r == -&f, "relation {} for {}", r, f);
    }
}

#[test]
fn identity_homotheties_hold() {
    for text in ["y - x - 1", "y - x - 2", "y^2 - x^2*(x + 1)", "y^2 - x^3 - 1"] {
        let f = xy(text);
        for n in 1..=4 {
            let outcome = homothety_check(&f, n, n, n).unwrap();
            assert_eq!(outcome, HomothetyOutcome::Holds, "{text}, n = {n}");
        }
    }
}

