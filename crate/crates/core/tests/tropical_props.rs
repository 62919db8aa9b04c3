mod common;

use num_bigint::BigInt;
use num_rational::BigRational;
use proptest::prelude::*;

use common::nonmonomial;
use sigma_forge::algebra::padic_valuation;
use sigma_forge::tropical::{corner_locus, sigma_complement, SphericalSet};
use sigma_forge::{CoefficientValuation, LaurentPolynomial};

type Q = BigRational;

fn valuation(i: usize) -> CoefficientValuation {
    [CoefficientValuation::Zero, CoefficientValuation::PAdic(2), CoefficientValuation::PAdic(3)][i]
}

/// Direct evaluation: is `min_e (chi·e + v(c_e))` attained at least twice?
fn min_twice(f: &LaurentPolynomial, v: CoefficientValuation, chi: &[Q]) -> bool {
    let values: Vec<Q> = f
        .terms()
        .map(|(e, c)| {
            let h = v.prime().map_or(0, |p| padic_valuation(c, p).unwrap());
            &chi[0] * Q::from_integer(e[0].into()) + &chi[1] * Q::from_integer(e[1].into()) + Q::from_integer(h.into())
        })
        .collect();
    let min = values.iter().min().unwrap();
    values.iter().filter(|x| *x == min).count() >= 2
}

fn grid() -> impl Iterator<Item = [Q; 2]> {
    (-8i64..=8).flat_map(|a| {
        (-8i64..=8).map(move |b| [Q::new(BigInt::from(a), BigInt::from(3)), Q::new(BigInt::from(b), BigInt::from(3))])
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn corner_loci_are_multiplicative(
        f in nonmonomial(2, 6, 2, 12),
        g in nonmonomial(2, 6, 2, 12),
        vi in 0usize..3,
    ) {
        let v = valuation(vi);
        let fg = &f * &g;
        let (lf, lg, lfg) = (corner_locus(&f, v).unwrap(), corner_locus(&g, v).unwrap(), corner_locus(&fg, v).unwrap());
        let mut union = lf.clone();
        union.pieces.extend(lg.pieces.iter().cloned());
        prop_assert!(lfg.same_set(&union));
        for chi in grid() {
            prop_assert_eq!(lfg.contains(&chi), min_twice(&fg, v, &chi));
            prop_assert_eq!(lfg.contains(&chi), lf.contains(&chi) || lg.contains(&chi));
        }
    }

    #[test]
    fn complement_ignores_unit_monomials(f in nonmonomial(2, 5, 2, 12), a in -3i64..=3, b in -3i64..=3, neg in any::<bool>()) {
        let m = LaurentPolynomial::monomial(2, if neg { -1 } else { 1 }, vec![a, b]);
        let base = sigma_complement(&f).unwrap();
        let moved = sigma_complement(&(&m * &f)).unwrap();
        prop_assert_eq!(base.sigma_complement, moved.sigma_complement);
        prop_assert_eq!(base.exceptional_primes, moved.exceptional_primes);
    }

    #[test]
    fn swapping_variables_swaps_directions(f in nonmonomial(2, 5, 2, 12)) {
        let base = sigma_complement(&f).unwrap();
        let swapped = sigma_complement(&f.swap_variables(0, 1)).unwrap();
        let expected = base.sigma_complement.map_directions(|d| vec![d[1], d[0]]);
        prop_assert_eq!(swapped.sigma_complement, expected);
        let mut boundary: Vec<Vec<i64>> = base.boundary.iter().map(|d| vec![d[1], d[0]]).collect();
        let mut got = swapped.boundary.clone();
        boundary.sort();
        got.sort();
        prop_assert_eq!(got, boundary);
    }

    #[test]
    fn normalization_is_idempotent(f in nonmonomial(2, 5, 2, 12)) {
        let s = sigma_complement(&f).unwrap().sigma_complement;
        prop_assume!(!s.whole_sphere);
        prop_assert_eq!(SphericalSet::from_parts(&s.points, &s.arcs), s.clone());
        for arc in &s.arcs {
            prop_assert!(s.contains(&arc.start) && s.contains(&arc.end), "arc {:?} not closed", arc);
        }
    }
}
