mod common;

use proptest::prelude::*;

use common::sparse;
use sigma_forge::polyhedra::{minkowski_summand_pairs, newton_polytope, regular_subdivision};
use sigma_forge::CoefficientValuation;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(100))]

    #[test]
    fn newton_polytope_of_product_is_minkowski_sum(f in sparse(2, 6, 3, 9), g in sparse(2, 6, 3, 9)) {
        let lhs = newton_polytope(&(&f * &g)).unwrap();
        let rhs = newton_polytope(&f).unwrap().minkowski_sum(&newton_polytope(&g).unwrap());
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn subdivision_cells_tile(f in sparse(2, 6, 3, 64), pi in 0usize..3) {
        let v = CoefficientValuation::PAdic([2u64, 3, 5][pi]);
        let sub = regular_subdivision(&f, v).unwrap();
        let np = newton_polytope(&f).unwrap();
        for cell in &sub.cells {
            for vertex in cell.polytope.vertices() {
                prop_assert!(f.coefficient(vertex) != 0.into(), "cell vertex {:?} outside the support", vertex);
            }
        }
        if np.dim() == 2 {
            let total: i128 = sub.cells.iter().map(|c| c.polytope.twice_area()).sum();
            prop_assert_eq!(total, np.twice_area());
        }
    }

    #[test]
    fn trivial_lift_gives_one_cell(f in sparse(2, 6, 3, 9)) {
        let sub = regular_subdivision(&f, CoefficientValuation::Zero).unwrap();
        prop_assert_eq!(sub.cells.len(), 1);
        prop_assert_eq!(&sub.cells[0].polytope, &newton_polytope(&f).unwrap());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn summand_pairs_sum_back(f in sparse(2, 5, 2, 5)) {
        let p = newton_polytope(&f).unwrap();
        for (a, b) in minkowski_summand_pairs(&p).unwrap() {
            prop_assert_eq!(a.minkowski_sum(&b), p.clone());
        }
    }
}
