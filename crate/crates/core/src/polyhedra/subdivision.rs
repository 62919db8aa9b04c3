use std::collections::{BTreeMap, BTreeSet};

use num_rational::BigRational;
use num_traits::Zero;

use super::{check_rank, cross, hull2, primitive, to2, LatticePolytope, P2};
use crate::algebra::{CoefficientValuation, Exponent, LaurentPolynomial, Rational};
use crate::error::{Error, Result};

/// A cell of a regular subdivision together with the affine function
/// that interpolates the lift on it: `height(e) = gradient · e + intercept`.
///
/// For a cell of a one-dimensional subdivision in rank 2 the gradient is
/// taken parallel to the cell.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedCell {
    pub polytope: LatticePolytope,
    pub gradient: Vec<Rational>,
    pub intercept: Rational,
}

/// Projection of the lower faces of the lifted support.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LiftedSubdivision {
    pub cells: Vec<LiftedCell>,
    pub heights: BTreeMap<Exponent, Rational>,
}

impl LiftedSubdivision {
    /// The polytope that the cells tile.
    pub fn support_polytope(&self) -> LatticePolytope {
        let rank = self.cells[0].polytope.rank();
        LatticePolytope::hull(rank, self.heights.keys().cloned()).expect("nonempty")
    }
}

/// Regular subdivision of the Newton polytope of `f` induced by the
/// heights `v(coefficient)`.
pub fn regular_subdivision(
    f: &LaurentPolynomial,
    v: CoefficientValuation,
) -> Result<LiftedSubdivision> {
    check_rank(f.rank())?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    if let CoefficientValuation::ResidueZero(_) = v {
        return Err(Error::InvalidArgument(
            "residue valuations lift the reduced polynomial, not f".into(),
        ));
    }
    let lifted: Vec<(Exponent, Rational)> = f
        .terms()
        .map(|(e, c)| Ok((e.clone(), v.height(c)?)))
        .collect::<Result<_>>()?;
    lower_hull_subdivision(f.rank(), &lifted)
}

/// Lower-hull subdivision of an arbitrary lifted point configuration.
pub fn lower_hull_subdivision(
    rank: usize,
    lifted: &[(Exponent, Rational)],
) -> Result<LiftedSubdivision> {
    check_rank(rank)?;
    if lifted.is_empty() {
        return Err(Error::ZeroPolynomial);
    }
    let heights: BTreeMap<Exponent, Rational> = lifted.iter().cloned().collect();
    let pts: Vec<(P2, Rational)> = heights.iter().map(|(e, h)| (to2(e), h.clone())).collect();
    let np = hull2(pts.iter().map(|(p, _)| *p));
    let cells = match np.len() {
        1 => vec![LiftedCell {
            polytope: LatticePolytope::from_hull(rank, np.clone()),
            gradient: vec![BigRational::zero(); rank],
            intercept: pts[0].1.clone(),
        }],
        2 => linear_cells(rank, np[0], np[1], &pts),
        _ => planar_cells(rank, &pts),
    };
    Ok(LiftedSubdivision { cells, heights })
}

fn linear_cells(rank: usize, a: P2, b: P2, pts: &[(P2, Rational)]) -> Vec<LiftedCell> {
    let (u, _) = primitive((b.0 - a.0, b.1 - a.1));
    let uu = (u.0 * u.0 + u.1 * u.1) as i128;
    // parameter k along u, keep the lowest height per k
    let mut line: BTreeMap<i64, Rational> = BTreeMap::new();
    for (p, h) in pts {
        let k = (((p.0 - a.0) as i128 * u.0 as i128 + (p.1 - a.1) as i128 * u.1 as i128) / uu) as i64;
        line.entry(k)
            .and_modify(|cur| {
                if h < cur {
                    *cur = h.clone()
                }
            })
            .or_insert_with(|| h.clone());
    }
    let mut hull: Vec<(i64, Rational)> = Vec::new();
    for (k, h) in line {
        while hull.len() >= 2 {
            let (k1, h1) = &hull[hull.len() - 2];
            let (k2, h2) = &hull[hull.len() - 1];
            // pop the middle point unless it lies strictly below the chord
            let lhs = (h2 - h1) * Rational::from_integer((k - k1).into());
            let rhs = (&h - h1) * Rational::from_integer((k2 - k1).into());
            if lhs >= rhs {
                hull.pop();
            } else {
                break;
            }
        }
        hull.push((k, h));
    }
    let uu_q = Rational::from_integer(uu.into());
    hull.windows(2)
        .map(|w| {
            let ((k1, h1), (k2, h2)) = (&w[0], &w[1]);
            let slope = (h2 - h1) / Rational::from_integer((k2 - k1).into());
            let g = (
                &slope * Rational::from_integer(u.0.into()) / &uu_q,
                &slope * Rational::from_integer(u.1.into()) / &uu_q,
            );
            let p1 = (a.0 + k1 * u.0, a.1 + k1 * u.1);
            let p2 = (a.0 + k2 * u.0, a.1 + k2 * u.1);
            let intercept = h1
                - (&g.0 * Rational::from_integer(p1.0.into()) + &g.1 * Rational::from_integer(p1.1.into()));
            let gradient = match rank {
                1 => vec![g.0],
                _ => vec![g.0, g.1],
            };
            LiftedCell {
                polytope: LatticePolytope::from_hull(rank, hull2([p1, p2])),
                gradient,
                intercept,
            }
        })
        .collect()
}

/// Lower faces of a planar lifted configuration by testing every plane
/// through three affinely independent lifted points.
fn planar_cells(rank: usize, pts: &[(P2, Rational)]) -> Vec<LiftedCell> {
    let n = pts.len();
    let mut seen: BTreeSet<Vec<P2>> = BTreeSet::new();
    let mut cells = Vec::new();
    let q = |v: i64| Rational::from_integer(v.into());
    for i in 0..n {
        for j in i + 1..n {
            for k in j + 1..n {
                let (pi, pj, pk) = (pts[i].0, pts[j].0, pts[k].0);
                let det = cross(pi, pj, pk);
                if det == 0 {
                    continue;
                }
                // solve h = g0*x + g1*y + c through the three lifted points
                let (hi, hj, hk) = (&pts[i].1, &pts[j].1, &pts[k].1);
                let (dx1, dy1, dh1) = (pj.0 - pi.0, pj.1 - pi.1, hj - hi);
                let (dx2, dy2, dh2) = (pk.0 - pi.0, pk.1 - pi.1, hk - hi);
                let d = q(dx1 * dy2 - dx2 * dy1);
                let g0 = (&dh1 * q(dy2) - &dh2 * q(dy1)) / &d;
                let g1 = (&dh2 * q(dx1) - &dh1 * q(dx2)) / &d;
                let c = hi - (&g0 * q(pi.0) + &g1 * q(pi.1));
                let plane = |p: P2| &g0 * q(p.0) + &g1 * q(p.1) + &c;
                let mut on = Vec::new();
                let mut lower = true;
                for (p, h) in pts {
                    let z = plane(*p);
                    if *h < z {
                        lower = false;
                        break;
                    }
                    if *h == z {
                        on.push(*p);
                    }
                }
                if !lower {
                    continue;
                }
                let hull = hull2(on);
                if seen.insert(hull.clone()) {
                    cells.push(LiftedCell {
                        polytope: LatticePolytope::from_hull(rank, hull),
                        gradient: vec![g0.clone(), g1.clone()],
                        intercept: c.clone(),
                    });
                }
            }
        }
    }
    cells.sort_by(|a, b| a.polytope.vertices().cmp(b.polytope.vertices()));
    cells
}
