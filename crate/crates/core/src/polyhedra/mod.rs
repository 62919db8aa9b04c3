//! Exact lattice polytopes in rank 1 and 2: Newton polytopes, regular
//! subdivisions induced by coefficient lifts, Minkowski summands.

mod minkowski;
mod subdivision;

pub use minkowski::{minkowski_summand_pairs, minkowski_summand_pairs_with_bound, DEFAULT_LATTICE_BOUND};
pub use subdivision::{lower_hull_subdivision, regular_subdivision, LiftedCell, LiftedSubdivision};

use num_integer::Integer;

use crate::algebra::{Exponent, LaurentPolynomial};
use crate::error::{Error, Result};

pub(crate) type P2 = (i64, i64);

pub(crate) fn to2(e: &[i64]) -> P2 {
    match e.len() {
        1 => (e[0], 0),
        2 => (e[0], e[1]),
        n => panic!("rank {n} point in planar kernel"),
    }
}

pub(crate) fn from2(rank: usize, p: P2) -> Exponent {
    match rank {
        1 => vec![p.0],
        _ => vec![p.0, p.1],
    }
}

pub(crate) fn cross(o: P2, a: P2, b: P2) -> i128 {
    (a.0 - o.0) as i128 * (b.1 - o.1) as i128 - (a.1 - o.1) as i128 * (b.0 - o.0) as i128
}

/// Primitive integer vector in the direction of `(dx, dy)`, and the
/// lattice length (the gcd).
pub(crate) fn primitive(d: P2) -> (P2, i64) {
    let g = d.0.gcd(&d.1);
    if g == 0 {
        return ((0, 0), 0);
    }
    ((d.0 / g, d.1 / g), g)
}

pub(crate) fn check_rank(rank: usize) -> Result<()> {
    if rank == 1 || rank == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedRank(rank))
    }
}

/// Andrew's monotone chain; collinear points are dropped. Returns the
/// vertices counterclockwise from the lexicographically smallest one.
pub(crate) fn hull2(points: impl IntoIterator<Item = P2>) -> Vec<P2> {
    let mut pts: Vec<P2> = points.into_iter().collect();
    pts.sort_unstable();
    pts.dedup();
    if pts.len() <= 2 {
        return pts;
    }
    let mut lower: Vec<P2> = Vec::new();
    for &p in &pts {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], p) <= 0 {
            lower.pop();
        }
        lower.push(p);
    }
    let mut upper: Vec<P2> = Vec::new();
    for &p in pts.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], p) <= 0 {
            upper.pop();
        }
        upper.push(p);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Convex lattice polytope of dimension ≤ 2 given by its vertices.
///
/// Vertices are exactly the extreme points; for a polygon they run
/// counterclockwise from the lexicographically smallest vertex, for a
/// segment they are its two endpoints in lexicographic order.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct LatticePolytope {
    rank: usize,
    vertices: Vec<Exponent>,
}

impl LatticePolytope {
    /// Convex hull of a nonempty point set.
    pub fn hull(rank: usize, points: impl IntoIterator<Item = Exponent>) -> Result<Self> {
        check_rank(rank)?;
        let pts: Vec<P2> = points.into_iter().map(|e| to2(&e)).collect();
        if pts.is_empty() {
            return Err(Error::ZeroPolynomial);
        }
        Ok(Self::from_hull(rank, hull2(pts)))
    }

    pub(crate) fn from_hull(rank: usize, hull: Vec<P2>) -> Self {
        Self {
            rank,
            vertices: hull.into_iter().map(|p| from2(rank, p)).collect(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn vertices(&self) -> &[Exponent] {
        &self.vertices
    }

    pub(crate) fn vertices2(&self) -> Vec<P2> {
        self.vertices.iter().map(|v| to2(v)).collect()
    }

    /// Affine dimension: 0, 1 or 2.
    pub fn dim(&self) -> usize {
        self.vertices.len().min(3) - 1
    }

    /// Twice the area (exact).
    pub fn twice_area(&self) -> i128 {
        if self.dim() < 2 {
            return 0;
        }
        let v = self.vertices2();
        (0..v.len())
            .map(|i| {
                let (a, b) = (v[i], v[(i + 1) % v.len()]);
                a.0 as i128 * b.1 as i128 - b.0 as i128 * a.1 as i128
            })
            .sum()
    }

    /// Boundary edges as (start, end) pairs, counterclockwise. A segment
    /// has one edge, a point none.
    pub(crate) fn edges2(&self) -> Vec<(P2, P2)> {
        let v = self.vertices2();
        match v.len() {
            0 | 1 => Vec::new(),
            2 => vec![(v[0], v[1])],
            n => (0..n).map(|i| (v[i], v[(i + 1) % n])).collect(),
        }
    }

    pub fn contains(&self, e: &[i64]) -> bool {
        let p = to2(e);
        let v = self.vertices2();
        match v.len() {
            1 => p == v[0],
            2 => {
                cross(v[0], v[1], p) == 0
                    && p.0 >= v[0].0.min(v[1].0)
                    && p.0 <= v[0].0.max(v[1].0)
                    && p.1 >= v[0].1.min(v[1].1)
                    && p.1 <= v[0].1.max(v[1].1)
            }
            n => (0..n).all(|i| cross(v[i], v[(i + 1) % n], p) >= 0),
        }
    }

    /// Number of lattice points, by Pick's theorem.
    pub fn lattice_point_count(&self) -> u64 {
        let boundary: i128 = match self.dim() {
            0 => return 1,
            1 => {
                let v = self.vertices2();
                return primitive((v[1].0 - v[0].0, v[1].1 - v[0].1)).1 as u64 + 1;
            }
            _ => self
                .edges2()
                .iter()
                .map(|(a, b)| primitive((b.0 - a.0, b.1 - a.1)).1 as i128)
                .sum(),
        };
        let interior = (self.twice_area() - boundary + 2) / 2;
        (interior + boundary) as u64
    }

    pub fn lattice_points(&self) -> Vec<Exponent> {
        let v = self.vertices2();
        let (x0, x1) = (v.iter().map(|p| p.0).min().unwrap(), v.iter().map(|p| p.0).max().unwrap());
        let (y0, y1) = (v.iter().map(|p| p.1).min().unwrap(), v.iter().map(|p| p.1).max().unwrap());
        let mut out = Vec::new();
        for x in x0..=x1 {
            for y in y0..=y1 {
                let e = from2(self.rank, (x, y));
                if (self.rank == 2 || y == 0) && self.contains(&e) {
                    out.push(e);
                }
            }
        }
        out
    }

    pub fn translate(&self, t: &[i64]) -> Self {
        Self {
            rank: self.rank,
            vertices: self
                .vertices
                .iter()
                .map(|v| v.iter().zip(t).map(|(a, b)| a + b).collect())
                .collect(),
        }
    }

    /// Lexicographically smallest vertex (the first one).
    pub fn lexmin(&self) -> &Exponent {
        &self.vertices[0]
    }

    pub fn minkowski_sum(&self, other: &Self) -> Self {
        let a = self.vertices2();
        let b = other.vertices2();
        let sums = a.iter().flat_map(|p| b.iter().map(move |q| (p.0 + q.0, p.1 + q.1)));
        Self::from_hull(self.rank, hull2(sums))
    }
}

/// Convex hull of the support of `f`.
pub fn newton_polytope(f: &LaurentPolynomial) -> Result<LatticePolytope> {
    check_rank(f.rank())?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    LatticePolytope::hull(f.rank(), f.support().cloned())
}
