use std::cmp::Ordering;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};
use serde::Serialize;

use super::Piece;
use crate::algebra::Rational;
use crate::error::{Error, Result};

type P2 = (i64, i64);

/// Closed arc traversed counterclockwise from `start` to `end`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Arc {
    pub start: Vec<i64>,
    pub end: Vec<i64>,
}

/// Closed subset of the character sphere, normalized: arcs are maximal
/// and disjoint, points are isolated, and the full sphere is a flag.
///
/// In rank 1 the sphere is `{[1], [-1]}`; when both are present the set
/// is flagged whole and still lists them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SphericalSet {
    #[serde(skip)]
    rank: usize,
    pub points: Vec<Vec<i64>>,
    pub arcs: Vec<Arc>,
    pub whole_sphere: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct SphereDiagnostics {
    pub great_circle: bool,
    pub spans: bool,
}

fn sector(d: P2) -> u8 {
    match (d.1.signum(), d.0.signum()) {
        (-1, _) => 0,
        (0, 1) => 1,
        (1, _) => 2,
        _ => 3,
    }
}

fn cross(a: P2, b: P2) -> i128 {
    a.0 as i128 * b.1 as i128 - a.1 as i128 * b.0 as i128
}

/// Order by angle in `(-π, π]`.
fn angle_cmp(a: P2, b: P2) -> Ordering {
    sector(a).cmp(&sector(b)).then_with(|| 0.cmp(&cross(a, b)))
}

/// Counterclockwise angle from `s` to `d` as a comparable key.
fn ccw_key(s: P2, d: P2) -> (u8, P2) {
    let c = cross(s, d);
    let h = if c == 0 {
        if s.0 as i128 * d.0 as i128 + s.1 as i128 * d.1 as i128 > 0 {
            0
        } else {
            2
        }
    } else if c > 0 {
        1
    } else {
        3
    };
    (h, d)
}

fn ccw_le(s: P2, a: P2, b: P2) -> bool {
    let (ka, kb) = (ccw_key(s, a), ccw_key(s, b));
    match ka.0.cmp(&kb.0) {
        Ordering::Equal if ka.0 == 1 || ka.0 == 3 => cross(a, b) >= 0,
        Ordering::Equal => true,
        o => o == Ordering::Less,
    }
}

fn arc_contains(s: P2, e: P2, d: P2) -> bool {
    ccw_le(s, d, e)
}

fn neg(d: P2) -> P2 {
    (-d.0, -d.1)
}

fn p2(v: &[i64]) -> P2 {
    (v[0], v[1])
}

fn v2(p: P2) -> Vec<i64> {
    vec![p.0, p.1]
}

/// Primitive integer direction of a nonzero rational vector.
pub(crate) fn direction(v: &[Rational]) -> Vec<i64> {
    let l = v.iter().fold(BigInt::from(1), |acc, q| acc.lcm(q.denom()));
    let ints: Vec<BigInt> = v.iter().map(|q| q.numer() * (&l / q.denom())).collect();
    let g = ints.iter().fold(BigInt::zero(), |acc, x| acc.gcd(x));
    ints.iter()
        .map(|x| i64::try_from(x / &g).expect("direction fits in i64"))
        .collect()
}

fn cross_q(a: &[Rational], b: &[Rational]) -> Rational {
    &a[0] * &b[1] - &a[1] * &b[0]
}

fn dot_q(a: &[Rational], b: &[Rational]) -> Rational {
    &a[0] * &b[0] + &a[1] * &b[1]
}

fn q_vec(d: &[i64]) -> Vec<Rational> {
    d.iter().map(|x| Rational::from_integer((*x).into())).collect()
}

#[derive(Default)]
struct Parts {
    points: Vec<P2>,
    arcs: Vec<(P2, P2)>,
    whole: bool,
}

impl Parts {
    fn arc_between(&mut self, a: &[Rational], b: &[Rational]) {
        let (da, db) = (p2(&direction(a)), p2(&direction(b)));
        if cross_q(a, b).is_positive() {
            self.arcs.push((da, db));
        } else {
            self.arcs.push((db, da));
        }
    }

    /// Directions met by the closed segment from `a` to `b`.
    fn segment(&mut self, a: &[Rational], b: &[Rational]) {
        let (az, bz) = (a.iter().all(Zero::is_zero), b.iter().all(Zero::is_zero));
        match (az, bz) {
            (true, true) => {}
            (true, false) => self.points.push(p2(&direction(b))),
            (false, true) => self.points.push(p2(&direction(a))),
            _ if !cross_q(a, b).is_zero() => self.arc_between(a, b),
            _ => {
                self.points.push(p2(&direction(a)));
                if !dot_q(a, b).is_positive() {
                    self.points.push(p2(&direction(b)));
                }
            }
        }
    }

    fn piece(&mut self, piece: &Piece) {
        match piece {
            Piece::FullSpace => self.whole = true,
            Piece::Point { at } => {
                if !at.iter().all(Zero::is_zero) {
                    self.points.push(p2(&direction(at)));
                }
            }
            Piece::Segment { start, end } => self.segment(start, end),
            Piece::Ray { vertex, direction: w } => {
                let wq = q_vec(w);
                if vertex.iter().all(Zero::is_zero) {
                    self.points.push(p2(w));
                } else if cross_q(vertex, &wq).is_zero() {
                    self.points.push(p2(w));
                    if !dot_q(vertex, &wq).is_positive() {
                        self.points.push(p2(&direction(vertex)));
                    }
                } else {
                    // the far end closes onto the ray direction
                    self.arc_between(vertex, &wq);
                }
            }
            Piece::Line { through, direction: w } => {
                let c = cross_q(through, &q_vec(w));
                let w = p2(w);
                if c.is_zero() {
                    self.points.extend([w, neg(w)]);
                } else if c.is_positive() {
                    self.arcs.push((neg(w), w));
                } else {
                    self.arcs.push((w, neg(w)));
                }
            }
        }
    }
}

impl SphericalSet {
    pub fn empty(rank: usize) -> Self {
        Self {
            rank,
            points: Vec::new(),
            arcs: Vec::new(),
            whole_sphere: false,
        }
    }

    pub fn whole(rank: usize) -> Self {
        let mut s = Self::empty(rank);
        s.whole_sphere = true;
        if rank == 1 {
            s.points = vec![vec![1], vec![-1]];
        }
        s
    }

    /// Spherical projection of a union of pieces, closed and normalized.
    pub fn project<'a>(rank: usize, pieces: impl IntoIterator<Item = &'a Piece>) -> Self {
        if rank == 1 {
            let mut pos = false;
            let mut negv = false;
            for piece in pieces {
                match piece {
                    Piece::FullSpace => return Self::whole(1),
                    Piece::Point { at } => {
                        pos |= at[0].is_positive();
                        negv |= at[0].is_negative();
                    }
                    _ => unreachable!("rank-1 complexes hold points only"),
                }
            }
            return Self::from_signs(pos, negv);
        }
        let mut parts = Parts::default();
        for piece in pieces {
            parts.piece(piece);
        }
        Self::normalize(parts.points, parts.arcs, parts.whole)
    }

    fn from_signs(pos: bool, negv: bool) -> Self {
        if pos && negv {
            return Self::whole(1);
        }
        let mut s = Self::empty(1);
        if pos {
            s.points.push(vec![1]);
        }
        if negv {
            s.points.push(vec![-1]);
        }
        s
    }

    /// Builds a rank-2 set from raw points and counterclockwise arcs,
    /// merging arcs, absorbing points, and detecting the full circle.
    pub fn from_parts(points: &[Vec<i64>], arcs: &[Arc]) -> Self {
        let prim = |v: &[i64]| {
            let g = v[0].gcd(&v[1]);
            (v[0] / g, v[1] / g)
        };
        Self::normalize(
            points.iter().map(|p| prim(p)).collect(),
            arcs.iter().map(|a| (prim(&a.start), prim(&a.end))).collect(),
            false,
        )
    }

    fn normalize(points: Vec<P2>, arcs: Vec<(P2, P2)>, whole: bool) -> Self {
        if whole {
            return Self::whole(2);
        }
        let mut crit: Vec<P2> = points.iter().copied().chain(arcs.iter().flat_map(|a| [a.0, a.1])).collect();
        crit.sort_by(|a, b| angle_cmp(*a, *b));
        crit.dedup();
        let n = crit.len();
        let idx = |d: P2| crit.iter().position(|c| *c == d).expect("critical");
        let mut pt_cov = vec![false; n];
        let mut gap_cov = vec![false; n];
        for p in &points {
            pt_cov[idx(*p)] = true;
        }
        for &(s, e) in &arcs {
            let (is, ie) = (idx(s), idx(e));
            let mut i = is;
            loop {
                pt_cov[i] = true;
                if i == ie {
                    break;
                }
                gap_cov[i] = true;
                i = (i + 1) % n;
            }
        }
        if n > 0 && gap_cov.iter().all(|g| *g) {
            return Self::whole(2);
        }
        let mut out = Self::empty(2);
        if let Some(g0) = gap_cov.iter().position(|g| !g) {
            let mut run: Option<P2> = None;
            for k in 1..=n {
                let i = (g0 + k) % n;
                if gap_cov[i] {
                    run.get_or_insert(crit[i]);
                } else if let Some(s) = run.take() {
                    out.arcs.push(Arc { start: v2(s), end: v2(crit[i]) });
                } else if pt_cov[i] {
                    out.points.push(v2(crit[i]));
                }
            }
        }
        out.points.sort_by(|a, b| angle_cmp(p2(a), p2(b)));
        out.arcs.sort_by(|a, b| angle_cmp(p2(&a.start), p2(&b.start)));
        out
    }

    pub fn rank(&self) -> usize {
        self.rank
    }

    pub fn is_empty(&self) -> bool {
        !self.whole_sphere && self.points.is_empty() && self.arcs.is_empty()
    }

    /// Membership of the direction of `d` (any nonzero integer vector).
    pub fn contains(&self, d: &[i64]) -> bool {
        if self.whole_sphere {
            return true;
        }
        if self.rank == 1 {
            return self.points.iter().any(|p| p[0].signum() == d[0].signum());
        }
        let g = d[0].gcd(&d[1]);
        let d = (d[0] / g, d[1] / g);
        self.points.iter().any(|p| p2(p) == d)
            || self.arcs.iter().any(|a| arc_contains(p2(&a.start), p2(&a.end), d))
    }

    fn critical(&self) -> Vec<Vec<i64>> {
        let mut out: Vec<Vec<i64>> = self
            .points
            .iter()
            .cloned()
            .chain(self.arcs.iter().flat_map(|a| [a.start.clone(), a.end.clone()]))
            .collect();
        if self.rank == 2 {
            out.sort_by(|a, b| angle_cmp(p2(a), p2(b)));
        }
        out.dedup();
        out
    }

    /// Image under a linear map on directions (used for variable swaps).
    pub fn map_directions(&self, m: impl Fn(&[i64]) -> Vec<i64>) -> Self {
        if self.whole_sphere {
            return Self::whole(self.rank);
        }
        if self.rank == 1 {
            let pts: Vec<Vec<i64>> = self.points.iter().map(|p| m(p)).collect();
            return Self::from_signs(pts.iter().any(|p| p[0] > 0), pts.iter().any(|p| p[0] < 0));
        }
        let points: Vec<Vec<i64>> = self.points.iter().map(|p| m(p)).collect();
        let arcs: Vec<Arc> = self
            .arcs
            .iter()
            .map(|a| {
                let (s, e) = (m(&a.start), m(&a.end));
                // an orientation-reversing map swaps the traversal order
                if cross(p2(&m(&[1, 0])), p2(&m(&[0, 1]))) > 0 {
                    Arc { start: s, end: e }
                } else {
                    Arc { start: e, end: s }
                }
            })
            .collect();
        Self::from_parts(&points, &arcs)
    }
}

/// No pair of antipodal directions. Checking the critical directions is
/// enough: two closed arcs that meet share an endpoint of one of them.
pub fn two_tame(s: &SphericalSet) -> bool {
    if s.whole_sphere {
        return false;
    }
    s.critical()
        .iter()
        .all(|c| !s.contains(&c.iter().map(|x| -x).collect::<Vec<_>>()))
}

/// Arc endpoints and isolated points, by angle.
pub fn boundary_points(s: &SphericalSet) -> Result<Vec<Vec<i64>>> {
    if s.whole_sphere {
        return Err(Error::WholeSphere);
    }
    Ok(s.critical())
}

pub fn sphere_diagnostics(s: &SphericalSet) -> Result<SphereDiagnostics> {
    if s.rank != 2 {
        return Err(Error::UnsupportedRank(s.rank));
    }
    let pts: Vec<P2> = s.points.iter().map(|p| p2(p)).collect();
    let independent = pts.iter().any(|a| pts.iter().any(|b| cross(*a, *b) != 0));
    Ok(SphereDiagnostics {
        great_circle: s.whole_sphere,
        spans: s.whole_sphere || !s.arcs.is_empty() || independent,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn arc(s: [i64; 2], e: [i64; 2]) -> Arc {
        Arc { start: s.to_vec(), end: e.to_vec() }
    }

    #[test]
    fn angle_order() {
        let mut v = vec![(0, 1), (-1, 0), (1, 0), (-1, -1), (1, -1)];
        v.sort_by(|a, b| angle_cmp(*a, *b));
        assert_eq!(v, vec![(-1, -1), (1, -1), (1, 0), (0, 1), (-1, 0)]);
    }

    #[test]
    fn merging_and_absorption() {
        let s = SphericalSet::from_parts(
            &[vec![1, 1], vec![-1, -1], vec![1, 0]],
            &[arc([1, 1], [0, 1]), arc([1, 0], [1, 1])],
        );
        assert_eq!(s.points, vec![vec![-1, -1]]);
        assert_eq!(s.arcs, vec![arc([1, 0], [0, 1])]);
        assert!(!two_tame(&s));
        assert_eq!(boundary_points(&s).unwrap(), vec![vec![-1, -1], vec![1, 0], vec![0, 1]]);
        // renormalizing is idempotent
        assert_eq!(SphericalSet::from_parts(&s.points, &s.arcs), s);
    }

    #[test]
    fn full_circle_from_half_circles() {
        let s = SphericalSet::from_parts(&[], &[arc([1, 0], [-1, 0]), arc([-1, 0], [1, 0])]);
        assert!(s.whole_sphere);
        assert!(!two_tame(&s));
        assert_eq!(boundary_points(&s), Err(Error::WholeSphere));
        let d = sphere_diagnostics(&s).unwrap();
        assert!(d.great_circle && d.spans);
    }

    #[test]
    fn wrapping_arc() {
        // from (-1,1) counterclockwise through (-1,0) to (0,-1)
        let s = SphericalSet::from_parts(&[], &[arc([-1, 1], [0, -1])]);
        assert!(s.contains(&[-1, 0]));
        assert!(s.contains(&[-2, -1]));
        assert!(!s.contains(&[1, 0]));
        assert!(two_tame(&s));
    }

    #[test]
    fn diagnostics() {
        let three = SphericalSet::from_parts(&[vec![-1, -1], vec![1, 0], vec![0, 1]], &[]);
        assert!(two_tame(&three));
        assert_eq!(
            sphere_diagnostics(&three).unwrap(),
            SphereDiagnostics { great_circle: false, spans: true }
        );
        let one = SphericalSet::from_parts(&[vec![1, 0]], &[]);
        assert!(!sphere_diagnostics(&one).unwrap().spans);
        let anti = SphericalSet::from_parts(&[vec![1, 1], vec![-1, -1]], &[]);
        assert!(!two_tame(&anti));
        assert!(two_tame(&SphericalSet::empty(2)));
        assert!(boundary_points(&SphericalSet::empty(2)).unwrap().is_empty());
        assert_eq!(sphere_diagnostics(&SphericalSet::whole(1)), Err(Error::UnsupportedRank(1)));
    }
}
