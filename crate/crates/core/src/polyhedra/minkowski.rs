use super::{hull2, primitive, LatticePolytope, P2};
use crate::error::{Error, Result};

pub const DEFAULT_LATTICE_BOUND: u64 = 64;

/// All unordered decompositions `P = P1 + P2` into lattice polytopes, up to
/// translation, with the default lattice-point bound.
pub fn minkowski_summand_pairs(p: &LatticePolytope) -> Result<Vec<(LatticePolytope, LatticePolytope)>> {
    minkowski_summand_pairs_with_bound(p, DEFAULT_LATTICE_BOUND)
}

/// As [`minkowski_summand_pairs`] with an explicit lattice-point bound.
///
/// `P1` is placed with its lexicographically smallest vertex at the
/// origin and `P2` at the lexmin vertex of `P`, so `P1 + P2 == P` holds
/// literally. The trivial pair comes first.
pub fn minkowski_summand_pairs_with_bound(
    p: &LatticePolytope,
    bound: u64,
) -> Result<Vec<(LatticePolytope, LatticePolytope)>> {
    let points = p.lattice_point_count();
    if points > bound {
        return Err(Error::TooLarge { points, bound });
    }
    let rank = p.rank();
    let base = p.vertices2()[0];
    let place = |walk: Vec<P2>, at: P2| {
        let hull = hull2(walk);
        let lo = hull[0];
        LatticePolytope::from_hull(rank, hull.into_iter().map(|q| (q.0 - lo.0 + at.0, q.1 - lo.1 + at.1)).collect())
    };
    let edges: Vec<(P2, i64)> = match p.dim() {
        0 => return Ok(vec![(place(vec![(0, 0)], (0, 0)), p.clone())]),
        1 => {
            let v = p.vertices2();
            let (u, m) = primitive((v[1].0 - v[0].0, v[1].1 - v[0].1));
            return Ok((0..=m / 2)
                .map(|a| {
                    let p1 = place(vec![(0, 0), (a * u.0, a * u.1)], (0, 0));
                    let p2 = place(vec![(0, 0), ((m - a) * u.0, (m - a) * u.1)], base);
                    (p1, p2)
                })
                .collect());
        }
        _ => p
            .edges2()
            .into_iter()
            .map(|(a, b)| primitive((b.0 - a.0, b.1 - a.1)))
            .collect(),
    };

    let lengths: Vec<i64> = edges.iter().map(|e| e.1).collect();
    let mut out = Vec::new();
    let mut split = vec![0i64; edges.len()];
    loop {
        let closes = edges
            .iter()
            .zip(&split)
            .fold((0i64, 0i64), |s, ((u, _), a)| (s.0 + a * u.0, s.1 + a * u.1))
            == (0, 0);
        let rest: Vec<i64> = lengths.iter().zip(&split).map(|(m, a)| m - a).collect();
        if closes && split <= rest {
            let walk = |parts: &[i64]| {
                let mut cur = (0i64, 0i64);
                let mut pts = vec![cur];
                for ((u, _), a) in edges.iter().zip(parts) {
                    cur = (cur.0 + a * u.0, cur.1 + a * u.1);
                    pts.push(cur);
                }
                pts
            };
            out.push((place(walk(&split), (0, 0)), place(walk(&rest), base)));
        }
        // odometer increment
        let mut i = 0;
        loop {
            if i == split.len() {
                return Ok(out);
            }
            if split[i] < lengths[i] {
                split[i] += 1;
                break;
            }
            split[i] = 0;
            i += 1;
        }
    }
}
