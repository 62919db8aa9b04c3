use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::algebra::integer::inv_mod;
use crate::algebra::univariate::{
    degree, fp_divrem, fp_gcd, q_gcd, q_to_primitive_z, to_q, trim, z_factor, FpPoly, ZPoly,
};
use crate::algebra::{reduce_mod_p, Exponent, LaurentPolynomial, ResiduePolynomial};
use crate::error::{Error, Result};
use crate::polyhedra::{minkowski_summand_pairs, LatticePolytope};

/// Total number of candidate factors tried per search before giving up.
const SEARCH_BUDGET: u64 = 2_000_000;

/// Largest prime for which the exhaustive search over `F_p` is attempted.
pub const MAX_SEARCH_PRIME: u64 = 13;

/// Coefficient box for the bounded search over `Q`.
const Q_COEFF_BOUND: i64 = 3;

/// Largest candidate-factor support for exhaustive searches. Overridable
/// through `SIGMA_FORGE_MAX_SUPPORT`.
pub fn max_support() -> usize {
    std::env::var("SIGMA_FORGE_MAX_SUPPORT")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(8)
}

/// Support lying on a line: `base + k * dir` for `k` in `0..=len`.
pub(crate) struct Line {
    base: Exponent,
    dir: Exponent,
    len: i64,
}

impl Line {
    fn index(&self, e: &[i64]) -> usize {
        let dot = |a: &[i64], b: &[i64]| a.iter().zip(b).map(|(x, y)| x * y).sum::<i64>();
        let d: Vec<i64> = e.iter().zip(&self.base).map(|(a, b)| a - b).collect();
        (dot(&d, &self.dir) / dot(&self.dir, &self.dir)) as usize
    }

    fn exponent(&self, k: usize) -> Exponent {
        self.dir.iter().map(|d| d * k as i64).collect()
    }
}

/// The line carrying the Newton polytope, if it has dimension ≤ 1.
pub(crate) fn support_line(np: &LatticePolytope) -> Option<Line> {
    let v = np.vertices();
    match v.len() {
        1 => Some(Line {
            base: v[0].clone(),
            dir: (0..np.rank()).map(|i| i64::from(i == 0)).collect(),
            len: 0,
        }),
        2 => {
            let d: Vec<i64> = v[1].iter().zip(&v[0]).map(|(a, b)| a - b).collect();
            let g = d.iter().fold(0i64, |acc, x| acc.gcd(x));
            Some(Line {
                base: v[0].clone(),
                dir: d.iter().map(|x| x / g).collect(),
                len: g,
            })
        }
        _ => None,
    }
}

/// Primitive direction with its first nonzero coordinate positive.
pub(crate) fn canonical_direction(d: &[i64]) -> Exponent {
    let g = d.iter().fold(0i64, |acc, x| acc.gcd(x));
    let mut out: Vec<i64> = d.iter().map(|x| x / g.max(1)).collect();
    if out.iter().find(|x| **x != 0).is_some_and(|x| *x < 0) {
        out.iter_mut().for_each(|x| *x = -*x);
    }
    out
}

fn fp_monic(f: FpPoly, p: u64) -> FpPoly {
    match degree(&f) {
        None => f,
        Some(d) => {
            let inv = inv_mod(f[d], p);
            f.iter().map(|c| crate::algebra::integer::mul_mod(*c, inv, p)).collect()
        }
    }
}

/// Strips the power of the variable dividing `f` (a unit in the Laurent ring).
fn strip_low<T: Zero + Clone>(f: &[T]) -> Vec<T> {
    let k = f.iter().take_while(|c| c.is_zero()).count();
    f[k..].to_vec()
}

/// Monic irreducible factors, with repetition, of a univariate polynomial
/// over `F_p` by trial division. `None` when the budget runs out.
pub(crate) fn fp_factor(f: &[u64], p: u64) -> Option<Vec<FpPoly>> {
    let mut f = fp_monic(trim(strip_low(f)), p);
    let mut out = Vec::new();
    let mut spent = 0u64;
    let mut k = 1usize;
    while degree(&f).unwrap_or(0) >= 2 * k {
        let count = p.checked_pow(k as u32)?;
        spent = spent.saturating_add(count);
        if spent > SEARCH_BUDGET {
            return None;
        }
        for idx in 0..count {
            if degree(&f).unwrap_or(0) < 2 * k {
                break;
            }
            let mut cand: FpPoly = (0..k).scan(idx, |r, _| {
                let d = *r % p;
                *r /= p;
                Some(d)
            })
            .collect();
            cand.push(1);
            loop {
                let (q, r) = fp_divrem(&f, &cand, p);
                if !r.is_empty() {
                    break;
                }
                out.push(cand.clone());
                f = q;
            }
        }
        k += 1;
    }
    if degree(&f).unwrap_or(0) >= 1 {
        out.push(f);
    }
    Some(out)
}

/// Outcome of the degree-one test `f = A·y + B`.
pub(crate) enum LinearSplit<T> {
    NotLinear,
    Coprime,
    /// Nonunit common factor of `A` and `B`, and the cofactor.
    Common(T, T),
}

fn linear_variable(rank: usize, min: &[i64], max: &[i64]) -> Option<usize> {
    if rank != 2 {
        return (rank == 1 && max[0] - min[0] == 1).then_some(0);
    }
    [1, 0].into_iter().find(|&v| max[v] - min[v] == 1)
}

pub(crate) fn residue_linear(g: &ResiduePolynomial) -> LinearSplit<ResiduePolynomial> {
    let g = g.clear_monomial();
    let (Some(lo), Some(hi)) = (g.min_exponents(), max_exp(g.support())) else {
        return LinearSplit::NotLinear;
    };
    let Some(var) = linear_variable(g.rank(), &lo, &hi) else {
        return LinearSplit::NotLinear;
    };
    if g.rank() == 1 {
        return LinearSplit::Coprime;
    }
    let other = 1 - var;
    let width = (hi[other] + 1) as usize;
    let (mut a, mut b) = (vec![0u64; width], vec![0u64; width]);
    for (e, c) in g.terms() {
        let slot = if e[var] == 1 { &mut a } else { &mut b };
        slot[e[other] as usize] = *c;
    }
    let d = trim(strip_low(&fp_gcd(&a, &b, g.prime())));
    if degree(&d).unwrap_or(0) == 0 {
        return LinearSplit::Coprime;
    }
    let d = ResiduePolynomial::from_terms(
        2,
        g.prime(),
        d.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0, 0];
            e[other] = i as i64;
            (e, *c)
        }),
    );
    let q = g.div_exact(&d).expect("gcd divides");
    LinearSplit::Common(d, q)
}

pub(crate) fn integer_linear(f: &LaurentPolynomial) -> LinearSplit<LaurentPolynomial> {
    let (f, _) = f.clear_monomial();
    let (Some(lo), Some(hi)) = (f.min_exponents(), f.max_exponents()) else {
        return LinearSplit::NotLinear;
    };
    let Some(var) = linear_variable(f.rank(), &lo, &hi) else {
        return LinearSplit::NotLinear;
    };
    if f.rank() == 1 {
        return LinearSplit::Coprime;
    }
    let other = 1 - var;
    let (a, b) = linear_coefficients(&f, var);
    let d = strip_low(&q_to_primitive_z(&q_gcd(&to_q(&a), &to_q(&b))));
    if degree(&d).unwrap_or(0) == 0 {
        return LinearSplit::Coprime;
    }
    let d = LaurentPolynomial::from_terms(
        2,
        d.iter().enumerate().map(|(i, c)| {
            let mut e = vec![0, 0];
            e[other] = i as i64;
            (e, c.clone())
        }),
    )
    .expect("rank 2");
    let q = f.div_exact(&d).expect("gcd divides a primitive input");
    LinearSplit::Common(d, q)
}

/// Dense coefficients `A`, `B` in the other variable for `f = A·v + B`,
/// where `f` has nonnegative exponents and degree one in `var`.
pub(crate) fn linear_coefficients(f: &LaurentPolynomial, var: usize) -> (ZPoly, ZPoly) {
    let other = 1 - var;
    let width = (f.max_exponents().expect("nonzero")[other] + 1) as usize;
    let (mut a, mut b) = (vec![BigInt::zero(); width], vec![BigInt::zero(); width]);
    for (e, c) in f.terms() {
        let slot = if e[var] == 1 { &mut a } else { &mut b };
        slot[e[other] as usize] = c.clone();
    }
    (a, b)
}

fn max_exp<'a>(mut it: impl Iterator<Item = &'a Exponent>) -> Option<Exponent> {
    let first = it.next()?.clone();
    Some(it.fold(first, |acc, e| acc.iter().zip(e).map(|(a, b)| *a.max(b)).collect()))
}

/// Univariate factorization along a line-shaped support, over `F_p`.
fn residue_line_factors(g: &ResiduePolynomial, line: &Line) -> Option<Vec<ResiduePolynomial>> {
    let mut dense = vec![0u64; line.len as usize + 1];
    for (e, c) in g.terms() {
        dense[line.index(e)] = *c;
    }
    let factors = fp_factor(&dense, g.prime())?;
    Some(
        factors
            .into_iter()
            .map(|h| {
                ResiduePolynomial::from_terms(
                    g.rank(),
                    g.prime(),
                    h.iter().enumerate().map(|(k, c)| (line.exponent(k), *c)),
                )
                .normalized()
            })
            .collect(),
    )
}

/// Univariate factorization along a line-shaped support, over `Z`.
pub(crate) fn integer_line_factors(f: &LaurentPolynomial, line: &Line) -> Option<Vec<LaurentPolynomial>> {
    let mut dense = vec![BigInt::zero(); line.len as usize + 1];
    for (e, c) in f.terms() {
        dense[line.index(e)] = c.clone();
    }
    let factors = z_factor(&dense)?;
    Some(
        factors
            .into_iter()
            .flat_map(|(h, m)| std::iter::repeat(h).take(m as usize))
            .map(|h| {
                let g = LaurentPolynomial::from_terms(
                    f.rank(),
                    h.iter().enumerate().map(|(k, c)| (line.exponent(k), c.clone())),
                )
                .expect("rank preserved");
                g.clear_monomial().0
            })
            .collect(),
    )
}

pub(crate) enum Search<T> {
    Found(T, T),
    Exhausted,
    Incomplete,
}

/// Proper summand pairs, each reduced to the side with fewer lattice points.
fn proper_summands(np: &LatticePolytope) -> Option<Vec<LatticePolytope>> {
    let pairs = minkowski_summand_pairs(np).ok()?;
    Some(
        pairs
            .into_iter()
            .filter(|(a, b)| a.dim() > 0 && b.dim() > 0)
            .map(|(a, b)| if a.lattice_point_count() <= b.lattice_point_count() { a } else { b })
            .collect(),
    )
}

/// Exhaustive search for a factor over `F_p` whose Newton polytope is a
/// proper Minkowski summand of `NP(g)`.
pub(crate) fn residue_search(g: &ResiduePolynomial, np: &LatticePolytope) -> Search<ResiduePolynomial> {
    let p = g.prime();
    if p > MAX_SEARCH_PRIME {
        return Search::Incomplete;
    }
    let Some(summands) = proper_summands(np) else {
        return Search::Incomplete;
    };
    let mut complete = true;
    let mut spent = 0u64;
    for s in summands {
        let points = s.lattice_points();
        if points.len() > max_support() {
            complete = false;
            continue;
        }
        let is_vertex: Vec<bool> = points.iter().map(|e| s.vertices().contains(e)).collect();
        let lead = points.iter().enumerate().max_by(|a, b| a.1.cmp(b.1)).expect("nonempty").0;
        let ranges: Vec<(u64, u64)> = (0..points.len())
            .map(|i| if i == lead { (1, 1) } else if is_vertex[i] { (1, p - 1) } else { (0, p - 1) })
            .collect();
        let count: u64 = ranges.iter().map(|(a, b)| b - a + 1).product();
        spent = spent.saturating_add(count);
        if spent > SEARCH_BUDGET {
            return Search::Incomplete;
        }
        let mut coeffs: Vec<u64> = ranges.iter().map(|r| r.0).collect();
        loop {
            let h = ResiduePolynomial::from_terms(
                g.rank(),
                p,
                points.iter().cloned().zip(coeffs.iter().copied()),
            );
            if let Some(q) = g.div_exact(&h) {
                return Search::Found(h, q);
            }
            if !odometer(&mut coeffs, &ranges) {
                break;
            }
        }
    }
    if complete {
        Search::Exhausted
    } else {
        Search::Incomplete
    }
}

fn odometer<T: Copy + PartialOrd + std::ops::Add<Output = T> + One>(c: &mut [T], ranges: &[(T, T)]) -> bool {
    for i in 0..c.len() {
        if c[i] < ranges[i].1 {
            c[i] = c[i] + T::one();
            return true;
        }
        c[i] = ranges[i].0;
    }
    false
}

/// Complete factorization over `F_p` into normalized irreducibles, `None`
/// if some step exceeds its bounds.
pub(crate) fn factor_residue(g: &ResiduePolynomial) -> Option<Vec<ResiduePolynomial>> {
    let g = g.normalized();
    if g.len() <= 1 {
        return Some(Vec::new());
    }
    let np = LatticePolytope::hull(g.rank(), g.support().cloned()).ok()?;
    if let Some(line) = support_line(&np) {
        return residue_line_factors(&g, &line);
    }
    match residue_linear(&g) {
        LinearSplit::Coprime => return Some(vec![g]),
        LinearSplit::Common(d, q) => {
            let mut out = factor_residue(&d)?;
            out.push(q.normalized());
            return Some(out);
        }
        LinearSplit::NotLinear => {}
    }
    match residue_search(&g, &np) {
        Search::Found(h, q) => {
            let mut out = factor_residue(&h)?;
            out.extend(factor_residue(&q)?);
            Some(out)
        }
        Search::Exhausted => Some(vec![g]),
        Search::Incomplete => None,
    }
}

/// Complete irreducible factorization of `f mod p` (normalized: monomial
/// cleared, monic), sorted. Unit monomial factors are dropped.
pub fn factor_mod_p(f: &LaurentPolynomial, p: u64) -> Result<Vec<ResiduePolynomial>> {
    let g = reduce_mod_p(f, p)?;
    if g.is_zero() {
        return Err(Error::ZeroResidue(p));
    }
    let mut out = factor_residue(&g).ok_or(Error::FactorizationIncomplete(p))?;
    out.sort_by(|a, b| a.terms().cmp(b.terms()));
    Ok(out)
}

fn eval_pm1(f: &LaurentPolynomial, signs: &[i64]) -> BigInt {
    f.terms()
        .map(|(e, c)| {
            let odd = e.iter().zip(signs).filter(|(x, s)| **s < 0 && x.is_odd()).count();
            if odd % 2 == 1 {
                -c
            } else {
                c.clone()
            }
        })
        .sum()
}

fn signed_divisors(n: &BigInt, positive_only: bool) -> Vec<i64> {
    let n = n.abs();
    let cap = n.clone().min(BigInt::from(64));
    let mut out = Vec::new();
    let mut d = BigInt::one();
    while d <= cap {
        if (&n % &d).is_zero() {
            let v: i64 = (&d).try_into().expect("small");
            out.push(v);
            if !positive_only {
                out.push(-v);
            }
        }
        d += 1;
    }
    out
}

/// Bounded search over `Z` for a factor with Newton polytope a proper
/// summand. Extreme coefficients range over divisors of the matching
/// coefficients of `f`, the others over `[-3, 3]`.
pub(crate) fn integer_search(f: &LaurentPolynomial, np: &LatticePolytope) -> Search<LaurentPolynomial> {
    let Some(summands) = proper_summands(np) else {
        return Search::Incomplete;
    };
    let lead_f = f.terms().last().expect("nonzero").1.clone();
    let tail_f = f.terms().next().expect("nonzero").1.clone();
    let probes: Vec<Vec<i64>> = match f.rank() {
        1 => vec![vec![1], vec![-1]],
        _ => vec![vec![1, 1], vec![-1, 1], vec![1, -1], vec![-1, -1]],
    };
    let f_at: Vec<BigInt> = probes.iter().map(|s| eval_pm1(f, s)).collect();
    let mut spent = 0u64;
    for s in summands {
        let points = s.lattice_points();
        if points.len() > max_support() {
            continue;
        }
        let lead = points.iter().enumerate().max_by(|a, b| a.1.cmp(b.1)).expect("nonempty").0;
        let tail = points.iter().enumerate().min_by(|a, b| a.1.cmp(b.1)).expect("nonempty").0;
        let choices: Vec<Vec<i64>> = points
            .iter()
            .enumerate()
            .map(|(i, e)| {
                if i == lead {
                    signed_divisors(&lead_f, true)
                } else if i == tail {
                    signed_divisors(&tail_f, false)
                } else if s.vertices().contains(e) {
                    (-Q_COEFF_BOUND..=Q_COEFF_BOUND).filter(|c| *c != 0).collect()
                } else {
                    (-Q_COEFF_BOUND..=Q_COEFF_BOUND).collect()
                }
            })
            .collect();
        let count: u64 = choices.iter().map(|c| c.len() as u64).product();
        spent = spent.saturating_add(count);
        if spent > SEARCH_BUDGET {
            return Search::Incomplete;
        }
        let ranges: Vec<(usize, usize)> = choices.iter().map(|c| (0, c.len() - 1)).collect();
        let mut idx = vec![0usize; points.len()];
        loop {
            let h = LaurentPolynomial::from_terms(
                f.rank(),
                points.iter().cloned().zip(idx.iter().zip(&choices).map(|(i, c)| c[*i])),
            )
            .expect("rank");
            let plausible = probes.iter().zip(&f_at).all(|(pt, fv)| {
                let hv = eval_pm1(&h, pt);
                if hv.is_zero() {
                    fv.is_zero()
                } else {
                    (fv % &hv).is_zero()
                }
            });
            if plausible {
                if let Some(q) = f.div_exact(&h) {
                    return Search::Found(h, q);
                }
            }
            if !odometer(&mut idx, &ranges) {
                break;
            }
        }
    }
    Search::Exhausted
}

#[cfg(test)]
mod tests {
    use super::*;

    fn lp(terms: &[(&[i64], i64)]) -> LaurentPolynomial {
        LaurentPolynomial::from_terms(2, terms.iter().map(|(e, c)| (e.to_vec(), *c))).unwrap()
    }

    fn product(fs: &[ResiduePolynomial]) -> ResiduePolynomial {
        fs.iter().skip(1).fold(fs[0].clone(), |a, b| a.mul(b))
    }

    #[test]
    fn spec_mod_p_factorizations() {
        let f = lp(&[(&[0, 2], 1), (&[2, 0], -1)]);
        let fs = factor_mod_p(&f, 7).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs).normalized(), reduce_mod_p(&f, 7).unwrap().normalized());

        let g = lp(&[(&[0, 1], 1), (&[1, 0], -1), (&[0, 0], -2)]);
        let gs = factor_mod_p(&g, 2).unwrap();
        assert_eq!(gs, vec![reduce_mod_p(&g, 2).unwrap().normalized()]);

        let h = lp(&[(&[0, 2], 1), (&[0, 0], 1)]);
        let hs = factor_mod_p(&h, 2).unwrap();
        let y1 = ResiduePolynomial::from_terms(2, 2, [(vec![0, 1], 1), (vec![0, 0], 1)]);
        assert_eq!(hs, vec![y1.clone(), y1]);

        assert_eq!(factor_mod_p(&lp(&[(&[1, 0], 3)]), 3), Err(Error::ZeroResidue(3)));
    }

    #[test]
    fn search_finds_two_dimensional_factors() {
        // (1 + x + y)(1 + 2x + 3y) mod 5: neither factor is a segment
        let a = lp(&[(&[0, 0], 1), (&[1, 0], 1), (&[0, 1], 1)]);
        let b = lp(&[(&[0, 0], 1), (&[1, 0], 2), (&[0, 1], 3)]);
        let f = &a * &b;
        let fs = factor_mod_p(&f, 5).unwrap();
        assert_eq!(fs.len(), 2);
        assert_eq!(product(&fs).normalized(), reduce_mod_p(&f, 5).unwrap().normalized());
    }

    #[test]
    fn univariate_trial_division() {
        // x^4 + x + 1 is irreducible over F_2; x^4 + 1 = (x + 1)^4
        assert_eq!(fp_factor(&[1, 1, 0, 0, 1], 2).unwrap().len(), 1);
        assert_eq!(fp_factor(&[1, 0, 0, 0, 1], 2).unwrap(), vec![vec![1, 1]; 4]);
    }

    #[test]
    fn integer_search_recovers_product() {
        let a = lp(&[(&[0, 0], 1), (&[1, 0], 2), (&[0, 1], -1)]);
        let b = lp(&[(&[0, 0], 3), (&[1, 0], 1), (&[0, 1], 1)]);
        let f = &a * &b;
        let np = crate::polyhedra::newton_polytope(&f).unwrap();
        match integer_search(&f, &np) {
            Search::Found(h, q) => assert_eq!(&h * &q, f),
            _ => panic!("factor not found"),
        }
    }

    #[test]
    fn canonical_sign() {
        assert_eq!(canonical_direction(&[-2, 2]), vec![1, -1]);
        assert_eq!(canonical_direction(&[0, -3]), vec![0, 1]);
    }
}
