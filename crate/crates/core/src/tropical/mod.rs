//! Corner loci of `f` under coefficient valuations and their assembly into
//! the complement of the invariant on the character sphere.

mod family;
mod sphere;

pub use family::{FamilyRegistry, PAdicFamily, ResidueFamily, ValuationFamily, ZeroFamily};
pub use sphere::{boundary_points, sphere_diagnostics, two_tame, Arc, SphereDiagnostics, SphericalSet};

use std::collections::{BTreeMap, BTreeSet};

use num_traits::{Signed, Zero};

use crate::algebra::{
    coefficient_primes, rat, reduce_mod_p, CoefficientValuation, Exponent, LaurentPolynomial, Rational,
    ResiduePolynomial,
};
use crate::error::{Error, Result};
use crate::polyhedra::lower_hull_subdivision;
use crate::ring::factor_mod_p;

/// A character `χ`, given by its values on the generators of `Q`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Character {
    coords: Vec<Rational>,
}

impl Character {
    pub fn new(coords: Vec<Rational>) -> Self {
        Self { coords }
    }

    pub fn from_ints(coords: &[i64]) -> Self {
        Self::new(coords.iter().map(|c| rat(*c)).collect())
    }

    pub fn coords(&self) -> &[Rational] {
        &self.coords
    }

    pub fn rank(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Primitive integer representative of the class `[χ]`.
    pub fn direction(&self) -> Option<Vec<i64>> {
        (!self.is_zero()).then(|| sphere::direction(&self.coords))
    }

    fn dot(&self, e: &[i64]) -> Rational {
        self.coords.iter().zip(e).map(|(c, x)| c * rat(*x)).sum()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum PieceKind {
    Point,
    Ray,
    Segment,
    Line,
    FullSpace,
}

/// Closed polyhedral piece of a corner locus in `Hom(Q, R)`.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum Piece {
    Point { at: Vec<Rational> },
    Ray { vertex: Vec<Rational>, direction: Vec<i64> },
    Segment { start: Vec<Rational>, end: Vec<Rational> },
    Line { through: Vec<Rational>, direction: Vec<i64> },
    FullSpace,
}

impl Piece {
    pub fn kind(&self) -> PieceKind {
        match self {
            Piece::Point { .. } => PieceKind::Point,
            Piece::Ray { .. } => PieceKind::Ray,
            Piece::Segment { .. } => PieceKind::Segment,
            Piece::Line { .. } => PieceKind::Line,
            Piece::FullSpace => PieceKind::FullSpace,
        }
    }

    pub fn vertex(&self) -> Option<&[Rational]> {
        match self {
            Piece::Point { at } => Some(at),
            Piece::Ray { vertex, .. } => Some(vertex),
            Piece::Segment { start, .. } => Some(start),
            Piece::Line { through, .. } => Some(through),
            Piece::FullSpace => None,
        }
    }

    /// Primitive directions spanning the piece from its vertex.
    pub fn generators(&self) -> Vec<Vec<i64>> {
        match self {
            Piece::Point { .. } | Piece::FullSpace => Vec::new(),
            Piece::Ray { direction, .. } => vec![direction.clone()],
            Piece::Segment { start, end } => {
                let d: Vec<Rational> = end.iter().zip(start).map(|(a, b)| a - b).collect();
                vec![sphere::direction(&d)]
            }
            Piece::Line { direction, .. } => vec![direction.clone(), direction.iter().map(|x| -x).collect()],
        }
    }

    pub fn dim(&self) -> usize {
        match self {
            Piece::Point { .. } => 0,
            Piece::FullSpace => usize::MAX,
            _ => 1,
        }
    }

    /// Exact point membership.
    pub fn contains(&self, chi: &[Rational]) -> bool {
        let along = |base: &[Rational], d: &[Rational]| -> Option<Rational> {
            // chi = base + t d; returns t if chi lies on that line
            let diff: Vec<Rational> = chi.iter().zip(base).map(|(a, b)| a - b).collect();
            if !(&diff[0] * &d[1] - &diff[1] * &d[0]).is_zero() {
                return None;
            }
            let dd: Rational = d.iter().map(|x| x * x).sum();
            Some(diff.iter().zip(d).map(|(a, b)| a * b).sum::<Rational>() / dd)
        };
        let q = |d: &[i64]| -> Vec<Rational> { d.iter().map(|x| rat(*x)).collect() };
        match self {
            Piece::FullSpace => true,
            Piece::Point { at } => at.as_slice() == chi,
            Piece::Line { through, direction } => along(through, &q(direction)).is_some(),
            Piece::Ray { vertex, direction } => {
                along(vertex, &q(direction)).is_some_and(|t| !t.is_negative())
            }
            Piece::Segment { start, end } => {
                let d: Vec<Rational> = end.iter().zip(start).map(|(a, b)| a - b).collect();
                along(start, &d).is_some_and(|t| !t.is_negative() && t <= rat(1))
            }
        }
    }
}

/// Corner locus: the characters at which the lifted minimum
/// `min_e (χ·e + v(c_e))` is attained at least twice.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TropicalComplex {
    pub rank: usize,
    pub valuation: CoefficientValuation,
    pub pieces: Vec<Piece>,
}

/// Canonical point-set form of a complex: maximal intervals per line.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PointSet {
    full: bool,
    lines: BTreeMap<(Vec<i64>, Rational), Vec<(Option<Rational>, Option<Rational>)>>,
    points: BTreeSet<Vec<Rational>>,
}

fn canonical_sign(d: &[i64]) -> (Vec<i64>, bool) {
    let flip = d.iter().find(|x| **x != 0).is_some_and(|x| *x < 0);
    (if flip { d.iter().map(|x| -x).collect() } else { d.to_vec() }, flip)
}

impl TropicalComplex {
    pub fn is_empty(&self) -> bool {
        self.pieces.is_empty()
    }

    pub fn is_full(&self) -> bool {
        self.pieces.iter().any(|p| *p == Piece::FullSpace)
    }

    pub fn contains(&self, chi: &[Rational]) -> bool {
        self.pieces.iter().any(|p| p.contains(chi))
    }

    pub fn point_set(&self) -> PointSet {
        let mut set = PointSet {
            full: self.is_full(),
            lines: BTreeMap::new(),
            points: BTreeSet::new(),
        };
        if set.full {
            return set;
        }
        let mut raw: BTreeMap<(Vec<i64>, Rational), Vec<(Option<Rational>, Option<Rational>)>> = BTreeMap::new();
        let mut push = |base: &[Rational], d: &[i64], lo: Option<Rational>, hi: Option<Rational>| {
            let offset = &base[1] * rat(d[0]) - &base[0] * rat(d[1]);
            raw.entry((d.to_vec(), offset)).or_default().push((lo, hi));
        };
        let param = |p: &[Rational], d: &[i64]| -> Rational { &p[0] * rat(d[0]) + &p[1] * rat(d[1]) };
        for piece in &self.pieces {
            match piece {
                Piece::Point { at } => {
                    set.points.insert(at.clone());
                }
                Piece::Line { through, direction } => {
                    let (d, _) = canonical_sign(direction);
                    push(through, &d, None, None);
                }
                Piece::Ray { vertex, direction } => {
                    let (d, flip) = canonical_sign(direction);
                    let t = param(vertex, &d);
                    if flip {
                        push(vertex, &d, None, Some(t));
                    } else {
                        push(vertex, &d, Some(t), None);
                    }
                }
                Piece::Segment { start, end } => {
                    let (d, _) = canonical_sign(&piece.generators()[0]);
                    let (a, b) = (param(start, &d), param(end, &d));
                    let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
                    push(start, &d, Some(lo), Some(hi));
                }
                Piece::FullSpace => unreachable!(),
            }
        }
        for (key, mut intervals) in raw {
            // None sorts first, which is -infinity for a lower end
            intervals.sort();
            let mut merged: Vec<(Option<Rational>, Option<Rational>)> = Vec::new();
            for (lo, hi) in intervals {
                if let Some(last) = merged.last_mut() {
                    let touches = match (&last.1, &lo) {
                        (None, _) | (_, None) => true,
                        (Some(h), Some(l)) => l <= h,
                    };
                    if touches {
                        last.1 = match (&last.1, &hi) {
                            (None, _) | (_, None) => None,
                            (Some(a), Some(b)) => Some(a.max(b).clone()),
                        };
                        continue;
                    }
                }
                merged.push((lo, hi));
            }
            set.lines.insert(key, merged);
        }
        let lines = &set.lines;
        set.points.retain(|p| {
            !lines.iter().any(|((d, off), ivs)| {
                let on = &p[1] * rat(d[0]) - &p[0] * rat(d[1]) == *off;
                let t = param(p, d);
                on && ivs.iter().any(|(lo, hi)| {
                    lo.as_ref().is_none_or(|l| *l <= t) && hi.as_ref().is_none_or(|h| t <= *h)
                })
            })
        });
        set
    }

    /// Equality as subsets of `Hom(Q, R)`.
    pub fn same_set(&self, other: &Self) -> bool {
        self.point_set() == other.point_set()
    }
}

fn check_rank(rank: usize) -> Result<()> {
    if rank == 1 || rank == 2 {
        Ok(())
    } else {
        Err(Error::UnsupportedRank(rank))
    }
}

fn full_space(rank: usize, valuation: CoefficientValuation) -> TropicalComplex {
    TropicalComplex {
        rank,
        valuation,
        pieces: vec![Piece::FullSpace],
    }
}

/// Corner locus of a lifted support, read off from the dual of the
/// regular subdivision: a cell with lifting gradient `a` is dual to the
/// vertex `-a`.
pub(crate) fn locus_from_lift(
    rank: usize,
    lifted: &[(Exponent, Rational)],
    valuation: CoefficientValuation,
) -> Result<TropicalComplex> {
    let mut out = TropicalComplex {
        rank,
        valuation,
        pieces: Vec::new(),
    };
    if lifted.len() <= 1 {
        return Ok(out);
    }
    let sub = lower_hull_subdivision(rank, lifted)?;
    let np = sub.support_polytope();
    let dual = |g: &[Rational]| -> Vec<Rational> { g.iter().map(|x| -x).collect() };
    match np.dim() {
        0 => {}
        1 => {
            let v = np.vertices();
            let u: Vec<i64> = v[1].iter().zip(&v[0]).map(|(a, b)| a - b).collect();
            for cell in &sub.cells {
                let chi = dual(&cell.gradient);
                out.pieces.push(match rank {
                    1 => Piece::Point { at: chi },
                    _ => Piece::Line {
                        through: chi,
                        direction: primitive_canonical(&[-u[1], u[0]]),
                    },
                });
            }
        }
        _ => {
            let mut edges: BTreeMap<(Exponent, Exponent), Vec<(usize, (i64, i64))>> = BTreeMap::new();
            for (i, cell) in sub.cells.iter().enumerate() {
                let v = cell.polytope.vertices();
                for k in 0..v.len() {
                    let (a, b) = (&v[k], &v[(k + 1) % v.len()]);
                    let inward = (a[1] - b[1], b[0] - a[0]);
                    let key = if a < b { (a.clone(), b.clone()) } else { (b.clone(), a.clone()) };
                    edges.entry(key).or_default().push((i, inward));
                }
            }
            for cells in edges.values() {
                let chi = |i: usize| dual(&sub.cells[i].gradient);
                out.pieces.push(match cells.as_slice() {
                    [(i, n)] => Piece::Ray {
                        vertex: chi(*i),
                        direction: primitive(&[n.0, n.1]),
                    },
                    [(i, _), (j, _)] => Piece::Segment {
                        start: chi(*i).min(chi(*j)),
                        end: chi(*i).max(chi(*j)),
                    },
                    _ => unreachable!("an edge bounds at most two cells"),
                });
            }
        }
    }
    out.pieces.sort();
    out.pieces.dedup();
    Ok(out)
}

fn primitive(d: &[i64]) -> Vec<i64> {
    let g = d.iter().fold(0i64, |acc, x| num_integer::Integer::gcd(&acc, x));
    d.iter().map(|x| x / g).collect()
}

fn primitive_canonical(d: &[i64]) -> Vec<i64> {
    canonical_sign(&primitive(d)).0
}

fn lift(f: &LaurentPolynomial, v: CoefficientValuation) -> Result<Vec<(Exponent, Rational)>> {
    f.terms().map(|(e, c)| Ok((e.clone(), v.height(c)?))).collect()
}

pub(crate) fn residue_locus(g: &ResiduePolynomial) -> Result<TropicalComplex> {
    let v = CoefficientValuation::ResidueZero(g.prime());
    if g.is_zero() {
        return Ok(full_space(g.rank(), v));
    }
    let lifted: Vec<(Exponent, Rational)> = g.support().map(|e| (e.clone(), Rational::zero())).collect();
    locus_from_lift(g.rank(), &lifted, v)
}

/// Locus without the unit check; the zero polynomial gives the full space.
fn locus(f: &LaurentPolynomial, v: CoefficientValuation) -> Result<TropicalComplex> {
    check_rank(f.rank())?;
    if f.is_zero() {
        return Ok(full_space(f.rank(), v));
    }
    match v {
        CoefficientValuation::ResidueZero(p) => residue_locus(&reduce_mod_p(f, p)?),
        _ => locus_from_lift(f.rank(), &lift(f, v)?, v),
    }
}

/// Corner locus of `f` under `v`. A `ResidueZero(p)` valuation acts on
/// `f mod p` with all heights zero. The zero polynomial stands for the
/// zero ideal and gives the full space; a unit `±x^e` is rejected.
pub fn corner_locus(f: &LaurentPolynomial, v: CoefficientValuation) -> Result<TropicalComplex> {
    if f.is_unit() {
        return Err(Error::UnitPolynomial);
    }
    locus(f, v)
}

/// One residue complex per irreducible factor of `f mod p`.
pub fn residue_branches(f: &LaurentPolynomial, p: u64) -> Result<Vec<TropicalComplex>> {
    check_rank(f.rank())?;
    factor_mod_p(f, p)?.iter().map(residue_locus).collect()
}

/// Coefficient primes whose p-adic or residue locus differs from the
/// zero-valuation locus.
///
/// The residue side compares the locus of `f mod p` itself: loci are
/// multiplicative, so this is the union of the residue branches and needs
/// no factorization.
pub fn exceptional_primes(f: &LaurentPolynomial) -> Result<Vec<u64>> {
    check_rank(f.rank())?;
    if f.is_zero() {
        return Err(Error::ZeroPolynomial);
    }
    let base = locus(f, CoefficientValuation::Zero)?.point_set();
    let mut out = Vec::new();
    for p in coefficient_primes(f)? {
        let padic = locus(f, CoefficientValuation::PAdic(p))?.point_set();
        let residue = locus(f, CoefficientValuation::ResidueZero(p))?.point_set();
        if padic != base || residue != base {
            out.push(p);
        }
    }
    Ok(out)
}

/// Assembled complement with its per-valuation loci and diagnostics.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SigmaReport {
    pub sigma_complement: SphericalSet,
    pub per_valuation: Vec<TropicalComplex>,
    pub exceptional_primes: Vec<u64>,
    pub two_tame: bool,
    /// Empty when the complement is the whole sphere.
    pub boundary: Vec<Vec<i64>>,
    pub great_circle: bool,
    pub spans: bool,
}

/// The complement for the ideal `(f)`; the zero polynomial stands for the
/// zero ideal.
pub fn sigma_complement(f: &LaurentPolynomial) -> Result<SigmaReport> {
    sigma_complement_with(&FamilyRegistry::default(), f)
}

pub fn sigma_complement_with(registry: &FamilyRegistry, f: &LaurentPolynomial) -> Result<SigmaReport> {
    let rank = f.rank();
    check_rank(rank)?;
    if f.is_unit() {
        return Err(Error::UnitPolynomial);
    }
    let exceptional = if f.is_zero() { Vec::new() } else { exceptional_primes(f)? };
    let per_valuation = registry.complexes(f, &exceptional)?;
    let set = SphericalSet::project(rank, per_valuation.iter().flat_map(|c| c.pieces.iter()));
    let (great_circle, spans) = if rank == 2 {
        let d = sphere_diagnostics(&set)?;
        (d.great_circle, d.spans)
    } else {
        (false, !set.is_empty())
    };
    Ok(SigmaReport {
        two_tame: two_tame(&set),
        boundary: boundary_points(&set).unwrap_or_default(),
        great_circle,
        spans,
        sigma_complement: set,
        per_valuation,
        exceptional_primes: exceptional,
    })
}

/// Whether some positive multiple of `χ` has its lifted minimum attained
/// twice, for the zero valuation or any coefficient prime (p-adic or
/// residue). Evaluated directly from the lifted support.
pub fn membership(f: &LaurentPolynomial, chi: &Character) -> Result<bool> {
    check_rank(f.rank())?;
    if chi.is_zero() || chi.rank() != f.rank() {
        return Err(Error::InvalidArgument("character must be nonzero and match the rank".into()));
    }
    if f.is_zero() {
        return Ok(true);
    }
    if f.is_unit() {
        return Err(Error::UnitPolynomial);
    }
    let twice = |lifted: &[(Rational, Rational)]| ray_meets_locus(lifted);
    let slopes = |v: CoefficientValuation| -> Result<Vec<(Rational, Rational)>> {
        f.terms().map(|(e, c)| Ok((chi.dot(e), v.height(c)?))).collect()
    };
    if twice(&slopes(CoefficientValuation::Zero)?) {
        return Ok(true);
    }
    for p in coefficient_primes(f)? {
        if twice(&slopes(CoefficientValuation::PAdic(p))?) {
            return Ok(true);
        }
        let g = reduce_mod_p(f, p)?;
        if g.is_zero() {
            return Ok(true);
        }
        let flat: Vec<(Rational, Rational)> = g.support().map(|e| (chi.dot(e), Rational::zero())).collect();
        if twice(&flat) {
            return Ok(true);
        }
    }
    Ok(false)
}

/// Given lines `λ ↦ s·λ + h`, is the lower envelope attained twice at
/// some `λ > 0`? The argmin set is constant between consecutive crossing
/// points, so crossings and one point inside each gap suffice.
fn ray_meets_locus(lines: &[(Rational, Rational)]) -> bool {
    let mut cuts: Vec<Rational> = Vec::new();
    for (i, (s1, h1)) in lines.iter().enumerate() {
        for (s2, h2) in &lines[i + 1..] {
            if s1 != s2 {
                let l = (h2 - h1) / (s1 - s2);
                if l.is_positive() {
                    cuts.push(l);
                }
            }
        }
    }
    cuts.sort();
    cuts.dedup();
    let mut probes = cuts.clone();
    match (cuts.first(), cuts.last()) {
        (Some(lo), Some(hi)) => {
            probes.push(lo / rat(2));
            probes.push(hi + rat(1));
            probes.extend(cuts.windows(2).map(|w| (&w[0] + &w[1]) / rat(2)));
        }
        _ => probes.push(rat(1)),
    }
    probes.iter().any(|l| {
        let vals: Vec<Rational> = lines.iter().map(|(s, h)| s * l + h).collect();
        let min = vals.iter().min().expect("nonempty");
        vals.iter().filter(|v| *v == min).count() >= 2
    })
}
