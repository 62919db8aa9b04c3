use std::fmt;

use serde::Serialize;

use super::factor::{
    factor_residue, integer_line_factors, integer_linear, integer_search, residue_linear, residue_search,
    support_line, LinearSplit, Search, MAX_SEARCH_PRIME,
};
use crate::algebra::integer::primes_up_to;
use crate::algebra::{reduce_mod_p, LaurentPolynomial, ResiduePolynomial};
use crate::polyhedra::{minkowski_summand_pairs, LatticePolytope};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Field {
    Q,
    Fp(u64),
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Field::Q => write!(f, "Q"),
            Field::Fp(p) => write!(f, "F_{p}"),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Method {
    LinearInVariable,
    MinkowskiSearch,
    ModPLift,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict {
    Irreducible,
    /// Factors whose product is the input up to a unit. Over `F_p` the
    /// factors are lifted to coefficients in `[1, p-1]`.
    Reducible(Vec<LaurentPolynomial>),
    Unit,
    Zero,
    Undetermined,
}

/// A nonzero, nonunit polynomial with its monomial part cleared; over
/// `Q` also primitive.
pub enum Candidate {
    Rational(LaurentPolynomial),
    Residue(ResiduePolynomial),
}

impl Candidate {
    fn polytope(&self) -> LatticePolytope {
        let (rank, support): (usize, Vec<_>) = match self {
            Candidate::Rational(f) => (f.rank(), f.support().cloned().collect()),
            Candidate::Residue(g) => (g.rank(), g.support().cloned().collect()),
        };
        LatticePolytope::hull(rank, support).expect("nonzero candidate")
    }
}

/// One way of deciding irreducibility. `None` means no conclusion.
pub trait IrreducibilityStrategy: Send + Sync {
    fn name(&self) -> &'static str;
    fn method(&self) -> Method;
    fn decide(&self, f: &Candidate) -> Option<Verdict>;
}

pub struct LinearInVariable;
pub struct MinkowskiSearch;
pub struct ModPLift;

impl IrreducibilityStrategy for LinearInVariable {
    fn name(&self) -> &'static str {
        "linear-in-variable"
    }

    fn method(&self) -> Method {
        Method::LinearInVariable
    }

    fn decide(&self, f: &Candidate) -> Option<Verdict> {
        match f {
            Candidate::Rational(f) => match integer_linear(f) {
                LinearSplit::NotLinear => None,
                LinearSplit::Coprime => Some(Verdict::Irreducible),
                LinearSplit::Common(d, q) => Some(Verdict::Reducible(vec![d, q])),
            },
            Candidate::Residue(g) => match residue_linear(g) {
                LinearSplit::NotLinear => None,
                LinearSplit::Coprime => Some(Verdict::Irreducible),
                LinearSplit::Common(d, q) => Some(Verdict::Reducible(vec![d.lift(), q.lift()])),
            },
        }
    }
}

impl IrreducibilityStrategy for MinkowskiSearch {
    fn name(&self) -> &'static str {
        "minkowski-search"
    }

    fn method(&self) -> Method {
        Method::MinkowskiSearch
    }

    fn decide(&self, f: &Candidate) -> Option<Verdict> {
        let np = f.polytope();
        if let Some(line) = support_line(&np) {
            let factors: Vec<LaurentPolynomial> = match f {
                Candidate::Rational(f) => integer_line_factors(f, &line)?,
                Candidate::Residue(g) => factor_residue(g)?.iter().map(|h| h.lift()).collect(),
            };
            return Some(if factors.len() <= 1 {
                Verdict::Irreducible
            } else {
                Verdict::Reducible(factors)
            });
        }
        // an indecomposable Newton polytope forbids any factorization
        if minkowski_summand_pairs(&np).ok()?.len() == 1 {
            return Some(Verdict::Irreducible);
        }
        match f {
            Candidate::Rational(f) => match integer_search(f, &np) {
                Search::Found(h, q) => Some(Verdict::Reducible(vec![h, q])),
                _ => None,
            },
            Candidate::Residue(g) => match residue_search(g, &np) {
                Search::Found(h, q) => Some(Verdict::Reducible(vec![h.lift(), q.lift()])),
                Search::Exhausted => Some(Verdict::Irreducible),
                Search::Incomplete => None,
            },
        }
    }
}

impl IrreducibilityStrategy for ModPLift {
    fn name(&self) -> &'static str {
        "mod-p-lift"
    }

    fn method(&self) -> Method {
        Method::ModPLift
    }

    /// Irreducible modulo a prime that preserves the Newton polytope
    /// implies irreducible over `Q` (the input is primitive).
    fn decide(&self, f: &Candidate) -> Option<Verdict> {
        let Candidate::Rational(f) = f else {
            return None;
        };
        let np = LatticePolytope::hull(f.rank(), f.support().cloned()).ok()?;
        for p in primes_up_to(MAX_SEARCH_PRIME) {
            let g = reduce_mod_p(f, p).ok()?;
            if g.is_zero() || LatticePolytope::hull(g.rank(), g.support().cloned()).ok()? != np {
                continue;
            }
            if factor_residue(&g).is_some_and(|fs| fs.len() == 1) {
                return Some(Verdict::Irreducible);
            }
        }
        None
    }
}

/// Named irreducibility strategies, tried in registration order.
pub struct StrategyRegistry {
    entries: Vec<Box<dyn IrreducibilityStrategy>>,
}

impl Default for StrategyRegistry {
    fn default() -> Self {
        let mut r = Self::empty();
        r.register(Box::new(LinearInVariable));
        r.register(Box::new(MinkowskiSearch));
        r.register(Box::new(ModPLift));
        r
    }
}

impl StrategyRegistry {
    pub fn empty() -> Self {
        Self { entries: Vec::new() }
    }

    /// Adds a strategy, replacing any existing one with the same name.
    pub fn register(&mut self, s: Box<dyn IrreducibilityStrategy>) {
        self.entries.retain(|e| e.name() != s.name());
        self.entries.push(s);
    }

    pub fn get(&self, name: &str) -> Option<&dyn IrreducibilityStrategy> {
        self.entries.iter().find(|e| e.name() == name).map(|b| b.as_ref())
    }

    pub fn names(&self) -> Vec<&'static str> {
        self.entries.iter().map(|e| e.name()).collect()
    }

    /// First conclusive verdict and the method that produced it.
    pub fn run(&self, f: &Candidate) -> (Verdict, Option<Method>) {
        self.entries
            .iter()
            .find_map(|s| s.decide(f).map(|v| (v, Some(s.method()))))
            .unwrap_or((Verdict::Undetermined, None))
    }
}
