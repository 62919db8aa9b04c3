//! Acceptance run: one line per criterion, non-zero exit if any fails.

use std::panic::{catch_unwind, AssertUnwindSafe};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use sigma_forge::algebra::{padic_valuation, LaurentPolynomial};
use sigma_forge::puiseux::{homothety_scan, puiseux_expand};
use sigma_forge::report::{parse_poly, run_report, CheckStatus, ReportOptions, ReportVerdict, REQUIRED_CHECKS};
use sigma_forge::tropical::{
    corner_locus, exceptional_primes, membership, sigma_complement, two_tame, Character, Piece, TropicalComplex,
};
use sigma_forge::CoefficientValuation;

type Q = BigRational;
type Outcome = Result<(), String>;

fn q(n: i64) -> Q {
    Q::from_integer(BigInt::from(n))
}

fn xy(text: &str) -> LaurentPolynomial {
    parse_poly(text, &["x", "y"]).expect("fixture parses")
}

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn criterion(id: u32, name: &str, limit: Duration, body: impl FnOnce() -> Outcome) -> bool {
    let start = Instant::now();
    let result = catch_unwind(AssertUnwindSafe(body)).unwrap_or_else(|p| {
        let msg = p
            .downcast_ref::<String>()
            .cloned()
            .or_else(|| p.downcast_ref::<&str>().map(|s| s.to_string()))
            .unwrap_or_else(|| "panic".into());
        Err(format!("panicked: {msg}"))
    });
    let elapsed = start.elapsed();
    let result = result.and_then(|()| {
        if elapsed <= limit {
            Ok(())
        } else {
            Err(format!("took {elapsed:.2?}, limit {limit:?}"))
        }
    });
    match &result {
        Ok(()) => println!("criterion {id} PASS  {name} ({elapsed:.2?} / {limit:?})"),
        Err(e) => println!("criterion {id} FAIL  {name} ({elapsed:.2?} / {limit:?}): {e}"),
    }
    result.is_ok()
}

fn worked_example() -> Outcome {
    let r = sigma_complement(&xy("y - x - 1")).map_err(|e| e.to_string())?;
    let s = &r.sigma_complement;
    ensure!(s.points == vec![vec![-1, -1], vec![1, 0], vec![0, 1]], "points {:?}", s.points);
    ensure!(s.arcs.is_empty(), "arcs {:?}", s.arcs);
    ensure!(!s.whole_sphere, "whole sphere");
    Ok(())
}

fn finite_presentability() -> Outcome {
    let line = sigma_complement(&xy("y - x - 1")).map_err(|e| e.to_string())?;
    ensure!(line.two_tame, "line should be 2-tame");
    ensure!(two_tame(&line.sigma_complement), "two_tame() disagrees with the report");
    let zero = sigma_complement(&LaurentPolynomial::zero(1)).map_err(|e| e.to_string())?;
    ensure!(zero.sigma_complement.whole_sphere, "rank-1 zero ideal should fill the sphere");
    ensure!(!zero.two_tame, "rank-1 zero ideal should not be 2-tame");
    Ok(())
}

fn main_verdict() -> Outcome {
    let vars = vec!["x".to_string(), "y".to_string()];
    let report = run_report(&xy("y - x - 1"), &vars, &ReportOptions::default());
    ensure!(report.verdict == ReportVerdict::NotSelfSimilar, "verdict {:?}", report.verdict);
    for name in REQUIRED_CHECKS {
        let check = report.check(name).ok_or(format!("missing check {name}"))?;
        ensure!(check.status == CheckStatus::Pass, "{name}: {:?} ({})", check.status, check.evidence);
    }
    Ok(())
}

type C = (f64, f64);

fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

fn cpow(a: C, k: u32) -> C {
    (0..k).fold((1.0, 0.0), |acc, _| cmul(acc, a))
}

/// On `y = 1 + x` the relation between `x^n` and `y^n` is the norm
/// `prod_{zeta^n = 1} (V - (1 + zeta U^(1/n))^n)`, so `(n, c1, c2)` holds
/// iff `(1 + s^n)^c2 = (1 + zeta s^c1)^n` identically for some `zeta`.
fn line_triple_holds(n: u32, c1: u32, c2: u32) -> bool {
    (0..n).any(|k| {
        let a = std::f64::consts::TAU * k as f64 / n as f64;
        let zeta = (a.cos(), a.sin());
        [0.11f64, 0.23, 0.37, 0.52].iter().all(|&s| {
            let lhs = (1.0 + s.powi(n as i32)).powi(c2 as i32);
            let rhs = cpow((1.0 + zeta.0 * s.powi(c1 as i32), zeta.1 * s.powi(c1 as i32)), n);
            (lhs - rhs.0).abs() < 1e-9 && rhs.1.abs() < 1e-9
        })
    })
}

fn rigidity() -> Outcome {
    let scan = homothety_scan(&xy("y - x - 1"), 3).map_err(|e| e.to_string())?;
    ensure!(scan.accepted == vec![(1, 1, 1), (2, 2, 2), (3, 3, 3)], "accepted {:?}", scan.accepted);
    ensure!(scan.undetermined.is_empty(), "undetermined {:?}", scan.undetermined);
    for n in 1..=3 {
        for c1 in 1..=3 {
            for c2 in 1..=3 {
                let oracle = line_triple_holds(n, c1, c2);
                ensure!(
                    oracle == scan.accepted.contains(&(n, c1, c2)),
                    "({n},{c1},{c2}): oracle says {oracle}"
                );
            }
        }
    }
    Ok(())
}

/// Dense truncated product of `t`-polynomials given as coefficient vectors.
fn mul_trunc(a: &[Q], b: &[Q], n: usize) -> Vec<Q> {
    let mut out = vec![Q::zero(); n];
    for (i, x) in a.iter().enumerate().take(n) {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate().take(n - i) {
            out[i + j] += x * y;
        }
    }
    out
}

fn puiseux_residuals() -> Outcome {
    const ORDER: usize = 20;
    for (text, branches_expected) in [("y - x - 1", 1), ("y^2 - x", 1), ("y^2 - x^2*(x + 1)", 2)] {
        let f = xy(text);
        let branches = puiseux_expand(&f, 24).map_err(|e| e.to_string())?;
        ensure!(branches.len() == branches_expected, "{text}: {} branches", branches.len());
        let total: usize = branches.iter().map(|b| b.conjugacy_size).sum();
        ensure!(total == f.degree_in(1) as usize, "{text}: branches cover {total} roots");
        for b in &branches {
            let g = b.parameter_series();
            if let Some(p) = g.precision() {
                ensure!(*p > q(ORDER as i64), "{text}: g known only below t^{p}");
            }
            // oracle: expand F(t^d, g(t)) densely through t^ORDER
            let mut dense = vec![Q::zero(); ORDER + 1];
            for (e, c) in g.terms() {
                ensure!(e.is_integer() && !e.is_negative(), "{text}: exponent {e} in t");
                let k = e.to_integer().try_into().unwrap_or(usize::MAX);
                if k <= ORDER {
                    dense[k] = c.as_rational().ok_or(format!("{text}: irrational coefficient"))?;
                }
            }
            let d = b.ramification as usize;
            let mut total = vec![Q::zero(); ORDER + 1];
            for (e, c) in f.terms() {
                let mut term = vec![Q::zero(); ORDER + 1];
                let shift = d * e[0] as usize;
                if shift > ORDER {
                    continue;
                }
                term[shift] = Q::from_integer(c.clone());
                for _ in 0..e[1] {
                    term = mul_trunc(&term, &dense, ORDER + 1);
                }
                for (t, v) in total.iter_mut().zip(term) {
                    *t += v;
                }
            }
            if let Some(k) = total.iter().position(|c| !c.is_zero()) {
                return Err(format!("{text}: residual has t^{k} coefficient {}", total[k]));
            }
            let lib = b.residual(&f);
            ensure!(lib.terms().all(|(e, _)| *e > q(ORDER as i64)), "{text}: library residual {lib}");
        }
    }
    Ok(())
}

fn lifted_min_twice(f: &LaurentPolynomial, p: Option<u64>, chi: &[Q]) -> bool {
    let values: Vec<Q> = f
        .terms()
        .map(|(e, c)| {
            let h = p.map_or(0, |p| padic_valuation(c, p).expect("nonzero coefficient"));
            &chi[0] * q(e[0]) + &chi[1] * q(e[1]) + q(h as i64)
        })
        .collect();
    let min = values.iter().min().expect("nonempty").clone();
    values.iter().filter(|v| **v == min).count() >= 2
}

fn valuation_sensitivity() -> Outcome {
    let line = xy("y - x - 1");
    let shifted = xy("y - x - 2");
    ensure!(exceptional_primes(&line).map_err(|e| e.to_string())?.is_empty(), "line has exceptional primes");
    let ex = exceptional_primes(&shifted).map_err(|e| e.to_string())?;
    ensure!(ex == vec![2], "exceptional primes {ex:?}");
    let two = corner_locus(&shifted, CoefficientValuation::PAdic(2)).map_err(|e| e.to_string())?;
    ensure!(!two.pieces.is_empty(), "empty 2-adic locus");
    for piece in &two.pieces {
        ensure!(piece.vertex() == Some(&[q(1), q(1)][..]), "piece {piece:?} does not start at (1,1)");
    }
    let zero = corner_locus(&shifted, CoefficientValuation::Zero).map_err(|e| e.to_string())?;
    let mut disagreements = 0;
    for a in -12..=12 {
        for b in -12..=12 {
            let chi = [Q::new(a.into(), 4.into()), Q::new(b.into(), 4.into())];
            ensure!(
                two.contains(&chi) == lifted_min_twice(&shifted, Some(2), &chi),
                "2-adic locus disagrees with the grid oracle at ({a}/4, {b}/4)"
            );
            ensure!(
                zero.contains(&chi) == lifted_min_twice(&shifted, None, &chi),
                "zero locus disagrees with the grid oracle at ({a}/4, {b}/4)"
            );
            if two.contains(&chi) != zero.contains(&chi) {
                disagreements += 1;
            }
        }
    }
    ensure!(disagreements > 0, "2-adic and zero loci coincide on the grid");
    Ok(())
}

fn random_poly(rng: &mut ChaCha8Rng) -> LaurentPolynomial {
    loop {
        let n = rng.gen_range(2..=4);
        let terms: Vec<(Vec<i64>, i64)> = (0..n)
            .map(|_| {
                let c = loop {
                    let c = rng.gen_range(-6i64..=6);
                    if c != 0 {
                        break c;
                    }
                };
                (vec![rng.gen_range(-2..=2), rng.gen_range(-2..=2)], c)
            })
            .collect();
        let f = LaurentPolynomial::from_terms(2, terms).expect("rank 2");
        if f.len() >= 2 {
            return f;
        }
    }
}

fn union(a: &TropicalComplex, b: &TropicalComplex) -> TropicalComplex {
    TropicalComplex {
        rank: a.rank,
        valuation: a.valuation,
        pieces: a.pieces.iter().chain(&b.pieces).cloned().collect(),
    }
}

fn multiplicativity(rng: &mut ChaCha8Rng) -> Outcome {
    for i in 0..50 {
        let (f, g) = (random_poly(rng), random_poly(rng));
        let v = match i % 3 {
            0 => CoefficientValuation::Zero,
            1 => CoefficientValuation::PAdic(2),
            _ => CoefficientValuation::PAdic(3),
        };
        let lf = corner_locus(&f, v).map_err(|e| e.to_string())?;
        let lg = corner_locus(&g, v).map_err(|e| e.to_string())?;
        let lfg = corner_locus(&(&f * &g), v).map_err(|e| e.to_string())?;
        ensure!(lfg.same_set(&union(&lf, &lg)), "pair {i} under {v:?}: {f:?} * {g:?}");
    }
    Ok(())
}

const FIXTURES: [&str; 7] = [
    "y - x - 1",
    "y - x - 2",
    "y^2 - x^2*(x + 1)",
    "x^2 + y^2 - 1",
    "x*y - x - y - 3",
    "x^3 + y^3 + 1 - 5*x*y",
    "2*x^2 - 3*y + 1",
];

fn purity() -> Outcome {
    for text in FIXTURES {
        let r = sigma_complement(&xy(text)).map_err(|e| e.to_string())?;
        for complex in &r.per_valuation {
            for piece in &complex.pieces {
                ensure!(
                    piece.dim() == 1 && !matches!(piece, Piece::FullSpace),
                    "{text} under {:?}: piece {piece:?}",
                    complex.valuation
                );
            }
        }
    }
    Ok(())
}

/// Inner edge normals of the Newton polygon, from a monotone-chain hull.
fn inner_normals(f: &LaurentPolynomial) -> Vec<[i64; 2]> {
    let mut pts: Vec<(i64, i64)> = f.support().map(|e| (e[0], e[1])).collect();
    pts.sort();
    pts.dedup();
    let cross = |o: (i64, i64), a: (i64, i64), b: (i64, i64)| (a.0 - o.0) * (b.1 - o.1) - (a.1 - o.1) * (b.0 - o.0);
    let mut hull: Vec<(i64, i64)> = Vec::new();
    for pass in [pts.clone(), pts.iter().rev().cloned().collect()] {
        let base = hull.len();
        for p in pass {
            while hull.len() >= base + 2 && cross(hull[hull.len() - 2], hull[hull.len() - 1], p) <= 0 {
                hull.pop();
            }
            hull.push(p);
        }
        hull.pop();
    }
    (0..hull.len())
        .map(|i| {
            let (a, b) = (hull[i], hull[(i + 1) % hull.len()]);
            [-(b.1 - a.1), b.0 - a.0]
        })
        .collect()
}

fn spanning() -> Outcome {
    for text in FIXTURES {
        let f = xy(text);
        let r = sigma_complement(&f).map_err(|e| e.to_string())?;
        ensure!(r.spans, "{text}: complement reported as not spanning");
        let normals = inner_normals(&f);
        ensure!(normals.len() >= 3, "{text}: Newton polygon is not 2-dimensional");
        for n in &normals {
            ensure!(r.sigma_complement.contains(n), "{text}: edge normal {n:?} missing");
        }
    }
    Ok(())
}

fn membership_agreement(rng: &mut ChaCha8Rng) -> Outcome {
    for _ in 0..10 {
        let f = random_poly(rng);
        let r = sigma_complement(&f).map_err(|e| e.to_string())?;
        let mut probes: Vec<Vec<i64>> = (0..720)
            .map(|k| {
                let a = std::f64::consts::PI * k as f64 / 360.0;
                vec![(1e4 * a.cos()).round() as i64, (1e4 * a.sin()).round() as i64]
            })
            .collect();
        probes.extend(r.boundary.iter().cloned());
        for d in probes {
            let direct = membership(&f, &Character::from_ints(&d)).map_err(|e| e.to_string())?;
            ensure!(
                direct == r.sigma_complement.contains(&d),
                "{f:?} at {d:?}: membership {direct}, assembled {}",
                !direct
            );
        }
    }
    Ok(())
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
    multiplicativity(&mut rng)?;
    purity()?;
    spanning()?;
    membership_agreement(&mut rng)
}

fn negative_control() -> Outcome {
    let vars = vec!["x".to_string(), "y".to_string()];
    let report = run_report(&xy("y - x - 2"), &vars, &ReportOptions::default());
    ensure!(
        matches!(&report.verdict, ReportVerdict::NotApplicable(r) if r.contains("finitely presented")),
        "verdict {:?}",
        report.verdict
    );
    let check = report.check("finitely-presented").ok_or("missing finitely-presented check")?;
    ensure!(check.status == CheckStatus::Fail, "status {:?}", check.status);
    let pair: Vec<Vec<i64>> = serde_json::from_value(check.data["antipodal_pair"].clone())
        .map_err(|e| format!("no antipodal pair in evidence: {e}"))?;
    ensure!(pair.len() == 2, "pair {pair:?}");
    ensure!(pair[0].iter().zip(&pair[1]).all(|(a, b)| a == &-b), "{pair:?} is not antipodal");
    let sigma = report.sigma.as_ref().ok_or("missing sigma section")?;
    ensure!(
        pair.iter().all(|d| sigma.sigma_complement.contains(d)),
        "pair {pair:?} not inside the complement"
    );
    Ok(())
}

fn main() -> ExitCode {
    let secs = Duration::from_secs;
    let results = [
        criterion(1, "worked example: three isolated directions", secs(1), worked_example),
        criterion(2, "finite presentability via 2-tameness", secs(1), finite_presentability),
        criterion(3, "report on y - x - 1 is NotSelfSimilar", secs(5), main_verdict),
        criterion(4, "rigidity scan at bound 3 is the diagonal", secs(30), rigidity),
        criterion(5, "Puiseux residuals vanish through t^20", secs(5), puiseux_residuals),
        criterion(6, "valuation sensitivity at p = 2", secs(2), valuation_sensitivity),
        criterion(7, "property suites", secs(60), property_suites),
        criterion(8, "negative control y - x - 2", secs(5), negative_control),
    ];
    let passed = results.iter().filter(|ok| **ok).count();
    println!("acceptance: {passed}/{} criteria passed", results.len());
    if passed == results.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
