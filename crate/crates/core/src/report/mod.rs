//! The hypothesis report: runs every check on `f`, assembles the verdict,
//! and renders it (and the individual stage outputs) as text or JSON.

mod emit;
mod parse;

pub use emit::{emit, Emit, Format, PuiseuxView, RigidityView, SigmaView, TropicalView};
pub use parse::parse_poly;

use serde::Serialize;
use serde_json::{json, Value};

use crate::algebra::LaurentPolynomial;
use crate::error::Error;
use crate::puiseux::homothety_scan;
use crate::ring::{
    algebraic_monomial_directions, all_primes_certificate, irreducibility_status, krull_dimension_verdict,
    mod_p_domain_check, torsionfree_check, CertificateStatus, Field, Verdict as RingVerdict,
};
use crate::tropical::{sigma_complement, SigmaReport, SphericalSet};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CheckStatus {
    Pass,
    Fail,
    Conditional,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: String,
    pub status: CheckStatus,
    pub evidence: String,
    pub data: Value,
}

impl Check {
    fn new(name: &str, status: CheckStatus, evidence: impl Into<String>, data: Value) -> Self {
        Self {
            name: name.to_string(),
            status,
            evidence: evidence.into(),
            data,
        }
    }

    fn from_error(name: &str, e: &Error) -> Self {
        Self::new(name, CheckStatus::Undetermined, e.to_string(), Value::Null)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ReportVerdict {
    NotSelfSimilar,
    NotApplicable(String),
    Conditional(Vec<String>),
}

impl ReportVerdict {
    pub fn label(&self) -> &'static str {
        match self {
            ReportVerdict::NotSelfSimilar => "NotSelfSimilar",
            ReportVerdict::NotApplicable(_) => "NotApplicable",
            ReportVerdict::Conditional(_) => "Conditional",
        }
    }

    pub fn reason(&self) -> Option<String> {
        match self {
            ReportVerdict::NotSelfSimilar => None,
            ReportVerdict::NotApplicable(r) => Some(r.clone()),
            ReportVerdict::Conditional(missing) => Some(format!("missing: {}", missing.join(", "))),
        }
    }
}

/// Which primes the prime-by-prime check visits.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub enum PrimeSelection {
    /// The certificate's own prime set.
    #[default]
    Auto,
    /// Exactly these primes; a clean result is then only conditional.
    List(Vec<u64>),
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ReportOptions {
    pub primes: PrimeSelection,
    /// Adds a homothety scan with this bound.
    pub rigidity: Option<u32>,
}

/// The checks that must all pass for the `NotSelfSimilar` verdict, in order.
pub const REQUIRED_CHECKS: [&str; 7] = [
    "torsion-free",
    "irreducible",
    "krull-dim-2",
    "mod-p-all-primes",
    "condition-3",
    "finitely-presented",
    "no-great-circle",
];

#[derive(Clone, Debug, PartialEq)]
pub struct HypothesisReport {
    pub input: String,
    pub vars: Vec<String>,
    pub sigma: Option<SigmaReport>,
    pub checks: Vec<Check>,
    pub verdict: ReportVerdict,
}

impl HypothesisReport {
    pub fn check(&self, name: &str) -> Option<&Check> {
        self.checks.iter().find(|c| c.name == name)
    }

    /// Whether a computation hit a search or precision limit.
    pub fn has_undetermined(&self) -> bool {
        self.checks.iter().any(|c| c.status == CheckStatus::Undetermined)
    }
}

fn failure_reason(name: &str) -> &'static str {
    match name {
        "torsion-free" => "A has Z-torsion",
        "irreducible" => "(f) is not a prime ideal",
        "krull-dim-2" => "Krull dimension is not 2",
        "mod-p-all-primes" => "A/pA is not an infinite domain for some prime p",
        "condition-3" => "a monomial is algebraic over Q",
        "finitely-presented" => "not finitely presented",
        "no-great-circle" => "the complement contains a great circle",
        _ => "check failed",
    }
}

/// Runs the checks on `f` (the zero polynomial stands for the zero ideal).
pub fn run_report(f: &LaurentPolynomial, vars: &[String], options: &ReportOptions) -> HypothesisReport {
    let names: Vec<&str> = vars.iter().map(String::as_str).collect();
    let input = f.to_text(&names);
    let sigma = sigma_complement(f);
    let sigma_check = |s: &Result<SigmaReport, Error>| match s {
        Ok(r) => finitely_presented_check(r),
        Err(e) => Check::from_error("finitely-presented", e),
    };

    if f.rank() < 2 {
        let checks = vec![sigma_check(&sigma)];
        return HypothesisReport {
            input,
            vars: vars.to_vec(),
            sigma: sigma.ok(),
            checks,
            verdict: ReportVerdict::NotApplicable("s ≥ 2".into()),
        };
    }

    let mut checks = vec![
        torsion_check(f),
        irreducible_check(f),
        krull_check(f),
        prime_check(f, &options.primes),
        condition3_check(f),
        sigma_check(&sigma),
        match &sigma {
            Ok(r) => great_circle_check(r),
            Err(e) => Check::from_error("no-great-circle", e),
        },
    ];
    if let Some(bound) = options.rigidity {
        checks.push(rigidity_check(f, bound));
    }

    let required = checks.iter().filter(|c| REQUIRED_CHECKS.contains(&c.name.as_str()));
    let verdict = if let Some(failed) = required.clone().find(|c| c.status == CheckStatus::Fail) {
        ReportVerdict::NotApplicable(failure_reason(&failed.name).into())
    } else {
        let missing: Vec<String> = required
            .filter(|c| c.status != CheckStatus::Pass)
            .map(|c| c.name.clone())
            .collect();
        if missing.is_empty() {
            ReportVerdict::NotSelfSimilar
        } else {
            ReportVerdict::Conditional(missing)
        }
    };
    HypothesisReport {
        input,
        vars: vars.to_vec(),
        sigma: sigma.ok(),
        checks,
        verdict,
    }
}

fn torsion_check(f: &LaurentPolynomial) -> Check {
    const NAME: &str = "torsion-free";
    if f.is_zero() {
        return Check::new(NAME, CheckStatus::Pass, "zero ideal: A = Z[Q]", Value::Null);
    }
    match (torsionfree_check(f), f.content()) {
        (Ok(true), _) => Check::new(NAME, CheckStatus::Pass, "content 1", json!({"content": "1"})),
        (Ok(false), Ok(c)) => Check::new(
            NAME,
            CheckStatus::Fail,
            format!("content {c} annihilates a nonzero element"),
            json!({"content": c.to_string()}),
        ),
        (Err(e), _) | (_, Err(e)) => Check::from_error(NAME, &e),
    }
}

fn irreducible_check(f: &LaurentPolynomial) -> Check {
    const NAME: &str = "irreducible";
    if f.is_zero() {
        return Check::new(NAME, CheckStatus::Pass, "zero ideal is prime", Value::Null);
    }
    let status = match irreducibility_status(f, Field::Q) {
        Ok(s) => s,
        Err(e) => return Check::from_error(NAME, &e),
    };
    let method = status.method.map(|m| format!("{m:?}"));
    match status.verdict {
        RingVerdict::Irreducible => Check::new(
            NAME,
            CheckStatus::Pass,
            format!("irreducible over Q ({})", method.clone().unwrap_or_default()),
            json!({"method": method}),
        ),
        RingVerdict::Reducible(factors) => {
            let texts: Vec<String> = factors.iter().map(|g| g.to_string()).collect();
            Check::new(
                NAME,
                CheckStatus::Fail,
                format!("witness factor {}", texts[0]),
                json!({"factors": texts, "method": method}),
            )
        }
        RingVerdict::Unit => Check::new(NAME, CheckStatus::Fail, "f is a unit, so A = 0", Value::Null),
        RingVerdict::Zero => Check::new(NAME, CheckStatus::Pass, "zero ideal is prime", Value::Null),
        RingVerdict::Undetermined => Check::new(
            NAME,
            CheckStatus::Undetermined,
            "factor search exhausted its bounds",
            Value::Null,
        ),
    }
}

fn krull_check(f: &LaurentPolynomial) -> Check {
    const NAME: &str = "krull-dim-2";
    match krull_dimension_verdict(f) {
        Ok(v) => {
            let status = match v.dim {
                Some(2) => CheckStatus::Pass,
                Some(_) => CheckStatus::Fail,
                None => CheckStatus::Undetermined,
            };
            Check::new(NAME, status, v.justification, json!({"dim": v.dim}))
        }
        Err(Error::UnitPolynomial) => Check::new(NAME, CheckStatus::Fail, "A = 0", json!({"dim": null})),
        Err(e) => Check::from_error(NAME, &e),
    }
}

fn prime_check(f: &LaurentPolynomial, selection: &PrimeSelection) -> Check {
    const NAME: &str = "mod-p-all-primes";
    if f.is_zero() {
        return Check::new(
            NAME,
            CheckStatus::Pass,
            "A/pA = F_p[Q] is an infinite domain for every p",
            Value::Null,
        );
    }
    let (status, checked) = match selection {
        PrimeSelection::Auto => match all_primes_certificate(f) {
            Ok(cert) => (Some(cert.status), cert.checked),
            Err(Error::ZeroResidue(p)) => {
                return Check::new(
                    NAME,
                    CheckStatus::Fail,
                    format!("f vanishes mod {p}, so A/{p}A is not a domain quotient of F_{p}[Q]"),
                    json!({"prime": p}),
                )
            }
            Err(e) => return Check::from_error(NAME, &e),
        },
        PrimeSelection::List(primes) => {
            let mut checked = Vec::new();
            for &p in primes {
                match mod_p_domain_check(f, p) {
                    Ok(result) => checked.push(crate::ring::PrimeCheck { prime: p, result }),
                    Err(Error::ZeroResidue(p)) => {
                        return Check::new(NAME, CheckStatus::Fail, format!("f vanishes mod {p}"), json!({"prime": p}))
                    }
                    Err(e) => return Check::from_error(NAME, &e),
                }
            }
            (None, checked)
        }
    };
    let data = json!({
        "certificate": status.map(|s| format!("{s:?}")),
        "primes": checked,
    });
    if let Some(bad) = checked.iter().find(|c| c.result.domain == Some(false) || !c.result.infinite) {
        let why = if bad.result.domain == Some(false) { "not a domain" } else { "finite" };
        return Check::new(NAME, CheckStatus::Fail, format!("A/{p}A is {why}", p = bad.prime), data);
    }
    if let Some(open) = checked.iter().find(|c| c.result.domain.is_none()) {
        return Check::new(
            NAME,
            CheckStatus::Undetermined,
            format!("irreducibility mod {} undecided", open.prime),
            data,
        );
    }
    let primes: Vec<String> = checked.iter().map(|c| c.prime.to_string()).collect();
    match status {
        Some(CertificateStatus::Certified) => Check::new(
            NAME,
            CheckStatus::Pass,
            format!("certified for all p; exceptional candidates {{{}}} checked", primes.join(", ")),
            data,
        ),
        _ => Check::new(
            NAME,
            CheckStatus::Conditional,
            format!("checked only p in {{{}}}", primes.join(", ")),
            data,
        ),
    }
}

fn condition3_check(f: &LaurentPolynomial) -> Check {
    const NAME: &str = "condition-3";
    if f.is_zero() {
        return Check::new(NAME, CheckStatus::Pass, "no monomial is algebraic over Q", json!({"directions": []}));
    }
    match algebraic_monomial_directions(f) {
        Ok(dirs) if dirs.is_empty() => Check::new(
            NAME,
            CheckStatus::Pass,
            "Newton polytope is 2-dimensional; no monomial is algebraic over Q",
            json!({"directions": dirs}),
        ),
        Ok(dirs) => Check::new(
            NAME,
            CheckStatus::Fail,
            format!("algebraic direction {:?}", dirs[0]),
            json!({"directions": dirs}),
        ),
        Err(Error::NotIrreducible) => Check::new(
            NAME,
            CheckStatus::Undetermined,
            "requires an irreducible f",
            Value::Null,
        ),
        Err(e) => Check::from_error(NAME, &e),
    }
}

/// Critical directions whose antipodes are also in the set, as
/// `[d, -d]` with `d` the lexicographically larger one.
fn antipodal_pair(s: &SphericalSet) -> Option<[Vec<i64>; 2]> {
    if s.whole_sphere {
        return Some(if s.rank() == 1 { [vec![1], vec![-1]] } else { [vec![1, 0], vec![-1, 0]] });
    }
    let mut candidates: Vec<Vec<i64>> = s.points.clone();
    for a in &s.arcs {
        candidates.push(a.start.clone());
        candidates.push(a.end.clone());
    }
    let mut pairs: Vec<[Vec<i64>; 2]> = candidates
        .iter()
        .flat_map(|c| [c.clone(), c.iter().map(|v| -v).collect()])
        .filter_map(|d| {
            let neg: Vec<i64> = d.iter().map(|v| -v).collect();
            (s.contains(&d) && s.contains(&neg)).then(|| if d > neg { [d, neg] } else { [neg, d] })
        })
        .collect();
    pairs.sort();
    pairs.pop()
}

fn finitely_presented_check(r: &SigmaReport) -> Check {
    const NAME: &str = "finitely-presented";
    if r.two_tame {
        return Check::new(
            NAME,
            CheckStatus::Pass,
            "complement has no antipodal pair (2-tame)",
            json!({"two_tame": true}),
        );
    }
    match antipodal_pair(&r.sigma_complement) {
        Some(pair) => Check::new(
            NAME,
            CheckStatus::Fail,
            format!("antipodal pair {:?}, {:?}", pair[0], pair[1]),
            json!({"two_tame": false, "antipodal_pair": pair}),
        ),
        None => Check::new(NAME, CheckStatus::Fail, "not 2-tame", json!({"two_tame": false})),
    }
}

fn great_circle_check(r: &SigmaReport) -> Check {
    const NAME: &str = "no-great-circle";
    if r.great_circle {
        Check::new(
            NAME,
            CheckStatus::Fail,
            "complement is the whole circle",
            json!({"great_circle": true}),
        )
    } else {
        Check::new(NAME, CheckStatus::Pass, "no great circle in the complement", json!({"great_circle": false}))
    }
}

fn rigidity_check(f: &LaurentPolynomial, bound: u32) -> Check {
    const NAME: &str = "homothety-rigid";
    if f.is_zero() {
        return Check::new(NAME, CheckStatus::Undetermined, "needs a curve", Value::Null);
    }
    match homothety_scan(f, bound) {
        Ok(scan) => {
            let off: Vec<_> = scan.accepted.iter().filter(|(n, a, b)| !(n == a && a == b)).cloned().collect();
            let data = json!({"bound": bound, "accepted": scan.accepted, "undetermined": scan.undetermined});
            if let Some(t) = off.first() {
                Check::new(NAME, CheckStatus::Fail, format!("off-diagonal homothety {t:?}"), data)
            } else if !scan.undetermined.is_empty() {
                Check::new(
                    NAME,
                    CheckStatus::Undetermined,
                    format!("{} triples undecided", scan.undetermined.len()),
                    data,
                )
            } else {
                Check::new(NAME, CheckStatus::Pass, format!("only the diagonal up to {bound}"), data)
            }
        }
        Err(e) => Check::from_error(NAME, &e),
    }
}
