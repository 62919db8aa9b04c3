use serde_json::{json, Value};

use super::{CheckStatus, HypothesisReport};
use crate::algebra::Rational;
use crate::puiseux::{HomothetyScan, PuiseuxBranch};
use crate::tropical::{Piece, SigmaReport, SphericalSet, TropicalComplex};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Text,
    Json,
}

/// A stage result that can be rendered in both output formats.
pub trait Emit {
    fn json(&self) -> Value;
    fn text(&self) -> String;
}

pub fn emit(item: &impl Emit, format: Format) -> String {
    match format {
        Format::Json => serde_json::to_string_pretty(&item.json()).expect("json values serialize"),
        Format::Text => item.text(),
    }
}

const KEY_WIDTH: usize = 20;

fn row(out: &mut String, key: &str, value: impl AsRef<str>) {
    out.push_str(&format!("{key:<KEY_WIDTH$}{}\n", value.as_ref()));
}

fn dir(d: &[i64]) -> String {
    let parts: Vec<String> = d.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn dirs(ds: &[Vec<i64>]) -> String {
    if ds.is_empty() {
        return "-".into();
    }
    ds.iter().map(|d| dir(d)).collect::<Vec<_>>().join(" ")
}

fn point(p: &[Rational]) -> String {
    let parts: Vec<String> = p.iter().map(|v| v.to_string()).collect();
    format!("({})", parts.join(","))
}

fn sphere_json(s: &SphericalSet) -> Value {
    json!({"points": s.points, "arcs": s.arcs, "whole_sphere": s.whole_sphere})
}

fn sigma_fields(r: Option<&SigmaReport>) -> Vec<(&'static str, Value)> {
    match r {
        Some(r) => vec![
            ("sigma_complement", sphere_json(&r.sigma_complement)),
            ("exceptional_primes", json!(r.exceptional_primes)),
            ("two_tame", json!(r.two_tame)),
            ("boundary", json!(r.boundary)),
            ("great_circle", json!(r.great_circle)),
            ("spans", json!(r.spans)),
        ],
        None => ["sigma_complement", "exceptional_primes", "two_tame", "boundary", "great_circle", "spans"]
            .into_iter()
            .map(|k| (k, Value::Null))
            .collect(),
    }
}

fn sigma_text(out: &mut String, r: &SigmaReport) {
    let s = &r.sigma_complement;
    row(out, "points", dirs(&s.points));
    let arcs: Vec<String> = s.arcs.iter().map(|a| format!("{}->{}", dir(&a.start), dir(&a.end))).collect();
    row(out, "arcs", if arcs.is_empty() { "-".into() } else { arcs.join(" ") });
    row(out, "whole_sphere", s.whole_sphere.to_string());
    let primes: Vec<String> = r.exceptional_primes.iter().map(|p| p.to_string()).collect();
    row(out, "exceptional_primes", if primes.is_empty() { "-".into() } else { primes.join(" ") });
    row(out, "two_tame", r.two_tame.to_string());
    row(out, "boundary", dirs(&r.boundary));
    row(out, "great_circle", r.great_circle.to_string());
    row(out, "spans", r.spans.to_string());
}

/// The `sigma` stage output.
pub struct SigmaView<'a> {
    pub input: String,
    pub vars: Vec<String>,
    pub report: &'a SigmaReport,
}

impl Emit for SigmaView<'_> {
    fn json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("input".into(), json!(self.input));
        m.insert("vars".into(), json!(self.vars));
        for (k, v) in sigma_fields(Some(self.report)) {
            m.insert(k.into(), v);
        }
        Value::Object(m)
    }

    fn text(&self) -> String {
        let mut out = String::new();
        row(&mut out, "input", &self.input);
        row(&mut out, "vars", self.vars.join(", "));
        sigma_text(&mut out, self.report);
        out
    }
}

impl Emit for HypothesisReport {
    fn json(&self) -> Value {
        let mut m = serde_json::Map::new();
        m.insert("input".into(), json!(self.input));
        m.insert("vars".into(), json!(self.vars));
        for (k, v) in sigma_fields(self.sigma.as_ref()) {
            m.insert(k.into(), v);
        }
        m.insert("checks".into(), json!(self.checks));
        m.insert("verdict".into(), json!(self.verdict.label()));
        m.insert("reason".into(), json!(self.verdict.reason()));
        Value::Object(m)
    }

    fn text(&self) -> String {
        let mut out = String::new();
        out.push_str("group (Z[x^±1, ...]/(f)) ⋊ Z^s, generator q_i acting by multiplication with x_i\n");
        row(&mut out, "input", &self.input);
        row(&mut out, "vars", self.vars.join(", "));
        if let Some(s) = &self.sigma {
            sigma_text(&mut out, s);
        }
        out.push_str("checks\n");
        for c in &self.checks {
            let status = match c.status {
                CheckStatus::Pass => "pass",
                CheckStatus::Fail => "fail",
                CheckStatus::Conditional => "conditional",
                CheckStatus::Undetermined => "undetermined",
            };
            out.push_str(&format!("  {:<KEY_WIDTH$}{:<14}{}\n", c.name, status, c.evidence));
        }
        let verdict = match self.verdict.reason() {
            Some(r) => format!("{} ({r})", self.verdict.label()),
            None => self.verdict.label().to_string(),
        };
        row(&mut out, "verdict", verdict);
        out
    }
}

fn piece_json(p: &Piece) -> Value {
    let q = |v: &[Rational]| -> Vec<String> { v.iter().map(|x| x.to_string()).collect() };
    match p {
        Piece::Point { at } => json!({"kind": "point", "at": q(at)}),
        Piece::Ray { vertex, direction } => json!({"kind": "ray", "vertex": q(vertex), "direction": direction}),
        Piece::Segment { start, end } => json!({"kind": "segment", "start": q(start), "end": q(end)}),
        Piece::Line { through, direction } => {
            json!({"kind": "line", "through": q(through), "direction": direction})
        }
        Piece::FullSpace => json!({"kind": "full"}),
    }
}

fn piece_text(p: &Piece) -> String {
    match p {
        Piece::Point { at } => format!("point    {}", point(at)),
        Piece::Ray { vertex, direction } => format!("ray      {} + t{}", point(vertex), dir(direction)),
        Piece::Segment { start, end } => format!("segment  {} -- {}", point(start), point(end)),
        Piece::Line { through, direction } => format!("line     {} + R{}", point(through), dir(direction)),
        Piece::FullSpace => "full space".into(),
    }
}

/// The `tropical` stage output: one corner locus.
pub struct TropicalView<'a> {
    pub input: String,
    pub vars: Vec<String>,
    pub complex: &'a TropicalComplex,
}

impl Emit for TropicalView<'_> {
    fn json(&self) -> Value {
        json!({
            "input": self.input,
            "vars": self.vars,
            "valuation": self.complex.valuation.to_string(),
            "pieces": self.complex.pieces.iter().map(piece_json).collect::<Vec<_>>(),
        })
    }

    fn text(&self) -> String {
        let mut out = String::new();
        row(&mut out, "input", &self.input);
        row(&mut out, "vars", self.vars.join(", "));
        row(&mut out, "valuation", self.complex.valuation.to_string());
        if self.complex.pieces.is_empty() {
            row(&mut out, "pieces", "-");
        }
        for (i, p) in self.complex.pieces.iter().enumerate() {
            row(&mut out, if i == 0 { "pieces" } else { "" }, piece_text(p));
        }
        out
    }
}

/// The `puiseux` stage output.
pub struct PuiseuxView<'a> {
    pub input: String,
    pub vars: Vec<String>,
    pub branches: &'a [PuiseuxBranch],
}

impl Emit for PuiseuxView<'_> {
    fn json(&self) -> Value {
        json!({"input": self.input, "vars": self.vars, "branches": self.branches})
    }

    fn text(&self) -> String {
        let mut out = String::new();
        row(&mut out, "input", &self.input);
        row(&mut out, "vars", self.vars.join(", "));
        for (i, b) in self.branches.iter().enumerate() {
            row(&mut out, &format!("branch {}", i + 1), format!("d = {}, conjugates = {}", b.ramification, b.conjugacy_size));
            row(&mut out, "", format!("field  {}", b.series.field()));
            row(&mut out, "", format!("y = {}", b.series));
        }
        out
    }
}

/// The `rigidity` stage output.
pub struct RigidityView<'a> {
    pub input: String,
    pub vars: Vec<String>,
    pub bound: u32,
    pub scan: &'a HomothetyScan,
}

impl Emit for RigidityView<'_> {
    fn json(&self) -> Value {
        json!({
            "input": self.input,
            "vars": self.vars,
            "bound": self.bound,
            "accepted": self.scan.accepted,
            "undetermined": self.scan.undetermined,
        })
    }

    fn text(&self) -> String {
        let triples = |ts: &[(u32, u32, u32)]| -> String {
            if ts.is_empty() {
                return "-".into();
            }
            ts.iter().map(|(n, a, b)| format!("({n},{a},{b})")).collect::<Vec<_>>().join(" ")
        };
        let mut out = String::new();
        row(&mut out, "input", &self.input);
        row(&mut out, "vars", self.vars.join(", "));
        row(&mut out, "bound", self.bound.to_string());
        row(&mut out, "accepted", triples(&self.scan.accepted));
        row(&mut out, "undetermined", triples(&self.scan.undetermined));
        out
    }
}
