//! Report types shared by the text and JSON renderers.

use std::collections::BTreeMap;
use std::fmt::Write;

use serde::{Deserialize, Serialize};

use crate::arith::field::{parse_rational, Rational};
use crate::arith::upoly::UniPoly;
use crate::turrittin::{ExponentialPart, MonodromyDatum, PartDatum};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct InputEcho {
    pub f: String,
    pub nvars: usize,
    pub order: String,
    pub trunc: i64,
    pub seed: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CriticalValue {
    Rational(String),
    Minpoly(String),
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueEntry {
    pub q: String,
    pub mult: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub jordan: Option<Vec<usize>>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartReport {
    pub critical_value: CriticalValue,
    pub rank: usize,
    pub residues: Vec<ResidueEntry>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub kind: String,
    pub parts: Vec<PartReport>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub input: InputEcho,
    pub milnor_number: usize,
    pub parts: Vec<PartReport>,
    pub oracle: Option<OracleReport>,
    #[serde(rename = "match")]
    pub matched: Option<bool>,
    pub certificates_ok: bool,
    pub exit: i32,
    #[serde(skip)]
    pub oracle_note: Option<String>,
    #[serde(skip)]
    pub stages: Vec<(String, bool)>,
    #[serde(skip)]
    pub millis: Option<u128>,
}

pub fn part_report(p: &PartDatum) -> PartReport {
    let critical_value = match p.part.rational_value() {
        Some(v) => CriticalValue::Rational(v.to_string()),
        None => CriticalValue::Minpoly(p.part.minpoly.display_with("t")),
    };
    let residues = p
        .residues
        .iter()
        .map(|(q, &mult)| ResidueEntry {
            q: q.to_string(),
            mult,
            jordan: p.jordan.as_ref().and_then(|j| j.get(q).cloned()),
        })
        .collect();
    PartReport { critical_value, rank: p.part.rank, residues }
}

pub fn datum_report(d: &MonodromyDatum) -> Vec<PartReport> {
    d.parts.iter().map(part_report).collect()
}

fn parse_minpoly(s: &str) -> Option<UniPoly<Rational>> {
    let p = crate::arith::parse_polynomial(s, 1).ok()?;
    Some(UniPoly::new(p.univariate_coeffs()))
}

/// Inverse of [`datum_report`].
pub fn datum_from_report(parts: &[PartReport]) -> Option<MonodromyDatum> {
    let mut out = Vec::new();
    for p in parts {
        let part = match &p.critical_value {
            CriticalValue::Rational(s) => ExponentialPart::rational(parse_rational(s)?, p.rank),
            CriticalValue::Minpoly(s) => ExponentialPart::new(parse_minpoly(s)?, p.rank),
        };
        let mut residues = BTreeMap::new();
        let mut jordan = BTreeMap::new();
        for r in &p.residues {
            let q = parse_rational(&r.q)?;
            if let Some(j) = &r.jordan {
                jordan.insert(q.clone(), j.clone());
            }
            residues.insert(q, r.mult);
        }
        let jordan = (!jordan.is_empty()).then_some(jordan);
        out.push(PartDatum { part, residues, jordan });
    }
    Some(MonodromyDatum::new(out))
}

fn critical_value_text(c: &CriticalValue) -> String {
    match c {
        CriticalValue::Rational(v) => format!("t0 = {v}"),
        CriticalValue::Minpoly(p) => format!("t0 a root of {p}"),
    }
}

fn write_parts(out: &mut String, parts: &[PartReport]) {
    if parts.is_empty() {
        out.push_str("  (none)\n");
    }
    for p in parts {
        let _ = writeln!(out, "  {}  rank {}", critical_value_text(&p.critical_value), p.rank);
        for r in &p.residues {
            let _ = write!(out, "    residue {}  x{}  monodromy exp(-2πi·{})", r.q, r.mult, r.q);
            if let Some(j) = &r.jordan {
                let sizes: Vec<String> = j.iter().map(usize::to_string).collect();
                let _ = write!(out, "  jordan [{}]", sizes.join(","));
            }
            out.push('\n');
        }
    }
}

impl VerificationReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let i = &self.input;
        let _ = writeln!(out, "f = {}  (n = {}, order {}, N = {}, seed {})", i.f, i.nvars, i.order, i.trunc, i.seed);
        let _ = writeln!(out, "milnor number: {}", self.milnor_number);
        out.push_str("parts:\n");
        write_parts(&mut out, &self.parts);
        match &self.oracle {
            Some(o) => {
                let _ = writeln!(out, "oracle ({}):", o.kind);
                write_parts(&mut out, &o.parts);
            }
            None => {
                let _ = writeln!(out, "oracle: unavailable{}", self.oracle_note.as_deref().map(|n| format!(" ({n})")).unwrap_or_default());
            }
        }
        let verdict = match self.matched {
            Some(true) => "yes",
            Some(false) => "NO",
            None => "n/a",
        };
        let _ = writeln!(out, "match: {verdict}");
        let _ = writeln!(out, "certificates: {}", if self.certificates_ok { "ok" } else { "FAILED" });
        for (stage, ok) in &self.stages {
            let _ = writeln!(out, "  {stage}: {}", if *ok { "ok" } else { "FAILED" });
        }
        if let Some(ms) = self.millis {
            let _ = writeln!(out, "time: {ms} ms");
        }
        let _ = writeln!(out, "exit: {}", self.exit);
        out
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Example13Report {
    pub f: String,
    pub trunc: usize,
    pub trials: usize,
    pub seed: u64,
    pub formal_vanishes: bool,
    pub laurent_rank: usize,
    pub formula_rank: usize,
    pub index_count: usize,
    pub agree: bool,
    pub samples: Vec<String>,
    pub exit: i32,
}

impl Example13Report {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "f = {}  (N = {}, {} trials, seed {})", self.f, self.trunc, self.trials, self.seed);
        let _ = writeln!(out, "formal cohomology: {}", if self.formal_vanishes { "zero" } else { "NONZERO" });
        let _ = writeln!(out, "laurent rank: {}  (u = {})", self.laurent_rank, self.samples.join(", "));
        let _ = writeln!(out, "deg f x #critical values: {}", self.formula_rank);
        let _ = writeln!(out, "index count: {}", self.index_count);
        if self.agree {
            out.push_str("rank agrees with deg f x #critical values\n");
        } else {
            out.push_str("FLAG: rank differs from deg f x #critical values\n");
        }
        let _ = writeln!(out, "exit: {}", self.exit);
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct KoszulReport {
    pub mu: Vec<u64>,
    pub d: u64,
    pub rank: usize,
    pub residues: Vec<ResidueEntry>,
    pub exit: i32,
}

impl KoszulReport {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let mu: Vec<String> = self.mu.iter().map(u64::to_string).collect();
        let _ = writeln!(out, "mu = ({})", mu.join(", "));
        let _ = writeln!(out, "d = {}  rank {}", self.d, self.rank);
        for r in &self.residues {
            let _ = writeln!(out, "  residue {}  x{}", r.q, r.mult);
        }
        let _ = writeln!(out, "exit: {}", self.exit);
        out
    }
}
