//! JSONL manifests: one case per line, run in parallel.

use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::path::{Path, PathBuf};

use clap::Parser;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::commands::{cmd_example13, cmd_koszul, cmd_verify, error_exit, Outcome};
use super::report::{datum_from_report, PartReport};
use super::{Cli, Command, Common, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK};
use crate::error::{Error, Result};
use crate::turrittin::datum_equal;

/// Expected result of a case: an exit code, a verdict word, or a JSON
/// object whose keys must match the case report (`parts` up to order and
/// residue normalization).
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Expect {
    Exit(i32),
    Verdict(String),
    Fields(serde_json::Map<String, Value>),
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchCase {
    #[serde(default)]
    pub name: Option<String>,
    pub cmd: String,
    #[serde(default)]
    pub args: Vec<String>,
    pub expect: Expect,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CaseResult {
    pub name: String,
    pub cmd: String,
    pub exit: i32,
    pub ok: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BatchSummary {
    pub cases: Vec<CaseResult>,
    pub passed: usize,
    pub failed: usize,
    pub exit: i32,
}

impl BatchSummary {
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let width = self.cases.iter().map(|c| c.name.len()).max().unwrap_or(4).max(4);
        let _ = writeln!(out, "{:<width$}  {:<9}  {:>4}  status", "case", "cmd", "exit");
        for c in &self.cases {
            let status = if c.ok { "ok".to_string() } else { format!("FAIL {}", c.detail.as_deref().unwrap_or("")) };
            let _ = writeln!(out, "{:<width$}  {:<9}  {:>4}  {}", c.name, c.cmd, c.exit, status.trim_end());
        }
        let _ = writeln!(out, "{} passed, {} failed", self.passed, self.failed);
        out
    }
}

pub fn parse_manifest(text: &str) -> Result<Vec<BatchCase>> {
    let mut cases = Vec::new();
    for (i, line) in text.lines().enumerate() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut case: BatchCase =
            serde_json::from_str(line).map_err(|e| Error::Manifest(format!("line {}: {e}", i + 1)))?;
        if !matches!(case.cmd.as_str(), "verify" | "example13" | "koszul") {
            return Err(Error::Manifest(format!("line {}: unknown command `{}`", i + 1, case.cmd)));
        }
        if case.name.is_none() {
            case.name = Some(format!("case-{:04}", i + 1));
        }
        cases.push(case);
    }
    let mut names: Vec<&str> = cases.iter().filter_map(|c| c.name.as_deref()).collect();
    names.sort_unstable();
    if let Some(w) = names.windows(2).find(|w| w[0] == w[1]) {
        return Err(Error::Manifest(format!("duplicate case name `{}`", w[0])));
    }
    Ok(cases)
}

fn run_case(case: &BatchCase) -> Outcome {
    let argv = std::iter::once("twdr".to_string()).chain(std::iter::once(case.cmd.clone())).chain(case.args.iter().cloned());
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let msg = e.to_string().lines().next().unwrap_or("bad arguments").to_string();
            return Outcome { exit: EXIT_INPUT, text: format!("error: {msg}\n"), json: json!({"error": msg, "exit": EXIT_INPUT}) };
        }
    };
    let result = catch_unwind(AssertUnwindSafe(|| match &cli.command {
        Command::Verify { f } => cmd_verify(f, &cli.common),
        Command::Example13 { f, trials } => cmd_example13(f, *trials, &cli.common),
        Command::Koszul { mu, bound } => cmd_koszul(mu, *bound, &cli.common),
        Command::Batch { .. } => Err(Error::Manifest("nested batch".into())),
    }));
    match result {
        Ok(Ok(o)) => o,
        Ok(Err(e)) => {
            let code = error_exit(&e);
            Outcome { exit: code, text: format!("error: {e}\n"), json: json!({"error": e.to_string(), "exit": code}) }
        }
        Err(_) => Outcome {
            exit: EXIT_MISMATCH,
            text: "error: internal panic\n".into(),
            json: json!({"error": "internal panic", "exit": EXIT_MISMATCH}),
        },
    }
}

fn parts_match(got: &Value, want: &Value) -> bool {
    let parse = |v: &Value| serde_json::from_value::<Vec<PartReport>>(v.clone()).ok().and_then(|p| datum_from_report(&p));
    match (parse(got), parse(want)) {
        (Some(a), Some(b)) => datum_equal(&a, &b),
        _ => false,
    }
}

/// `None` when the expectation holds, else what differed.
pub fn check_expectation(expect: &Expect, outcome: &Outcome) -> Option<String> {
    let want_exit = |code: i32| (outcome.exit != code).then(|| format!("exit {} (expected {code})", outcome.exit));
    match expect {
        Expect::Exit(code) => want_exit(*code),
        Expect::Verdict(v) => match v.as_str() {
            "ok" | "pass" | "match" => want_exit(EXIT_OK),
            "mismatch" | "fail" => want_exit(EXIT_MISMATCH),
            "error" => want_exit(EXIT_INPUT),
            other => Some(format!("unknown verdict `{other}`")),
        },
        Expect::Fields(fields) => {
            for (key, want) in fields {
                let got = outcome.json.get(key).unwrap_or(&Value::Null);
                let same = if key == "parts" || key == "oracle_parts" { parts_match(got, want) } else { got == want };
                if !same {
                    return Some(format!("{key} = {got} (expected {want})"));
                }
            }
            None
        }
    }
}

fn default_out_dir(manifest: &Path) -> PathBuf {
    let stem = manifest.file_stem().and_then(|s| s.to_str()).unwrap_or("manifest");
    manifest.with_file_name(format!("{stem}.reports"))
}

pub fn run_batch(cases: &[BatchCase], out: Option<&Path>) -> Result<BatchSummary> {
    let outcomes: Vec<(String, Outcome)> = cases
        .par_iter()
        .map(|c| (c.name.clone().unwrap_or_default(), run_case(c)))
        .collect();
    if let Some(dir) = out {
        std::fs::create_dir_all(dir).map_err(|e| Error::Manifest(format!("{}: {e}", dir.display())))?;
        for (name, o) in &outcomes {
            let path = dir.join(format!("{name}.json"));
            let body = serde_json::to_string_pretty(&o.json).expect("json");
            std::fs::write(&path, body + "\n").map_err(|e| Error::Manifest(format!("{}: {e}", path.display())))?;
        }
    }
    let mut results: Vec<CaseResult> = cases
        .iter()
        .zip(&outcomes)
        .map(|(c, (name, o))| {
            let detail = check_expectation(&c.expect, o);
            CaseResult { name: name.clone(), cmd: c.cmd.clone(), exit: o.exit, ok: detail.is_none(), detail }
        })
        .collect();
    results.sort_by(|a, b| a.name.cmp(&b.name));
    let passed = results.iter().filter(|r| r.ok).count();
    let failed = results.len() - passed;
    let summary = BatchSummary { cases: results, passed, failed, exit: if failed == 0 { EXIT_OK } else { EXIT_MISMATCH } };
    if let Some(dir) = out {
        let path = dir.join("summary.json");
        let body = serde_json::to_string_pretty(&summary).expect("json");
        std::fs::write(&path, body + "\n").map_err(|e| Error::Manifest(format!("{}: {e}", path.display())))?;
    }
    Ok(summary)
}

pub fn cmd_batch(manifest: &Path, out: Option<&Path>, _common: &Common) -> Result<Outcome> {
    let text = std::fs::read_to_string(manifest).map_err(|e| Error::Manifest(format!("{}: {e}", manifest.display())))?;
    let cases = parse_manifest(&text)?;
    let dir = out.map(Path::to_path_buf).unwrap_or_else(|| default_out_dir(manifest));
    let summary = run_batch(&cases, Some(&dir))?;
    Ok(Outcome {
        exit: summary.exit,
        text: summary.to_text(),
        json: serde_json::to_value(&summary).expect("json"),
    })
}
