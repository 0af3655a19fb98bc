use std::time::Instant;

use rayon::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::Value;

use super::report::{datum_report, Example13Report, InputEcho, KoszulReport, OracleReport, ResidueEntry, VerificationReport};
use super::{Common, Format, EXIT_INPUT, EXIT_MISMATCH, EXIT_OK};
use crate::arith::{infer_nvars, parse_polynomial, MonomialOrder, MultiPoly, Rational, UniPoly};
use crate::brieskorn::{connection_matrix_certified, exactness_kill_test, verify_reduction_certificate};
use crate::error::{Error, Result};
use crate::localmodels::{formal_cohomology_vanishes_1var, laurent_rank_1var, monomial_koszul, KoszulModel};
use crate::milnor::JacobianContext;
use crate::oracle::select_oracle;
use crate::turrittin::{datum_equal, extract_monodromy};

/// A finished command: its exit code and both renderings.
#[derive(Clone, Debug)]
pub struct Outcome {
    pub exit: i32,
    pub text: String,
    pub json: Value,
}

impl Outcome {
    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Text => self.text.clone(),
            Format::Json => format!("{}\n", serde_json::to_string_pretty(&self.json).expect("json")),
        }
    }
}

/// Kill-test forms per `verify` run.
const KILL_TRIALS: usize = 3;

fn setup(f: &str, common: &Common) -> Result<(JacobianContext, MultiPoly, MonomialOrder)> {
    let n = common.nvars.unwrap_or_else(|| infer_nvars(f));
    let poly = parse_polynomial(f, n)?;
    let order = MonomialOrder::from_name(&common.order, n)
        .ok_or_else(|| Error::Precondition(format!("unknown monomial order `{}`", common.order)))?;
    let ctx = JacobianContext::new(poly.clone(), &order)?;
    Ok((ctx, poly, order))
}

/// The full pipeline and oracle comparison. Input problems are `Err`;
/// failed computations come back as a report with exit 1.
pub fn verify_report(f: &str, common: &Common) -> Result<VerificationReport> {
    let start = Instant::now();
    let (ctx, poly, order) = setup(f, common)?;
    let mu = ctx.milnor_number();
    let mut stages: Vec<(String, bool)> = Vec::new();
    let mut failure: Option<String> = None;

    let (b, classes) = connection_matrix_certified(&ctx)?;
    let reductions_ok = classes
        .iter()
        .enumerate()
        .all(|(a, c)| verify_reduction_certificate(&ctx.f().mul(&ctx.basis_poly(a)), c, &ctx));
    stages.push(("reduction".into(), reductions_ok));
    let mut rng = ChaCha8Rng::seed_from_u64(common.seed);
    let degree = crate::brieskorn::working_degree(&ctx).min(3);
    let mut kill_ok = true;
    for _ in 0..if mu == 0 { 0 } else { KILL_TRIALS } {
        kill_ok &= exactness_kill_test(&ctx, &mut rng, degree)?;
    }
    stages.push(("kill-test".into(), kill_ok));
    let cross = b.coeff(0) == ctx.mult_matrix(ctx.f());
    stages.push(("B(0) = [f]".into(), cross));

    let (datum, trunc) = match extract_monodromy(&b, common.trunc, common.jordan) {
        Ok(e) => {
            let mut by_stage: Vec<(&'static str, bool)> = Vec::new();
            let checks: Vec<bool> = e.certificates.par_iter().map(|c| c.check()).collect();
            for (c, ok) in e.certificates.iter().zip(checks) {
                match by_stage.iter_mut().find(|(s, _)| *s == c.stage()) {
                    Some(entry) => entry.1 &= ok,
                    None => by_stage.push((c.stage(), ok)),
                }
            }
            stages.extend(by_stage.into_iter().map(|(s, ok)| (format!("gauge {s}"), ok)));
            (Some(e.datum), e.trunc)
        }
        Err(e) if e.is_input_error() => return Err(e),
        Err(e) => {
            failure = Some(e.to_string());
            stages.push(("extraction".into(), false));
            (None, common.trunc.unwrap_or(crate::turrittin::default_truncation(mu)))
        }
    };
    let consistent = datum.as_ref().is_some_and(|d| d.is_valid() && d.total_rank() == mu);
    stages.push(("Σ rank = μ".into(), consistent));
    let certificates_ok = stages.iter().all(|(_, ok)| *ok);

    let (oracle, note) = match select_oracle(&ctx) {
        Ok(o) => (Some(o), None),
        Err(reason) => (None, Some(reason)),
    };
    let matched = match (&oracle, &datum) {
        (Some(o), Some(d)) => Some(datum_equal(d, &o.datum)),
        (Some(_), None) => Some(false),
        (None, _) => None,
    };
    let exit = if certificates_ok && matched != Some(false) { EXIT_OK } else { EXIT_MISMATCH };
    let oracle_note = match (note, failure) {
        (Some(n), Some(f)) => Some(format!("{n}; pipeline failed: {f}")),
        (n, None) => n,
        (None, Some(f)) => Some(format!("pipeline failed: {f}")),
    };
    Ok(VerificationReport {
        input: InputEcho { f: poly.to_string(), nvars: ctx.nvars(), order: order.name().into(), trunc, seed: common.seed },
        milnor_number: mu,
        parts: datum.as_ref().map(datum_report).unwrap_or_default(),
        oracle: oracle.map(|o| OracleReport { kind: o.kind.name().into(), parts: datum_report(&o.datum) }),
        matched,
        certificates_ok,
        exit,
        oracle_note,
        stages,
        millis: Some(start.elapsed().as_millis()),
    })
}

pub fn cmd_verify(f: &str, common: &Common) -> Result<Outcome> {
    let report = verify_report(f, common)?;
    Ok(Outcome {
        exit: report.exit,
        text: report.to_text(),
        json: serde_json::to_value(&report).expect("json"),
    })
}

fn univariate(f: &str, common: &Common) -> Result<(MultiPoly, UniPoly<Rational>)> {
    let n = common.nvars.unwrap_or_else(|| infer_nvars(f));
    if n != 1 {
        return Err(Error::Precondition(format!("expected a univariate polynomial, got {n} variables")));
    }
    let p = parse_polynomial(f, 1)?;
    let u = UniPoly::new(p.univariate_coeffs());
    if u.degree().unwrap_or(0) == 0 {
        return Err(Error::Precondition("f must be nonconstant".into()));
    }
    Ok((p, u))
}

/// Filtration levels tried by the Laurent rank before giving up.
const LAURENT_MAX_LEVEL: usize = 16;

pub fn example13_report(f: &str, trials: usize, common: &Common) -> Result<Example13Report> {
    let (p, u) = univariate(f, common)?;
    let trunc = common.trunc.unwrap_or(8);
    if trunc < 1 {
        return Err(Error::Precondition("truncation order must be positive".into()));
    }
    let formal = formal_cohomology_vanishes_1var(&u, trunc as usize, trials, common.seed)?;
    let laurent = laurent_rank_1var(&u, LAURENT_MAX_LEVEL, 2, common.seed)?;
    let exit = if formal && laurent.rank == laurent.index_count { EXIT_OK } else { EXIT_MISMATCH };
    Ok(Example13Report {
        f: p.to_string_with(&["t".to_string()]),
        trunc: trunc as usize,
        trials,
        seed: common.seed,
        formal_vanishes: formal,
        laurent_rank: laurent.rank,
        formula_rank: laurent.formula_rank,
        index_count: laurent.index_count,
        agree: laurent.agree,
        samples: laurent.samples.iter().map(ToString::to_string).collect(),
        exit,
    })
}

pub fn cmd_example13(f: &str, trials: usize, common: &Common) -> Result<Outcome> {
    let r = example13_report(f, trials, common)?;
    Ok(Outcome { exit: r.exit, text: r.to_text(), json: serde_json::to_value(&r).expect("json") })
}

pub fn koszul_report(mu: &[u64], bound: Option<u64>) -> Result<KoszulReport> {
    let model = match bound {
        Some(b) => KoszulModel::with_bound(mu.to_vec(), b)?,
        None => KoszulModel::new(mu.to_vec())?,
    };
    let r = monomial_koszul(&model)?;
    let mut residues: Vec<ResidueEntry> = Vec::new();
    for q in &r.residues {
        match residues.last_mut() {
            Some(last) if last.q == q.to_string() => last.mult += 1,
            _ => residues.push(ResidueEntry { q: q.to_string(), mult: 1, jordan: None }),
        }
    }
    let exit = if r.rank as u64 == r.d { EXIT_OK } else { EXIT_MISMATCH };
    Ok(KoszulReport { mu: mu.to_vec(), d: r.d, rank: r.rank, residues, exit })
}

pub fn cmd_koszul(mu: &[u64], bound: Option<u64>, _common: &Common) -> Result<Outcome> {
    let r = koszul_report(mu, bound)?;
    Ok(Outcome { exit: r.exit, text: r.to_text(), json: serde_json::to_value(&r).expect("json") })
}

/// Exit code for an error raised before any report exists.
pub fn error_exit(e: &Error) -> i32 {
    if e.is_input_error() {
        EXIT_INPUT
    } else {
        EXIT_MISMATCH
    }
}
