//! Acceptance gate. Runs as a plain binary and prints one line per criterion.

use std::collections::BTreeMap;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use num_integer::Integer;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use twdr_core::arith::field::frac01;
use twdr_core::arith::{int, parse_polynomial, rat, MonomialOrder, Rational, UniPoly};
use twdr_core::brieskorn::{
    connection_matrix_certified, exactness_kill_test, verify_reduction_certificate, working_degree, ConnectionMatrix,
    ReducedClass,
};
use twdr_core::cli::commands::example13_report;
use twdr_core::cli::{Common, Format};
use twdr_core::localmodels::{formal_cohomology_vanishes_1var, laurent_rank_1var, monomial_koszul, KoszulModel};
use twdr_core::milnor::JacobianContext;
use twdr_core::oracle::{select_oracle, OracleKind};
use twdr_core::turrittin::{
    datum_equal, default_truncation, extract_at, extract_monodromy, ExponentialPart, Extraction, MonodromyDatum,
    PartDatum,
};

type Verdict = Result<String, String>;

struct Member {
    f: String,
    ctx: JacobianContext,
    b: ConnectionMatrix,
    classes: Vec<ReducedClass>,
    extraction: Extraction,
    elapsed: Duration,
}

fn load(f: &str, n: usize) -> Member {
    let start = Instant::now();
    let poly = parse_polynomial(f, n).unwrap_or_else(|e| panic!("{f}: {e}"));
    let ctx = JacobianContext::new(poly, &MonomialOrder::degrevlex(n)).unwrap_or_else(|e| panic!("{f}: {e}"));
    let (b, classes) = connection_matrix_certified(&ctx).unwrap_or_else(|e| panic!("{f}: {e}"));
    let extraction = extract_monodromy(&b, None, false).unwrap_or_else(|e| panic!("{f}: {e}"));
    Member { f: f.to_string(), ctx, b, classes, extraction, elapsed: start.elapsed() }
}

fn qh_suite() -> Vec<(String, usize)> {
    let mut out = Vec::new();
    for a in 2..=5 {
        for b in 2..=5 {
            out.push((format!("x^{a}+y^{b}"), 2));
        }
    }
    for k in 2..=7 {
        out.push((format!("x^{k}"), 1));
    }
    out.push(("x^2+y^2+z^2".into(), 3));
    out.push(("x^2+y^3".into(), 2));
    out
}

fn corpus() -> Vec<Member> {
    let mut list = qh_suite();
    list.extend([
        ("x^3-3*x".to_string(), 1),
        ("x^3-3*x+y^2".to_string(), 2),
        ("x+x^2*y".to_string(), 2),
        ("x^3-2*x".to_string(), 1),
        ("x^4+x^5".to_string(), 1),
    ]);
    list.iter().map(|(f, n)| load(f, *n)).collect()
}

fn find<'a>(corpus: &'a [Member], f: &str) -> &'a Member {
    corpus.iter().find(|m| m.f == f).expect("corpus member")
}

fn at_zero(residues: impl IntoIterator<Item = Rational>) -> MonodromyDatum {
    let rs: Vec<Rational> = residues.into_iter().collect();
    MonodromyDatum::new(vec![PartDatum::new(ExponentialPart::rational(int(0), rs.len()), rs)])
}

/// Residues `Σ i_k / a_k` over `1 ≤ i_k < a_k`, the Brieskorn–Pham closed form.
fn pham_residues(exps: &[i64]) -> Vec<Rational> {
    let mut sums = vec![int(0)];
    for &a in exps {
        sums = sums.iter().flat_map(|s| (1..a).map(move |i| s + rat(i, a))).collect();
    }
    sums.iter().map(frac01).collect()
}

fn pham_exponents(f: &str) -> Vec<i64> {
    f.split('+').map(|t| t.rsplit('^').next().and_then(|e| e.parse().ok()).unwrap_or(1)).collect()
}

fn criterion_1(corpus: &[Member]) -> Verdict {
    let mut slowest = Duration::ZERO;
    for (f, _) in qh_suite() {
        let m = find(corpus, &f);
        let exps = pham_exponents(&f);
        let expected = at_zero(pham_residues(&exps));
        let mu: i64 = exps.iter().map(|a| a - 1).product();
        if m.ctx.milnor_number() as i64 != mu {
            return Err(format!("{f}: μ = {} but expected {mu}", m.ctx.milnor_number()));
        }
        let oracle = select_oracle(&m.ctx).map_err(|e| format!("{f}: {e}"))?;
        if oracle.kind != OracleKind::MilnorOrlik || !datum_equal(&oracle.datum, &expected) {
            return Err(format!("{f}: oracle {:?} differs from the closed form", oracle.kind));
        }
        if !datum_equal(&m.extraction.datum, &expected) {
            return Err(format!("{f}: pipeline {:?}", m.extraction.datum));
        }
        slowest = slowest.max(m.elapsed);
    }
    Ok(format!("{} cases, slowest {} ms", qh_suite().len(), slowest.as_millis()))
}

fn criterion_2(corpus: &[Member]) -> Verdict {
    let two = |q: Rational| {
        MonodromyDatum::new(vec![
            PartDatum::new(ExponentialPart::rational(int(-2), 1), [q.clone()]),
            PartDatum::new(ExponentialPart::rational(int(2), 1), [q]),
        ])
    };
    for (f, expected) in [("x^3-3*x", two(rat(1, 2))), ("x^3-3*x+y^2", two(int(0)))] {
        let m = find(corpus, f);
        if !datum_equal(&m.extraction.datum, &expected) {
            return Err(format!("{f}: pipeline {:?}", m.extraction.datum));
        }
        let oracle = select_oracle(&m.ctx).map_err(|e| format!("{f}: {e}"))?;
        if oracle.kind != OracleKind::Morse || !datum_equal(&oracle.datum, &expected) {
            return Err(format!("{f}: Morse oracle disagrees"));
        }
    }
    Ok("two parts each, Morse oracle agrees".into())
}

fn criterion_3(corpus: &[Member]) -> Verdict {
    let m = find(corpus, "x+x^2*y");
    if m.ctx.milnor_number() != 0 || !m.extraction.datum.is_empty() || m.b.dim != 0 {
        return Err(format!("μ = {}, datum {:?}", m.ctx.milnor_number(), m.extraction.datum));
    }
    Ok("μ = 0, empty datum".into())
}

fn criterion_4(corpus: &[Member]) -> Verdict {
    let mut count = 0;
    let mut vectors: Vec<Vec<u64>> = vec![vec![]];
    for _ in 0..3 {
        vectors = vectors
            .iter()
            .flat_map(|v| (1..=6).map(move |a| [v.clone(), vec![a]].concat()))
            .collect();
        for mu in &vectors {
            let r = monomial_koszul(&KoszulModel::new(mu.clone()).map_err(|e| e.to_string())?)
                .map_err(|e| format!("{mu:?}: {e}"))?;
            let d = mu.iter().fold(0u64, |g, &a| g.gcd(&a));
            let expected: Vec<Rational> = (0..d as i64).map(|j| rat(j, d as i64)).collect();
            if r.d != d || r.rank as u64 != d || r.residues != expected {
                return Err(format!("{mu:?}: rank {} residues {:?}", r.rank, r.residues));
            }
            count += 1;
        }
    }
    for k in 2..=7u64 {
        let r = monomial_koszul(&KoszulModel::new(vec![k]).map_err(|e| e.to_string())?).map_err(|e| e.to_string())?;
        let nearby: Vec<Rational> = r.residues.into_iter().filter(|q| *q != int(0)).collect();
        let m = find(corpus, &format!("x^{k}"));
        let pipeline: Vec<Rational> = m.extraction.datum.parts.iter().flat_map(|p| p.residue_list()).collect();
        if nearby != pipeline {
            return Err(format!("x^{k}: {nearby:?} vs {pipeline:?}"));
        }
    }
    Ok(format!("{count} exponent vectors, x^k cross-check for k = 2..7"))
}

fn criterion_5() -> Verdict {
    let t = |cs: &[i64]| UniPoly::new(cs.iter().map(|&c| int(c)).collect());
    let cases = [("t^2", t(&[0, 0, 1])), ("t^3", t(&[0, 0, 0, 1])), ("t^3-3*t", t(&[0, -3, 0, 1])), ("t^4-2*t^2", t(&[0, 0, -2, 0, 1]))];
    for (name, f) in &cases {
        if !formal_cohomology_vanishes_1var(f, 8, 100, 0).map_err(|e| format!("{name}: {e}"))? {
            return Err(format!("{name}: formal cohomology does not vanish"));
        }
    }
    let mut notes = Vec::new();
    for (name, f) in &cases[..3] {
        let r = laurent_rank_1var(f, 16, 2, 0).map_err(|e| format!("{name}: {e}"))?;
        if r.rank != r.index_count {
            return Err(format!("{name}: rank {} but index count {}", r.rank, r.index_count));
        }
        if *name != "t^3-3*t" && !r.agree {
            return Err(format!("{name}: rank {} vs formula {}", r.rank, r.formula_rank));
        }
        notes.push(format!("{name} → {}", r.rank));
    }
    let common = Common { nvars: None, order: "degrevlex".into(), trunc: None, seed: 0, format: Format::Text, jordan: false };
    let report = example13_report("t^3-3*t", 100, &common).map_err(|e| e.to_string())?;
    if report.laurent_rank != 4 || report.formula_rank != 6 || report.agree || !report.to_text().contains("FLAG") || report.exit != 0 {
        return Err(format!("t^3-3*t report: {:?}", report));
    }
    Ok(format!("{}; t^3-3*t flagged against deg f × #critical values = 6", notes.join(", ")))
}

fn criterion_6(corpus: &[Member]) -> Verdict {
    let mut gauges = 0;
    for m in corpus {
        for (a, c) in m.classes.iter().enumerate() {
            if !verify_reduction_certificate(&m.ctx.f().mul(&m.ctx.basis_poly(a)), c, &m.ctx) {
                return Err(format!("{}: reduction certificate {a}", m.f));
            }
        }
        for c in &m.extraction.certificates {
            if !c.check() {
                return Err(format!("{}: gauge certificate at stage {}", m.f, c.stage()));
            }
            gauges += 1;
        }
    }
    let live: Vec<&Member> = corpus.iter().filter(|m| m.ctx.milnor_number() > 0).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(0);
    for i in 0..200 {
        let m = live[i % live.len()];
        let degree = working_degree(&m.ctx).min(3);
        if !exactness_kill_test(&m.ctx, &mut rng, degree).map_err(|e| format!("{}: {e}", m.f))? {
            return Err(format!("{}: kill test {i}", m.f));
        }
    }
    Ok(format!("{gauges} gauge certificates, 200 kill tests"))
}

fn criterion_7(corpus: &[Member]) -> Verdict {
    for m in corpus {
        let mu = m.ctx.milnor_number();
        if mu == 0 {
            continue;
        }
        let n = default_truncation(mu);
        let lo = extract_at(&m.b, n, false).map_err(|e| format!("{} at {n}: {e}", m.f))?;
        let hi = extract_at(&m.b, 2 * n, false).map_err(|e| format!("{} at {}: {e}", m.f, 2 * n))?;
        if !datum_equal(&lo.datum, &hi.datum) {
            return Err(format!("{}: N = {n} and 2N disagree", m.f));
        }
    }
    for (name, f) in [("t^2", vec![0, 0, 1]), ("t^3", vec![0, 0, 0, 1]), ("t^3-3*t", vec![0, -3, 0, 1])] {
        let f = UniPoly::new(f.into_iter().map(int).collect());
        let a = laurent_rank_1var(&f, 16, 1, 1).map_err(|e| format!("{name}: {e}"))?;
        let b = laurent_rank_1var(&f, 16, 1, 2).map_err(|e| format!("{name}: {e}"))?;
        if a.samples == b.samples || a.rank != b.rank {
            return Err(format!("{name}: {} at {:?} vs {} at {:?}", a.rank, a.samples, b.rank, b.samples));
        }
    }
    Ok("N and 2N agree on the corpus; Laurent ranks agree across specializations".into())
}

fn criterion_8(corpus: &[Member]) -> Verdict {
    for m in corpus {
        let mu = m.ctx.milnor_number();
        if m.b.coeff(0) != m.ctx.mult_matrix(m.ctx.f()) {
            return Err(format!("{}: B(0) differs from multiplication by f", m.f));
        }
        let chi_degree = m.ctx.mult_matrix(m.ctx.f()).charpoly().degree().unwrap_or(0);
        let parts: BTreeMap<String, usize> = m.ctx.critical_parts().iter().map(|p| (p.minpoly.display_with("t"), p.multiplicity * p.minpoly.degree().unwrap_or(0))).collect();
        let total = m.extraction.datum.total_rank();
        if total != mu || chi_degree != mu || parts.values().sum::<usize>() != mu {
            return Err(format!("{}: Σ rank {total}, μ {mu}, deg charpoly {chi_degree}", m.f));
        }
    }
    Ok(format!("{} corpus members", corpus.len()))
}

fn main() -> ExitCode {
    let start = Instant::now();
    let corpus = corpus();
    let results: Vec<(usize, Verdict)> = vec![
        (1, criterion_1(&corpus)),
        (2, criterion_2(&corpus)),
        (3, criterion_3(&corpus)),
        (4, criterion_4(&corpus)),
        (5, criterion_5()),
        (6, criterion_6(&corpus)),
        (7, criterion_7(&corpus)),
        (8, criterion_8(&corpus)),
    ];
    let mut ok = true;
    for (k, r) in &results {
        match r {
            Ok(detail) => println!("criterion {k}: PASS ({detail})"),
            Err(detail) => {
                ok = false;
                println!("criterion {k}: FAIL ({detail})");
            }
        }
    }
    println!("acceptance: {} in {} ms", if ok { "PASS" } else { "FAIL" }, start.elapsed().as_millis());
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
