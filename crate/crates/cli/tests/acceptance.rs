//! Acceptance run: one line per criterion, then a nonzero exit if any
//! blocking criterion failed.

use std::collections::BTreeMap;
use std::f64::consts::PI;
use std::process::{Command, ExitCode};
use std::time::{Duration, Instant};

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde_json::Value;
use weng_zeta::numeric::special::{xi_completed, xi_via_zeta, zeta};
use weng_zeta::numeric::{
    eval_expression, residue_oracle, scan_zeros, with_generic_point, z_reflection,
};
use weng_zeta::symexpr::{
    ExpDatum, LinFactor, WeylTag, XiLinear, XiProduct, ZetaExpression, ZetaTerm, Q,
};
use weng_zeta::zeta::verify::{
    consistency_checks, lemma_suite, verify_fe_symbolic, w0_form_checks, CheckResult,
};
use weng_zeta::zeta::{normalize, z_and_weng, GroupContext, ZetaBundle, ZetaContext};
use weng_zeta::{all_types, build_root_system, GroupCap, Kind, WeylElement};

const GOLDEN_BUDGET: Duration = Duration::from_secs(1);
const LEMMA_BUDGET: Duration = Duration::from_secs(600);
const ORACLE_BUDGET: Duration = Duration::from_secs(300);
const ORACLE_TOLERANCE: f64 = 1e-6;
const ORACLE_POINTS: u64 = 5;
const FE_TOLERANCE: f64 = 1e-8;
const FE_POINTS: usize = 20;
const FE_RADIUS: f64 = 5.0;
const CLASSICAL_TOLERANCE: f64 = 1e-12;
const XI_SYMMETRY_TOLERANCE: f64 = 1e-10;
const XI_SYMMETRY_POINTS: usize = 100;
const SCAN_T_MAX: f64 = 30.0;
const SCAN_STEP: f64 = 0.1;

struct Line {
    id: u32,
    passed: bool,
    blocking: bool,
    text: String,
}

fn q(n: i64) -> Q {
    Q::from_integer(n)
}

fn xi(k: i64, h: i64) -> XiLinear {
    XiLinear::raw(k, q(h))
}

fn lin(k: i64, b: i64) -> LinFactor {
    LinFactor::raw(k, q(b))
}

fn prod(factors: &[(XiLinear, i64)]) -> XiProduct {
    factors.iter().copied().collect()
}

fn run_cli(args: &[&str]) -> (Value, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_weng-zeta"))
        .args(args)
        .output()
        .expect("binary runs");
    let elapsed = start.elapsed();
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    (
        serde_json::from_slice(&out.stdout).expect("JSON output"),
        elapsed,
    )
}

fn golden_a2() -> Line {
    let (doc, elapsed) = run_cli(&["zeta", "A", "2", "--p", "1", "--format", "json"]);
    let r = &doc["results"][0];
    let mut problems = Vec::new();
    let omega = ZetaExpression::from_json_value(&r["omega"]).expect("omega parses");
    let rs = build_root_system(Kind::A, 2).unwrap();
    let printed: Vec<(Vec<usize>, Vec<LinFactor>, XiProduct)> = vec![
        (vec![], vec![lin(1, 0)], XiProduct::new()),
        (
            vec![1],
            vec![lin(1, 1), lin(0, -2)],
            prod(&[(xi(0, 2), -1)]),
        ),
        (
            vec![1, 0],
            vec![lin(-1, -3)],
            prod(&[(xi(1, 1), 1), (xi(1, 3), -1)]),
        ),
        (
            vec![0, 1],
            vec![lin(-1, -3), lin(1, 0)],
            prod(&[(xi(1, 2), 1), (xi(0, 2), -1), (xi(1, 3), -1)]),
        ),
        (
            vec![0, 1, 0],
            vec![lin(0, -2), lin(-1, -2)],
            prod(&[(xi(1, 1), 1), (xi(0, 2), -1), (xi(1, 3), -1)]),
        ),
    ];
    if omega.len() != printed.len() {
        problems.push(format!("ω has {} terms", omega.len()));
    }
    for (word, den, content) in printed {
        let w = WeylElement::from_word(&rs, &word);
        let expected = ZetaTerm::new(q(1), None, ExpDatum::zero(2), den, content);
        match omega.term_for(&WeylTag::from(&w)) {
            Some(t)
                if (&t.den, &t.xi, t.coeff) == (&expected.den, &expected.xi, expected.coeff) => {}
            Some(t) => problems.push(format!(
                "term {word:?}: {} vs {}",
                t.xi.to_text(),
                expected.xi.to_text()
            )),
            None => problems.push(format!("no term for {word:?}")),
        }
    }
    let product = |key: &str| XiProduct::from_json_value(&r[key]).expect("product parses");
    for (key, expected) in [
        ("F", prod(&[(xi(1, 2), 1), (xi(0, 2), 1), (xi(1, 3), 1)])),
        ("D", prod(&[(xi(1, 2), 1)])),
        ("minimal_factor", prod(&[(xi(0, 2), 1), (xi(1, 3), 1)])),
    ] {
        if product(key) != expected {
            problems.push(format!("{key} = {}", product(key).to_text()));
        }
    }
    if r["c"] != 3 {
        problems.push(format!("c = {}", r["c"]));
    }
    let on_time = elapsed < GOLDEN_BUDGET;
    if !on_time {
        problems.push(format!("took {elapsed:.2?}"));
    }
    Line {
        id: 1,
        passed: problems.is_empty(),
        blocking: true,
        text: format!(
            "A2 p=1 golden: 5 ω terms, F, D, minimal factor, c = 3 (runtime {elapsed:.2?} < {GOLDEN_BUDGET:?}){}",
            witness(&problems)
        ),
    }
}

fn witness(problems: &[String]) -> String {
    match problems.first() {
        None => String::new(),
        Some(p) => format!("; first failure: {p}"),
    }
}

/// Aggregates named check results across `(type, p)`.
#[derive(Default)]
struct Tally {
    pairs: usize,
    cases: usize,
    failure: Option<String>,
    elapsed: Duration,
}

impl Tally {
    fn absorb(&mut self, label: &str, p: usize, checks: &[CheckResult], elapsed: Duration) {
        self.pairs += 1;
        self.elapsed += elapsed;
        for c in checks {
            self.cases += c.cases;
            if !c.passed && self.failure.is_none() {
                self.failure = Some(format!(
                    "{label} p={} {}: {}",
                    p + 1,
                    c.name,
                    c.detail.clone().unwrap_or_default()
                ));
            }
        }
    }
}

struct SweepResults {
    lemmas: Tally,
    symbolic: Tally,
    consistency: Tally,
    w0_form: Tally,
    w0_clamped: Tally,
    numeric: Tally,
    worst_fe: (f64, String),
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let v = f();
    (v, start.elapsed())
}

fn sweep() -> SweepResults {
    let mut r = SweepResults {
        lemmas: Tally::default(),
        symbolic: Tally::default(),
        consistency: Tally::default(),
        w0_form: Tally::default(),
        w0_clamped: Tally::default(),
        numeric: Tally::default(),
        worst_fe: (0.0, String::new()),
    };
    for (kind, rank) in all_types() {
        let (bundles, build_time) = timed(|| {
            let g = GroupContext::new(build_root_system(kind, rank).unwrap(), GroupCap::default())
                .unwrap();
            (0..rank)
                .map(|p| {
                    (
                        p,
                        z_and_weng(&ZetaContext::new(g.clone(), p).unwrap()).unwrap(),
                    )
                })
                .collect::<BTreeMap<usize, ZetaBundle>>()
        });
        r.lemmas.elapsed += build_time;
        for (&p, b) in &bundles {
            let label = b.rs().label();
            let (c, t) = timed(|| lemma_suite(b, &bundles));
            r.lemmas.absorb(&label, p, &c, t);
            let (c, t) = timed(|| verify_fe_symbolic(b, &bundles));
            r.symbolic.absorb(&label, p, &c, t);
            let (c, t) = timed(|| consistency_checks(b));
            r.consistency.absorb(&label, p, &c, t);
            let (c, t) = timed(|| w0_form_checks(b));
            let (literal, clamped): (Vec<_>, Vec<_>) =
                c.into_iter().partition(|c| c.name == "w0_closed_form");
            r.w0_form.absorb(&label, p, &literal, t);
            r.w0_clamped.absorb(&label, p, &clamped, Duration::ZERO);
            let (sample, t) = timed(|| z_reflection(b, 1000 + p as u64, FE_POINTS, FE_RADIUS));
            let check = match sample {
                Ok(s) => {
                    if s.worst > r.worst_fe.0 || s.worst.is_nan() {
                        r.worst_fe = (
                            s.worst,
                            format!("{label} p={} at s = {:.4}", p + 1, s.worst_at),
                        );
                    }
                    let detail = format!("worst {:.3e} at s = {:.6}", s.worst, s.worst_at);
                    if s.passed(FE_TOLERANCE) {
                        CheckResult::pass("numeric_fe_z", s.points)
                    } else {
                        CheckResult::fail("numeric_fe_z", s.points, detail)
                    }
                }
                Err(e) => CheckResult::fail("numeric_fe_z", 0, e.to_string()),
            };
            r.numeric.absorb(&label, p, &[check], t);
        }
    }
    r
}

fn tally_line(id: u32, what: &str, t: &Tally, budget: Option<Duration>, blocking: bool) -> Line {
    let over = budget.is_some_and(|b| t.elapsed >= b);
    let budget_text = budget.map_or(String::new(), |b| format!(" < {b:?}"));
    let mut text = format!(
        "{what}: {} (type, p) pairs, {} cases, runtime {:.2?}{budget_text}",
        t.pairs, t.cases, t.elapsed
    );
    if let Some(f) = &t.failure {
        text.push_str(&format!("; first failure: {f}"));
    }
    if over {
        text.push_str("; over budget");
    }
    Line {
        id,
        passed: t.failure.is_none() && !over,
        blocking,
        text,
    }
}

fn residue_oracle_line() -> Line {
    let start = Instant::now();
    let mut worst = (0.0f64, String::new());
    let mut failure = None;
    let mut count = 0;
    for (kind, rank) in [
        (Kind::A, 1),
        (Kind::A, 2),
        (Kind::B, 2),
        (Kind::G, 2),
        (Kind::A, 3),
    ] {
        let g =
            GroupContext::new(build_root_system(kind, rank).unwrap(), GroupCap::default()).unwrap();
        for p in 0..rank {
            let ctx = ZetaContext::new(g.clone(), p).unwrap();
            let omega = z_and_weng(&ctx).unwrap().omega;
            for i in 0..ORACLE_POINTS {
                let run = with_generic_point(31 * (p as u64 + 1) + 7919 * i, 2.5, |s| {
                    let o = residue_oracle(&ctx, s, None)?.value;
                    let c = eval_expression(&omega, s, None)?.value;
                    Ok((o - c).norm() / c.norm())
                });
                count += 1;
                match run {
                    Ok((s, rel)) => {
                        if (rel.is_nan() || rel >= ORACLE_TOLERANCE) && failure.is_none() {
                            failure = Some(format!(
                                "{} p={} s = {s:.4}: {rel:.3e}",
                                g.rs().label(),
                                p + 1
                            ));
                        }
                        if rel > worst.0 {
                            worst = (rel, format!("{} p={} s = {s:.4}", g.rs().label(), p + 1));
                        }
                    }
                    Err(e) => failure = failure.or(Some(e.to_string())),
                }
            }
        }
    }
    let elapsed = start.elapsed();
    let over = elapsed >= ORACLE_BUDGET;
    Line {
        id: 6,
        passed: failure.is_none() && !over,
        blocking: true,
        text: format!(
            "residue oracle vs closed-form ω (A1, A2, B2, G2, A3, all p): {count} points, worst relative {:.2e} ({}) < {ORACLE_TOLERANCE:e}, runtime {elapsed:.2?} < {ORACLE_BUDGET:?}{}{}",
            worst.0,
            worst.1,
            failure.map_or(String::new(), |f| format!("; first failure: {f}")),
            if over { "; over budget" } else { "" }
        ),
    }
}

fn special_line() -> Line {
    let rel = |a: Complex64, b: f64| (a - b).norm() / b.abs();
    let classical = [
        (
            "ξ(2) = π/6",
            rel(xi_completed(Complex64::new(2.0, 0.0)).unwrap(), PI / 6.0),
        ),
        (
            "ζ(2) = π²/6",
            rel(zeta(Complex64::new(2.0, 0.0)), PI * PI / 6.0),
        ),
        (
            "ζ(4) = π⁴/90",
            rel(zeta(Complex64::new(4.0, 0.0)), PI.powi(4) / 90.0),
        ),
    ];
    let mut problems: Vec<String> = classical
        .iter()
        .filter(|(_, e)| e.is_nan() || *e >= CLASSICAL_TOLERANCE)
        .map(|(name, e)| format!("{name}: {e:.3e}"))
        .collect();
    let worst_classical = classical.iter().map(|c| c.1).fold(0.0, f64::max);

    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let mut worst = (0.0f64, Complex64::new(0.0, 0.0));
    for _ in 0..XI_SYMMETRY_POINTS {
        let s = Complex64::new(rng.gen_range(-60.0..60.0), rng.gen_range(-50.0..50.0));
        let (a, b) = (xi_via_zeta(s), xi_via_zeta(1.0 - s));
        let e = (a - b).norm() / a.norm();
        if e > worst.0 || e.is_nan() {
            worst = (e, s);
        }
    }
    if worst.0.is_nan() || worst.0 >= XI_SYMMETRY_TOLERANCE {
        problems.push(format!("ξ(1−s) vs ξ(s) at {:.4}: {:.3e}", worst.1, worst.0));
    }
    Line {
        id: 8,
        passed: problems.is_empty(),
        blocking: true,
        text: format!(
            "special values worst {worst_classical:.2e} < {CLASSICAL_TOLERANCE:e}; ξ(1−s) = ξ(s) on {XI_SYMMETRY_POINTS} points in |Re s| ≤ 60, |Im s| ≤ 50, worst {:.2e} < {XI_SYMMETRY_TOLERANCE:e}{}",
            worst.0,
            witness(&problems)
        ),
    }
}

fn scan_line() -> Line {
    let mut parts = Vec::new();
    let mut ok = true;
    for (kind, rank) in [(Kind::A, 1), (Kind::A, 2)] {
        let g =
            GroupContext::new(build_root_system(kind, rank).unwrap(), GroupCap::default()).unwrap();
        for p in 0..rank {
            let b = z_and_weng(&ZetaContext::new(g.clone(), p).unwrap()).unwrap();
            let r = scan_zeros(&normalize(&b), SCAN_T_MAX, SCAN_STEP).unwrap();
            let margin = r
                .off_line
                .iter()
                .map(|m| m.min_abs)
                .fold(f64::INFINITY, f64::min);
            ok &= r.imag_ratio < 1e-8 && margin > 0.0;
            let zeros: Vec<String> = r.zeros.iter().map(|z| format!("{:.4}", z.t_mid)).collect();
            parts.push(format!(
                "{} p={}: zeros at t = [{}], Im/Re {:.1e}, off-line min |value| {margin:.2e}",
                g.rs().label(),
                p + 1,
                zeros.join(", "),
                r.imag_ratio
            ));
        }
    }
    Line {
        id: 9,
        passed: ok,
        blocking: false,
        text: format!(
            "scan to t = {SCAN_T_MAX} step {SCAN_STEP}: {}",
            parts.join("; ")
        ),
    }
}

fn main() -> ExitCode {
    let mut lines = vec![golden_a2()];
    let s = sweep();
    lines.push(tally_line(
        2,
        "lemma suite, all types",
        &s.lemmas,
        Some(LEMMA_BUDGET),
        true,
    ));
    lines.push(tally_line(
        3,
        "symbolic functional equations under ι and Aut(Γ)",
        &s.symbolic,
        None,
        true,
    ));
    lines.push(tally_line(
        4,
        "consistency identities",
        &s.consistency,
        None,
        true,
    ));
    let mut w0 = tally_line(
        5,
        "M_p equals the w0 closed form N_+(k,h-1) - N_+(k,h), literal",
        &s.w0_form,
        None,
        true,
    );
    w0.text.push_str(&format!(
        "; clamped at 0: {}",
        match &s.w0_clamped.failure {
            None => "holds everywhere".to_string(),
            Some(f) => format!("fails at {f}"),
        }
    ));
    lines.push(w0);
    lines.push(residue_oracle_line());
    let mut fe = tally_line(
        7,
        "numeric FE of Z_p, 20 points, |s| ≤ 5",
        &s.numeric,
        None,
        true,
    );
    fe.text.push_str(&format!(
        ", worst {:.2e} ({}) < {FE_TOLERANCE:e}",
        s.worst_fe.0, s.worst_fe.1
    ));
    lines.push(fe);
    lines.push(special_line());
    lines.push(scan_line());

    lines.sort_by_key(|l| l.id);
    for l in &lines {
        let status = match (l.passed, l.blocking) {
            (true, _) => "PASS",
            (false, true) => "FAIL",
            (false, false) => "WARN",
        };
        println!("criterion {} {status}: {}", l.id, l.text);
    }
    let failed: Vec<u32> = lines
        .iter()
        .filter(|l| l.blocking && !l.passed)
        .map(|l| l.id)
        .collect();
    if failed.is_empty() {
        println!("acceptance: all blocking criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
