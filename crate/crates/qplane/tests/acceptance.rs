//! One pass/fail line per acceptance criterion, built from the suite runner.

use std::process::ExitCode;

use qplane::cli::{core_residuals, run_suite, suite_steps, ResultEntry, Sampling, SuiteConfig, RATIONAL_STEPS};
use qplane::instanton::{CONNECTION_STEPS, CURVATURE_STEPS};

/// Suites whose steps do not depend on the sign s.
const SIGN_FREE: [&str; 2] = ["core", "symmetry"];

struct Criterion {
    number: u32,
    title: &'static str,
    steps: Vec<(&'static str, &'static str)>,
}

fn pick(suite: &'static str, keep: impl Fn(&str) -> bool) -> Vec<(&'static str, &'static str)> {
    suite_steps(suite).expect("known suite").into_iter().map(|s| (suite, s.0)).filter(|s| keep(s.1)).collect()
}

fn named(suite: &'static str, names: &[&str]) -> Vec<(&'static str, &'static str)> {
    pick(suite, |id| names.contains(&id))
}

fn criteria() -> Vec<Criterion> {
    let mut leibniz = named("monopole", &["left-leibniz", "conjugation-bridge"]);
    leibniz.extend(named("calculus", &["leibniz"]));
    let curvature: Vec<&str> = CURVATURE_STEPS.iter().map(|s| s.0).collect();
    let connection: Vec<&str> = CONNECTION_STEPS.iter().map(|s| s.0).collect();
    [
        (
            "confluence and the quadratic-only negative control",
            named("core", &["confluence", "cubic-negative-control"]),
        ),
        (
            "orthogonality identities and the q-trace",
            pick("core", |id| id.starts_with("orthogonality") || id == "q-trace"),
        ),
        (
            "classical oracle on SU(3) and the determinant",
            named("core", &["classical-oracle", "classical-determinant"]),
        ),
        ("Kahler form and the useful identity", named("kahler", &["kahler-form", "kahler-useful"])),
        ("Hodge square and eigenvalues", named("calculus", &["hodge-square", "hodge-eigenvalues"])),
        ("monopole curvature for N in -3..3", pick("monopole", |id| id.starts_with("curvature-N="))),
        ("Leibniz laws and the conjugation bridge", leibniz),
        ("instanton curvature, every step", named("instanton", &curvature)),
        ("connection one-form, core identity and the t = 0 limit", named("instanton", &connection)),
        ("families: U W, displays, sphere, U(1) and gauge", pick("families", |_| true)),
        ("a = 0 and b = 0", named("instanton", &RATIONAL_STEPS.iter().map(|s| s.0).collect::<Vec<_>>())),
    ]
    .into_iter()
    .zip(1..)
    .map(|((title, steps), number)| Criterion { number, title, steps })
    .collect()
}

/// Criterion 2 counts identities rather than steps: nine (a, b) pairs per orthogonality family.
fn orthogonality_identities() -> Result<usize, String> {
    let mut holding = 0;
    let mut total = 0;
    for (_, id) in pick("core", |id| id.starts_with("orthogonality")) {
        let residuals = core_residuals(id, &Sampling::default()).map_err(|e| e.to_string())?;
        total += residuals.len();
        holding += residuals.iter().filter(|r| r.is_zero()).count();
    }
    if total == 36 && holding == total {
        Ok(holding)
    } else {
        Err(format!("{holding} of {total} orthogonality identities hold, expected 36 of 36"))
    }
}

fn judge(c: &Criterion, results: &[ResultEntry]) -> Result<usize, String> {
    if c.steps.is_empty() {
        return Err("no steps selected".into());
    }
    let mut checks = 0;
    let mut failed = Vec::new();
    for &(suite, id) in &c.steps {
        let want: &[Option<i32>] = if SIGN_FREE.contains(&suite) { &[None] } else { &[Some(1), Some(-1)] };
        for &s in want {
            let tag = format!("{suite}/{id}{}", s.map(|s| format!(" [s={s:+}]")).unwrap_or_default());
            match results.iter().find(|r| r.suite == suite && r.id == id && r.s_sign == s) {
                Some(r) if r.status == "pass" => checks += 1,
                Some(_) => failed.push(tag),
                None => failed.push(format!("{tag} did not run")),
            }
        }
    }
    if failed.is_empty() {
        Ok(checks)
    } else {
        Err(failed.join(", "))
    }
}

fn main() -> ExitCode {
    let cfg = SuiteConfig::default().with_env_threads().expect("thread count");
    let mut results = Vec::new();
    for suite in ["core", "calculus", "kahler", "monopole", "instanton", "families"] {
        match run_suite(suite, &cfg) {
            Ok(report) => results.extend(report.results),
            Err(e) => {
                println!("FAIL suite {suite}: {e}");
                return ExitCode::FAILURE;
            }
        }
    }
    let mut ok = true;
    for c in criteria() {
        let verdict = judge(&c, &results).and_then(|n| match c.number {
            2 => orthogonality_identities().map(|k| format!("{n} checks, {k} orthogonality identities")),
            _ => Ok(format!("{n} checks")),
        });
        match verdict {
            Ok(detail) => println!("pass criterion {:>2}: {} ({detail})", c.number, c.title),
            Err(e) => {
                ok = false;
                println!("FAIL criterion {:>2}: {} ({e})", c.number, c.title);
            }
        }
    }
    if ok {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
