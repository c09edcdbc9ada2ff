use std::process::Command;

use qplane::calculus::{del, delbar, wedge, CalculusParams, Form};
use qplane::cli::*;
use qplane::qalgebra::AlgebraElement;
use qplane::report::Residual;
use qplane::scalars::{qint, Scalar};
use qplane::Error;

fn alg(src: &str) -> AlgebraElement {
    parse_algebra(src).unwrap_or_else(|e| panic!("{src}: {e}"))
}

#[test]
fn parse_examples() {
    assert_eq!(alg("p[1][1]"), AlgebraElement::x());
    assert_eq!(alg("zs[1]*z[1]"), alg("p[1][1]"));
    assert_eq!(alg("q^4*p[1][1]+q^2*p[2][2]+p[3][3]"), AlgebraElement::one());
    assert_eq!(alg("z[1]*z[2] - q*z[2]*z[1]"), AlgebraElement::zero());
    assert_eq!(
        alg("star(u[3][3])"),
        &(&AlgebraElement::u(1, 1) * &AlgebraElement::u(2, 2))
            - &(&AlgebraElement::u(1, 2) * &AlgebraElement::u(2, 1)).scale(&Scalar::q_pow(1))
    );
    assert_eq!(alg("star(star(u[1][2]*u[2][1]))"), alg("u[1][2]*u[2][1]"));
    assert_eq!(alg("x^3"), AlgebraElement::x().pow(3));
    assert_eq!(alg("qint(3)"), AlgebraElement::scalar(qint(3)));
    assert_eq!(alg("3/2 - 1/2"), AlgebraElement::one());
    assert_eq!(alg("q^-2*q^2"), AlgebraElement::one());
    assert_eq!(alg("i*i + 1"), AlgebraElement::zero());
    assert_eq!(alg("-(x - x)"), AlgebraElement::zero());
}

#[test]
fn parse_forms() {
    let params = CalculusParams::plus();
    let x = AlgebraElement::x();
    let expected: Form = wedge(&del(&x), &delbar(&x), &params).into();
    assert_eq!(parse("wedge(del(x), delbar(x))", &params).unwrap(), Expr::Form(expected.clone()));
    assert_eq!(parse("del(x)*delbar(x)", &params).unwrap(), Expr::Form(expected));
    assert_eq!(parse("del(x) + delbar(x)", &params).unwrap(), Expr::Form([del(&x), delbar(&x)].into_iter().collect()));
    let one_form: Form = del(&x).left_mul(&x).into();
    assert_eq!(parse("x*del(x)", &params).unwrap(), Expr::Form(one_form));
    // del of a constant is the zero form, which is reported as the function 0
    assert_eq!(parse("del(q)", &params).unwrap(), Expr::Algebra(AlgebraElement::zero()));
    // star acts on forms through the graded involution
    let star_dx: Form = qplane::calculus::form_star(&del(&x)).into();
    assert_eq!(parse("star(del(x))", &params).unwrap(), Expr::Form(star_dx));
}

#[test]
fn parse_errors_carry_positions() {
    let params = CalculusParams::plus();
    let pos = |src: &str| match parse(src, &params) {
        Err(Error::Parse { pos, .. }) => pos,
        other => panic!("{src}: expected a parse error, got {other:?}"),
    };
    assert_eq!(pos("foo[1]"), 0);
    assert_eq!(pos("x + bar"), 4);
    assert_eq!(pos("u[4][1]"), 2);
    assert_eq!(pos("z[1] +"), 6);
    assert_eq!(pos("(x"), 2);
    assert_eq!(pos("x )"), 2);
    assert_eq!(pos("x^-1"), 2);
    assert_eq!(pos("del(del(x))"), 3);
    assert_eq!(pos("1/0"), 0);
}

#[test]
fn kahler_suite_passes_with_its_entries() {
    let report = run_suite("kahler", &SuiteConfig::default()).unwrap();
    assert!(report.passed());
    assert_eq!(report.exit_code(), 0);
    for id in ["kahler-form", "kahler-useful"] {
        for s in [1, -1] {
            assert!(report.results.iter().any(|r| r.id == id && r.s_sign == Some(s)), "{id} s = {s}");
        }
    }
}

#[test]
fn instanton_suite_lists_every_curvature_step() {
    let ids: Vec<&str> = suite_steps("instanton").unwrap().into_iter().map(|s| s.0).collect();
    for (id, _) in qplane::instanton::CURVATURE_STEPS.iter().chain(qplane::instanton::CONNECTION_STEPS) {
        assert!(ids.contains(id), "{id}");
    }
    let cfg = SuiteConfig { signs: SignChoice::Minus, step: Some("f12-vanishes".into()), ..Default::default() };
    let report = run_suite("instanton", &cfg).unwrap();
    assert_eq!(report.results.len(), 1);
    assert!(report.passed());
}

#[test]
fn unknown_names_are_configuration_errors() {
    assert!(matches!(run_suite("nope", &SuiteConfig::default()), Err(Error::Config(_))));
    let cfg = SuiteConfig { step: Some("nope".into()), ..Default::default() };
    assert!(matches!(run_suite("core", &cfg), Err(Error::Config(_))));
    assert!(matches!("2".parse::<SignChoice>(), Err(Error::Config(_))));
    assert_eq!("-1".parse::<SignChoice>().unwrap(), SignChoice::Minus);
    assert_eq!("+1".parse::<SignChoice>().unwrap().signs(), &[1]);
}

fn without_timings(json: &str) -> String {
    json.lines().filter(|l| !l.trim_start().starts_with("\"ms\"")).collect::<Vec<_>>().join("\n")
}

#[test]
fn reports_are_deterministic_and_follow_the_schema() {
    let mut cfg = SuiteConfig::default();
    cfg.sampling.seed = 7;
    let a = run_suite("core", &cfg).unwrap().to_json();
    let b = run_suite("core", &cfg).unwrap().to_json();
    assert_eq!(without_timings(&a), without_timings(&b));
    let v: serde_json::Value = serde_json::from_str(&a).unwrap();
    assert_eq!(v["suite"], "core");
    for key in ["s_sign", "monomial_order", "seed", "rule_count"] {
        assert!(v["config"].get(key).is_some(), "{key}");
    }
    assert_eq!(v["config"]["seed"], 7);
    assert_eq!(v["config"]["rule_count"], 36 + FAMILY_BOUND as u64);
    let first = &v["results"][0];
    for key in ["id", "anchor", "status", "residual_terms", "ms"] {
        assert!(first.get(key).is_some(), "{key}");
    }
    assert_eq!(first["status"], "pass");
}

#[test]
fn failing_reports_exit_with_one() {
    let cfg = SuiteConfig { step: Some("q-trace".into()), ..Default::default() };
    let mut report = run_suite("core", &cfg).unwrap();
    assert_eq!(report.exit_code(), 0);
    report.results[0].status = "fail";
    assert_eq!(report.exit_code(), 1);
    assert_eq!(report.failures().count(), 1);
    assert!(report.render_text().contains("0/1 identities hold"));
}

#[test]
fn residuals_are_truncated_to_five_terms() {
    let big =
        AlgebraElement::sum(&(1..=3).flat_map(|i| (1..=3).map(move |j| AlgebraElement::p(i, j))).collect::<Vec<_>>());
    let r = Residual::Algebra(big.clone());
    assert!(r.size() > 5);
    let short = r.render_limited(5);
    assert!(short.ends_with(&format!("({} more terms)", r.size() - 5)), "{short}");
    assert_eq!(r.render(), big.to_string());
    let small = Residual::Algebra(AlgebraElement::u(1, 1));
    assert_eq!(small.render_limited(5), "u11");
}

#[test]
fn every_anchor_is_in_the_readme_table() {
    let readme = std::fs::read_to_string(concat!(env!("CARGO_MANIFEST_DIR"), "/../../README.md")).unwrap();
    for name in SUITE_NAMES {
        for (id, anchor) in suite_steps(name).unwrap() {
            assert!(readme.contains(&format!("{id}: {anchor}")), "{name}/{id} is missing from the anchor table");
        }
    }
}

fn qplane() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qplane"))
}

#[test]
fn binary_exit_codes() {
    let out = qplane().args(["parse", "q^4*p[1][1]+q^2*p[2][2]+p[3][3]"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "(1)");
    assert_eq!(qplane().args(["run", "nope"]).status().unwrap().code(), Some(2));
    assert_eq!(qplane().args(["parse", "foo"]).status().unwrap().code(), Some(2));
    assert_eq!(qplane().args(["run", "kahler", "--s-sign", "0"]).status().unwrap().code(), Some(2));
    assert_eq!(qplane().args(["monopole", "--N", "7"]).status().unwrap().code(), Some(2));
    let status = qplane().args(["run", "kahler"]).env(THREADS_VAR, "0").status().unwrap();
    assert_eq!(status.code(), Some(2));
}

#[test]
fn binary_writes_json_reports() {
    let path = std::env::temp_dir().join(format!("qplane-cli-{}.json", std::process::id()));
    let status = qplane()
        .args(["instanton", "--verify", "--s-sign", "-1", "--step", "f12-vanishes", "--json"])
        .arg(&path)
        .env(THREADS_VAR, "1")
        .status()
        .unwrap();
    assert_eq!(status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).ok();
    assert_eq!(v["suite"], "instanton");
    assert_eq!(v["config"]["s_sign"], "-1");
    assert_eq!(v["results"][0]["id"], "f12-vanishes");
    assert_eq!(v["results"][0]["status"], "pass");

    let out = qplane().args(["monopole", "--N", "-1", "--check", "curvature", "--s-sign", "+1"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("pass monopole/curvature-N=-1 [s=+1]"), "{text}");
    let out =
        qplane().args(["families", "--check", "coaction", "--step", "coaction-x", "--json", "-"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["results"].as_array().unwrap().len(), 2);
}
