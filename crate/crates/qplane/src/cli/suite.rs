//! Suite selection, parallel execution and machine-readable reports.

use std::fmt;
use std::fmt::Write as _;
use std::panic::{catch_unwind, AssertUnwindSafe};
use std::str::FromStr;

use rayon::prelude::*;
use serde::Serialize;

use super::checks::*;
use crate::calculus::CalculusParams;
use crate::families::{family_residuals, FamilyConfig, FAMILY_STEPS};
use crate::instanton::{
    a_function, a_numeric, b_function, b_numeric, verify_connection, verify_curvature, CONNECTION_STEPS,
    CURVATURE_STEPS,
};
use crate::qalgebra::ring;
use crate::report::{Residual, StepReport};
use crate::Error;

/// Largest member `x y^b z` of the cubic rule family whose critical pairs are certified.
pub const FAMILY_BOUND: usize = 8;

/// Environment variable capping the number of worker threads.
pub const THREADS_VAR: &str = "QPLANE_THREADS";

/// Suite names accepted by [`run_suite`], besides `all`.
pub const SUITE_NAMES: [&str; 7] = ["core", "symmetry", "calculus", "kahler", "monopole", "instanton", "families"];

pub const RATIONAL_STEPS: &[(&str, &str)] = &[
    ("rational-a", "a = 0 for F_11^+ = t^2 a eta, as an identity of rational functions of x and t after clearing f"),
    ("rational-b", "b = 0 for F_22^+ = t^2 b eta', as an identity of rational functions of x and t after clearing f"),
];

/// Which values of the sign `s` a run covers.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum SignChoice {
    Plus,
    Minus,
    #[default]
    Both,
}

impl SignChoice {
    pub fn signs(self) -> &'static [i32] {
        match self {
            SignChoice::Plus => &[1],
            SignChoice::Minus => &[-1],
            SignChoice::Both => &[1, -1],
        }
    }
}

impl FromStr for SignChoice {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Error> {
        match s {
            "+1" | "1" | "+" => Ok(SignChoice::Plus),
            "-1" | "-" => Ok(SignChoice::Minus),
            "both" => Ok(SignChoice::Both),
            _ => Err(Error::Config(format!("s-sign must be +1, -1 or both, not {s}"))),
        }
    }
}

impl fmt::Display for SignChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignChoice::Plus => "+1",
            SignChoice::Minus => "-1",
            SignChoice::Both => "both",
        })
    }
}

/// Knobs of the randomized checks.
#[derive(Clone, Debug)]
pub struct Sampling {
    pub seed: u64,
    pub samples: usize,
    /// Overrides the per-check default degree bound.
    pub max_degree: Option<usize>,
}

impl Default for Sampling {
    fn default() -> Self {
        Sampling { seed: 1, samples: 100, max_degree: None }
    }
}

#[derive(Clone, Debug, Default)]
pub struct SuiteConfig {
    pub signs: SignChoice,
    pub sampling: Sampling,
    /// Run only this step.
    pub step: Option<String>,
    /// Render residuals in full instead of their first terms.
    pub verbose: bool,
    /// Worker cap; all cores when unset.
    pub threads: Option<usize>,
}

impl SuiteConfig {
    /// Reads the worker cap from [`THREADS_VAR`].
    pub fn with_env_threads(mut self) -> Result<Self, Error> {
        if let Ok(v) = std::env::var(THREADS_VAR) {
            let n: usize = v.trim().parse().map_err(|_| Error::Config(format!("{THREADS_VAR}={v} is not a count")))?;
            if n == 0 {
                return Err(Error::Config(format!("{THREADS_VAR} must be positive")));
            }
            self.threads = Some(n);
        }
        Ok(self)
    }
}

/// Steps of a suite, in report order.
pub fn suite_steps(name: &str) -> Result<Vec<(&'static str, &'static str)>, Error> {
    let list: Vec<&[(&str, &str)]> = match name {
        "core" => vec![CORE_STEPS],
        "symmetry" => vec![SYMMETRY_STEPS],
        "calculus" => vec![CALCULUS_STEPS],
        "kahler" => vec![KAHLER_STEPS],
        "monopole" => vec![MONOPOLE_STEPS],
        "instanton" => vec![CURVATURE_STEPS, CONNECTION_STEPS, RATIONAL_STEPS],
        "families" => vec![FAMILY_STEPS],
        _ => return Err(unknown_suite(name)),
    };
    Ok(list.concat())
}

fn unknown_suite(name: &str) -> Error {
    Error::Config(format!("unknown suite {name}; expected one of {} or all", SUITE_NAMES.join(", ")))
}

/// Suites whose identities involve the calculus constants and run once per sign.
fn sign_dependent(name: &str) -> bool {
    !matches!(name, "core" | "symmetry")
}

/// One row of a report.
#[derive(Clone, Debug, Serialize)]
pub struct ResultEntry {
    pub id: String,
    pub anchor: String,
    pub status: &'static str,
    pub residual_terms: usize,
    pub ms: u128,
    pub suite: String,
    pub s_sign: Option<i32>,
    /// Rendering of the first nonzero residual or the error.
    pub residual: String,
}

impl ResultEntry {
    pub fn passed(&self) -> bool {
        self.status == "pass"
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Fingerprint {
    pub s_sign: String,
    pub monomial_order: String,
    pub seed: u64,
    pub rule_count: usize,
    pub samples: usize,
    pub max_degree: Option<usize>,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub config: Fingerprint,
    pub results: Vec<ResultEntry>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.results.iter().all(ResultEntry::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ResultEntry> {
        self.results.iter().filter(|r| !r.passed())
    }

    /// `0` when every identity holds, `1` otherwise.
    pub fn exit_code(&self) -> i32 {
        if self.passed() {
            0
        } else {
            1
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("reports serialize")
    }

    /// One line per identity, residuals under failures, and a summary.
    pub fn render_text(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let sign = r.s_sign.map(|s| format!(" [s={s:+}]")).unwrap_or_default();
            let _ = writeln!(out, "{} {}/{}{} ({} ms)", r.status, r.suite, r.id, sign, r.ms);
            if !r.passed() {
                let _ = writeln!(out, "    {} residual terms: {}", r.residual_terms, r.residual);
            }
        }
        let passed = self.results.iter().filter(|r| r.passed()).count();
        let _ = writeln!(out, "{}: {passed}/{} identities hold", self.suite, self.results.len());
        out
    }
}

enum Job {
    Step {
        suite: &'static str,
        sign: Option<i32>,
        id: &'static str,
        anchor: &'static str,
    },
    /// The curvature, connection and rational steps for one sign, sharing their pipelines.
    Instanton {
        sign: i32,
        steps: Vec<(&'static str, &'static str)>,
    },
}

fn params_for(sign: i32) -> CalculusParams {
    if sign > 0 {
        CalculusParams::plus()
    } else {
        CalculusParams::minus()
    }
}

fn rational_residuals(id: &str) -> Result<Vec<Residual>, Error> {
    let (g, num): (_, fn(f64, f64, f64) -> f64) = match id {
        "rational-a" => (a_function(), a_numeric),
        "rational-b" => (b_function(), b_numeric),
        _ => return Err(Error::Config(format!("unknown step {id}"))),
    };
    let points = [(1.1, 0.3, 0.2), (0.9, 0.7, 0.5), (1.3, 0.2, 0.1), (1.05, 1.1, 0.4)];
    let bad: Vec<String> = points
        .iter()
        .map(|&(s0, th, x0)| (s0, th, x0, num(s0, th, x0)))
        .filter(|p| p.3.abs() > 1e-10)
        .map(|(s0, th, x0, v)| format!("{v} at q^{{1/2}} = {s0}, theta = {th}, x = {x0}"))
        .collect();
    Ok(vec![Residual::Fun(g), Residual::Failures(bad.len(), bad.first().cloned().unwrap_or_default())])
}

fn step_report(suite: &str, sign: Option<i32>, id: &str, anchor: &str, cfg: &SuiteConfig) -> StepReport {
    let params = params_for(sign.unwrap_or(1));
    let sampling = &cfg.sampling;
    StepReport::run(id, anchor, || match suite {
        "core" => core_residuals(id, sampling),
        "symmetry" => symmetry_residuals(id, sampling),
        "calculus" => calculus_residuals(id, &params, sampling),
        "kahler" => kahler_residuals(id, &params),
        "monopole" => monopole_residuals(id, &params),
        "families" => {
            let fc = FamilyConfig {
                seed: sampling.seed,
                samples: sampling.samples,
                max_degree: sampling.max_degree.unwrap_or(FamilyConfig::default().max_degree),
            };
            family_residuals(id, &params, &fc)
        }
        _ => Err(unknown_suite(suite)),
    })
}

fn instanton_reports(sign: i32, steps: &[(&str, &str)]) -> Vec<StepReport> {
    let params = params_for(sign);
    let wants = |table: &[(&str, &str)]| steps.iter().any(|s| table.contains(s));
    let only =
        |table: &[(&str, &str)]| if steps.len() == 1 && table.contains(&steps[0]) { Some(steps[0].0) } else { None };
    let mut out = Vec::new();
    for (table, verify) in [
        (CURVATURE_STEPS, verify_curvature as fn(&CalculusParams, Option<&str>) -> Result<Vec<StepReport>, Error>),
        (CONNECTION_STEPS, verify_connection),
    ] {
        if wants(table) {
            match verify(&params, only(table)) {
                Ok(rs) => out.extend(rs),
                Err(e) => out.extend(table.iter().map(|(id, anchor)| StepReport::run(id, anchor, || Err(e.clone())))),
            }
        }
    }
    for (id, anchor) in RATIONAL_STEPS.iter().filter(|s| steps.contains(s)) {
        out.push(StepReport::run(id, anchor, || rational_residuals(id)));
    }
    out
}

fn panic_message(p: Box<dyn std::any::Any + Send>) -> String {
    p.downcast_ref::<&str>()
        .map(|s| s.to_string())
        .or_else(|| p.downcast_ref::<String>().cloned())
        .unwrap_or_else(|| "unknown panic".into())
}

fn run_job(job: &Job, cfg: &SuiteConfig) -> Vec<(&'static str, Option<i32>, StepReport)> {
    let guarded = |suite: &'static str,
                   sign: Option<i32>,
                   steps: &[(&'static str, &'static str)],
                   f: &dyn Fn() -> Vec<StepReport>| {
        match catch_unwind(AssertUnwindSafe(f)) {
            Ok(rs) => rs.into_iter().map(|r| (suite, sign, r)).collect::<Vec<_>>(),
            Err(p) => {
                let msg = format!("panic: {}", panic_message(p));
                steps
                    .iter()
                    .map(|(id, anchor)| (suite, sign, StepReport::run(id, anchor, || Err(Error::Domain(msg.clone())))))
                    .collect()
            }
        }
    };
    match job {
        Job::Step { suite, sign, id, anchor } => {
            guarded(suite, *sign, &[(*id, *anchor)], &|| vec![step_report(suite, *sign, id, anchor, cfg)])
        }
        Job::Instanton { sign, steps } => guarded("instanton", Some(*sign), steps, &|| instanton_reports(*sign, steps)),
    }
}

/// Runs a suite (or `all`) and assembles its report. Failing identities are
/// recorded in the report; only configuration problems are errors.
pub fn run_suite(name: &str, cfg: &SuiteConfig) -> Result<SuiteReport, Error> {
    let names: Vec<&'static str> = if name == "all" {
        SUITE_NAMES.to_vec()
    } else {
        vec![SUITE_NAMES.iter().copied().find(|n| *n == name).ok_or_else(|| unknown_suite(name))?]
    };
    let mut jobs = Vec::new();
    let mut matched = false;
    for &suite in &names {
        let steps: Vec<_> =
            suite_steps(suite)?.into_iter().filter(|(id, _)| cfg.step.as_deref().is_none_or(|s| s == *id)).collect();
        matched |= !steps.is_empty();
        let signs: Vec<Option<i32>> =
            if sign_dependent(suite) { cfg.signs.signs().iter().map(|&s| Some(s)).collect() } else { vec![None] };
        for sign in signs {
            if suite == "instanton" {
                if !steps.is_empty() {
                    jobs.push(Job::Instanton { sign: sign.unwrap_or(1), steps: steps.clone() });
                }
            } else {
                jobs.extend(steps.iter().map(|&(id, anchor)| Job::Step { suite, sign, id, anchor }));
            }
        }
    }
    if let (Some(step), false) = (&cfg.step, matched) {
        return Err(Error::Config(format!("no step {step} in suite {name}")));
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.threads.unwrap_or(0))
        .build()
        .map_err(|e| Error::Config(format!("worker pool: {e}")))?;
    let outputs: Vec<_> = pool.install(|| jobs.par_iter().map(|j| run_job(j, cfg)).collect());
    let results = outputs
        .into_iter()
        .flatten()
        .map(|(suite, s_sign, r)| ResultEntry {
            status: if r.passed { "pass" } else { "fail" },
            residual: if cfg.verbose { r.full_detail() } else { r.detail.clone() },
            id: r.id,
            anchor: r.anchor,
            residual_terms: r.residual_terms,
            ms: r.ms,
            suite: suite.into(),
            s_sign,
        })
        .collect();
    let system = ring().system();
    let config = Fingerprint {
        s_sign: cfg.signs.to_string(),
        monomial_order: system.order().describe(),
        seed: cfg.sampling.seed,
        rule_count: system.check_confluence(FAMILY_BOUND)?.rule_count(),
        samples: cfg.sampling.samples,
        max_degree: cfg.sampling.max_degree,
    };
    Ok(SuiteReport { suite: name.into(), config, results })
}
