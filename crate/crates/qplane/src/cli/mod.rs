//! Expression parser, verification-suite runner and machine-readable reports.

mod checks;
mod parse;
mod suite;

pub use checks::{
    core_residuals, curvature_step_n, CALCULUS_STEPS, CORE_STEPS, KAHLER_STEPS, MONOPOLE_STEPS, SYMMETRY_STEPS,
};
pub use parse::{parse, parse_algebra, Expr};
pub use suite::{
    run_suite, suite_steps, Fingerprint, ResultEntry, Sampling, SignChoice, SuiteConfig, SuiteReport, FAMILY_BOUND,
    RATIONAL_STEPS, SUITE_NAMES, THREADS_VAR,
};
