use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("bidegree mismatch: {0}")]
    Bidegree(String),
    #[error("inhomogeneous x-grade: {0}")]
    Grade(String),
    #[error("completion exceeded the rule budget of {budget} ({rules} rules, {pending} pairs pending)")]
    Budget { budget: usize, rules: usize, pending: usize },
    #[error("parse error at {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("configuration error: {0}")]
    Config(String),
}
