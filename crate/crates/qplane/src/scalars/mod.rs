//! The exact coefficient tower and the twisted function field.

mod fun;
mod laurent;
mod qnum;
mod scalar;

pub use fun::FunScalar;
pub use laurent::Laurent;
pub use qnum::{qfactorial, qint, qtrinomial, qtrinomial_laurent};
pub use scalar::{Den, Mono, Scalar, Q};

/// Render `q^{n/2}`; empty for `n = 0`.
pub(crate) fn render_q_half(n: i32) -> String {
    match n {
        0 => String::new(),
        2 => "q".to_string(),
        n if n > 0 && n % 2 == 0 => format!("q^{}", n / 2),
        n if n % 2 == 0 => format!("q^{{{}}}", n / 2),
        n => format!("q^{{{n}/2}}"),
    }
}

pub(crate) fn render_q_quarter(n: i32) -> String {
    if n % 2 == 0 {
        return render_q_half(n / 2);
    }
    format!("q^{{{n}/4}}")
}
