//! Residuals and per-identity reports shared by the verification suites.

use std::time::Instant;

use serde::Serialize;

use crate::calculus::FormElement;
use crate::instanton::MixedElement;
use crate::qalgebra::AlgebraElement;
use crate::scalars::FunScalar;
use crate::symmetry::TensorElement;
use crate::Error;

/// A quantity that must vanish.
#[derive(Clone, Debug)]
pub enum Residual {
    Algebra(AlgebraElement),
    Form(FormElement),
    Mixed(MixedElement),
    Fun(FunScalar),
    Tensor(TensorElement),
    /// Number of failed membership or equality tests, with a description of the first.
    Failures(usize, String),
}

impl Residual {
    pub fn is_zero(&self) -> bool {
        match self {
            Residual::Algebra(a) => a.is_zero(),
            Residual::Form(w) => w.is_zero(),
            Residual::Mixed(m) => m.is_zero(),
            Residual::Fun(g) => g.is_zero(),
            Residual::Tensor(t) => t.is_zero(),
            Residual::Failures(n, _) => *n == 0,
        }
    }

    /// Number of surviving terms.
    pub fn size(&self) -> usize {
        match self {
            Residual::Algebra(a) => a.len(),
            Residual::Form(w) => w.size(),
            Residual::Mixed(m) => m.residual_terms(),
            Residual::Fun(g) => g.size(),
            Residual::Tensor(t) => t.len(),
            Residual::Failures(n, _) => *n,
        }
    }

    /// Full rendering.
    pub fn render(&self) -> String {
        self.render_limited(usize::MAX)
    }

    /// Rendering of the first `limit` terms, with a count of the rest.
    pub fn render_limited(&self, limit: usize) -> String {
        let mut budget = limit;
        let body = match self {
            Residual::Algebra(a) => truncate_algebra(a, &mut budget).to_string(),
            Residual::Form(w) => truncate_form(w, &mut budget).to_string(),
            Residual::Mixed(m) => {
                m.cleared().iter().map(|w| truncate_form(w, &mut budget).to_string()).collect::<Vec<_>>().join(" | ")
            }
            Residual::Tensor(t) => {
                let kept: Vec<_> = t.terms().iter().take(budget).cloned().collect();
                budget -= kept.len();
                TensorElement::from_terms(kept).to_string()
            }
            Residual::Fun(g) => return g.to_string(),
            Residual::Failures(_, s) => return s.clone(),
        };
        let shown = limit - budget;
        let total = self.size();
        if shown < total {
            format!("{body} ... ({} more terms)", total - shown)
        } else {
            body
        }
    }
}

fn truncate_algebra(a: &AlgebraElement, budget: &mut usize) -> AlgebraElement {
    if a.len() <= *budget {
        *budget -= a.len();
        return a.clone();
    }
    let mut terms = a.terms().to_vec();
    terms.sort_by(|x, y| y.0.deglex(x.0));
    terms.truncate(*budget);
    *budget = 0;
    AlgebraElement::from_terms(terms)
}

fn truncate_form(w: &FormElement, budget: &mut usize) -> FormElement {
    let comps = w.comps().iter().map(|c| truncate_algebra(c, budget)).collect();
    FormElement::new(w.bidegree(), comps).expect("same shape")
}

impl From<AlgebraElement> for Residual {
    fn from(a: AlgebraElement) -> Self {
        Residual::Algebra(a)
    }
}

impl From<FormElement> for Residual {
    fn from(w: FormElement) -> Self {
        Residual::Form(w)
    }
}

impl From<MixedElement> for Residual {
    fn from(m: MixedElement) -> Self {
        Residual::Mixed(m)
    }
}

impl From<FunScalar> for Residual {
    fn from(g: FunScalar) -> Self {
        Residual::Fun(g)
    }
}

impl From<TensorElement> for Residual {
    fn from(t: TensorElement) -> Self {
        Residual::Tensor(t)
    }
}

/// Number of residual terms shown in a report unless the full rendering is requested.
pub const DETAIL_TERMS: usize = 5;

/// Outcome of one verified identity.
#[derive(Clone, Debug, Serialize)]
pub struct StepReport {
    pub id: String,
    pub anchor: String,
    pub passed: bool,
    pub residual_terms: usize,
    /// First five terms of the first nonzero residual, or the error message.
    pub detail: String,
    pub ms: u128,
    /// The first nonzero residual in full.
    #[serde(skip)]
    pub residual: Option<Residual>,
}

impl StepReport {
    /// Evaluates the residuals of one identity; errors count as failures.
    pub fn run(id: &str, anchor: &str, f: impl FnOnce() -> Result<Vec<Residual>, Error>) -> StepReport {
        let start = Instant::now();
        let (passed, residual_terms, detail, residual) = match f() {
            Ok(rs) => {
                let mut bad = rs.into_iter().filter(|r| !r.is_zero()).peekable();
                let first = bad.peek().cloned();
                let size =
                    first.iter().map(Residual::size).sum::<usize>() + bad.skip(1).map(|r| r.size()).sum::<usize>();
                let detail = first.as_ref().map(|r| r.render_limited(DETAIL_TERMS)).unwrap_or_default();
                (first.is_none(), size, detail, first)
            }
            Err(e) => (false, 0, e.to_string(), None),
        };
        let ms = start.elapsed().as_millis();
        StepReport { id: id.into(), anchor: anchor.into(), passed, residual_terms, detail, ms, residual }
    }

    /// The full rendering of the first nonzero residual, or the error message.
    pub fn full_detail(&self) -> String {
        self.residual.as_ref().map(Residual::render).unwrap_or_else(|| self.detail.clone())
    }
}
