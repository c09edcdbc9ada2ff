use std::cmp::Ordering;
use std::collections::HashMap;
use std::sync::Arc;

use serde::Serialize;

use super::form::Bidegree;
use super::table::{build_tables, Table};
use crate::scalars::Scalar;
use crate::Error;

/// Structure constants of the calculus: the sign `s`, `c_0..c_4` and the orientation `lambda`.
#[derive(Clone, Serialize)]
pub struct CalculusParams {
    s_sign: i32,
    c: [Scalar; 5],
    lambda: i32,
    #[serde(skip)]
    tables: Arc<HashMap<(Bidegree, Bidegree), Table>>,
}

impl std::fmt::Debug for CalculusParams {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("CalculusParams")
            .field("s_sign", &self.s_sign)
            .field("c", &self.c)
            .field("lambda", &self.lambda)
            .finish()
    }
}

impl CalculusParams {
    /// Validates `c_0 = c_4`, the magnitude conditions making the Hodge star square to
    /// `(-1)^k`, `|lambda| = 1` and `c_0 c_3 > 0`.
    pub fn new(s_sign: i32, c: [Scalar; 5], lambda: i32) -> Result<Self, Error> {
        if s_sign != 1 && s_sign != -1 {
            return Err(Error::Config(format!("s must be +1 or -1, got {s_sign}")));
        }
        if lambda != 1 && lambda != -1 {
            return Err(Error::Config(format!("lambda must be +1 or -1, got {lambda}")));
        }
        if c[0] != c[4] {
            return Err(Error::Config("c0 and c4 differ: not a *-calculus".into()));
        }
        if c.iter().any(|x| x.inverse().is_none()) {
            return Err(Error::Config("structure constants must be invertible monomials".into()));
        }
        let two = Scalar::two();
        let c0sq = &c[0] * &c[0];
        // |c1|^4 [2] = q^{-s} c0^2, |c2|^4 [2] = q^{3s} c0^2, c3^2 = [2]
        let ok1 = &c[1].pow(4) * &two == &Scalar::q_pow(-s_sign) * &c0sq;
        let ok2 = &c[2].pow(4) * &two == &Scalar::q_pow(3 * s_sign) * &c0sq;
        let ok3 = &c[3] * &c[3] == two;
        if !(ok1 && ok2 && ok3) {
            return Err(Error::Config("parameters violate the Hodge normalization conditions".into()));
        }
        if (&c[0] * &c[3]).sign_near_classical() != Ordering::Greater {
            return Err(Error::Config("c0 c3 must be positive".into()));
        }
        let tables = Arc::new(build_tables(s_sign, &c));
        Ok(CalculusParams { s_sign, c, lambda, tables })
    }

    /// The default instantiation for `s = +-1`, with `lambda = -1`:
    /// `c_0 = c_3 = c_4 = [2]^{1/2}`, `c_1 = q^{-s/4}`, `c_2 = q^{3s/4}`.
    pub fn default_for(s_sign: i32) -> Result<Self, Error> {
        let r = Scalar::r();
        let c = [r.clone(), Scalar::q_quarter(-s_sign), Scalar::q_quarter(3 * s_sign), r.clone(), r];
        Self::new(s_sign, c, -1)
    }

    /// Whether `c_0^2 = [2]`; otherwise the Hodge star does not square to `1` on `(2,0)` and `(0,2)`.
    pub fn is_hodge_normalized(&self) -> bool {
        &self.c[0] * &self.c[0] == Scalar::two()
    }

    pub fn plus() -> Self {
        Self::default_for(1).expect("default parameters")
    }

    pub fn minus() -> Self {
        Self::default_for(-1).expect("default parameters")
    }

    pub fn s_sign(&self) -> i32 {
        self.s_sign
    }

    pub fn c(&self, k: usize) -> &Scalar {
        &self.c[k]
    }

    pub fn lambda(&self) -> i32 {
        self.lambda
    }

    /// `sign(c_0 c_3)`; always `+1` for validated parameters.
    pub fn sign_c0c3(&self) -> i32 {
        1
    }

    /// `q^{3s/2}`, the recurring orientation-dependent constant.
    pub fn q_3s_half(&self) -> Scalar {
        Scalar::q_half(3 * self.s_sign)
    }

    pub(crate) fn table(&self, a: Bidegree, b: Bidegree) -> Option<&Table> {
        self.tables.get(&(a, b))
    }
}
