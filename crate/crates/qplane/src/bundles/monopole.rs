use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use rayon::prelude::*;
use serde::Serialize;

use crate::calculus::{d, real_star, wedge_forms, Bidegree, CalculusParams, Form, FormElement};
use crate::qalgebra::AlgebraElement;
use crate::scalars::{qint, qtrinomial, Scalar};
use crate::symmetry::{act_right, UqGen, UqWord};
use crate::Error;

/// Largest `|N|` accepted by [`monopole`].
pub const DEFAULT_BOUND: i32 = 3;

/// The isometry `Psi_N` and projection `P_N = Psi_N Psi_N^dag` of the line bundle `L_N`.
///
/// Entries are stored without their square-root factors: `psi_a = sqrt(w_a) e_a` with
/// `w_a = [j,k,l]!`, and `P_ab = sqrt(w_a w_b) Q_ab` with `Q_ab = e_a e_b^*`. Every
/// identity checked here pairs the roots, so only the weights `w_a` appear.
#[derive(Clone, Debug, Serialize)]
pub struct MonopoleData {
    n: i32,
    index: Vec<(u32, u32, u32)>,
    weights: Vec<Scalar>,
    entries: Vec<AlgebraElement>,
    #[serde(skip)]
    q: Vec<Vec<AlgebraElement>>,
}

fn z_monomial(j: u32, k: u32, l: u32) -> AlgebraElement {
    let mut out = AlgebraElement::one();
    for (i, e) in [(1u8, j), (2, k), (3, l)] {
        for _ in 0..e {
            out = &out * &AlgebraElement::z(i);
        }
    }
    out
}

/// Triples `(j,k,l)` with `j+k+l = n` in descending lexicographic order.
pub fn index_set(n: u32) -> Vec<(u32, u32, u32)> {
    let mut out = Vec::new();
    for j in (0..=n).rev() {
        for k in (0..=n - j).rev() {
            out.push((j, k, n - j - k));
        }
    }
    out
}

impl MonopoleData {
    /// Builds `Psi_N` and certifies `Psi^dag Psi = 1` and `Psi <| K2 = q^{-N/2} Psi`.
    /// The projection identities follow from these and are checked by
    /// [`MonopoleData::check_projection`].
    pub fn build(n: i32, bound: i32) -> Result<Self, Error> {
        if n.abs() > bound {
            return Err(Error::Config(format!("|N| = {} exceeds the bound {bound}", n.abs())));
        }
        let index = index_set(n.unsigned_abs());
        let weights: Vec<Scalar> = index.iter().map(|&(j, k, l)| qtrinomial(j, k, l)).collect();
        let entries: Vec<AlgebraElement> = index
            .iter()
            .map(|&(j, k, l)| {
                let m = z_monomial(j, k, l);
                if n > 0 {
                    m.star()
                } else {
                    m.scale(&Scalar::q_pow(-n + j as i32 - l as i32))
                }
            })
            .collect();
        let q: Vec<Vec<AlgebraElement>> =
            entries.par_iter().map(|a| entries.iter().map(|b| a * &b.star()).collect()).collect();
        let data = MonopoleData { n, index, weights, entries, q };
        data.certify()?;
        Ok(data)
    }

    fn certify(&self) -> Result<(), Error> {
        let norm = self.psi_dag_psi();
        if norm != AlgebraElement::one() {
            return Err(Error::Domain(format!(
                "Psi_{}^dag Psi_{} - 1 = {}",
                self.n,
                self.n,
                &norm - &AlgebraElement::one()
            )));
        }
        let k2 = UqWord::single(UqGen::K2);
        let w = Scalar::q_half(-self.n);
        if self.entries.iter().any(|e| act_right(&k2, e) != e.scale(&w)) {
            return Err(Error::Domain(format!("Psi_{} <| K2 is not q^(-N/2) Psi", self.n)));
        }
        Ok(())
    }

    /// Checks `P = P^dag` and `P^2 = P` entrywise on normal forms. The cost grows quickly
    /// with `|N|`: a few minutes for `|N| = 3` on one core.
    pub fn check_projection(&self) -> Result<(), Error> {
        let r = self.rank();
        let asym = (0..r).into_par_iter().find_any(|&a| (a..r).any(|b| self.q[a][b].star() != self.q[b][a]));
        if let Some(a) = asym {
            return Err(Error::Domain(format!("P_{} is not self-adjoint in row {a}", self.n)));
        }
        let bad = (0..r).into_par_iter().find_any(|&a| {
            (0..r).any(|c| {
                let terms: Vec<AlgebraElement> =
                    (0..r).map(|b| (&self.q[a][b] * &self.q[b][c]).scale(&self.weights[b])).collect();
                AlgebraElement::sum(&terms) != self.q[a][c]
            })
        });
        match bad {
            Some(a) => Err(Error::Domain(format!("P_{} is not idempotent in row {a}", self.n))),
            None => Ok(()),
        }
    }

    pub fn n(&self) -> i32 {
        self.n
    }

    /// `r_N = (|N|+1)(|N|+2)/2`
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    pub fn index(&self) -> &[(u32, u32, u32)] {
        &self.index
    }

    /// The squared root factors `[j,k,l]!`.
    pub fn weights(&self) -> &[Scalar] {
        &self.weights
    }

    /// `e_a` with `psi_a = sqrt(w_a) e_a`.
    pub fn entries(&self) -> &[AlgebraElement] {
        &self.entries
    }

    /// `Q_ab = e_a e_b^*`, so that `P_ab = sqrt(w_a w_b) Q_ab`.
    pub fn projection_entry(&self, a: usize, b: usize) -> &AlgebraElement {
        &self.q[a][b]
    }

    pub fn psi_dag_psi(&self) -> AlgebraElement {
        let terms: Vec<AlgebraElement> =
            self.entries.iter().zip(&self.weights).map(|(e, w)| (&e.star() * e).scale(w)).collect();
        AlgebraElement::sum(&terms)
    }

    /// The generators `e_a^*` of `L_N` as a right module (`Psi_N e_a^*` is a column of `P_N`
    /// up to a root factor).
    pub fn generators(&self) -> Vec<AlgebraElement> {
        self.entries.iter().map(|e| e.star()).collect()
    }
}

/// Cached [`MonopoleData`] for `|N| <= DEFAULT_BOUND`.
pub fn monopole(n: i32) -> Result<Arc<MonopoleData>, Error> {
    static CACHE: OnceLock<Mutex<HashMap<i32, Arc<MonopoleData>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(m) = cache.lock().unwrap().get(&n) {
        return Ok(m.clone());
    }
    let m = Arc::new(MonopoleData::build(n, DEFAULT_BOUND)?);
    cache.lock().unwrap().insert(n, m.clone());
    Ok(m)
}

fn sum_forms(items: impl IntoIterator<Item = Form>) -> Form {
    items.into_iter().flat_map(|f| f.parts().cloned().collect::<Vec<_>>()).collect()
}

/// `nabla_N eta = Psi_N^dag d(Psi_N eta)` for a section `eta` of `L_N`.
pub fn nabla(n: i32, eta: &AlgebraElement) -> Result<Form, Error> {
    let m = monopole(n)?;
    Ok(sum_forms(m.entries.iter().zip(&m.weights).map(|(e, w)| d(&(e * eta)).left_mul(&e.star()).scale(w))))
}

/// `nabla^l_N eta = d(eta Psi_{-N}^dag) Psi_{-N}` for a section `eta` of `L_N`.
pub fn nabla_left(n: i32, eta: &AlgebraElement) -> Result<Form, Error> {
    let m = monopole(-n)?;
    Ok(sum_forms(m.entries.iter().zip(&m.weights).map(|(e, w)| d(&(eta * &e.star())).right_mul(e).scale(w))))
}

/// `q^{N-1}[N]` for `N >= 0` and `q^{N+3s/2+2}[N]` for `N < 0`.
pub fn curvature_factor(n: i32, s_sign: i32) -> Scalar {
    let qn = qint(n as i64);
    if n >= 0 {
        &Scalar::q_pow(n - 1) * &qn
    } else {
        &Scalar::q_half(2 * n + 3 * s_sign + 4) * &qn
    }
}

/// `F_N = Psi_N^dag (dP_N ^ dP_N) Psi_N`, all bidegrees.
pub fn curvature_monopole_full(n: i32, params: &CalculusParams) -> Result<Form, Error> {
    let m = monopole(n)?;
    let r = m.rank();
    let dq: Vec<Vec<Form>> =
        (0..r).into_par_iter().map(|a| (0..r).map(|b| d(m.projection_entry(a, b))).collect()).collect();
    // F = sum_b w_b (sum_a w_a e_a^* dQ_ab) ^ (sum_c w_c dQ_bc e_c)
    let parts: Vec<Form> = (0..r)
        .into_par_iter()
        .map(|b| {
            let left = sum_forms((0..r).map(|a| dq[a][b].left_mul(&m.entries[a].star()).scale(&m.weights[a])));
            let right = sum_forms((0..r).map(|c| dq[b][c].right_mul(&m.entries[c]).scale(&m.weights[c])));
            wedge_forms(&left, &right, params).scale(&m.weights[b])
        })
        .collect();
    Ok(sum_forms(parts))
}

/// The `(1,1)` curvature; errors if a `(2,0)` or `(0,2)` part survives.
pub fn curvature_monopole(n: i32, params: &CalculusParams) -> Result<FormElement, Error> {
    let f = curvature_monopole_full(n, params)?;
    for b in [Bidegree(2, 0), Bidegree(0, 2)] {
        if !f.part(b).is_zero() {
            return Err(Error::Domain(format!("F_{n} has a nonzero {b} part: {}", f.part(b))));
        }
    }
    Ok(f.part(Bidegree(1, 1)))
}

/// `Psi^dag d(Psi a Psi^dag) Psi - q^N da`, expected zero for `a` in `CP^2_q`.
pub fn dd_psi_residual(n: i32, a: &AlgebraElement) -> Result<Form, Error> {
    let m = monopole(n)?;
    let r = m.rank();
    let mut parts = Vec::with_capacity(r * r + 1);
    for x in 0..r {
        let xa = &m.entries[x] * a;
        for y in 0..r {
            let inner = &xa * &m.entries[y].star();
            parts.push(
                d(&inner)
                    .left_mul(&m.entries[x].star())
                    .right_mul(&m.entries[y])
                    .scale(&(&m.weights[x] * &m.weights[y])),
            );
        }
    }
    parts.push(-&d(a).scale(&Scalar::q_pow(n)));
    Ok(sum_forms(parts))
}

/// The four contractions `Psi^dag (Psi <| E2)`, `Psi^dag (Psi <| F2)`, `(Psi^dag <| E2) Psi`
/// and `(Psi^dag <| F2) Psi`, all expected to vanish.
pub fn follows_residuals(n: i32) -> Result<[AlgebraElement; 4], Error> {
    let m = monopole(n)?;
    let contract = |g: UqGen, dagger_side: bool| {
        let w = UqWord::single(g);
        let terms: Vec<AlgebraElement> = m
            .entries
            .iter()
            .zip(&m.weights)
            .map(|(e, wt)| {
                let es = e.star();
                let p = if dagger_side { &act_right(&w, &es) * e } else { &es * &act_right(&w, e) };
                p.scale(wt)
            })
            .collect();
        AlgebraElement::sum(&terms)
    };
    Ok([contract(UqGen::E2, false), contract(UqGen::F2, false), contract(UqGen::E2, true), contract(UqGen::F2, true)])
}

/// `nabla_N(a eta) - a nabla_N(eta) - q^N (da) eta`
pub fn left_leibniz_residual(n: i32, a: &AlgebraElement, eta: &AlgebraElement) -> Result<Form, Error> {
    let lhs = nabla(n, &(a * eta))?;
    let rhs = &nabla(n, eta)?.left_mul(a) + &d(a).right_mul(eta).scale(&Scalar::q_pow(n));
    Ok(&lhs - &rhs)
}

/// `(nabla_N eta)^* - nabla^l_{-N}(eta^*)`, with `^*` the involution [`real_star`].
pub fn left_right_residual(n: i32, eta: &AlgebraElement) -> Result<Form, Error> {
    let lhs = nabla(n, eta)?.map(real_star);
    Ok(&lhs - &nabla_left(-n, &eta.star())?)
}

/// `(nabla eta + w eta)^* - (nabla^l_{-N}(eta^*) + eta^* w^*)` for a one-form `w`, with `^*`
/// the involution [`real_star`].
pub fn hermitian_bridge_residual(n: i32, eta: &AlgebraElement, w: &Form) -> Result<Form, Error> {
    let lhs = (&nabla(n, eta)? + &w.right_mul(eta)).map(real_star);
    let rhs = &nabla_left(-n, &eta.star())? + &w.map(real_star).left_mul(&eta.star());
    Ok(&lhs - &rhs)
}

/// `(nabla eta, xi) + (eta, nabla xi) - d(eta^* xi)` with `(w eta, xi) = eta^* w^* xi` and `^*`
/// the involution [`real_star`].
pub fn hermiticity_residual(n: i32, eta: &AlgebraElement, xi: &AlgebraElement) -> Result<Form, Error> {
    let a = nabla(n, eta)?.map(real_star).right_mul(xi);
    let b = nabla(n, xi)?.left_mul(&eta.star());
    Ok(&(&a + &b) - &d(&(&eta.star() * xi)))
}
