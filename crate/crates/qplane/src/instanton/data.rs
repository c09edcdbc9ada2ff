//! The vectors `psi`, `phi` and the isometry `Psi = (psi f(x), phi f(q^4 x))`.

use serde::Serialize;

use super::mixed::MixedElement;
use crate::calculus::{del, Bidegree, FormElement};
use crate::qalgebra::AlgebraElement;
use crate::scalars::{FunScalar, Scalar};
use crate::Error;

/// The angle data and the two generating vectors of `L_1` and `L_{-1}`.
///
/// `psi = (cos2 z1^*, c z2^*, c z3^*, 0, sigma z3^*, sigma z2^*)`,
/// `phi = (0, -sigma z3, q sigma z2, q^2 cos2 z1, q c z2, -c z3)` with `c = cos(theta)`,
/// `sigma = sin(theta)`, `cos2 = cos(2 theta)` and `t = sin(2 theta)`.
#[derive(Clone, Debug, Serialize)]
pub struct InstantonData {
    c: Scalar,
    sigma: Scalar,
    psi: Vec<AlgebraElement>,
    phi: Vec<AlgebraElement>,
    #[serde(skip)]
    f_psi: FunScalar,
    #[serde(skip)]
    f_phi: FunScalar,
}

impl InstantonData {
    /// Symbolic angle; the column factors are `f_0 = f(x)` and `f_4 = f(q^4 x)`.
    pub fn generic() -> Self {
        Self::build(Scalar::c(), Scalar::sigma(), FunScalar::f(0), FunScalar::f(4))
    }

    /// `theta = 0`, so `t = 0` and both column factors are `1`.
    pub fn degenerate() -> Self {
        Self::build(Scalar::one(), Scalar::zero(), FunScalar::one(), FunScalar::one())
    }

    /// The generic angle with arbitrary column factors, for probing the construction.
    pub fn with_factors(f_psi: FunScalar, f_phi: FunScalar) -> Self {
        Self::build(Scalar::c(), Scalar::sigma(), f_psi, f_phi)
    }

    fn build(c: Scalar, sigma: Scalar, f_psi: FunScalar, f_phi: FunScalar) -> Self {
        let cos2 = &(&c * &c) - &(&sigma * &sigma);
        let z = AlgebraElement::z;
        let zs = AlgebraElement::zs;
        let q = |n: i32| Scalar::q_pow(n);
        let psi = vec![
            zs(1).scale(&cos2),
            zs(2).scale(&c),
            zs(3).scale(&c),
            AlgebraElement::zero(),
            zs(3).scale(&sigma),
            zs(2).scale(&sigma),
        ];
        let phi = vec![
            AlgebraElement::zero(),
            z(3).scale(&-&sigma),
            z(2).scale(&(&q(1) * &sigma)),
            z(1).scale(&(&q(2) * &cos2)),
            z(2).scale(&(&q(1) * &c)),
            z(3).scale(&-&c),
        ];
        InstantonData { c, sigma, psi, phi, f_psi, f_phi }
    }

    pub fn c(&self) -> &Scalar {
        &self.c
    }

    pub fn sigma(&self) -> &Scalar {
        &self.sigma
    }

    /// `t = 2 c sigma`
    pub fn t(&self) -> Scalar {
        &Scalar::from_int(2) * &(&self.c * &self.sigma)
    }

    pub fn t2(&self) -> Scalar {
        let t = self.t();
        &t * &t
    }

    pub fn is_degenerate(&self) -> bool {
        self.t().is_zero()
    }

    pub fn psi(&self) -> &[AlgebraElement] {
        &self.psi
    }

    pub fn phi(&self) -> &[AlgebraElement] {
        &self.phi
    }

    /// Column factors `(f(x), f(q^4 x))`.
    pub fn column_factors(&self) -> (&FunScalar, &FunScalar) {
        (&self.f_psi, &self.f_phi)
    }

    /// `psi^dag phi`, `psi^dag psi - (1 - t^2 x)` and `phi^dag phi - (1 - t^2 q^4 x)`.
    pub fn psi_phi_residuals(&self) -> [AlgebraElement; 3] {
        let dot = |a: &[AlgebraElement], b: &[AlgebraElement]| {
            let parts: Vec<AlgebraElement> = a.iter().zip(b).map(|(x, y)| &x.star() * y).collect();
            AlgebraElement::sum(&parts)
        };
        let one = AlgebraElement::one();
        let x = AlgebraElement::x();
        let t2 = self.t2();
        [
            dot(&self.psi, &self.phi),
            &dot(&self.psi, &self.psi) - &(&one - &x.scale(&t2)),
            &dot(&self.phi, &self.phi) - &(&one - &x.scale(&(&t2 * &Scalar::q_pow(4)))),
        ]
    }

    /// The columns of `Psi` as mixed 0-forms: `Psi[k][0] = psi_k f(x)`, `Psi[k][1] = phi_k f(q^4 x)`.
    pub fn psi_tilde(&self) -> Result<Vec<[MixedElement; 2]>, Error> {
        (0..6)
            .map(|k| {
                Ok([
                    MixedElement::algebra(&self.psi[k])?.right_fun(&self.f_psi),
                    MixedElement::algebra(&self.phi[k])?.right_fun(&self.f_phi),
                ])
            })
            .collect()
    }

    /// Rows of `Psi^dag`: `Psi^dag[0][k] = f(x) psi_k^*`, `Psi^dag[1][k] = f(q^4 x) phi_k^*`.
    pub fn psi_tilde_dag(&self) -> Result<[Vec<MixedElement>; 2], Error> {
        let row = |v: &[AlgebraElement], f: &FunScalar| -> Result<Vec<MixedElement>, Error> {
            v.iter().map(|a| Ok(MixedElement::algebra(&a.star())?.left_fun(f))).collect()
        };
        Ok([row(&self.psi, &self.f_psi)?, row(&self.phi, &self.f_phi)?])
    }
}

/// `phi = q^{1/2} sum_j z_j (del p_j2) z_3 - q z_j (del p_j3) z_2`.
pub fn phi_form() -> FormElement {
    let mut parts = Vec::new();
    for j in 1..=3u8 {
        let z = AlgebraElement::z(j);
        parts.push(del(&AlgebraElement::p(j, 2)).left_mul(&z).right_mul(&AlgebraElement::z(3)));
        parts.push(
            del(&AlgebraElement::p(j, 3)).left_mul(&z).right_mul(&AlgebraElement::z(2)).scale(&-&Scalar::q_pow(1)),
        );
    }
    FormElement::sum(Bidegree(1, 0), &parts).expect("(1,0) forms").scale(&Scalar::q_half(1))
}

/// `phi = i (q^{-1/2} (u^1_1)^*, -q^{1/2} (u^2_1)^*)`.
pub fn phi_closed() -> FormElement {
    let i = Scalar::i();
    FormElement::new(
        Bidegree(1, 0),
        vec![
            AlgebraElement::u(1, 1).star().scale(&(&i * &Scalar::q_half(-1))),
            AlgebraElement::u(2, 1).star().scale(&-&(&i * &Scalar::q_half(1))),
        ],
    )
    .expect("two components")
}

/// `phi^* = i (u^2_1, u^1_1)` under the graded involution.
pub fn phi_star_closed() -> FormElement {
    let i = Scalar::i();
    FormElement::new(Bidegree(0, 1), vec![AlgebraElement::u(2, 1).scale(&i), AlgebraElement::u(1, 1).scale(&i)])
        .expect("two components")
}
