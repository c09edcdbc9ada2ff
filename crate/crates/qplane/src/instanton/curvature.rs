//! Step-by-step verification that the curvature of the instanton family is anti-selfdual.
//!
//! Core factors are contracted first and functions of `x` are shuffled afterwards, so
//! every step is a finite exact check. Steps share lazily built intermediates and each
//! one is attempted independently of the others' outcome.

use std::cell::OnceCell;

use super::data::{phi_closed, phi_form, phi_star_closed, InstantonData};
use super::mixed::MixedElement;
use crate::calculus::{del, delbar, form_star, sd_part, wedge, Bidegree, CalculusParams, FormElement};
use crate::qalgebra::AlgebraElement;
use crate::report::{Residual, StepReport};
use crate::scalars::{FunScalar, Scalar};
use crate::symmetry::{act_right, UqGen, UqWord};
use crate::Error;

/// The curvature steps in dependency order, with the identity each one checks.
pub const CURVATURE_STEPS: &[(&str, &str)] = &[
    ("dz-formulas", "del z_j = i q^{-3/2} (u^2_j, u^1_j), delbar z_j^* = i q^{-3/2} (q^{-1/2} (u^1_j)^*, -q^{1/2} (u^2_j)^*)"),
    ("psi-phi-normalization", "psi^dag phi = 0, psi^dag psi = 1 - t^2 x, phi^dag phi = 1 - t^2 q^4 x"),
    ("phi-closed-form", "phi = i (q^{-1/2} (u^1_1)^*, -q^{1/2} (u^2_1)^*), phi^* = i (u^2_1, u^1_1)"),
    ("curvature-split", "F = {(Psi^dag dPsi) Q}^2 + Q dPsi^dag ^ dPsi Q, Q = diag(q^{1/2}, q^{-1/2})"),
    ("dpsi-expansion", "dPsi = (delbar psi, 0) f(x) + (0, del phi) f(q^4 x) + q^{1/2} (psi, 0) df(x) + q^{-1/2} (0, phi) df(q^4 x)"),
    ("psi-dbar-psi", "psi^dag delbar psi = -q^{1/2} t^2 delbar x and three companions"),
    ("connection-matrix", "(Psi^dag dPsi) Q in terms of f(x), f(q^4 x), psi^dag del phi, phi^dag delbar psi"),
    ("psi-del-phi", "psi^dag del phi = -q (del psi^dag) phi = t phi, phi^dag delbar psi = -q^{-1} (delbar phi^dag) psi = t q^{-1} phi^*"),
    ("phi-wedge-sd", "self-dual parts of phi ^ phi^* and phi^* ^ phi"),
    ("dx-wedge-sd", "self-dual parts of del x ^ delbar x and delbar x ^ del x"),
    ("dpsi-wedge-sd", "self-dual parts of del psi^dag ^ delbar psi and delbar phi^dag ^ del phi"),
    ("z1-phi-commutation", "z_1 phi = q phi z_1, z_1^* phi = q phi z_1^*, z_1 phi^* = q^{-1} phi^* z_1, z_1^* phi^* = q^{-1} phi^* z_1^*"),
    ("f12-vanishes", "F_12 = 0"),
    ("f11-expression", "F_11 = q f(x)^2 del psi^dag ^ delbar psi + t^2 q^{-1} f(x)^2 f(q^2 x)^2 phi ^ phi^* - q^2 t^2 {f(x) + f(q^2 x)} f'(qx) del x ^ delbar x"),
    ("eta-proportionality", "(del psi^dag ^ delbar psi)^+ = q^{-3} t^2 eta, (del x ^ delbar x)^+ = -q^{-2} x eta, (phi ^ phi^*)^+ = -q^{-1} eta"),
    ("f11-self-dual-vanishes", "F_11^+ = t^2 a eta with a = 0"),
    ("f22-expression", "F_22 = q^{-1} f(q^4 x)^2 delbar phi^dag ^ del phi + q^{-1} t^2 f(q^2 x)^2 f(q^4 x)^2 phi^* ^ phi - t^2 q^6 {f(q^4 x) + f(q^2 x)} f'(q^3 x) delbar x ^ del x"),
    ("eta-prime-proportionality", "(delbar phi^dag ^ del phi)^+ = t^2 q eta', (delbar x ^ del x)^+ = -q^{-4} x eta', (phi^* ^ phi)^+ = -q eta'"),
    ("f22-self-dual-vanishes", "F_22^+ = t^2 b eta' with b = 0"),
];

/// Steps about the connection one-form and the `t = 0` member of the family.
pub const CONNECTION_STEPS: &[(&str, &str)] = &[
    ("connection-one-form", "omega_t = ((A^* - A, Phi), (-Phi^*, B - B^*)) with A^* = q f(x)^{-1} del f(x), B = q^{-1} f(q^4 x)^{-1} delbar f(q^4 x), Phi = q^{-1/2} t f(x) phi f(q^4 x)"),
    ("off-diagonal-core", "-psi^dag d(psi psi^dag) phi = t (1 - t^2 x) q^{-1/2} phi"),
    ("sections-identity", "z_1 d(z_1^* eta) = x nabla_1 eta + q (delbar x) eta, z_1^* d(z_1 eta') = x nabla_{-1} eta' + q^{-1} (del x) eta'"),
    ("degenerate-limit", "t = 0: omega_0 = 0 and the curvature is diag(F_1, F_{-1})"),
];

/// The `2 x 2` matrices `Psi`, `dPsi`, `M = (Psi^dag dPsi) Q` and `F`, built on demand.
pub struct InstantonPipeline {
    params: CalculusParams,
    data: InstantonData,
    psi: OnceCell<Vec<[MixedElement; 2]>>,
    dag: OnceCell<[Vec<MixedElement>; 2]>,
    dpsi: OnceCell<Vec<[MixedElement; 2]>>,
    ddag: OnceCell<[Vec<MixedElement>; 2]>,
    m: OnceCell<[[MixedElement; 2]; 2]>,
    f: OnceCell<[[MixedElement; 2]; 2]>,
}

type Matrix = [[MixedElement; 2]; 2];

fn q_twist(j: usize) -> Scalar {
    Scalar::q_half(if j == 0 { 1 } else { -1 })
}

fn mixed(w: FormElement) -> Result<MixedElement, Error> {
    MixedElement::core(w)
}

fn sum_mixed(items: impl IntoIterator<Item = MixedElement>) -> MixedElement {
    items.into_iter().fold(MixedElement::zero(), |acc, m| &acc + &m)
}

fn sum_forms(b: Bidegree, items: &[FormElement]) -> FormElement {
    FormElement::sum(b, items).expect("homogeneous sum")
}

/// `f(x)^{-1} = (1 - t^2 x) f(x)` for the column factor `f_k`.
fn inverse_root(k: i32) -> FunScalar {
    &FunScalar::l(k) * &FunScalar::f(k)
}

/// `g'(q^n x)` for the q-derivative `g'`.
fn q_derivative_at(g: &FunScalar, n: i32) -> FunScalar {
    g.q_derivative().shift_q(n)
}

/// `[q^{-1/2} u^2_1 (u^1_1)^*, [2]^{-1/2} (u^1_1 (u^1_1)^* - u^2_1 (u^2_1)^*), -q^{1/2} u^1_1 (u^2_1)^*, 0]`
pub fn eta_vector() -> FormElement {
    let (u11, u21) = (AlgebraElement::u(1, 1), AlgebraElement::u(2, 1));
    let (s11, s21) = (u11.star(), u21.star());
    let r_inv = Scalar::r().inverse().expect("[2]^{1/2} is invertible");
    FormElement::new(
        Bidegree(1, 1),
        vec![
            (&u21 * &s11).scale(&Scalar::q_half(-1)),
            (&(&u11 * &s11) - &(&u21 * &s21)).scale(&r_inv),
            (&u11 * &s21).scale(&-&Scalar::q_half(1)),
            AlgebraElement::zero(),
        ],
    )
    .expect("four components")
}

/// `[q^{-1/2} (u^1_1)^* u^2_1, [2]^{-1/2} (q^{-1} (u^1_1)^* u^1_1 - q (u^2_1)^* u^2_1), -q^{1/2} (u^2_1)^* u^1_1, 0]`
pub fn eta_prime_vector() -> FormElement {
    let (u11, u21) = (AlgebraElement::u(1, 1), AlgebraElement::u(2, 1));
    let (s11, s21) = (u11.star(), u21.star());
    let r_inv = Scalar::r().inverse().expect("[2]^{1/2} is invertible");
    FormElement::new(
        Bidegree(1, 1),
        vec![
            (&s11 * &u21).scale(&Scalar::q_half(-1)),
            (&(&s11 * &u11).scale(&Scalar::q_pow(-1)) - &(&s21 * &u21).scale(&Scalar::q_pow(1))).scale(&r_inv),
            (&s21 * &u11).scale(&-&Scalar::q_half(1)),
            AlgebraElement::zero(),
        ],
    )
    .expect("four components")
}

/// `eta = -q^{s/2} c_1 eta_vector`
pub fn eta(params: &CalculusParams) -> FormElement {
    eta_vector().scale(&-&(&Scalar::q_half(params.s_sign()) * params.c(1)))
}

/// `eta' = c_1 eta_prime_vector`
pub fn eta_prime(params: &CalculusParams) -> FormElement {
    eta_prime_vector().scale(params.c(1))
}

/// The self-dual projection of a `(1,1)`-form, as a form.
pub fn sd_form(w: &FormElement, params: &CalculusParams) -> Result<FormElement, Error> {
    let keep = sd_part(w, params)?;
    let mut comps = vec![AlgebraElement::zero(); 4];
    if keep.len() == 3 {
        comps[..3].clone_from_slice(&keep);
    } else {
        comps[3] = keep[0].clone();
    }
    FormElement::new(Bidegree(1, 1), comps)
}

/// `a = q^{-2} f(x)^2 - q^{-2} f(x)^2 f(q^2 x)^2 + x {f(x) + f(q^2 x)} f'(qx)`
pub fn a_function() -> FunScalar {
    let (f0, f2) = (FunScalar::f(0), FunScalar::f(2));
    let qm2 = Scalar::q_pow(-2);
    let f0sq = &f0 * &f0;
    let first = f0sq.scale(&qm2);
    let second = (&f0sq * &(&f2 * &f2)).scale(&qm2);
    let third = &FunScalar::x() * &(&(&f0 + &f2) * &q_derivative_at(&f0, 1));
    &(&first - &second) + &third
}

/// `b = f(q^4 x)^2 {1 - f(q^2 x)^2} + q^2 x {f(q^4 x) + f(q^2 x)} f'(q^3 x)`
pub fn b_function() -> FunScalar {
    let (f2, f4) = (FunScalar::f(2), FunScalar::f(4));
    let first = &(&f4 * &f4) * &(&FunScalar::one() - &(&f2 * &f2));
    let second = (&FunScalar::x() * &(&(&f4 + &f2) * &q_derivative_at(&FunScalar::f(0), 3))).scale(&Scalar::q_pow(2));
    &first + &second
}

/// Numeric value of the printed expression for `a` at `q^{1/2} = s0`, `theta`, `x = x0`,
/// computed from square roots directly rather than through the function field.
pub fn a_numeric(s0: f64, theta: f64, x0: f64) -> f64 {
    let q = s0 * s0;
    let t2 = (2.0 * theta).sin().powi(2);
    let f = |y: f64| 1.0 / (1.0 - t2 * y).sqrt();
    let fdot = |y: f64| (f(q * y) - f(y / q)) / ((q - 1.0 / q) * y);
    let (f0, f2) = (f(x0), f(q * q * x0));
    f0 * f0 / (q * q) - f0 * f0 * f2 * f2 / (q * q) + x0 * (f0 + f2) * fdot(q * x0)
}

/// Numeric value of the printed expression for `b`; see [`a_numeric`].
pub fn b_numeric(s0: f64, theta: f64, x0: f64) -> f64 {
    let q = s0 * s0;
    let t2 = (2.0 * theta).sin().powi(2);
    let f = |y: f64| 1.0 / (1.0 - t2 * y).sqrt();
    let fdot = |y: f64| (f(q * y) - f(y / q)) / ((q - 1.0 / q) * y);
    let (f2, f4) = (f(q * q * x0), f(q.powi(4) * x0));
    f4 * f4 * (1.0 - f2 * f2) + q * q * x0 * (f4 + f2) * fdot(q.powi(3) * x0)
}

impl InstantonPipeline {
    pub fn new(params: CalculusParams, data: InstantonData) -> Self {
        InstantonPipeline {
            params,
            data,
            psi: OnceCell::new(),
            dag: OnceCell::new(),
            dpsi: OnceCell::new(),
            ddag: OnceCell::new(),
            m: OnceCell::new(),
            f: OnceCell::new(),
        }
    }

    /// The generic family for the given parameters.
    pub fn generic(params: CalculusParams) -> Self {
        Self::new(params, InstantonData::generic())
    }

    pub fn params(&self) -> &CalculusParams {
        &self.params
    }

    pub fn data(&self) -> &InstantonData {
        &self.data
    }

    fn psi(&self) -> Result<&Vec<[MixedElement; 2]>, Error> {
        get_or_try(&self.psi, || self.data.psi_tilde())
    }

    fn dag(&self) -> Result<&[Vec<MixedElement>; 2], Error> {
        get_or_try(&self.dag, || self.data.psi_tilde_dag())
    }

    /// `dPsi` by the twisted Leibniz rule.
    pub fn dpsi(&self) -> Result<&Vec<[MixedElement; 2]>, Error> {
        get_or_try(&self.dpsi, || self.psi()?.iter().map(|r| Ok([r[0].d()?, r[1].d()?])).collect())
    }

    fn ddag(&self) -> Result<&[Vec<MixedElement>; 2], Error> {
        get_or_try(&self.ddag, || {
            let dag = self.dag()?;
            let row = |k: usize| dag[k].iter().map(MixedElement::d).collect::<Result<Vec<_>, _>>();
            Ok([row(0)?, row(1)?])
        })
    }

    /// The connection one-form `M = (Psi^dag dPsi) Q`.
    pub fn connection(&self) -> Result<&Matrix, Error> {
        get_or_try(&self.m, || {
            let (dag, dpsi) = (self.dag()?, self.dpsi()?);
            let entry = |i: usize, j: usize| {
                sum_mixed((0..6).map(|k| dag[i][k].mul(&dpsi[k][j], &self.params))).scale(&q_twist(j))
            };
            Ok([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
        })
    }

    /// `F = M ^ M + Q dPsi^dag ^ dPsi Q`, all bidegrees.
    pub fn curvature(&self) -> Result<&Matrix, Error> {
        get_or_try(&self.f, || {
            let m = self.connection()?;
            let (ddag, dpsi) = (self.ddag()?, self.dpsi()?);
            let entry = |i: usize, j: usize| {
                let mm = sum_mixed((0..2).map(|k| m[i][k].mul(&m[k][j], &self.params)));
                let dd = sum_mixed((0..6).map(|k| ddag[i][k].mul(&dpsi[k][j], &self.params)));
                &mm + &dd.scale(&(&q_twist(i) * &q_twist(j)))
            };
            Ok([[entry(0, 0), entry(0, 1)], [entry(1, 0), entry(1, 1)]])
        })
    }

    /// The `(1,1)` parts `(F_11, F_12, F_22)`.
    pub fn curvature_components(&self) -> Result<[MixedElement; 3], Error> {
        let f = self.curvature()?;
        let b = Bidegree(1, 1);
        Ok([f[0][0].part(b), f[0][1].part(b), f[1][1].part(b)])
    }

    /// `(F_12 = 0, F_11^+ = 0, F_22^+ = 0)`
    pub fn asd_flags(&self) -> Result<[bool; 3], Error> {
        let [f11, f12, f22] = self.curvature_components()?;
        Ok([f12.is_zero(), f11.sd(&self.params)?.is_zero(), f22.sd(&self.params)?.is_zero()])
    }

    fn psi_core(&self) -> (&[AlgebraElement], &[AlgebraElement]) {
        (self.data.psi(), self.data.phi())
    }

    fn wedge(&self, a: &FormElement, b: &FormElement) -> FormElement {
        wedge(a, b, &self.params)
    }

    /// `sum_k del(psi_k^*) ^ delbar psi_k`
    fn dpsi_wedge(&self) -> FormElement {
        let (psi, _) = self.psi_core();
        let parts: Vec<FormElement> = psi.iter().map(|p| self.wedge(&del(&p.star()), &delbar(p))).collect();
        sum_forms(Bidegree(1, 1), &parts)
    }

    /// `sum_k delbar(phi_k^*) ^ del phi_k`
    fn dphi_wedge(&self) -> FormElement {
        let (_, phi) = self.psi_core();
        let parts: Vec<FormElement> = phi.iter().map(|p| self.wedge(&delbar(&p.star()), &del(p))).collect();
        sum_forms(Bidegree(1, 1), &parts)
    }

    /// `sum_k a_k^* w(b_k)` for vectors `a`, `b` and a derivative `w`.
    fn dot_left(
        a: &[AlgebraElement],
        b: &[AlgebraElement],
        w: fn(&AlgebraElement) -> FormElement,
        bd: Bidegree,
    ) -> FormElement {
        let parts: Vec<FormElement> = a.iter().zip(b).map(|(x, y)| w(y).left_mul(&x.star())).collect();
        sum_forms(bd, &parts)
    }

    /// `sum_k w(a_k^*) b_k`
    fn dot_right(
        a: &[AlgebraElement],
        b: &[AlgebraElement],
        w: fn(&AlgebraElement) -> FormElement,
        bd: Bidegree,
    ) -> FormElement {
        let parts: Vec<FormElement> = a.iter().zip(b).map(|(x, y)| w(&x.star()).right_mul(y)).collect();
        sum_forms(bd, &parts)
    }

    /// Residuals of one step.
    pub fn residuals(&self, id: &str) -> Result<Vec<Residual>, Error> {
        let p = &self.params;
        let x = AlgebraElement::x();
        let t = self.data.t();
        let t2 = self.data.t2();
        let q = Scalar::q_pow;
        let qh = Scalar::q_half;
        let (f0, f4) = (FunScalar::f(0), FunScalar::f(4));
        let (psi, phi) = self.psi_core();
        let out: Vec<Residual> = match id {
            "dz-formulas" => {
                let mut out = Vec::new();
                let c = &Scalar::i() * &qh(-3);
                for j in 1..=3u8 {
                    let dz = FormElement::new(
                        Bidegree(1, 0),
                        vec![AlgebraElement::u(2, j).scale(&c), AlgebraElement::u(1, j).scale(&c)],
                    )?;
                    let dbzs = FormElement::new(
                        Bidegree(0, 1),
                        vec![
                            AlgebraElement::u(1, j).star().scale(&(&c * &qh(-1))),
                            AlgebraElement::u(2, j).star().scale(&-&(&c * &qh(1))),
                        ],
                    )?;
                    out.push((&del(&AlgebraElement::z(j)) - &dz).into());
                    out.push((&delbar(&AlgebraElement::zs(j)) - &dbzs).into());
                    out.push(delbar(&AlgebraElement::z(j)).into());
                    out.push(del(&AlgebraElement::zs(j)).into());
                }
                out
            }
            "psi-phi-normalization" => self.data.psi_phi_residuals().into_iter().map(Residual::from).collect(),
            "phi-closed-form" => {
                vec![(&phi_form() - &phi_closed()).into(), (&form_star(&phi_closed()) - &phi_star_closed()).into()]
            }
            "curvature-split" => self.curvature_split()?,
            "dpsi-expansion" => {
                let dpsi = self.dpsi()?;
                let (fp, ff) = self.data.column_factors();
                let (dfp, dff) = (MixedElement::fun(fp.clone()).d()?, MixedElement::fun(ff.clone()).d()?);
                let mut out = Vec::new();
                for k in 0..6 {
                    let col0 = &mixed(delbar(&psi[k]))?.right_fun(fp)
                        + &MixedElement::algebra(&psi[k])?.mul(&dfp, p).scale(&qh(1));
                    let col1 = &mixed(del(&phi[k]))?.right_fun(ff)
                        + &MixedElement::algebra(&phi[k])?.mul(&dff, p).scale(&qh(-1));
                    out.push((&dpsi[k][0] - &col0).into());
                    out.push((&dpsi[k][1] - &col1).into());
                }
                out
            }
            "psi-dbar-psi" => {
                let dbx = delbar(&x);
                let dx = del(&x);
                let one_minus = &AlgebraElement::one() - &x.scale(&t2);
                vec![
                    (&Self::dot_left(psi, psi, delbar, Bidegree(0, 1)) - &dbx.scale(&-&(&qh(1) * &t2))).into(),
                    (&Self::dot_left(psi, psi, delbar, Bidegree(0, 1)) - &delbar(&one_minus).scale(&qh(1))).into(),
                    (&Self::dot_left(phi, phi, del, Bidegree(1, 0)) - &dx.scale(&-&(&(&qh(-1) * &t2) * &q(4)))).into(),
                    (&Self::dot_right(psi, psi, del, Bidegree(1, 0)) - &dx.scale(&-&(&qh(1) * &t2))).into(),
                    (&Self::dot_right(phi, phi, delbar, Bidegree(0, 1)) - &dbx.scale(&-&(&(&qh(-1) * &t2) * &q(4))))
                        .into(),
                ]
            }
            "connection-matrix" => {
                let m = self.connection()?;
                let df0 = MixedElement::fun(f0.clone());
                let df4 = MixedElement::fun(f4.clone());
                let m11 = &MixedElement::fun(inverse_root(0)).mul(&df0.del()?, p).scale(&q(1))
                    + &MixedElement::fun(f0.clone()).mul(&MixedElement::fun(inverse_root(0)).delbar()?, p).scale(&q(1));
                let m22 = &MixedElement::fun(inverse_root(4)).mul(&df4.delbar()?, p).scale(&q(-1))
                    + &MixedElement::fun(f4.clone()).mul(&MixedElement::fun(inverse_root(4)).del()?, p).scale(&q(-1));
                let psi_del_phi = Self::dot_left(psi, phi, del, Bidegree(1, 0));
                let phi_dbar_psi = Self::dot_left(phi, psi, delbar, Bidegree(0, 1));
                let m12 = mixed(psi_del_phi)?.left_fun(&f0).right_fun(&f4).scale(&qh(-1));
                let m21 = mixed(phi_dbar_psi)?.left_fun(&f4).right_fun(&f0).scale(&qh(1));
                vec![
                    (&m[0][0] - &m11).into(),
                    (&m[0][1] - &m12).into(),
                    (&m[1][0] - &m21).into(),
                    (&m[1][1] - &m22).into(),
                ]
            }
            "psi-del-phi" => {
                let tphi = phi_closed().scale(&t);
                let tphis = phi_star_closed().scale(&(&t * &q(-1)));
                vec![
                    (&Self::dot_left(psi, phi, del, Bidegree(1, 0)) - &tphi).into(),
                    (&Self::dot_right(psi, phi, del, Bidegree(1, 0)).scale(&-&q(1)) - &tphi).into(),
                    (&Self::dot_left(phi, psi, delbar, Bidegree(0, 1)) - &tphis).into(),
                    (&Self::dot_right(phi, psi, delbar, Bidegree(0, 1)).scale(&-&q(-1)) - &tphis).into(),
                ]
            }
            "phi-wedge-sd" => {
                let (ph, phs) = (phi_closed(), phi_star_closed());
                let c1 = p.c(1);
                vec![
                    (&sd_form(&self.wedge(&ph, &phs), p)? - &eta_prime_vector().scale(&(&qh(p.s_sign()) * c1))).into(),
                    (&sd_form(&self.wedge(&phs, &ph), p)? - &eta_vector().scale(&-c1)).into(),
                ]
            }
            "dx-wedge-sd" => {
                let (dx, dbx) = (del(&x), delbar(&x));
                let c1 = p.c(1);
                vec![
                    (&sd_form(&self.wedge(&dx, &dbx), p)?
                        - &eta_vector().left_mul(&x).scale(&(&(&qh(p.s_sign()) * c1) * &q(-2))))
                        .into(),
                    (&sd_form(&self.wedge(&dbx, &dx), p)? - &eta_prime_vector().left_mul(&x).scale(&-&(c1 * &q(-4))))
                        .into(),
                ]
            }
            "dpsi-wedge-sd" => {
                let c1 = p.c(1);
                vec![
                    (&sd_form(&self.dpsi_wedge(), p)? - &eta_vector().scale(&-&(&(&qh(p.s_sign() - 6) * c1) * &t2)))
                        .into(),
                    (&sd_form(&self.dphi_wedge(), p)? - &eta_prime_vector().scale(&(&(&q(1) * c1) * &t2))).into(),
                ]
            }
            "z1-phi-commutation" => {
                let (ph, phs) = (phi_closed(), phi_star_closed());
                let mut out = Vec::new();
                for z in [AlgebraElement::z(1), AlgebraElement::zs(1)] {
                    out.push((&ph.left_mul(&z) - &ph.right_mul(&z).scale(&q(1))).into());
                    out.push((&phs.left_mul(&z) - &phs.right_mul(&z).scale(&q(-1))).into());
                }
                out
            }
            "f12-vanishes" => {
                let f = self.curvature()?;
                vec![f[0][1].part(Bidegree(1, 1)).into(), f[1][0].part(Bidegree(1, 1)).into()]
            }
            "f11-expression" => {
                let [f11, _, _] = self.curvature_components()?;
                let expected = self.f11_expected()?;
                vec![(&f11 - &expected).into()]
            }
            "eta-proportionality" => {
                let e = eta(p);
                vec![
                    (&sd_form(&self.dpsi_wedge(), p)? - &e.scale(&(&q(-3) * &t2))).into(),
                    (&sd_form(&self.wedge(&del(&x), &delbar(&x)), p)? - &e.left_mul(&x).scale(&-&q(-2))).into(),
                    (&sd_form(&self.wedge(&phi_closed(), &phi_star_closed()), p)? - &e.scale(&-&q(-1))).into(),
                ]
            }
            "f11-self-dual-vanishes" => {
                let [f11, _, _] = self.curvature_components()?;
                let a = a_function();
                let expected = mixed(eta(p))?.left_fun(&a).scale(&t2);
                vec![a.into(), (&f11.sd(p)? - &expected).into(), f11.sd(p)?.into()]
            }
            "f22-expression" => {
                let [_, _, f22] = self.curvature_components()?;
                let expected = self.f22_expected()?;
                vec![(&f22 - &expected).into()]
            }
            "eta-prime-proportionality" => {
                let e = eta_prime(p);
                vec![
                    (&sd_form(&self.dphi_wedge(), p)? - &e.scale(&(&q(1) * &t2))).into(),
                    (&sd_form(&self.wedge(&delbar(&x), &del(&x)), p)? - &e.left_mul(&x).scale(&-&q(-4))).into(),
                    (&sd_form(&self.wedge(&phi_star_closed(), &phi_closed()), p)? + &e.scale(&q(1))).into(),
                ]
            }
            "f22-self-dual-vanishes" => {
                let [_, _, f22] = self.curvature_components()?;
                let b = b_function();
                let expected = mixed(eta_prime(p))?.left_fun(&b).scale(&t2);
                vec![b.into(), (&f22.sd(p)? - &expected).into(), f22.sd(p)?.into()]
            }
            "connection-one-form" => self.connection_one_form_residuals()?,
            "off-diagonal-core" => {
                let lhs = self.off_diagonal_core()?;
                let rhs = phi_closed().left_mul(&(&AlgebraElement::one() - &x.scale(&t2))).scale(&(&t * &qh(-1)));
                vec![(&lhs - &rhs).into()]
            }
            "sections-identity" => self.sections_identity()?,
            "degenerate-limit" => self.degenerate_limit()?,
            _ => return Err(Error::Config(format!("unknown step {id}"))),
        };
        Ok(out)
    }

    fn curvature_split(&self) -> Result<Vec<Residual>, Error> {
        let p = &self.params;
        let (psi, phi) = self.psi_core();
        let mut out: Vec<Residual> = Vec::new();
        // Psi <| K2^{-1} = Psi Q
        let k2inv = UqWord::single(UqGen::K2Inv);
        for k in 0..6 {
            out.push((&act_right(&k2inv, &psi[k]) - &psi[k].scale(&q_twist(0))).into());
            out.push((&act_right(&k2inv, &phi[k]) - &phi[k].scale(&q_twist(1))).into());
        }
        // Psi^dag Psi = 1
        let (tilde, dag) = (self.psi()?, self.dag()?);
        for i in 0..2 {
            for j in 0..2 {
                let prod = sum_mixed((0..6).map(|k| dag[i][k].mul(&tilde[k][j], p)));
                let target = if i == j { MixedElement::scalar(Scalar::one()) } else { MixedElement::zero() };
                out.push((&prod - &target).into());
            }
        }
        // dP = dPsi Q Psi^dag + Psi Q dPsi^dag
        let (dpsi, ddag) = (self.dpsi()?, self.ddag()?);
        for a in 0..6 {
            for b in 0..6 {
                let entry = sum_mixed((0..2).map(|j| tilde[a][j].mul(&dag[j][b], p)));
                let lhs = entry.d()?;
                let rhs = sum_mixed((0..2).map(|j| {
                    &dpsi[a][j].mul(&dag[j][b], p).scale(&q_twist(j))
                        + &tilde[a][j].mul(&ddag[j][b], p).scale(&q_twist(j))
                }));
                out.push((&lhs - &rhs).into());
            }
        }
        // (dPsi^dag) Psi = -Q^{-1} M, which removes the terms containing (dPsi^dag) Psi
        let m = self.connection()?;
        for i in 0..2 {
            for j in 0..2 {
                let lhs = sum_mixed((0..6).map(|k| ddag[i][k].mul(&tilde[k][j], p)));
                let rhs = m[i][j].scale(&-&q_twist(i).inverse().expect("invertible"));
                out.push((&lhs - &rhs).into());
            }
        }
        Ok(out)
    }

    fn f11_expected(&self) -> Result<MixedElement, Error> {
        let x = AlgebraElement::x();
        let t2 = self.data.t2();
        let (f0, f2) = (FunScalar::f(0), FunScalar::f(2));
        let f0sq = &f0 * &f0;
        let first = mixed(self.dpsi_wedge())?.left_fun(&f0sq).scale(&Scalar::q_pow(1));
        let second = mixed(self.wedge(&phi_closed(), &phi_star_closed()))?
            .left_fun(&(&f0sq * &(&f2 * &f2)))
            .scale(&(&t2 * &Scalar::q_pow(-1)));
        let third = mixed(self.wedge(&del(&x), &delbar(&x)))?
            .left_fun(&(&(&f0 + &f2) * &q_derivative_at(&f0, 1)))
            .scale(&-&(&t2 * &Scalar::q_pow(2)));
        Ok(&(&first + &second) + &third)
    }

    fn f22_expected(&self) -> Result<MixedElement, Error> {
        let x = AlgebraElement::x();
        let t2 = self.data.t2();
        let (f0, f2, f4) = (FunScalar::f(0), FunScalar::f(2), FunScalar::f(4));
        let f4sq = &f4 * &f4;
        let first = mixed(self.dphi_wedge())?.left_fun(&f4sq).scale(&Scalar::q_pow(-1));
        let second = mixed(self.wedge(&phi_star_closed(), &phi_closed()))?
            .left_fun(&(&f4sq * &(&f2 * &f2)))
            .scale(&(&t2 * &Scalar::q_pow(-1)));
        let third = mixed(self.wedge(&delbar(&x), &del(&x)))?
            .left_fun(&(&(&f4 + &f2) * &q_derivative_at(&f0, 3)))
            .scale(&-&(&t2 * &Scalar::q_pow(6)));
        Ok(&(&first + &second) + &third)
    }

    /// `-psi^dag d(psi psi^dag) phi`, the `(1,0)` part being the only one that survives.
    pub fn off_diagonal_core(&self) -> Result<FormElement, Error> {
        let (psi, phi) = self.psi_core();
        let mut parts = Vec::new();
        for pa in psi {
            if pa.is_zero() {
                continue;
            }
            for (b, pb) in psi.iter().enumerate() {
                if pb.is_zero() || phi[b].is_zero() {
                    continue;
                }
                let dp = crate::calculus::d(&(pa * &pb.star()));
                parts.push(dp.left_mul(&pa.star()).right_mul(&phi[b]));
            }
        }
        let total: crate::calculus::Form = parts.iter().flat_map(|f| f.parts().cloned().collect::<Vec<_>>()).collect();
        if !total.part(Bidegree(0, 1)).is_zero() {
            return Err(Error::Domain("psi^dag d(psi psi^dag) phi has a (0,1) part".into()));
        }
        Ok(total.part(Bidegree(1, 0)).scale(&Scalar::from_int(-1)))
    }

    /// `((A^* - A, Phi), (-Phi^*, B - B^*))` built from the closed forms of `A^*`, `B` and `Phi`.
    pub fn connection_closed_form(&self) -> Result<Matrix, Error> {
        let p = &self.params;
        let t = self.data.t();
        let (f0, f4) = self.data.column_factors();
        let q = Scalar::q_pow;
        let inv0 = &FunScalar::l(0) * f0;
        let inv4 = &FunScalar::l(4) * f4;
        let a_star = MixedElement::fun(inv0).mul(&MixedElement::fun(f0.clone()).del()?, p).scale(&q(1));
        let b = MixedElement::fun(inv4).mul(&MixedElement::fun(f4.clone()).delbar()?, p).scale(&q(-1));
        let phi_big = mixed(phi_closed())?.left_fun(f0).right_fun(f4).scale(&(&Scalar::q_half(-1) * &t));
        let a = a_star.star();
        Ok([[&a_star - &a, phi_big.clone()], [-&phi_big.star(), &b - &b.star()]])
    }

    fn connection_one_form_residuals(&self) -> Result<Vec<Residual>, Error> {
        let m = self.connection()?;
        let t = self.data.t();
        let (f0, f4) = self.data.column_factors();
        let omega = self.connection_closed_form()?;
        // the printed phi^* = i (u21, u11) enters M21 with a plus sign
        let m21 = mixed(phi_star_closed())?.left_fun(f4).right_fun(f0).scale(&(&Scalar::q_half(-1) * &t));
        let mut out: Vec<Residual> = vec![(&m[1][0] - &m21).into()];
        for i in 0..2 {
            for j in 0..2 {
                out.push((&m[i][j] - &omega[i][j]).into());
                // antihermitian: M_ij = -(M_ji)^*
                out.push((&m[i][j] + &m[j][i].star()).into());
            }
        }
        Ok(out)
    }

    fn sections_identity(&self) -> Result<Vec<Residual>, Error> {
        use crate::bundles::nabla;
        use crate::calculus::{d, Form};
        let x = AlgebraElement::x();
        let (z1, zs1) = (AlgebraElement::z(1), AlgebraElement::zs(1));
        let mut out = Vec::new();
        for k in 1..=3u8 {
            let eta = AlgebraElement::z(k);
            let lhs = d(&(&zs1 * &eta)).left_mul(&z1);
            let rhs: Form =
                [nabla(1, &eta)?.left_mul(&x), Form::from(delbar(&x).right_mul(&eta).scale(&Scalar::q_pow(1)))]
                    .iter()
                    .flat_map(|f| f.parts().cloned().collect::<Vec<_>>())
                    .collect();
            for w in (&lhs - &rhs).parts() {
                out.push(Residual::Form(w.clone()));
            }
            let eta2 = AlgebraElement::zs(k);
            let lhs2 = d(&(&z1 * &eta2)).left_mul(&zs1);
            let rhs2: Form =
                [nabla(-1, &eta2)?.left_mul(&x), Form::from(del(&x).right_mul(&eta2).scale(&Scalar::q_pow(-1)))]
                    .iter()
                    .flat_map(|f| f.parts().cloned().collect::<Vec<_>>())
                    .collect();
            for w in (&lhs2 - &rhs2).parts() {
                out.push(Residual::Form(w.clone()));
            }
            if out.is_empty() {
                out.push(Residual::Algebra(AlgebraElement::zero()));
            }
        }
        Ok(out)
    }

    fn degenerate_limit(&self) -> Result<Vec<Residual>, Error> {
        use crate::bundles::curvature_monopole;
        let p = &self.params;
        let zero = InstantonPipeline::new(p.clone(), InstantonData::degenerate());
        let m = zero.connection()?;
        let f = zero.curvature()?;
        let b = Bidegree(1, 1);
        let mut out: Vec<Residual> = Vec::new();
        for row in m {
            for e in row {
                out.push(e.clone().into());
            }
        }
        out.push(f[0][1].part(b).into());
        out.push(f[1][0].part(b).into());
        out.push((&f[0][0].part(b) - &mixed(curvature_monopole(1, p)?)?).into());
        out.push((&f[1][1].part(b) - &mixed(curvature_monopole(-1, p)?)?).into());
        for bd in [Bidegree(2, 0), Bidegree(0, 2)] {
            out.push(f[0][0].part(bd).into());
            out.push(f[1][1].part(bd).into());
        }
        Ok(out)
    }

    /// Runs one step and summarizes it.
    pub fn run_step(&self, id: &str, anchor: &str) -> StepReport {
        StepReport::run(id, anchor, || self.residuals(id))
    }
}

fn get_or_try<T>(cell: &OnceCell<T>, f: impl FnOnce() -> Result<T, Error>) -> Result<&T, Error> {
    if let Some(v) = cell.get() {
        return Ok(v);
    }
    let v = f()?;
    Ok(cell.get_or_init(|| v))
}

/// Runs every curvature step, or only `step` when given.
pub fn verify_curvature(params: &CalculusParams, step: Option<&str>) -> Result<Vec<StepReport>, Error> {
    run_steps(params, CURVATURE_STEPS, step)
}

/// Runs the connection one-form steps, or only `step`.
pub fn verify_connection(params: &CalculusParams, step: Option<&str>) -> Result<Vec<StepReport>, Error> {
    run_steps(params, CONNECTION_STEPS, step)
}

fn run_steps(params: &CalculusParams, steps: &[(&str, &str)], step: Option<&str>) -> Result<Vec<StepReport>, Error> {
    if let Some(s) = step {
        if !steps.iter().any(|(id, _)| *id == s) {
            return Err(Error::Config(format!("unknown step {s}")));
        }
    }
    let pipeline = InstantonPipeline::generic(params.clone());
    Ok(steps
        .iter()
        .filter(|(id, _)| step.is_none_or(|s| s == *id))
        .map(|(id, anchor)| pipeline.run_step(id, anchor))
        .collect())
}

/// The connection one-form matrix `omega_t = (Psi^dag dPsi) Q`.
pub fn connection_one_form(params: &CalculusParams) -> Result<[[MixedElement; 2]; 2], Error> {
    Ok(InstantonPipeline::generic(params.clone()).connection()?.clone())
}

/// `(F_11, F_12, F_22)` and the flags `(F_12 = 0, F_11^+ = 0, F_22^+ = 0)`.
pub fn curvature_components(params: &CalculusParams) -> Result<([MixedElement; 3], [bool; 3]), Error> {
    let pipeline = InstantonPipeline::generic(params.clone());
    Ok((pipeline.curvature_components()?, pipeline.asd_flags()?))
}
