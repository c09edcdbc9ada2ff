//! The `q = 1` specialization as a numerical oracle.

use num_complex::Complex64;
use rand::Rng;

use super::element::AlgebraElement;
use super::gens::Gen;
use crate::scalars::Scalar;
use crate::Error;

type Mat = [[Complex64; 3]; 3];

fn det3(m: &Mat) -> Complex64 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// A special-unitary matrix and an angle: the data at which classical
/// evaluation takes place.
#[derive(Clone, Debug)]
pub struct ClassicalPoint {
    pub u: Mat,
    pub theta: f64,
}

impl ClassicalPoint {
    pub fn new(u: Mat, theta: f64) -> Result<Self, Error> {
        for i in 0..3 {
            for j in 0..3 {
                let v: Complex64 = (0..3).map(|k| u[i][k] * u[j][k].conj()).sum();
                let want = if i == j { 1.0 } else { 0.0 };
                if (v - want).norm() > 1e-12 {
                    return Err(Error::Domain("matrix is not unitary".into()));
                }
            }
        }
        if (det3(&u) - 1.0).norm() > 1e-12 {
            return Err(Error::Domain("matrix does not have determinant 1".into()));
        }
        Ok(ClassicalPoint { u, theta })
    }

    pub fn eval(&self, a: &AlgebraElement) -> Complex64 {
        a.eval_classical(&self.u, self.theta.cos(), self.theta.sin())
    }

    pub fn eval_raw(&self, e: &RawExpr) -> Complex64 {
        e.eval(&self.u, self.theta.cos(), self.theta.sin())
    }
}

/// A random element of `SU(3)`: Gram-Schmidt on a complex Gaussian matrix,
/// with the determinant phase removed.
pub fn random_su3<R: Rng>(rng: &mut R) -> Mat {
    let mut gauss = || {
        // Box-Muller
        let (a, b): (f64, f64) = (rng.gen::<f64>().max(1e-300), rng.gen());
        (-2.0 * a.ln()).sqrt() * (std::f64::consts::TAU * b).cos()
    };
    let mut m: Mat = [[Complex64::new(0.0, 0.0); 3]; 3];
    for row in m.iter_mut() {
        for e in row.iter_mut() {
            *e = Complex64::new(gauss(), gauss());
        }
    }
    for i in 0..3 {
        for j in 0..i {
            let proj: Complex64 = (0..3).map(|k| m[i][k] * m[j][k].conj()).sum();
            for k in 0..3 {
                let v = m[j][k];
                m[i][k] -= proj * v;
            }
        }
        let norm = (0..3).map(|k| m[i][k].norm_sqr()).sum::<f64>().sqrt();
        for k in 0..3 {
            m[i][k] /= norm;
        }
    }
    let d = det3(&m);
    let phase = Complex64::from_polar(1.0, -d.arg() / 3.0);
    for row in m.iter_mut() {
        for e in row.iter_mut() {
            *e *= phase;
        }
    }
    m
}

/// An unreduced linear combination of generator words.
#[derive(Clone, Debug, Default)]
pub struct RawExpr {
    pub terms: Vec<(Vec<Gen>, Scalar)>,
}

impl RawExpr {
    pub fn eval(&self, m: &Mat, c0: f64, sg0: f64) -> Complex64 {
        self.terms
            .iter()
            .map(|(w, c)| {
                w.iter().fold(c.eval(1.0, c0, sg0), |acc, g| acc * m[g.row() as usize - 1][g.col() as usize - 1])
            })
            .sum()
    }

    pub fn normal_form(&self) -> AlgebraElement {
        AlgebraElement::sum(self.terms.iter().map(|(w, c)| AlgebraElement::from_word(w, c)).collect::<Vec<_>>().iter())
    }
}
