use std::collections::HashMap;

use super::form::Bidegree;
use crate::scalars::Scalar;

/// Sparse structure constants `S^g_{ab}` of `V^A x V^B -> V^{A+B}`.
#[derive(Clone, Debug, Default)]
pub struct Table {
    pub entries: Vec<(usize, usize, usize, Scalar)>,
}

impl Table {
    fn push(&mut self, g: usize, a: usize, b: usize, c: Scalar) {
        if !c.is_zero() {
            self.entries.push((g, a, b, c));
        }
    }

    /// The constant-vector product `v ^ w`.
    pub fn apply(&self, out_dim: usize, v: &[Scalar], w: &[Scalar]) -> Vec<Scalar> {
        let mut out = vec![Scalar::zero(); out_dim];
        for (g, a, b, c) in &self.entries {
            let t = &(c * &v[*a]) * &w[*b];
            out[*g] = &out[*g] + &t;
        }
        out
    }
}

/// Bilinear map given by a closure on basis indices, collected into a table.
fn tabulate(out: usize, da: usize, db: usize, f: impl Fn(&[Scalar], &[Scalar]) -> Vec<Scalar>) -> Table {
    let mut t = Table::default();
    for a in 0..da {
        for b in 0..db {
            let v = unit(da, a);
            let w = unit(db, b);
            let r = f(&v, &w);
            debug_assert_eq!(r.len(), out);
            for (g, c) in r.into_iter().enumerate() {
                t.push(g, a, b, c);
            }
        }
    }
    t
}

fn unit(d: usize, k: usize) -> Vec<Scalar> {
    (0..d).map(|i| if i == k { Scalar::one() } else { Scalar::zero() }).collect()
}

struct Mu {
    h: Scalar,
    hi: Scalar,
    q: Scalar,
    qi: Scalar,
    r: Scalar,
    ri: Scalar,
}

impl Mu {
    fn new() -> Self {
        let r = Scalar::r();
        Mu {
            h: Scalar::q_half(1),
            hi: Scalar::q_half(-1),
            q: Scalar::q_pow(1),
            qi: Scalar::q_pow(-1),
            ri: r.inverse().expect("[2]^{1/2} is invertible"),
            r,
        }
    }

    fn mu0(&self, v: &[Scalar], w: &[Scalar]) -> Scalar {
        &self.ri * &(&(&self.h * &(&v[0] * &w[1])) - &(&self.hi * &(&v[1] * &w[0])))
    }

    fn mu1(&self, v: &[Scalar], w: &[Scalar]) -> [Scalar; 3] {
        [&v[0] * &w[0], &self.ri * &(&(&self.hi * &(&v[0] * &w[1])) + &(&self.h * &(&v[1] * &w[0]))), &v[1] * &w[1]]
    }

    fn mu2(&self, v: &[Scalar], w: &[Scalar]) -> [Scalar; 2] {
        let hr = &self.hi * &self.r;
        let hr2 = &self.h * &self.r;
        [
            &(&self.q * &(&v[0] * &w[1])) - &(&hr * &(&v[1] * &w[0])),
            &(&hr2 * &(&v[0] * &w[2])) - &(&self.qi * &(&v[1] * &w[1])),
        ]
    }

    fn mu3(&self, v: &[Scalar], w: &[Scalar]) -> [Scalar; 2] {
        let hr = &self.h * &self.r;
        let hr2 = &self.hi * &self.r;
        [
            &(&hr * &(&v[0] * &w[1])) - &(&self.qi * &(&v[1] * &w[0])),
            &(&self.q * &(&v[1] * &w[1])) - &(&hr2 * &(&v[2] * &w[0])),
        ]
    }

    fn mu4(&self, v: &[Scalar], w: &[Scalar]) -> Scalar {
        &(&(&self.q * &(&v[0] * &w[2])) - &(&v[1] * &w[1])) + &(&self.qi * &(&v[2] * &w[0]))
    }
}

fn inv(x: &Scalar) -> Scalar {
    x.inverse().expect("validated structure constant")
}

/// All products inside the diamond. The thirteen generating cases are tabulated
/// directly; the remaining pairs involving `V^{2,0}` or `V^{0,2}` are obtained by
/// writing their basis vector as a product of two one-form basis vectors and
/// reassociating.
pub(crate) fn build_tables(s: i32, c: &[Scalar; 5]) -> HashMap<(Bidegree, Bidegree), Table> {
    let mu = Mu::new();
    let two = Scalar::two();
    let qs = |n: i32| Scalar::q_half(n * s);
    let (b00, b10, b01, b20, b02, b11, b21, b12) = (
        Bidegree(0, 0),
        Bidegree(1, 0),
        Bidegree(0, 1),
        Bidegree(2, 0),
        Bidegree(0, 2),
        Bidegree(1, 1),
        Bidegree(2, 1),
        Bidegree(1, 2),
    );
    let c0_2c1 = &c[0] * &inv(&(&two * &c[1]));
    let c0_2c2 = &c[0] * &inv(&(&two * &c[2]));
    let c4_2c1 = &c[4] * &inv(&(&two * &c[1]));
    let c4_2c2 = &c[4] * &inv(&(&two * &c[2]));
    let c3c4_c0 = &(&c[3] * &c[4]) * &inv(&c[0]);
    let c3c4_2c1 = &(&c[3] * &c[4]) * &inv(&(&two * &(&c[1] * &c[1].conj())));
    let c3c4_2c2 = &(&c[3] * &c[4]) * &inv(&(&two * &(&c[2] * &c[2].conj())));

    let mut t: HashMap<(Bidegree, Bidegree), Table> = HashMap::new();
    t.insert((b01, b01), tabulate(1, 2, 2, |v, w| vec![&c[0] * &mu.mu0(v, w)]));
    t.insert(
        (b01, b10),
        tabulate(4, 2, 2, |v, w| {
            let m = mu.mu1(v, w);
            vec![&c[1] * &m[0], &c[1] * &m[1], &c[1] * &m[2], &c[2] * &mu.mu0(v, w)]
        }),
    );
    t.insert((b01, b21), tabulate(1, 2, 2, |v, w| vec![&c[3] * &mu.mu0(v, w)]));
    t.insert(
        (b01, b11),
        tabulate(2, 2, 4, |v, w| {
            let m = mu.mu2(v, &w[..3]);
            (0..2).map(|k| &(&c0_2c1 * &m[k]) - &(&c0_2c2 * &(&v[k] * &w[3]))).collect()
        }),
    );
    t.insert((b10, b10), tabulate(1, 2, 2, |v, w| vec![&c[4] * &mu.mu0(v, w)]));
    t.insert(
        (b10, b01),
        tabulate(4, 2, 2, |v, w| {
            let m = mu.mu1(v, w);
            let a = -&(&qs(1) * &c[1]);
            vec![&a * &m[0], &a * &m[1], &a * &m[2], &(&qs(-3) * &c[2]) * &mu.mu0(v, w)]
        }),
    );
    t.insert((b10, b12), tabulate(1, 2, 2, |v, w| vec![&c3c4_c0 * &mu.mu0(v, w)]));
    t.insert(
        (b10, b11),
        tabulate(2, 2, 4, |v, w| {
            let m = mu.mu2(v, &w[..3]);
            let a = -&(&qs(-1) * &c4_2c1);
            let b = -&(&qs(3) * &c4_2c2);
            (0..2).map(|k| &(&a * &m[k]) + &(&b * &(&v[k] * &w[3]))).collect()
        }),
    );
    t.insert((b12, b10), tabulate(1, 2, 2, |v, w| vec![&c3c4_c0 * &mu.mu0(v, w)]));
    t.insert((b21, b01), tabulate(1, 2, 2, |v, w| vec![&c[3] * &mu.mu0(v, w)]));
    t.insert(
        (b11, b01),
        tabulate(2, 4, 2, |v, w| {
            let m = mu.mu3(&v[..3], w);
            let a = -&(&qs(-1) * &c0_2c1);
            let b = -&(&qs(3) * &c0_2c2);
            (0..2).map(|k| &(&a * &m[k]) + &(&b * &(&v[3] * &w[k]))).collect()
        }),
    );
    t.insert(
        (b11, b10),
        tabulate(2, 4, 2, |v, w| {
            let m = mu.mu3(&v[..3], w);
            (0..2).map(|k| &(&c4_2c1 * &m[k]) - &(&c4_2c2 * &(&v[3] * &w[k]))).collect()
        }),
    );
    t.insert(
        (b11, b11),
        tabulate(1, 4, 4, |v, w| {
            let a = -&(&qs(-1) * &c3c4_2c1);
            let b = -&(&qs(3) * &c3c4_2c2);
            vec![&(&a * &mu.mu4(&v[..3], &w[..3])) + &(&b * &(&v[3] * &w[3]))]
        }),
    );

    // e^{2,0} = k^{-1} e_1 ^ e_2 with e_i in V^{1,0}; likewise e^{0,2} in V^{0,1}.
    let prod = |t: &HashMap<(Bidegree, Bidegree), Table>, a: Bidegree, b: Bidegree, v: &[Scalar], w: &[Scalar]| {
        t[&(a, b)].apply((a + b).dim(), v, w)
    };
    let k20 = inv(&prod(&t, b10, b10, &unit(2, 0), &unit(2, 1))[0]);
    let k02 = inv(&prod(&t, b01, b01, &unit(2, 0), &unit(2, 1))[0]);
    let (e1, e2) = (unit(2, 0), unit(2, 1));

    let derived = |t: &HashMap<(Bidegree, Bidegree), Table>, left: Bidegree, right: Bidegree| -> Table {
        let out = (left + right).dim();
        tabulate(out, left.dim(), right.dim(), |v, w| {
            if left == b20 || left == b02 {
                // (k^{-1} e1 ^ e2) ^ w = k^{-1} e1 ^ (e2 ^ w)
                let (one, k) = if left == b20 { (b10, &k20) } else { (b01, &k02) };
                let inner = prod(t, one, right, &e2, w);
                prod(t, one, one + right, &e1, &inner).iter().map(|x| &(x * k) * &v[0]).collect()
            } else {
                // v ^ (k^{-1} e1 ^ e2) = k^{-1} (v ^ e1) ^ e2
                let (one, k) = if right == b20 { (b10, &k20) } else { (b01, &k02) };
                let inner = prod(t, left, one, v, &e1);
                prod(t, left + one, one, &inner, &e2).iter().map(|x| &(x * k) * &w[0]).collect()
            }
        })
    };
    for (a, b) in [(b10, b02), (b02, b10), (b01, b20), (b20, b01), (b20, b02), (b02, b20)] {
        let tab = derived(&t, a, b);
        t.insert((a, b), tab);
    }

    for bd in Bidegree::all() {
        let id = tabulate(bd.dim(), 1, bd.dim(), |v, w| w.iter().map(|x| &v[0] * x).collect());
        t.insert((b00, bd), id);
        let id = tabulate(bd.dim(), bd.dim(), 1, |v, w| v.iter().map(|x| x * &w[0]).collect());
        t.insert((bd, b00), id);
    }
    t
}
