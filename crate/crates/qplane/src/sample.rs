//! Seeded random samples for property checks.

use rand::Rng;

use crate::qalgebra::{AlgebraElement, Gen};
use crate::scalars::Scalar;
use crate::symmetry::{UqGen, UqWord};

/// A random element: up to `max_terms` raw words of degree `<= max_degree`
/// with small integer and `q`-power coefficients, brought to normal form.
pub fn random_element<R: Rng>(rng: &mut R, max_degree: usize, max_terms: usize) -> AlgebraElement {
    let n = rng.gen_range(1..=max_terms.max(1));
    let parts: Vec<AlgebraElement> = (0..n)
        .map(|_| {
            let d = rng.gen_range(0..=max_degree);
            let gens: Vec<Gen> = (0..d).map(|_| Gen::from_index(rng.gen_range(0..9))).collect();
            let c = Scalar::from_int(rng.gen_range(-3..=3)) * Scalar::q_pow(rng.gen_range(-2..=2));
            AlgebraElement::from_word(&gens, &c)
        })
        .collect();
    AlgebraElement::sum(parts.iter())
}

/// A random raw word of generators of length `<= max_degree`.
pub fn random_word<R: Rng>(rng: &mut R, max_degree: usize) -> Vec<Gen> {
    let d = rng.gen_range(0..=max_degree);
    (0..d).map(|_| Gen::from_index(rng.gen_range(0..9))).collect()
}

/// A random `U_q(su(3))` word of length `1..=max_len`.
pub fn random_uq_word<R: Rng>(rng: &mut R, max_len: usize) -> UqWord {
    const GENS: [UqGen; 8] =
        [UqGen::K1, UqGen::K1Inv, UqGen::K2, UqGen::K2Inv, UqGen::E1, UqGen::E2, UqGen::F1, UqGen::F2];
    let n = rng.gen_range(1..=max_len.max(1));
    UqWord((0..n).map(|_| GENS[rng.gen_range(0..GENS.len())]).collect())
}
