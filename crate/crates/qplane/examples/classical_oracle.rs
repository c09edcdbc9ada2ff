//! At q = 1 normal forms must evaluate like the words they came from.

use qplane::qalgebra::{random_su3, ClassicalPoint, RawExpr};
use qplane::sample::random_word;
use qplane::scalars::Scalar;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn main() -> Result<(), qplane::Error> {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let mut worst: f64 = 0.0;
    for _ in 0..20 {
        let point = ClassicalPoint::new(random_su3(&mut rng), 0.0)?;
        for _ in 0..20 {
            let raw = RawExpr {
                terms: vec![(random_word(&mut rng, 4), Scalar::q_pow(1)), (random_word(&mut rng, 4), Scalar::two())],
            };
            worst = worst.max((point.eval_raw(&raw) - point.eval(&raw.normal_form())).norm());
        }
    }
    println!("largest deviation over 400 evaluations: {worst:.2e}");
    Ok(())
}
