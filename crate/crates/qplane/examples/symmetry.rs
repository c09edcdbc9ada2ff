//! Actions of U_q(su(3)), the coproduct and the left coaction.

use qplane::qalgebra::AlgebraElement;
use qplane::symmetry::{act_left, act_right, coaction_l, coproduct, is_in_plane, is_in_sphere, UqWord};

fn main() -> Result<(), qplane::Error> {
    let u23 = AlgebraElement::u(2, 3);
    for w in ["E1", "K1", "F2*E2"] {
        let x: UqWord = w.parse()?;
        println!("u23 <| {x} = {}", act_right(&x, &u23));
        println!("{x} |> u23 = {}", act_left(&x, &u23));
    }
    println!("Delta(u12) = {}", coproduct(&AlgebraElement::u(1, 2)));
    println!("Delta_L(x) = {}", coaction_l(&AlgebraElement::x()));
    println!(
        "z1 in S^5_q: {}, p23 in CP^2_q: {}",
        is_in_sphere(&AlgebraElement::z(1)),
        is_in_plane(&AlgebraElement::p(2, 3))
    );
    Ok(())
}
