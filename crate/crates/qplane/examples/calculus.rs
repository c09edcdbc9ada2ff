//! Derivatives, wedge products, the Hodge star and the Kaehler form.

use qplane::calculus::*;
use qplane::qalgebra::AlgebraElement;

fn main() -> Result<(), qplane::Error> {
    for s in [1, -1] {
        let params = CalculusParams::default_for(s)?;
        let x = AlgebraElement::x();
        println!("s = {s:+}");
        println!("  del x = {}", del(&x));
        println!("  omega_q = {}", kahler(&params));
        println!("  omega_q matches the closed form: {}", kahler(&params) == kahler_expected(&params));
        for b in Bidegree::all() {
            let w = FormElement::basis(b, 0);
            println!("  hodge e^{b}_0 = {}", hodge(&w, &params));
        }
        println!("  omega_q anti-selfdual: {}", asd_check(&kahler(&params), &params)?);
    }
    Ok(())
}
