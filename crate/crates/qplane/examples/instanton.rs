//! The instanton curvature, step by step, for one sign.

use qplane::calculus::CalculusParams;
use qplane::instanton::{a_function, b_function, verify_connection, verify_curvature};

fn main() -> Result<(), qplane::Error> {
    let params = CalculusParams::plus();
    for r in verify_curvature(&params, None)?.into_iter().chain(verify_connection(&params, None)?) {
        println!("{:5} {:28} {:6} ms  {}", r.passed, r.id, r.ms, r.anchor);
    }
    println!("a = {}, b = {}", a_function(), b_function());
    Ok(())
}
