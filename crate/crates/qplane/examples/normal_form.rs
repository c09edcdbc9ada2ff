//! Normal forms of expressions, the star structure and the sphere relations.

use qplane::calculus::CalculusParams;
use qplane::cli::parse;

fn main() -> Result<(), qplane::Error> {
    let params = CalculusParams::plus();
    for src in [
        "p[1][1]",
        "zs[1]*z[1] - p[1][1]",
        "q^4*p[1][1]+q^2*p[2][2]+p[3][3]",
        "z[2]*z[1]",
        "star(u[3][3])",
        "z[1]*zs[1] + z[2]*zs[2] + z[3]*zs[3]",
        "wedge(del(x), delbar(x))",
    ] {
        println!("{src}\n  = {}", parse(src, &params)?);
    }
    Ok(())
}
