//! Curvature of the Grassmannian connections on the monopole bundles L_N.

use std::time::Instant;

use qplane::bundles::{curvature_factor, curvature_monopole, monopole};
use qplane::calculus::{kahler_expected, CalculusParams};

fn main() -> Result<(), qplane::Error> {
    for s in [1, -1] {
        let params = CalculusParams::default_for(s)?;
        for n in -2..=2 {
            let t = Instant::now();
            let f = curvature_monopole(n, &params)?;
            let c = curvature_factor(n, s);
            let ok = f == kahler_expected(&params).scale(&c);
            let rank = monopole(n)?.rank();
            println!("s = {s:+}, N = {n:+}, rank {rank}: F_N = ({c}) omega_q {ok} ({:?})", t.elapsed());
        }
    }
    Ok(())
}
