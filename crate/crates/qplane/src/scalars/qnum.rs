use super::{Laurent, Scalar};
use crate::Error;

fn qint_laurent(n: i64) -> Laurent {
    let sign = n.signum() as i128;
    let n = n.unsigned_abs() as i32;
    // [n] = q^{n-1} + q^{n-3} + ... + q^{1-n}
    Laurent::from_terms((0..n).map(|k| (2 * (n - 1 - 2 * k), sign)).collect())
}

fn qfactorial_laurent(n: u32) -> Laurent {
    (1..=n as i64).fold(Laurent::one(), |acc, k| &acc * &qint_laurent(k))
}

/// The q-number `[n] = (q^n - q^{-n}) / (q - q^{-1})`.
pub fn qint(n: i64) -> Scalar {
    Scalar::from_laurent(&qint_laurent(n))
}

/// `[n]! = [n][n-1]...[1]`, `[0]! = 1`.
pub fn qfactorial(n: i64) -> Result<Scalar, Error> {
    if n < 0 {
        return Err(Error::Domain(format!("q-factorial of negative integer {n}")));
    }
    Ok(Scalar::from_laurent(&qfactorial_laurent(n as u32)))
}

/// `q^{-(jk+kl+lj)} [j+k+l]! / ([j]! [k]! [l]!)` as a Laurent polynomial.
pub fn qtrinomial_laurent(j: u32, k: u32, l: u32) -> Laurent {
    let num = qfactorial_laurent(j + k + l);
    let den = &(&qfactorial_laurent(j) * &qfactorial_laurent(k)) * &qfactorial_laurent(l);
    let quot = num.div_exact(&den).expect("q-trinomial coefficient failed to divide exactly");
    quot.shift(-2 * (j * k + k * l + l * j) as i32)
}

/// The q-trinomial coefficient `[j,k,l]!`.
pub fn qtrinomial(j: u32, k: u32, l: u32) -> Scalar {
    Scalar::from_laurent(&qtrinomial_laurent(j, k, l))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_values() {
        assert!(qint(0).is_zero());
        assert!(qint(1).is_one());
        assert_eq!(qint(2), &Scalar::q_pow(1) + &Scalar::q_pow(-1));
        assert_eq!(qint(-3), -&qint(3));
        assert!(qfactorial(0).unwrap().is_one());
        assert!(qfactorial(-1).is_err());
        assert!(qtrinomial(0, 0, 0).is_one());
        assert!(qtrinomial(1, 0, 0).is_one());
    }

    #[test]
    fn trinomial_from_definition() {
        // q^{-1}[2]!/([1]![1]!) = q^{-1}(q + q^{-1})
        let expect = &Scalar::q_pow(-1) * &qint(2);
        assert_eq!(qtrinomial(1, 1, 0), expect);
        // symmetric in its arguments
        assert_eq!(qtrinomial(2, 1, 0), qtrinomial(0, 1, 2));
    }
}
