//! Certifies the rewrite system and shows the negative control without the cubic rule.

use qplane::qalgebra::{ring, truncated_completion, GenOrder};

fn main() -> Result<(), qplane::Error> {
    let sys = ring().system();
    let report = sys.check_confluence(8)?;
    println!("order {}", report.monomial_order);
    println!(
        "{} quadratic rules, cubic family led by {}, {} critical pairs, confluent: {}",
        report.quadratic_rules,
        report.cubic_leading_word.as_deref().unwrap_or("none"),
        report.critical_pairs,
        report.confluent
    );
    let quad = sys.without_cubic();
    let det = quad.rewriter(0)?.reduce(quad.determinant().clone());
    println!("without the cubic rule the determinant keeps {} terms instead of reducing to 1", det.len());
    for (name, order) in [("diagonal last", GenOrder::diagonal_last()), ("row major", GenOrder::row_major())] {
        let (rules, _) = truncated_completion(&order, 6, 10_000)?;
        println!("{name}: {} rules up to word length 6", rules.len());
    }
    Ok(())
}
