//! The coaction sweeping the instanton into a family over CP^2_q.

use qplane::calculus::CalculusParams;
use qplane::families::{first_row_sphere_generators, sphere_relation_residuals, verify_families, FamilyConfig};

fn main() -> Result<(), qplane::Error> {
    let z = first_row_sphere_generators();
    for (name, r) in sphere_relation_residuals(&z) {
        println!("{name:12} {}", if r.is_zero() { "holds".to_string() } else { r.to_string() });
    }
    for r in verify_families(&CalculusParams::minus(), &FamilyConfig::default(), None)? {
        println!("{:5} {:28} {:6} ms", r.passed, r.id, r.ms);
    }
    Ok(())
}
