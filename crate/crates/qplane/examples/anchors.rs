//! Prints every suite step with the statement it checks.

use qplane::cli::{suite_steps, SUITE_NAMES};

fn main() -> Result<(), qplane::Error> {
    for name in SUITE_NAMES {
        println!("[{name}]");
        for (id, anchor) in suite_steps(name)? {
            println!("{id}: {anchor}");
        }
        println!();
    }
    Ok(())
}
