//! Runs a suite and prints its JSON report.

use qplane::cli::{run_suite, SuiteConfig};

fn main() -> Result<(), qplane::Error> {
    let name = std::env::args().nth(1).unwrap_or_else(|| "kahler".into());
    let report = run_suite(&name, &SuiteConfig::default().with_env_threads()?)?;
    println!("{}", report.to_json());
    std::process::exit(report.exit_code());
}
