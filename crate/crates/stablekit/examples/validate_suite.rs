//! Runs the Farey-5 validation suite programmatically and prints each check.

use stablekit::cli::farey5_suite;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let checks = farey5_suite(1e-6)?;
    for c in &checks {
        let verdict = if c.passed() { "pass" } else { "FAIL" };
        println!("{:>4} {:<40} {:.2e} / {:.0e} {verdict}", c.alpha, c.check, c.max_deviation, c.tolerance);
    }
    println!("{} of {} checks passed", checks.iter().filter(|c| c.passed()).count(), checks.len());
    Ok(())
}
