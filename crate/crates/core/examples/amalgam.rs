//! Dimension-function obstruction for two copies of p^{1+2} glued along ℤ/p.
//!
//!     cargo run --release --example amalgam -- 5

use grpcert::constructions::amalgam_obstruction;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let bound = std::env::args().nth(2).map(|s| s.parse()).transpose()?.unwrap_or(2 * (p * p) as u64);
    let report = amalgam_obstruction(p, bound)?;
    for (k, v) in &report.parameters {
        println!("{k:>24}: {v}");
    }
    for c in &report.checks {
        println!("{:?} {} ({}): {}", c.status, c.name, c.subject, c.detail);
    }
    println!("{}", report.conclusion);
    Ok(())
}
