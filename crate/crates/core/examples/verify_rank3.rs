//! Verifies the rank-3 class function on an extraspecial group.
//!
//!     cargo run --release --example verify_rank3 -- 3

use std::sync::Arc;
use std::time::Instant;

use grpcert::constructions::{verify_rank3, Status};
use grpcert::group::extraspecial;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p: usize = std::env::args().nth(1).map(|s| s.parse()).transpose()?.unwrap_or(3);
    let start = Instant::now();
    let g = Arc::new(extraspecial(p, 5, p)?);
    let report = verify_rank3(&g, false)?;
    println!("{}: {} checks, {} failed, {:.1?}", report.group, report.checks.len(), report.count(Status::Fail), start.elapsed());
    for c in report.failures().take(5) {
        println!("  FAIL {} {}: {}", c.name, c.subject, c.detail);
    }
    println!("{}", report.conclusion);
    Ok(())
}
