//! Finds cohomology classes of (ℤ/3)² whose truncated complexes tensor to a
//! free algebraic model of the torus, then prints its homology and the
//! projectivity verdicts.
//!
//!     cargo run --release --example spherical_torus

use std::sync::Arc;

use grpcert::group::{abelian, Group};
use grpcert::zg::{find_spherical_classes, SphericalSearch};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g: Group = Arc::new(abelian(&[3, 3])?);
    match find_spherical_classes(&g, 2, 2, 1)? {
        SphericalSearch::Found(cert) => {
            for z in &cert.cocycles {
                println!("class in degree {}: {:?}", z.n, z.values);
            }
            println!("ranks {:?}", cert.complex.ranks());
            let h: Vec<String> = cert.homology.iter().map(ToString::to_string).collect();
            println!("homology {}", h.join(", "));
            for (degree, t) in &cert.projectivity.reports {
                println!("  C_{degree} over <{:?}>: Ĥ⁻¹ {:?}  Ĥ⁰ {:?}", t.subgroup, t.h_minus1, t.h_zero);
            }
            println!("all projective: {}", cert.projectivity.all_projective);
        }
        SphericalSearch::Exhausted { candidates, tuples_tried } => {
            println!("no certificate ({candidates} candidates, {tuples_tried} tuples)");
        }
    }
    Ok(())
}
