//! Builds the center-sphere model of a central extension and checks that
//! every abelian isotropy subgroup receives the character η.
//!
//!     cargo run --release --example abelian_isotropy

use std::sync::Arc;

use grpcert::constructions::{center_sphere_family, verify_abelian, Status};
use grpcert::group::{extraspecial, modular, Group};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let groups: Vec<Group> = vec![
        Arc::new(extraspecial(3, 3, 3)?),
        Arc::new(modular(3, 3)?),
        Arc::new(extraspecial(5, 3, 5)?),
    ];
    for g in groups {
        let model = center_sphere_family(&g)?;
        let report = verify_abelian(&g, &model, model.rk_x)?;
        println!(
            "{:<18} dims {:?}  rk_X {}  isotropy classes {}  checks {}  failed {}",
            g.label(),
            model.dims,
            model.rk_x,
            model.isotropy.len(),
            report.checks.len(),
            report.count(Status::Fail)
        );
    }
    Ok(())
}
