//! Decides projectivity of permutation lattices over each subgroup class of
//! (ℤ/3)² from Tate cohomology, and compares with the free-action criterion.
//!
//!     cargo run --release --example tate_projectivity

use std::sync::Arc;

use grpcert::group::{abelian, all_subgroups, Group};
use grpcert::zg::{permutation_tensor_check, tate_01, GLattice};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g: Group = Arc::new(abelian(&[3, 3])?);
    let lattice = all_subgroups(&g)?;
    let reps = lattice.class_representatives();
    for k in &reps {
        let m = GLattice::permutation(&g, k);
        for h in &reps {
            let t = tate_01(h, &m);
            let free = h.meets_trivially(k);
            println!("Z[G/<{:?}>] over <{:?}>: projective {}  (H ∩ K = 1: {free})", k.generators, h.generators, t.projective);
            assert_eq!(t.projective, free);
        }
    }
    let k = reps.iter().find(|r| r.order == 3).expect("order-3 subgroup");
    let h = reps.iter().find(|r| r.order == 3 && r.meets_trivially(k)).expect("complement");
    let t = permutation_tensor_check(h, &GLattice::permutation(&g, k))?;
    println!("Ĥ at G of Z[G/H] ⊗ Z[G/K]: {:?} {:?}", t.h_minus1, t.h_zero);
    Ok(())
}
