//! Prints the character table of a small p-group with exact cyclotomic
//! entries and checks the column orthogonality by hand.
//!
//!     cargo run --release --example character_table

use std::sync::Arc;

use grpcert::character::{character_table, inner_product, Cyclotomic};
use grpcert::group::{extraspecial, Group};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let g: Group = Arc::new(extraspecial(3, 3, 3)?);
    let t = character_table(&g)?;
    let cl = g.classes();
    println!("{}: {} classes, Dixon prime {}", g.label(), cl.len(), t.prime());
    println!("class sizes {:?}", cl.class_sizes);
    for i in 0..t.len() {
        let row: Vec<String> = t.row(i).iter().map(ToString::to_string).collect();
        println!("χ{i:<2} {}", row.join("  "));
    }
    let chars = t.irreducibles(&g);
    let mut gram_ok = true;
    for (i, a) in chars.iter().enumerate() {
        for (j, b) in chars.iter().enumerate() {
            gram_ok &= inner_product(a, b) == Cyclotomic::from_int((i == j) as i128);
        }
    }
    println!("row orthogonality: {gram_ok}");
    Ok(())
}
