//! Enumerates the subgroup classes of a p-group and, when the group has rank
//! 3 with cyclic center, counts the classes meeting the center trivially by
//! structural tag.
//!
//!     cargo run --release --example subgroup_lattice [spec]

use std::collections::BTreeMap;
use std::sync::Arc;

use grpcert::cli::GroupSpec;
use grpcert::group::{all_subgroups, center, classify_subgroup, find_normal_q, Group};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let spec: GroupSpec = std::env::args().nth(1).unwrap_or_else(|| "extraspecial:3:5:3".into()).parse()?;
    let g: Group = Arc::new(spec.build(10_000)?);
    let lattice = all_subgroups(&g)?;
    let z = center(&g);
    println!("{spec}: order {}, {} subgroups in {} classes, |Z| = {}", g.order(), lattice.len(), lattice.classes().len(), z.order);
    let mut by_order: BTreeMap<usize, usize> = BTreeMap::new();
    for class in lattice.classes() {
        *by_order.entry(lattice.get(class[0]).order).or_default() += 1;
    }
    println!("classes by order: {by_order:?}");
    match find_normal_q(&g) {
        Ok(q) => {
            println!("Q = <{:?}>", q.generators);
            let mut tags: BTreeMap<String, usize> = BTreeMap::new();
            for class in lattice.classes() {
                let h = lattice.get(class[0]);
                if h.meets_trivially(&z) {
                    let tag = format!("{:?}", classify_subgroup(&g, &q, h)?);
                    *tags.entry(tag.split([' ', '(']).next().unwrap_or_default().to_string()).or_default() += 1;
                }
            }
            for (tag, n) in tags {
                println!("  {n:>4} classes  {tag}");
            }
        }
        Err(e) => println!("no classification: {e}"),
    }
    Ok(())
}
