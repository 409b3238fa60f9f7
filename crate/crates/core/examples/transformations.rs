//! The path-merging transformation: single steps, the list of moves, and
//! the shortest chain between two linear forests.

use spexlab::constructions::{transform, transform_moves, transformation_chain_to, PathPartition};

fn main() -> spexlab::Result<()> {
    let h = PathPartition::new(vec![4, 3, 3, 1, 1])?;
    println!("H = {h}");
    println!("transform(H, 0, 1) = {}", transform(&h, 0, 1)?);
    for m in transform_moves(&h) {
        println!("  ({}, {}) -> {}", m.s1, m.s2, m.result);
    }
    let target = PathPartition::new(vec![7, 3, 2])?;
    let chain = transformation_chain_to(&h, &target)?;
    println!("{} steps from {h} to {target}:", chain.len());
    for s in chain {
        println!("  ({}, {}) -> {}", s.s1, s.s2, s.result);
    }
    match transformation_chain_to(&target, &h) {
        Err(e) => println!("{target} -> {h}: {e}"),
        Ok(c) => println!("unexpected chain of {} steps", c.len()),
    }
    Ok(())
}
