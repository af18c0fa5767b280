//! Prints the cycle types of a named group, fixed points dropped.
//!
//! Usage: cargo run --release --example cycle_types -- M24

use std::time::Instant;

use trigal::permgrp::{builtin_group, GroupName};

fn main() {
    let name: GroupName = std::env::args()
        .nth(1)
        .unwrap_or_else(|| "M11@11".into())
        .parse()
        .expect("group name");
    let start = Instant::now();
    let g = builtin_group(name).expect("constructible group");
    let types = g.cycle_type_set().expect("within budget");
    for t in &types {
        println!("{t}");
    }
    eprintln!("{name}: order {}, {} types, {:.1?}", g.order(), types.len(), start.elapsed());
}
