//! Degree 42 = 7 x 6: an outer degree-7 cover, a lifted degree-6 monodromy on
//! its Schreier generators, and the composite.
//!
//! `cargo run --release --example compose_degree42`

use genus2_hurwitz::constellation::{pipeline, BranchData, SchreierGenerators, SearchOptions};

fn main() {
    let p = pipeline::run(&SearchOptions::default()).expect("pipeline");
    println!("outer  {}: {:?}", pipeline::OUTER_QUERY, p.outer.slots().iter().map(|s| s.to_string()).collect::<Vec<_>>());

    let gens = SchreierGenerators::new(&p.outer).expect("transitive outer");
    println!("free group of the punctured outer cover has rank {}", gens.rank());
    for ((sheet, slot), img) in gens.edges().iter().zip(&p.inner.images) {
        println!("  generator (sheet {sheet}, slot {}) -> {img}", p.outer.labels()[*slot]);
    }

    let target: BranchData = pipeline::TARGET_QUERY.parse().unwrap();
    let report = p.composite.validate(Some(&target.types));
    println!(
        "composite: degree {}, types {:?}, genus {}, valid {}",
        p.composite.degree(),
        p.composite.cycle_types().iter().map(|t| t.compact()).collect::<Vec<_>>(),
        p.composite.genus().unwrap(),
        report.is_valid()
    );
}
