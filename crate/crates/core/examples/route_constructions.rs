//! Covers built from a smaller search by merging or splitting cycles.
//!
//! `cargo run --release --example route_constructions`
//! Pass `--all` to include the degree-18 route (several seconds, ~1 GB).

use genus2_hurwitz::constellation::{merge_cycles, Route, RouteOp, SearchOptions};

fn main() {
    let all = std::env::args().any(|a| a == "--all");
    for route in Route::all() {
        if route.needs_force && !all {
            println!("{:<12} skipped (pass --all)", route.name);
            continue;
        }
        let opts = SearchOptions {
            force: route.needs_force,
            ..SearchOptions::default()
        };
        let r = route.run(&opts).expect("route succeeds");
        let op = if route.op == RouteOp::Merge { "merge" } else { "split" };
        println!(
            "{:<12} seed [{}] -> {op} {:?} in slot {} -> [{}], genus {}",
            route.name,
            route.seed,
            r.pivots,
            route.slot,
            r.target,
            r.result.genus().unwrap()
        );
        assert!(r.result.validate(Some(&r.target.types)).is_valid());
    }

    // The primitive by hand: join the two 3-cycles of (135)(246).
    let route = Route::by_name("2-6-6").unwrap();
    let seed = route.run(&SearchOptions::default()).unwrap().seed;
    println!("\nseed slots: {:?}", seed.slots().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    let merged = merge_cycles(&seed, 2, 1, 2).unwrap();
    println!("after merging 1 and 2 in slot 2: {:?}", merged.slots().iter().map(|p| p.to_string()).collect::<Vec<_>>());
    println!("genus {} -> {}", seed.genus().unwrap(), merged.genus().unwrap());
}
