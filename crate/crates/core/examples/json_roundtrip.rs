//! Writing a searched constellation as JSON, reading it back, re-validating.
//!
//! `cargo run --example json_roundtrip`

use genus2_hurwitz::constellation::{search, BranchData, Constellation, SearchOptions};

fn main() {
    let data: BranchData = "d=6; 3,3; 3,3; 6; free".parse().unwrap();
    let found = search(&data, &SearchOptions::default()).unwrap();
    let c = match found {
        genus2_hurwitz::constellation::SearchOutcome::Found(v) => v.into_iter().next().unwrap(),
        other => panic!("{other:?}"),
    };
    let text = c.to_json();
    println!("{text}");
    let back = Constellation::from_json(&text).unwrap();
    assert_eq!(back, c);
    println!("reloaded: valid = {}, genus {}", back.validate(Some(&data.types)).is_valid(), back.genus().unwrap());
}
