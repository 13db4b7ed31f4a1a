//! Exhaustive search in degree 4: three 4-cycles and one transposition.
//!
//! `cargo run --example search_degree4`

use genus2_hurwitz::constellation::{search, BranchData, Constellation, Perm, SearchOptions, SearchOutcome};

fn main() {
    let data: BranchData = "d=4; 4; 4; 4; free".parse().unwrap();
    println!("branch data {data}, cover genus {}", data.cover_genus().unwrap());

    let SearchOutcome::Found(classes) = search(&data, &SearchOptions::exhaustive()).unwrap() else {
        panic!("degree 4 should be realizable");
    };
    println!("{} class(es) up to simultaneous conjugation:", classes.len());
    for c in &classes {
        let perms: Vec<String> = c.slots().iter().map(Perm::to_string).collect();
        println!("  {}   genus {}", perms.join(" "), c.genus().unwrap());
    }

    // A hand-written tuple with the same types lands in one of those classes.
    let mine = Constellation::from_cycles(4, &[vec![vec![1, 2, 3, 4]], vec![vec![1, 3, 2, 4]], vec![vec![1, 3, 4, 2]], vec![vec![1, 2]]])
        .unwrap();
    println!("(1234)(1324)(1342)(12): product is identity = {}", mine.product_is_identity());
    let hit = classes.iter().position(|c| c.is_equivalent(&mine));
    println!("equivalent to class #{}", hit.map(|i| i + 1).expect("present"));

    // Odd total ramification is ruled out before any enumeration.
    let odd: BranchData = "d=3; 3; 3; free".parse().unwrap();
    println!("{odd}: {:?}", search(&odd, &SearchOptions::default()).unwrap());
}
