//! The admissible deformable branch data: candidate triples and both tables.
//!
//! `cargo run --example classify_tables`

use genus2_hurwitz::classify;

fn main() {
    let triples = classify::candidate_triples();
    println!("{} hyperbolic triples pass the inequalities:", triples.len());
    print!("{}", classify::render_triples(&triples));
    let ex: Vec<String> = classify::excluded_triples()
        .iter()
        .map(|t| format!("({},{},{})", t[0], t[1], t[2]))
        .collect();
    println!("dropped because some order does not divide the degree: {}", ex.join(" "));

    println!("\nthree cone points:");
    let hyp = classify::table_hypergeometric();
    print!("{}", classify::render_table(&hyp, true));
    println!("\nother hyperbolic bases:");
    let gen = classify::table_general();
    print!("{}", classify::render_table(&gen, false));

    assert!(hyp.iter().chain(&gen).all(classify::row_is_consistent));
}
