//! Exact checks of the explicit degree-6 family over the parameter curve
//! `y_t^2 = x_t^3 + 1`.
//!
//! `cargo run --release --example verify_family [x_t ...]`

use genus2_hurwitz::exactmath::Rat;
use genus2_hurwitz::family::{self, symbolic, FamilyParams};

fn main() {
    let params: Vec<FamilyParams> = std::env::args()
        .skip(1)
        .map(|a| FamilyParams::from_xt(a.parse::<Rat>().expect("rational x_t")))
        .collect();

    println!("collision polynomial in u = x_t^3: {}", symbolic::collision_polynomial());
    println!("literal x(2T) reading of the free value, residue: {} terms", symbolic::x_double_residue().num_terms());

    let report = family::verify_family(&params, 3);
    print!("{}", report.render_text());
}
