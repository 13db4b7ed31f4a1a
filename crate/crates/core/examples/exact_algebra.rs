//! The exact kernel on its own: resultants, squarefree parts, curve reduction.
//!
//! `cargo run --example exact_algebra`

use genus2_hurwitz::exactmath::{int, resultant, MPoly, RingRelation, UPoly, Var};

fn main() {
    let x = MPoly::var(Var::X);
    let y = MPoly::var(Var::Y);
    // Intersect the unit circle with the line y = x.
    let circle = &(&x.pow(2) + &y.pow(2)) - &MPoly::one();
    let line = &y - &x;
    let r = resultant(&circle, &line, Var::Y).unwrap();
    println!("Res_y(x^2 + y^2 - 1, y - x) = {r}");

    let p = UPoly::new(vec![int(-1), int(1)]).pow(3).mul(&UPoly::new(vec![int(2), int(0), int(1)]));
    println!("p = {p}\n  squarefree part {}\n  decomposition {:?}", p.squarefree_part(), p.squarefree_decomposition().1.iter().map(|(f, m)| format!("({f})^{m}")).collect::<Vec<_>>());

    // Reduce modulo y_t^2 = x_t^3 + 1.
    let rel = RingRelation::parameter_curve();
    let yt = MPoly::var(Var::Yt);
    let xt = MPoly::var(Var::Xt);
    let q = &yt.pow(4) - &(&xt.pow(6) + &xt.pow(3).scale(&int(2)));
    println!("y_t^4 - x_t^6 - 2x_t^3 reduces to {}", rel.reduce(&q));
}
