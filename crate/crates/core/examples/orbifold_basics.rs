//! Euler characteristics, branch excess and pullbacks of cone points.
//!
//! `cargo run --example orbifold_basics`

use genus2_hurwitz::orbifold::OrbifoldSignature;

fn main() {
    let s = OrbifoldSignature::finite(0, &[2, 3, 7]);
    println!("{s}: chi = {}, {:?}", s.euler_characteristic(), s.geometry());

    // b = 2 + d*chi; the deformable case is b = 1.
    for d in [6, 42, 84] {
        println!("  degree {d:>2}: b = {}", s.branch_excess(d));
    }

    // Totally ramified pullback in degree 42: every cone point becomes apparent.
    let r = s
        .pullback(42, &[vec![2; 21], vec![3; 14], vec![7; 6]])
        .expect("partitions of 42");
    println!("  degree 42, totally ramified: apparent = {}, excess = {}", r.apparent, r.excess);

    // A non-apparent pullback keeps residual cone points.
    let t = OrbifoldSignature::finite(0, &[3, 3, 6]);
    let r = t.pullback(6, &[vec![3, 3], vec![3, 3], vec![3, 3]]).unwrap();
    let residual: Vec<String> = r.residual_inverse_orders().iter().map(|q| q.to_string()).collect();
    println!("{t} pulled back by (3,3;3,3;3,3): residual e/p = [{}]", residual.join(", "));

    for sig in [&[2u32, 2, 2, 2][..], &[2, 3, 6], &[2, 4, 4], &[3, 3, 4]] {
        let s = OrbifoldSignature::finite(0, sig);
        println!("{s}: chi = {:>6} {:?}", s.euler_characteristic().to_string(), s.geometry());
    }
}
