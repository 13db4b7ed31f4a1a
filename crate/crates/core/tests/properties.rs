//! Invariants of constellations, their JSON form, and the exact kernel.

use genus2_hurwitz::constellation::{
    absorb_last_transposition, merge_cycles, split_cycle, Constellation, ConstellationJson, Perm,
};
use genus2_hurwitz::exactmath::{int, Field, Quad, Rat, UPoly};
use proptest::prelude::*;

fn perm(d: usize) -> impl Strategy<Value = Perm> {
    Just((0..d as u8).collect::<Vec<u8>>())
        .prop_shuffle()
        .prop_map(|v| Perm::from_images(v).unwrap())
}

/// A random tuple closed up by its inverse product, plus a relabeling.
fn tuple() -> impl Strategy<Value = (Constellation, Perm)> {
    (2usize..8).prop_flat_map(|d| {
        (prop::collection::vec(perm(d), 1..4), perm(d)).prop_map(move |(mut s, h)| {
            let last = s.iter().fold(Perm::identity(d), |a, p| a.then(p)).inverse();
            s.push(last);
            (Constellation::new(s).unwrap(), h)
        })
    })
}

/// Brute-force Riemann-Hurwitz: 2g - 2 = -2d + Σ (d - #orbits of σ).
fn genus_by_orbits(c: &Constellation) -> Option<u32> {
    let d = c.degree() as i64;
    let ram: i64 = c
        .slots()
        .iter()
        .map(|p| {
            let mut seen = vec![false; c.degree()];
            let mut orbits = 0;
            for s in 0..c.degree() {
                if !seen[s] {
                    orbits += 1;
                    let mut x = s;
                    while !seen[x] {
                        seen[x] = true;
                        x = p.apply(x);
                    }
                }
            }
            d - orbits
        })
        .sum();
    let twice = ram - 2 * d + 2;
    (twice >= 0 && twice % 2 == 0).then_some((twice / 2) as u32)
}

proptest! {
    #[test]
    fn canonical_form_is_a_class_invariant((c, h) in tuple()) {
        let conj = c.relabel(&h);
        prop_assert_eq!(c.canonical(), conj.canonical());
        prop_assert_eq!(c.is_transitive(), conj.is_transitive());
        if c.is_transitive() {
            prop_assert!(c.is_equivalent(&conj));
            let k = c.canonical().unwrap();
            prop_assert!(k.product_is_identity());
            prop_assert_eq!(k.canonical(), Some(k.clone()));
        }
    }

    #[test]
    fn genus_matches_orbit_count((c, _) in tuple()) {
        // Disconnected tuples can push the formula negative; both sides then refuse.
        prop_assert_eq!(c.genus().ok(), genus_by_orbits(&c));
    }

    #[test]
    fn json_round_trip((c, _) in tuple()) {
        let back = Constellation::from_json(&c.to_json()).unwrap();
        prop_assert_eq!(&back, &c);
        let j = ConstellationJson::from(&c);
        prop_assert_eq!(j.format, 1);
    }

    #[test]
    fn merge_then_absorb_is_identity((c, _) in tuple(), slot in 0usize..4, a in 1usize..8, b in 1usize..8) {
        let slot = slot % c.slots().len();
        let d = c.degree();
        let (a, b) = ((a - 1) % d + 1, (b - 1) % d + 1);
        prop_assume!(a != b);
        let p = c.slot(slot);
        let done = if p.same_cycle(a, b) { split_cycle(&c, slot, a, b) } else { merge_cycles(&c, slot, a, b) }.unwrap();
        prop_assert!(done.product_is_identity());
        prop_assert_eq!(done.slot(slot).num_cycles() as i64 - p.num_cycles() as i64, if p.same_cycle(a, b) { 1 } else { -1 });
        let back = absorb_last_transposition(&done, slot).unwrap();
        prop_assert_eq!(back.slots(), c.slots());
    }

    #[test]
    fn quadratic_field_inverse(a in -50i64..50, b in -50i64..50, r in prop::sample::select(vec![2i64, 3, 5, -1, -7])) {
        prop_assume!(a != 0 || b != 0);
        let x = Quad::rational(int(a)).add(&Quad::sqrt_of(int(r)).mul(&Quad::rational(int(b))));
        let inv = Quad::one().div(&x).unwrap();
        prop_assert_eq!(x.mul(&inv), Quad::one());
    }

    #[test]
    fn squarefree_part_divides_and_is_squarefree(c in prop::collection::vec(-6i64..6, 1..5), k in 1u32..4) {
        let p = UPoly::<Rat>::new(c.into_iter().map(int).collect());
        prop_assume!(p.degree().unwrap_or(0) > 0);
        let q = p.pow(k);
        let s = q.squarefree_part();
        prop_assert!(s.is_squarefree());
        prop_assert!(q.div_exact(&s).is_some());
        prop_assert_eq!(s.degree(), p.squarefree_part().degree());
    }
}
