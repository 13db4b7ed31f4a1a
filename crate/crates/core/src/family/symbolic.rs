//! The family as polynomials in `X, Y, xt, yt` (and `x1, y1` for the
//! elliptic side), with every identity reduced modulo the curve relations.

use crate::exactmath::{int, resultant, AlgebraError, MPoly, Monomial, RingRelation, UPoly, Rat, Var};

fn v(x: Var) -> MPoly {
    MPoly::var(x)
}

fn c(n: i64) -> MPoly {
    MPoly::int(n)
}

/// `X² − 1`, the denominator of the bielliptic projection.
pub fn d_poly() -> MPoly {
    &v(Var::X).pow(2) - &c(1)
}

/// `f(X) = −(xt+1)(X²−1)(3X⁴ + 3(xt−1)X² + xt² − xt + 1)`.
pub fn sextic() -> MPoly {
    let (x, xt) = (v(Var::X), v(Var::Xt));
    let quartic = &(&(&c(3) * &x.pow(4)) + &(&(&c(3) * &(&xt - &c(1))) * &x.pow(2))) + &(&(&xt.pow(2) - &xt) + &c(1));
    -(&(&(&xt + &c(1)) * &d_poly()) * &quartic)
}

/// Relations `Y² = f(X)` and `yt² = xt³ + 1`.
pub fn curve_relations() -> RingRelation {
    let y = v(Var::Y);
    let yt = v(Var::Yt);
    let xt = v(Var::Xt);
    RingRelation::new(vec![
        (Var::Y, &y.pow(2) - &sextic()),
        (Var::Yt, &yt.pow(2) - &(&xt.pow(3) + &c(1))),
    ])
    .expect("well-formed relations")
}

/// Numerator of `φ₁` in `x1, y1, xt, yt`:
/// `−(3xt²x1 + xt³ + 4)y1 + (1+yt)x1³ + 3xt(yt−1)x1² + 3xt²x1 + 4yt − xt³`.
pub fn phi1_numerator() -> MPoly {
    let (x1, y1, xt, yt) = (v(Var::X1), v(Var::Y1), v(Var::Xt), v(Var::Yt));
    let a = &(&(&c(3) * &xt.pow(2)) * &x1) + &(&xt.pow(3) + &c(4));
    let mut n = -(&a * &y1);
    n = &n + &(&(&c(1) + &yt) * &x1.pow(3));
    n = &n + &(&(&(&c(3) * &xt) * &(&yt - &c(1))) * &x1.pow(2));
    n = &n + &(&(&c(3) * &xt.pow(2)) * &x1);
    n = &n + &(&(&c(4) * &yt) - &xt.pow(3));
    n
}

/// Denominator of `φ₁`: `2(x1 − xt)³`.
pub fn phi1_denominator() -> MPoly {
    &c(2) * &(&v(Var::X1) - &v(Var::Xt)).pow(3)
}

/// Numerator of the closed form of `φ`:
/// `(xt−2)²X²(Y−3yt) + 4(xt²−xt+1)(yt−Y) + (xt²+2xt+1−3yt)X⁶ − 6yt(xt−2)X⁴`.
pub fn closed_numerator() -> MPoly {
    let (x, y, xt, yt) = (v(Var::X), v(Var::Y), v(Var::Xt), v(Var::Yt));
    let t1 = &(&(&xt - &c(2)).pow(2) * &x.pow(2)) * &(&y - &(&c(3) * &yt));
    let t2 = &(&c(4) * &(&(&xt.pow(2) - &xt) + &c(1))) * &(&yt - &y);
    let t3 = &(&(&(&xt.pow(2) + &(&c(2) * &xt)) + &c(1)) - &(&c(3) * &yt)) * &x.pow(6);
    let t4 = &(&(&c(6) * &yt) * &(&xt - &c(2))) * &x.pow(4);
    &(&(&t1 + &t2) + &t3) - &t4
}

/// Denominator of the closed form: `2(1+xt)²X⁶`.
pub fn closed_denominator() -> MPoly {
    &(&c(2) * &(&c(1) + &v(Var::Xt)).pow(2)) * &v(Var::X).pow(6)
}

/// Substitutes `var_i = num_i / den` with weights `w_i` into `p` and
/// multiplies by `den^total`. Fails if some monomial has weight above `total`.
pub fn clear_denominators(p: &MPoly, subs: &[(Var, MPoly, u16)], den: &MPoly, total: u16) -> Option<MPoly> {
    let mut out = MPoly::zero();
    for (m, coef) in p.terms() {
        let mut weight = 0u16;
        let mut rest = *m;
        let mut term = MPoly::one();
        for (var, num, w) in subs {
            let e = m.exp(*var);
            weight += e * w;
            rest = rest.with_exp(*var, 0);
            term = &term * &num.pow(e as u32);
        }
        let k = total.checked_sub(weight)?;
        term = &(&term * &den.pow(k as u32)) * &MPoly::term(coef.clone(), rest);
        out = &out + &term;
    }
    Some(out)
}

/// `φ₂` substitution: `x1 = −(X² + xt)/(X² − 1)`, `y1 = Y/(X² − 1)²`.
fn phi2_subs() -> Vec<(Var, MPoly, u16)> {
    let x1_num = -(&v(Var::X).pow(2) + &v(Var::Xt));
    vec![(Var::X1, x1_num, 1), (Var::Y1, v(Var::Y), 2)]
}

/// `(y1² − x1³ − 1)∘φ₂ · (X²−1)⁴`, reduced. Zero iff `φ₂` lands on `E`.
pub fn phi2_on_curve_residue() -> MPoly {
    let (x1, y1) = (v(Var::X1), v(Var::Y1));
    let e = &(&y1.pow(2) - &x1.pow(3)) - &c(1);
    let cleared = clear_denominators(&e, &phi2_subs(), &d_poly(), 4).expect("weights fit");
    curve_relations().reduce(&cleared)
}

/// `N₁∘φ₂ · (X²−1)³`, a polynomial since `N₁` has weight at most 3.
pub fn phi1_numerator_pulled_back() -> MPoly {
    clear_denominators(&phi1_numerator(), &phi2_subs(), &d_poly(), 3).expect("weights fit")
}

/// Cross-multiplied difference between `φ₁∘φ₂` and the closed form.
///
/// `x1 − xt = −(1+xt)X²/(X²−1)`, so `φ₁∘φ₂ = N₁D³ / (−2(1+xt)³X⁶)` and the
/// two agree iff `N₁D³ + (1+xt)·N_closed ≡ 0`.
pub fn composition_residue() -> MPoly {
    let lhs = phi1_numerator_pulled_back();
    let rhs = &(&c(1) + &v(Var::Xt)) * &closed_numerator();
    curve_relations().reduce(&(&lhs + &rhs))
}

/// Also checks the denominator step used by [`composition_residue`]:
/// `(x1 − xt)·(X²−1) = −(1+xt)X²` after substitution.
pub fn denominator_residue() -> MPoly {
    let diff = &v(Var::X1) - &v(Var::Xt);
    let cleared = clear_denominators(&diff, &phi2_subs(), &d_poly(), 1).expect("weights fit");
    &cleared + &(&(&c(1) + &v(Var::Xt)) * &v(Var::X).pow(2))
}

/// Splits `N = α + βY` (with `N` reduced, so at most linear in `Y`).
pub fn split_y(p: &MPoly) -> (MPoly, MPoly) {
    let co = p.coefficients_in(Var::Y);
    assert!(co.len() <= 2, "reduce before splitting");
    (co.first().cloned().unwrap_or_else(MPoly::zero), co.get(1).cloned().unwrap_or_else(MPoly::zero))
}

/// `X⁶`-coefficient of `α² − β²f` and the residues of the lower ones.
///
/// Multiplying by the conjugate gives `φ = (α² − β²f)/(δ(α − βY))`. The
/// numerator is divisible by `X⁶` modulo the parameter curve exactly when
/// the lower coefficients reduce to zero, and then
/// `φ(0, yt) = top / (2(1+xt)² · 8yt(xt² − xt + 1))`.
fn removable_parts() -> (MPoly, Vec<MPoly>) {
    let rel = curve_relations();
    let (alpha, beta) = split_y(&closed_numerator());
    let norm = rel.reduce(&(&alpha.pow(2) - &(&beta.pow(2) * &sextic())));
    let coeffs = norm.coefficients_in(Var::X);
    let low: Vec<MPoly> = (0..6).map(|k| rel.reduce(coeffs.get(k).unwrap_or(&MPoly::zero()))).collect();
    (coeffs.get(6).cloned().unwrap_or_else(MPoly::zero), low)
}

/// Numerator of the free value `z* = (y(2T) + 1)/2` over `16yt³`, with
/// `T = (xt, yt)` and `y(2T) = (xt⁶ + 20xt³ − 8)/(8yt³)`.
pub fn free_value_numerator() -> MPoly {
    let (xt, yt) = (v(Var::Xt), v(Var::Yt));
    &(&(&xt.pow(6) + &(&c(20) * &xt.pow(3))) - &c(8)) + &(&c(8) * &yt.pow(3))
}

/// Residue of `φ(0, yt) − (xt⁶ + 20xt³ − 8 + 8yt³)/(16yt³)`, cross-multiplied
/// (after the common factor `16yt`), plus the low-coefficient residues that
/// make the cancellation at `(0, yt)` exact. Both must vanish.
pub fn branch_point_residues() -> (MPoly, Vec<MPoly>) {
    let (top, low) = removable_parts();
    let (xt, yt) = (v(Var::Xt), v(Var::Yt));
    let quad = &(&xt.pow(2) - &xt) + &c(1);
    let lhs = &top * &yt.pow(2);
    let rhs = &(&free_value_numerator() * &(&c(1) + &xt).pow(2)) * &quad;
    (curve_relations().reduce(&(&lhs - &rhs)), low)
}

/// Residue of `φ(0, yt) − xt(xt³ − 8)/(4(xt³ + 1))`, cross-multiplied. This
/// right-hand side is the `x`-coordinate of `2T`, not the value of `φ`, so
/// the residue is a nonzero polynomial.
pub fn x_double_residue() -> MPoly {
    let (top, _) = removable_parts();
    let (xt, yt) = (v(Var::Xt), v(Var::Yt));
    let quad = &(&xt.pow(2) - &xt) + &c(1);
    let den = &(&(&c(16) * &(&c(1) + &xt).pow(2)) * &yt) * &quad;
    let lhs = &(&top * &c(4)) * &(&xt.pow(3) + &c(1));
    let rhs = &(&xt * &(&xt.pow(3) - &c(8))) * &den;
    curve_relations().reduce(&(&lhs - &rhs))
}

/// Collision polynomial in `u = xt³`: `z* ∈ {0, 1}` iff `y(2T) = ∓1` iff
/// `(u² + 20u − 8)² − 64(u + 1)³ = 0`.
pub fn collision_polynomial() -> UPoly<Rat> {
    let u = UPoly::new(vec![int(0), int(1)]);
    let a = u.mul(&u).add(&u.scale(&int(20))).sub(&UPoly::constant(int(8)));
    let b = u.add(&UPoly::one()).pow(3).scale(&int(64));
    a.mul(&a).sub(&b)
}

/// The conjugate factor `α − βY` at `(0, yt)`, reduced; it equals `8yt(xt²−xt+1)`.
pub fn conjugate_at_branch_point() -> MPoly {
    let (alpha, beta) = split_y(&closed_numerator());
    let conj = &alpha - &(&beta * &v(Var::Yt));
    curve_relations().reduce(&conj.eval_var(Var::X, &int(0)))
}

/// Partial derivative in `var`.
pub fn derivative(p: &MPoly, var: Var) -> MPoly {
    let co = p.coefficients_in(var);
    let terms: Vec<MPoly> = co.iter().enumerate().skip(1).map(|(k, c)| c.scale(&int(k as i64))).collect();
    MPoly::from_coefficients_in(var, &terms)
}

/// `Res_X(f, ∂f/∂X)`, a polynomial in `xt`; its zeros and `xt = −1` are
/// where the sextic degenerates.
pub fn discriminant() -> Result<UPoly<Rat>, AlgebraError> {
    let f = sextic();
    let r = resultant(&f, &derivative(&f, Var::X), Var::X)?;
    r.to_upoly(Var::Xt).ok_or(AlgebraError::ZeroPolynomial)
}

/// Squarefree factors (monic, with multiplicity) of the discriminant.
pub fn degenerate_locus() -> Result<Vec<(UPoly<Rat>, u32)>, AlgebraError> {
    let d = discriminant()?;
    if d.is_zero() {
        return Err(AlgebraError::ZeroPolynomial);
    }
    Ok(d.squarefree_decomposition().1)
}

/// `φ₁` at the symbolic point `(p/xt², q/xt³)`: returns the reduced
/// cleared numerator, zero iff `φ₁` vanishes there.
pub fn phi1_numerator_at(p: &MPoly, q: &MPoly) -> MPoly {
    let xt = v(Var::Xt);
    // x1 has weight 2 and y1 weight 3 in powers of xt; total 9 covers x1³ and x1·y1.
    let n = phi1_numerator();
    let mut out = MPoly::zero();
    for (m, coef) in n.terms() {
        let (a, b) = (m.exp(Var::X1), m.exp(Var::Y1));
        let rest: Monomial = m.with_exp(Var::X1, 0).with_exp(Var::Y1, 0);
        let k = 9 - 2 * a - 3 * b;
        let t = &(&(&p.pow(a as u32) * &q.pow(b as u32)) * &xt.pow(k as u32)) * &MPoly::term(coef.clone(), rest);
        out = &out + &t;
    }
    RingRelation::parameter_curve().reduce(&out)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi2_lands_on_the_elliptic_curve() {
        assert!(phi2_on_curve_residue().is_zero());
        assert!(denominator_residue().is_zero());
    }

    #[test]
    fn closed_form_equals_the_composition() {
        assert!(composition_residue().is_zero());
    }

    #[test]
    fn branch_point_value() {
        let (r, low) = branch_point_residues();
        assert!(low.iter().all(MPoly::is_zero));
        assert!(r.is_zero());
        let conj = conjugate_at_branch_point();
        let xt = v(Var::Xt);
        let expect = &(&c(8) * &v(Var::Yt)) * &(&(&xt.pow(2) - &xt) + &c(1));
        assert_eq!(conj, expect);
        assert!(!x_double_residue().is_zero());
    }

    #[test]
    fn collisions_sit_at_u_zero_and_eight() {
        // u(u − 8)³
        let u = UPoly::new(vec![int(0), int(1)]);
        let expect = u.mul(&u.sub(&UPoly::constant(int(8))).pow(3));
        assert_eq!(collision_polynomial(), expect);
    }

    #[test]
    fn phi1_ramification_points() {
        let (xt, yt) = (v(Var::Xt), v(Var::Yt));
        // ↦ 0
        let p0 = &c(2) * &(&c(1) - &yt);
        let q0 = &(&(&c(4) * &yt) - &xt.pow(3)) - &c(4);
        assert!(phi1_numerator_at(&p0, &q0).is_zero());
        // ↦ 1: numerator minus denominator
        let p1 = &c(2) * &(&c(1) + &yt);
        let q1 = &(&(&c(4) * &yt) + &xt.pow(3)) + &c(4);
        let num = phi1_numerator_at(&p1, &q1);
        // denominator 2(x1 − xt)³ scaled by xt⁹ is 2xt³(p1 − xt³)³
        let den = RingRelation::parameter_curve().reduce(&(&(&c(2) * &xt.pow(3)) * &(&p1 - &xt.pow(3)).pow(3)));
        assert!((&num - &den).is_zero());
    }

    #[test]
    fn discriminant_vanishes_exactly_where_yt_does() {
        let d = discriminant().unwrap();
        assert!(!d.is_zero());
        let locus = degenerate_locus().unwrap();
        // every factor divides (xt³ + 1)
        let cubic = UPoly::new(vec![int(1), int(0), int(0), int(1)]);
        for (p, _) in &locus {
            assert!(cubic.div_rem(p).1.is_zero() || p.degree() == Some(0), "{p}");
        }
        assert_eq!(locus.iter().map(|(p, _)| p.degree().unwrap()).sum::<usize>(), 3);
    }
}
