use crate::exactmath::{Field, MPoly, Rat, UPoly, Var};

/// A point of `E: y² = x³ + 1` over a field.
#[derive(Clone, Debug, PartialEq)]
pub enum EllipticPoint<F> {
    Infinity,
    Affine(F, F),
}

impl<F: Field> EllipticPoint<F> {
    /// `None` if `(x, y)` is not on the curve.
    pub fn new(x: F, y: F) -> Option<Self> {
        let p = EllipticPoint::Affine(x, y);
        p.on_curve().then_some(p)
    }

    pub fn on_curve(&self) -> bool {
        match self {
            EllipticPoint::Infinity => true,
            EllipticPoint::Affine(x, y) => y.mul(y).sub(&x.mul(x).mul(x)).sub(&F::one()).is_zero(),
        }
    }

    pub fn neg(&self) -> Self {
        match self {
            EllipticPoint::Infinity => EllipticPoint::Infinity,
            EllipticPoint::Affine(x, y) => EllipticPoint::Affine(x.clone(), y.neg()),
        }
    }
}

/// `P ⊕ T` by the chord rule `x = a² − x₁ − x_t`, `y = −(ax + b)` with
/// `a = (y₁ − y_t)/(x₁ − x_t)`, `b = (x₁y_t − x_t y₁)/(x₁ − x_t)`; the
/// tangent rule when `P = T`, and infinity when `P = −T`.
pub fn ec_translate<F: Field>(p: &EllipticPoint<F>, t: &EllipticPoint<F>) -> EllipticPoint<F> {
    let ((x1, y1), (xt, yt)) = match (p, t) {
        (EllipticPoint::Infinity, _) => return t.clone(),
        (_, EllipticPoint::Infinity) => return p.clone(),
        (EllipticPoint::Affine(a, b), EllipticPoint::Affine(c, d)) => ((a, b), (c, d)),
    };
    let dx = x1.sub(xt);
    let (a, b) = if !dx.is_zero() {
        let a = y1.sub(yt).div(&dx).expect("dx nonzero");
        let b = x1.mul(yt).sub(&xt.mul(y1)).div(&dx).expect("dx nonzero");
        (a, b)
    } else if y1.add(yt).is_zero() {
        return EllipticPoint::Infinity;
    } else {
        // doubling: slope 3x²/(2y), line y = a x + b through the point
        let a = x1.mul(x1).mul_int(3).div(&y1.mul_int(2)).expect("y nonzero");
        let b = y1.sub(&a.mul(x1));
        (a, b)
    };
    let x = a.mul(&a).sub(x1).sub(xt);
    let y = a.mul(&x).add(&b).neg();
    EllipticPoint::Affine(x, y)
}

/// Evaluates a polynomial at field values for the listed variables; any
/// other variable must be absent.
pub fn eval_mpoly<F: Field>(p: &MPoly, values: &[(Var, F)]) -> F {
    let mut acc = F::zero();
    for (m, c) in p.terms() {
        let mut t = F::from_rat(c);
        for var in Var::ALL {
            let e = m.exp(var);
            if e == 0 {
                continue;
            }
            let val = &values.iter().find(|(v, _)| *v == var).expect("value for every variable").1;
            for _ in 0..e {
                t = t.mul(val);
            }
        }
        acc = acc.add(&t);
    }
    acc
}

/// The univariate polynomial in `var` obtained by evaluating the others.
pub fn to_upoly_in<F: Field>(p: &MPoly, var: Var, values: &[(Var, F)]) -> UPoly<F> {
    UPoly::new(p.coefficients_in(var).iter().map(|c| eval_mpoly(c, values)).collect())
}

/// `φ₁(x₁, y₁)`; `None` at the pole `x₁ = x_t`.
pub fn phi1<F: Field>(x1: &F, y1: &F, xt: &F, yt: &F) -> Option<F> {
    let vals = [(Var::X1, x1.clone()), (Var::Y1, y1.clone()), (Var::Xt, xt.clone()), (Var::Yt, yt.clone())];
    let num = eval_mpoly(&super::symbolic::phi1_numerator(), &vals);
    let den = eval_mpoly(&super::symbolic::phi1_denominator(), &vals);
    num.div(&den)
}

/// `φ₂(X, Y) = (−(X² + x_t)/(X² − 1), Y/(X² − 1)²)`, infinity when `X² = 1`.
pub fn phi2<F: Field>(x: &F, y: &F, xt: &F) -> EllipticPoint<F> {
    let d = x.mul(x).sub(&F::one());
    if d.is_zero() {
        return EllipticPoint::Infinity;
    }
    let x1 = x.mul(x).add(xt).neg().div(&d).expect("checked");
    let y1 = y.div(&d.mul(&d)).expect("checked");
    EllipticPoint::Affine(x1, y1)
}

pub(crate) fn rat_is_square(r: &Rat) -> Option<Rat> {
    use num_traits::Signed;
    if r.is_negative() {
        return None;
    }
    let (n, d) = (r.numer(), r.denom());
    let (sn, sd) = (n.sqrt(), d.sqrt());
    (&sn * &sn == *n && &sd * &sd == *d).then(|| Rat::new(sn, sd))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::{int, rat};

    fn pt(x: i64, y: i64) -> EllipticPoint<Rat> {
        EllipticPoint::new(int(x), int(y)).unwrap()
    }

    #[test]
    fn translation_rules() {
        let s = ec_translate(&pt(2, 3), &pt(0, 1));
        assert!(s.on_curve());
        // (2,3) ⊕ (0,1): slope 1, x = 1 − 2 − 0 = −1, y = −(−1 + 1) = 0
        assert_eq!(s, pt(-1, 0));
        assert_eq!(ec_translate(&pt(2, 3), &pt(2, -3)), EllipticPoint::Infinity);
        assert_eq!(ec_translate(&pt(0, -1), &pt(0, 1)), EllipticPoint::Infinity);
        let dbl = ec_translate(&pt(2, 3), &pt(2, 3));
        assert_eq!(dbl, pt(0, 1));
        assert!(EllipticPoint::new(int(1), int(1)).is_none());
    }

    #[test]
    fn torsion_closes_up() {
        // E(ℚ) is cyclic of order 6, generated by (2, 3)
        let g = pt(2, 3);
        let mut p = g.clone();
        let mut n = 1;
        while p != EllipticPoint::Infinity {
            p = ec_translate(&p, &g);
            n += 1;
        }
        assert_eq!(n, 6);
    }

    #[test]
    fn square_test() {
        assert_eq!(rat_is_square(&rat(9, 4)), Some(rat(3, 2)));
        assert_eq!(rat_is_square(&int(2)), None);
        assert_eq!(rat_is_square(&int(-4)), None);
    }
}
