//! Ramification of the closed form at a specialization, read from exact
//! divisors on the hyperelliptic model.

use std::fmt;

use serde::{Deserialize, Serialize};

use super::elliptic::{ec_translate, phi1, phi2, rat_is_square, to_upoly_in, EllipticPoint};
use super::symbolic;
use crate::exactmath::{coprime_basis, int, Field, Quad, Rat, UPoly, Var};

/// Writes `r = c²·m` with `m` an integer free of small square factors.
fn square_split(r: &Rat) -> (Rat, Rat) {
    use num_bigint::BigInt;
    use num_traits::{One, Signed, ToPrimitive};
    let den = r.denom().clone();
    let mut m: BigInt = r.numer() * &den;
    let mut c = Rat::new(BigInt::one(), den);
    let mut p = 2u64;
    while p <= 1_000_000 && BigInt::from(p * p) <= m.abs() {
        let pp = BigInt::from(p * p);
        while (&m % &pp).to_u64() == Some(0) {
            m /= &pp;
            c *= Rat::from_integer(BigInt::from(p));
        }
        p += 1;
    }
    (c, Rat::from_integer(m))
}

/// A parameter point `(x_t, y_t)` on `E` with `x_t ∈ ℚ` and `y_t` in `ℚ` or
/// in `ℚ(√(x_t³+1))`.
#[derive(Clone, Debug, PartialEq)]
pub struct FamilyParams {
    pub xt: Rat,
    pub yt: Quad,
}

impl FamilyParams {
    /// `y_t = +√(x_t³ + 1)`, rational when possible.
    pub fn from_xt(xt: Rat) -> Self {
        let r = &xt * &xt * &xt + int(1);
        let yt = match rat_is_square(&r) {
            Some(s) => Quad::rational(s),
            None => {
                let (c, m) = square_split(&r);
                Quad::sqrt_of(m).mul(&Quad::rational(c))
            }
        };
        FamilyParams { xt, yt }
    }

    /// A rational point; `None` if it is not on `E`.
    pub fn rational(xt: Rat, yt: Rat) -> Option<Self> {
        (&yt * &yt == &xt * &xt * &xt + int(1)).then(|| FamilyParams {
            xt,
            yt: Quad::rational(yt),
        })
    }

    pub fn is_rational(&self) -> bool {
        self.yt.as_rational().is_some()
    }

    fn xt_q(&self) -> Quad {
        Quad::rational(self.xt.clone())
    }

    fn values(&self) -> [(Var, Quad); 2] {
        [(Var::Xt, self.xt_q()), (Var::Yt, self.yt.clone())]
    }

    /// The double `2T` of `T = (x_t, y_t)`; `φ₂` sends `(0, y_t)` to `T` and
    /// the translation then sends `T` to `2T`.
    pub fn double(&self) -> EllipticPoint<Quad> {
        let t = EllipticPoint::Affine(self.xt_q(), self.yt.clone());
        ec_translate(&t, &t)
    }

    /// `x(2T) = x_t(x_t³ − 8)/(4(x_t³ + 1))`.
    pub fn double_x(&self) -> Option<Rat> {
        let c = &self.xt * &self.xt * &self.xt;
        let den = (&c + int(1)) * int(4);
        (den != int(0)).then(|| &self.xt * (&c - int(8)) / den)
    }

    /// Free critical value `(y(2T) + 1)/2`; `None` when `y_t = 0`.
    pub fn free_value(&self) -> Option<Quad> {
        if self.yt.is_zero() {
            return None;
        }
        match self.double() {
            EllipticPoint::Affine(_, y) => Some(y.add(&Quad::one()).div(&Quad::rational(int(2))).unwrap()),
            EllipticPoint::Infinity => None,
        }
    }

    pub fn field_name(&self) -> String {
        match self.yt.radicand() {
            Some(r) if !self.is_rational() => format!("Q(sqrt({r}))"),
            _ => "Q".into(),
        }
    }
}

impl fmt::Display for FamilyParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(xt, yt) = ({}, {})", self.xt, self.yt)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", content = "reason", rename_all = "kebab-case")]
pub enum Status {
    Admissible,
    Degenerate(String),
    Collision(String),
}

impl std::fmt::Display for Status {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Status::Admissible => write!(f, "admissible"),
            Status::Degenerate(m) => write!(f, "degenerate: {m}"),
            Status::Collision(m) => write!(f, "collision: {m}"),
        }
    }
}

/// Degeneracy and collision diagnostics, computed rather than presumed.
pub fn status(p: &FamilyParams) -> Status {
    let c = &p.xt * &p.xt * &p.xt + int(1);
    if p.xt == int(-1) {
        return Status::Degenerate("x_t + 1 = 0: the sextic loses its leading term".into());
    }
    if c == int(0) {
        return Status::Degenerate("x_t^2 - x_t + 1 = 0: the discriminant vanishes".into());
    }
    let f = sextic_at(p);
    if !f.is_squarefree() {
        return Status::Degenerate("the sextic has a repeated root".into());
    }
    match p.free_value() {
        Some(z) if z.is_zero() => Status::Collision("free value coincides with 0".into()),
        Some(z) if z.is_one() => Status::Collision("free value coincides with 1".into()),
        Some(_) => Status::Admissible,
        None => Status::Collision("free value coincides with infinity".into()),
    }
}

pub fn sextic_at(p: &FamilyParams) -> UPoly<Quad> {
    to_upoly_in(&symbolic::sextic(), Var::X, &p.values())
}

/// `(α, β, δ)` with `φ = (α + βY)/δ`.
pub fn closed_form_at(p: &FamilyParams) -> (UPoly<Quad>, UPoly<Quad>, UPoly<Quad>) {
    let (a, b) = symbolic::split_y(&symbolic::closed_numerator());
    let vals = p.values();
    (
        to_upoly_in(&a, Var::X, &vals),
        to_upoly_in(&b, Var::X, &vals),
        to_upoly_in(&symbolic::closed_denominator(), Var::X, &vals),
    )
}

/// Points of the curve grouped by a factor of `K[X]` (all roots alike) or
/// at infinity, with the order of a function there.
#[derive(Clone, Debug, PartialEq)]
pub struct DivisorPart {
    pub place: String,
    pub count: usize,
    pub order: i64,
}

/// Divisor of `(α + βY)/δ` on `Y² = f(X)`, `deg f = 6` squarefree.
///
/// With `c = gcd(α, β)` and `n' = (α/c)² − (β/c)²f`: above a root of a
/// factor where `f` vanishes the single point has order
/// `2m_c + m_n − 2m_δ`; elsewhere one of the two points has
/// `m_c + m_n − m_δ` and its conjugate `m_c − m_δ`. At the two points at
/// infinity one side has `−max(deg α, deg β + 3)` and the other
/// `−deg n + max(…)`, both shifted by `deg δ`.
pub fn divisor<F: Field>(alpha: &UPoly<F>, beta: &UPoly<F>, delta: &UPoly<F>, f: &UPoly<F>) -> Vec<DivisorPart> {
    assert_eq!(f.degree(), Some(6));
    let c = alpha.gcd(beta);
    let a1 = alpha.div_exact(&c).expect("gcd divides");
    let b1 = beta.div_exact(&c).expect("gcd divides");
    let n1 = a1.mul(&a1).sub(&b1.mul(&b1).mul(f));
    let mut pieces = Vec::new();
    for p in [&c, &n1, delta, f] {
        if !p.is_zero() && !p.is_constant() {
            pieces.extend(p.squarefree_decomposition().1.into_iter().map(|(q, _)| q));
        }
    }
    let mult = |p: &UPoly<F>, b: &UPoly<F>| -> i64 {
        if p.is_zero() || p.is_constant() {
            0
        } else {
            p.multiplicity_of(b) as i64
        }
    };
    let mut out = Vec::new();
    for b in coprime_basis(&pieces) {
        let k = b.degree().unwrap();
        let (mc, mn, md) = (mult(&c, &b), mult(&n1, &b), mult(delta, &b));
        let name = format!("X root of degree-{k} factor");
        if mult(f, &b) > 0 {
            out.push(DivisorPart {
                place: format!("{name} (Weierstrass)"),
                count: k,
                order: 2 * mc + mn - 2 * md,
            });
        } else {
            out.push(DivisorPart {
                place: format!("{name}, zero side"),
                count: k,
                order: mc + mn - md,
            });
            out.push(DivisorPart {
                place: format!("{name}, other side"),
                count: k,
                order: mc - md,
            });
        }
    }
    let n = alpha.mul(alpha).sub(&beta.mul(beta).mul(f));
    let da = alpha.degree().map(|d| d as i64).unwrap_or(i64::MIN);
    let db = beta.degree().map(|d| d as i64 + 3).unwrap_or(i64::MIN);
    let m = da.max(db);
    let dd = delta.degree().unwrap() as i64;
    let dn = n.degree().unwrap() as i64;
    out.push(DivisorPart {
        place: "infinity, leading side".into(),
        count: 1,
        order: -m + dd,
    });
    out.push(DivisorPart {
        place: "infinity, other side".into(),
        count: 1,
        order: -dn + m + dd,
    });
    out.retain(|p| p.order != 0);
    out
}

/// Ramification indices over `z` (`None` for ∞), largest first.
pub fn fiber(p: &FamilyParams, z: Option<&Quad>) -> Vec<u32> {
    let (alpha, beta, delta) = closed_form_at(p);
    let f = sextic_at(p);
    let parts = match z {
        None => divisor(&alpha, &beta, &delta, &f)
            .into_iter()
            .filter(|d| d.order < 0)
            .map(|d| (d.count, (-d.order) as u32))
            .collect::<Vec<_>>(),
        Some(z) => {
            let az = alpha.sub(&delta.scale(z));
            divisor(&az, &beta, &delta, &f)
                .into_iter()
                .filter(|d| d.order > 0)
                .map(|d| (d.count, d.order as u32))
                .collect()
        }
    };
    let mut out: Vec<u32> = parts.into_iter().flat_map(|(n, e)| std::iter::repeat_n(e, n)).collect();
    out.sort_unstable_by(|a, b| b.cmp(a));
    out
}

/// The closed form at a point of the curve; `None` for ∞. The removable
/// point `(0, y_t)` is handled by multiplying through by the conjugate.
pub fn phi_closed(p: &FamilyParams, x: &Quad, y: &Quad) -> Result<Option<Quad>, String> {
    if p.xt == int(-1) {
        return Err("x_t = -1 is a degenerate member".into());
    }
    let (alpha, beta, delta) = closed_form_at(p);
    let f = sextic_at(p);
    if !y.mul(y).sub(&f.eval(x)).is_zero() {
        return Err("point is not on the curve".into());
    }
    let num = alpha.eval(x).add(&beta.eval(x).mul(y));
    let den = delta.eval(x);
    if !den.is_zero() {
        return Ok(num.div(&den));
    }
    if !num.is_zero() {
        return Ok(None);
    }
    let conj = alpha.eval(x).sub(&beta.eval(x).mul(y));
    if conj.is_zero() {
        return Err("both conjugates vanish; point is Weierstrass".into());
    }
    // (α² − β²f) / (δ · (α − βY)), with the common power of (X − x) removed.
    let norm = alpha.mul(&alpha).sub(&beta.mul(&beta).mul(&f));
    let lin = UPoly::linear_root(x);
    let (mn, md) = (norm.multiplicity_of(&lin), delta.multiplicity_of(&lin));
    if mn < md {
        return Ok(None);
    }
    if mn > md {
        return Ok(Some(Quad::zero()));
    }
    let pow = lin.pow(md);
    let nq = norm.div_exact(&pow).unwrap().eval(x);
    let dq = delta.div_exact(&pow).unwrap().eval(x);
    Ok(nq.div(&dq.mul(&conj)))
}

/// Outcome of the exact checks at one parameter point.
#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SpecializationReport {
    pub xt: String,
    pub yt: String,
    pub field: String,
    pub status: Status,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub profiles: Option<[Vec<u32>; 3]>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_value: Option<String>,
    /// `x(2T)`, the image of `(0, y_t)` in `E` before `φ₁`.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub double_x: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub free_profile: Option<Vec<u32>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub degree: Option<u32>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub genus: Option<u32>,
    pub failures: Vec<String>,
    pub passed: bool,
}

/// Runs every check that makes sense for this point. Degenerate and
/// colliding points are reported with whatever could still be computed.
pub fn verify(p: &FamilyParams) -> SpecializationReport {
    let st = status(p);
    let mut rep = SpecializationReport {
        xt: p.xt.to_string(),
        yt: p.yt.to_string(),
        field: p.field_name(),
        status: st.clone(),
        profiles: None,
        free_value: p.free_value().map(|z| z.to_string()),
        double_x: p.double_x().map(|z| z.to_string()),
        free_profile: None,
        degree: None,
        genus: None,
        failures: Vec::new(),
        passed: false,
    };
    if matches!(st, Status::Degenerate(_)) {
        return rep;
    }
    let fail = |rep: &mut SpecializationReport, m: String| rep.failures.push(m);
    let f = sextic_at(p);
    rep.genus = (f.degree() == Some(6) && f.is_squarefree()).then_some(2);
    let over0 = fiber(p, Some(&Quad::zero()));
    let over1 = fiber(p, Some(&Quad::one()));
    let over_inf = fiber(p, None);
    let sums: Vec<u32> = [&over0, &over1, &over_inf].iter().map(|v| v.iter().sum()).collect();
    if sums.iter().all(|s| *s == sums[0]) {
        rep.degree = Some(sums[0]);
    } else {
        fail(&mut rep, format!("fiber sums differ: {sums:?}"));
    }
    let expected = [vec![3, 3], vec![3, 3], vec![6]];
    let profiles = [over0, over1, over_inf];
    if profiles != expected {
        fail(&mut rep, format!("profiles {profiles:?}, expected {expected:?}"));
    }
    let ram: u32 = profiles.iter().flatten().map(|e| e - 1).sum();
    rep.profiles = Some(profiles);
    // Riemann–Hurwitz: 2g − 2 = 6·(−2) + R, so R = 14 for g = 2.
    if rep.genus == Some(2) && rep.degree == Some(6) && 14 - ram as i64 != 1 {
        fail(&mut rep, format!("ramification over 0, 1, inf is {ram}, leaving {} free", 14 - ram as i64));
    }
    let (alpha, beta, delta) = closed_form_at(p);
    let total: i64 = divisor(&alpha, &beta, &delta, &f).iter().map(|d| d.order * d.count as i64).sum();
    if total != 0 {
        fail(&mut rep, format!("principal divisor has degree {total}"));
    }
    if let Some(z) = p.free_value() {
        let fz = fiber(p, Some(&z));
        if !matches!(st, Status::Collision(_)) && fz != vec![2, 1, 1, 1, 1] {
            fail(&mut rep, format!("fiber over the free value is {fz:?}"));
        }
        rep.free_profile = Some(fz);
        match phi_closed(p, &Quad::zero(), &p.yt) {
            Ok(Some(v)) if v == z => {}
            other => fail(&mut rep, format!("phi(0, yt) evaluates to {other:?}")),
        }
    }
    elliptic_checks(p, &mut rep.failures);
    rep.passed = rep.failures.is_empty() && matches!(st, Status::Admissible);
    rep
}

/// `φ₂(0, ±y_t) = (x_t, ±y_t)`; `φ₁` sends the three listed points to
/// `0, 1, ∞`; translating them by `(x_t, y_t)` gives `(0, −1), (0, 1), ∞`.
fn elliptic_checks(p: &FamilyParams, failures: &mut Vec<String>) {
    let (xt, yt) = (p.xt_q(), p.yt.clone());
    let t = EllipticPoint::Affine(xt.clone(), yt.clone());
    for s in [Quad::one(), Quad::one().neg()] {
        let y = yt.mul(&s);
        if phi2(&Quad::zero(), &y, &xt) != EllipticPoint::Affine(xt.clone(), y.clone()) {
            failures.push(format!("phi2(0, {y}) is not (xt, {y})"));
        }
    }
    if let (EllipticPoint::Affine(x2, _), Some(dx)) = (p.double(), p.double_x()) {
        if x2 != Quad::rational(dx) {
            failures.push("x(2T) disagrees with xt(xt^3-8)/(4(xt^3+1))".into());
        }
    }
    if p.xt == int(0) {
        return;
    }
    let x2 = xt.mul(&xt);
    let x3 = x2.mul(&xt);
    let four = Quad::rational(int(4));
    let pts = [
        (
            Quad::one().sub(&yt).mul_int(2).div(&x2).unwrap(),
            four.mul(&yt).sub(&x3).sub(&four).div(&x3).unwrap(),
            Some(Quad::zero()),
            EllipticPoint::Affine(Quad::zero(), Quad::one().neg()),
        ),
        (
            Quad::one().add(&yt).mul_int(2).div(&x2).unwrap(),
            four.mul(&yt).add(&x3).add(&four).div(&x3).unwrap(),
            Some(Quad::one()),
            EllipticPoint::Affine(Quad::zero(), Quad::one()),
        ),
        (xt.clone(), yt.neg(), None, EllipticPoint::Infinity),
    ];
    for (x1, y1, want, image) in pts {
        let pt = EllipticPoint::Affine(x1.clone(), y1.clone());
        if !pt.on_curve() {
            failures.push(format!("({x1}, {y1}) is not on E"));
            continue;
        }
        if phi1(&x1, &y1, &xt, &yt) != want {
            failures.push(format!("phi1({x1}, {y1}) is not {want:?}"));
        }
        if ec_translate(&pt, &t) != image {
            failures.push(format!("({x1}, {y1}) + (xt, yt) is not {image:?}"));
        }
    }
}

/// Rational `x_t = p/q` of height at most `h` with `x_t³ + 1` a rational square.
pub fn scan_rational(h: i64) -> Vec<FamilyParams> {
    let mut out: Vec<FamilyParams> = candidates(h)
        .into_iter()
        .map(FamilyParams::from_xt)
        .filter(FamilyParams::is_rational)
        .collect();
    out.sort_by(|a, b| a.xt.cmp(&b.xt));
    out
}

/// Rationals `p/q` in lowest terms with `|p|, q ≤ h`, by increasing height.
pub fn candidates(h: i64) -> Vec<Rat> {
    use num_integer::Integer;
    let mut v: Vec<(i64, i64, i64)> = Vec::new();
    for q in 1..=h {
        for p in -h..=h {
            if p.gcd(&q) == 1 {
                v.push((p.abs().max(q), q, p));
            }
        }
    }
    v.sort_by_key(|&(ht, q, p)| (ht, q, p.abs(), -p));
    v.into_iter().map(|(_, q, p)| Rat::new(p.into(), q.into())).collect()
}

/// The first `count` admissible parameters with `x_t` rational, scanning by
/// height; every scanned point is returned with its status.
pub fn scan_admissible(count: usize, h: i64) -> Vec<FamilyParams> {
    let mut out = Vec::new();
    for xt in candidates(h) {
        let p = FamilyParams::from_xt(xt);
        if status(&p) == Status::Admissible {
            out.push(p);
            if out.len() == count {
                break;
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactmath::rat;

    #[test]
    fn rational_points_are_all_excluded() {
        let pts = scan_rational(30);
        let xs: Vec<Rat> = pts.iter().map(|p| p.xt.clone()).collect();
        assert_eq!(xs, vec![int(-1), int(0), int(2)]);
        for p in &pts {
            assert_ne!(status(p), Status::Admissible, "{p}");
        }
    }

    #[test]
    fn collision_at_two_three() {
        let p = FamilyParams::rational(int(2), int(3)).unwrap();
        // 2·(2, 3) = (0, 1), which φ₁ sends to 1
        assert_eq!(p.double_x(), Some(int(0)));
        assert_eq!(p.free_value(), Some(Quad::one()));
        assert_eq!(status(&p), Status::Collision("free value coincides with 1".into()));
        // f = −9(X⁶ − 1)
        let f = sextic_at(&p);
        assert_eq!(f, UPoly::new(vec![Quad::rational(int(9)), Quad::zero(), Quad::zero(), Quad::zero(), Quad::zero(), Quad::zero(), Quad::rational(int(-9))]));
        let r = verify(&p);
        // the free critical point falls into the fiber over 1
        assert_eq!(r.profiles.unwrap(), [vec![3, 3], vec![6], vec![6]]);
        assert!(!r.passed);
        let q = FamilyParams::rational(int(0), int(1)).unwrap();
        assert_eq!(status(&q), Status::Collision("free value coincides with 0".into()));
    }

    #[test]
    fn quadratic_specialization_passes() {
        let p = FamilyParams::from_xt(int(1));
        assert_eq!(p.double_x(), Some(rat(-7, 8)));
        // (y(2T) + 1)/2 with y(2T) = 13√2/32
        let z = p.free_value().unwrap();
        assert_eq!(z.parts(), (&rat(1, 2), &rat(13, 64)));
        let r = verify(&p);
        assert!(r.passed, "{:?}", r.failures);
        assert_eq!(r.free_profile.unwrap(), vec![2, 1, 1, 1, 1]);
        assert_eq!(r.degree, Some(6));
        assert_eq!(r.genus, Some(2));
    }

    #[test]
    fn pole_of_order_six_at_minus_yt() {
        let p = FamilyParams::from_xt(int(3));
        assert_eq!(phi_closed(&p, &Quad::zero(), &p.yt.neg()).unwrap(), None);
        assert_eq!(phi_closed(&p, &Quad::zero(), &p.yt).unwrap(), p.free_value());
    }
}
