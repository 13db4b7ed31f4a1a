use std::fmt;
use std::sync::Arc;

use num_traits::Signed;

use super::Rat;

fn rzero() -> Rat {
    num_traits::Zero::zero()
}

fn rone() -> Rat {
    num_traits::One::one()
}

fn rz(r: &Rat) -> bool {
    num_traits::Zero::is_zero(r)
}

/// An exact field usable as a polynomial coefficient domain.
pub trait Field: Clone + PartialEq + fmt::Debug + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    /// Multiplicative inverse; `None` for zero.
    fn inv(&self) -> Option<Self>;
    fn from_rat(r: &Rat) -> Self;

    fn is_one(&self) -> bool {
        *self == Self::one()
    }

    fn div(&self, other: &Self) -> Option<Self> {
        other.inv().map(|i| self.mul(&i))
    }

    fn mul_int(&self, n: i64) -> Self {
        self.mul(&Self::from_rat(&super::int(n)))
    }
}

impl Field for Rat {
    fn zero() -> Self {
        num_traits::Zero::zero()
    }
    fn one() -> Self {
        num_traits::One::one()
    }
    fn is_zero(&self) -> bool {
        num_traits::Zero::is_zero(self)
    }
    fn add(&self, other: &Self) -> Self {
        self + other
    }
    fn sub(&self, other: &Self) -> Self {
        self - other
    }
    fn mul(&self, other: &Self) -> Self {
        self * other
    }
    fn neg(&self) -> Self {
        -self
    }
    fn inv(&self) -> Option<Self> {
        if num_traits::Zero::is_zero(self) {
            None
        } else {
            Some(self.recip())
        }
    }
    fn from_rat(r: &Rat) -> Self {
        r.clone()
    }
}

/// Element `a + b·√d` of a quadratic field `ℚ(√d)`.
///
/// Pure rationals carry no radicand; a radicand is adopted the first time a
/// rational meets an irrational element. Mixing two different radicands is a
/// logic error and panics. The radicand must not be a rational square.
#[derive(Clone)]
pub struct Quad {
    a: Rat,
    b: Rat,
    d: Option<Arc<Rat>>,
}

impl Quad {
    /// `√d` as an element of `ℚ(√d)`. The caller guarantees `d` is not a square.
    pub fn sqrt_of(d: Rat) -> Self {
        Quad {
            a: rzero(),
            b: rone(),
            d: Some(Arc::new(d)),
        }
    }

    pub fn rational(a: Rat) -> Self {
        Quad {
            a,
            b: rzero(),
            d: None,
        }
    }

    pub fn parts(&self) -> (&Rat, &Rat) {
        (&self.a, &self.b)
    }

    pub fn radicand(&self) -> Option<&Rat> {
        self.d.as_deref()
    }

    /// The rational value, if the irrational part vanishes.
    pub fn as_rational(&self) -> Option<&Rat> {
        if rz(&self.b) {
            Some(&self.a)
        } else {
            None
        }
    }

    fn merge(&self, other: &Self) -> Option<Arc<Rat>> {
        match (&self.d, &other.d) {
            (Some(x), Some(y)) => {
                assert!(x == y, "mixed quadratic fields √{x} and √{y}");
                Some(x.clone())
            }
            (Some(x), None) | (None, Some(x)) => Some(x.clone()),
            (None, None) => None,
        }
    }

    fn norm_radicand(&self) -> Rat {
        self.d.as_deref().cloned().unwrap_or_else(rzero)
    }
}

impl PartialEq for Quad {
    fn eq(&self, other: &Self) -> bool {
        self.a == other.a && self.b == other.b
    }
}

impl fmt::Debug for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Quad {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (&self.d, rz(&self.b)) {
            (_, true) | (None, _) => write!(f, "{}", self.a),
            (Some(d), false) => {
                let coef = |b: &Rat| if b.is_one() { String::new() } else { format!("{b}*") };
                if rz(&self.a) {
                    let sign = if self.b.is_negative() { "-" } else { "" };
                    write!(f, "{sign}{}sqrt({})", coef(&self.b.abs()), d)
                } else {
                    let sign = if self.b.is_negative() { "-" } else { "+" };
                    write!(f, "{} {} {}sqrt({})", self.a, sign, coef(&self.b.abs()), d)
                }
            }
        }
    }
}

impl Field for Quad {
    fn zero() -> Self {
        Quad::rational(rzero())
    }
    fn one() -> Self {
        Quad::rational(rone())
    }
    fn is_zero(&self) -> bool {
        rz(&self.a) && rz(&self.b)
    }
    fn add(&self, other: &Self) -> Self {
        Quad {
            a: &self.a + &other.a,
            b: &self.b + &other.b,
            d: self.merge(other),
        }
    }
    fn sub(&self, other: &Self) -> Self {
        Quad {
            a: &self.a - &other.a,
            b: &self.b - &other.b,
            d: self.merge(other),
        }
    }
    fn mul(&self, other: &Self) -> Self {
        let d = self.merge(other);
        let rad = d.as_deref().cloned().unwrap_or_else(rzero);
        Quad {
            a: &self.a * &other.a + &self.b * &other.b * rad,
            b: &self.a * &other.b + &self.b * &other.a,
            d,
        }
    }
    fn neg(&self) -> Self {
        Quad {
            a: -&self.a,
            b: -&self.b,
            d: self.d.clone(),
        }
    }
    fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let norm = &self.a * &self.a - &self.b * &self.b * self.norm_radicand();
        debug_assert!(!rz(&norm), "radicand is a square");
        Some(Quad {
            a: &self.a / &norm,
            b: -&self.b / &norm,
            d: self.d.clone(),
        })
    }
    fn from_rat(r: &Rat) -> Self {
        Quad::rational(r.clone())
    }
}
