use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::{Rat, UPoly};

pub const NVARS: usize = 7;

/// Symbols of the multivariate kernel, in global order (most significant first).
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    /// Abscissa of the genus-2 model.
    X = 0,
    /// Ordinate of the genus-2 model.
    Y = 1,
    /// Untranslated abscissa on the elliptic curve.
    X1 = 2,
    /// Untranslated ordinate on the elliptic curve.
    Y1 = 3,
    /// Family parameter, abscissa.
    Xt = 4,
    /// Family parameter, ordinate.
    Yt = 5,
    /// Coordinate on the base line.
    Z = 6,
}

impl Var {
    pub const ALL: [Var; NVARS] = [Var::X, Var::Y, Var::X1, Var::Y1, Var::Xt, Var::Yt, Var::Z];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn name(self) -> &'static str {
        match self {
            Var::X => "X",
            Var::Y => "Y",
            Var::X1 => "x1",
            Var::Y1 => "y1",
            Var::Xt => "xt",
            Var::Yt => "yt",
            Var::Z => "z",
        }
    }
}

impl fmt::Display for Var {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

/// Exponent vector in the global variable order.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct Monomial(pub [u16; NVARS]);

impl Monomial {
    pub fn one() -> Self {
        Monomial([0; NVARS])
    }

    pub fn var(v: Var, e: u16) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = e;
        Monomial(m)
    }

    pub fn exp(&self, v: Var) -> u16 {
        self.0[v.index()]
    }

    fn mul(&self, other: &Self) -> Self {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a += *b;
        }
        Monomial(m)
    }

    fn div(&self, other: &Self) -> Option<Self> {
        let mut m = self.0;
        for (a, b) in m.iter_mut().zip(other.0.iter()) {
            *a = a.checked_sub(*b)?;
        }
        Some(Monomial(m))
    }

    pub fn with_exp(&self, v: Var, e: u16) -> Self {
        let mut m = self.0;
        m[v.index()] = e;
        Monomial(m)
    }
}

/// Sparse multivariate polynomial with rational coefficients.
///
/// Terms are keyed by exponent vector; zero coefficients are never stored, so
/// structural equality is polynomial equality.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct MPoly {
    terms: BTreeMap<Monomial, Rat>,
}

impl MPoly {
    pub fn zero() -> Self {
        MPoly::default()
    }

    pub fn one() -> Self {
        Self::constant(Rat::one())
    }

    pub fn constant(c: Rat) -> Self {
        Self::term(c, Monomial::one())
    }

    pub fn int(n: i64) -> Self {
        Self::constant(super::int(n))
    }

    pub fn var(v: Var) -> Self {
        Self::term(Rat::one(), Monomial::var(v, 1))
    }

    pub fn term(c: Rat, m: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(m, c);
        }
        MPoly { terms }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &Rat)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_constant(&self) -> bool {
        self.terms.keys().all(|m| *m == Monomial::one())
    }

    /// Value of a constant polynomial.
    pub fn constant_value(&self) -> Option<Rat> {
        if !self.is_constant() {
            return None;
        }
        Some(self.terms.get(&Monomial::one()).cloned().unwrap_or_else(Rat::zero))
    }

    fn add_term(&mut self, m: Monomial, c: Rat) {
        if c.is_zero() {
            return;
        }
        use std::collections::btree_map::Entry;
        match self.terms.entry(m) {
            Entry::Vacant(e) => {
                e.insert(c);
            }
            Entry::Occupied(mut e) => {
                *e.get_mut() += c;
                if e.get().is_zero() {
                    e.remove();
                }
            }
        }
    }

    pub fn scale(&self, c: &Rat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, a)| (*m, a * c)).collect(),
        }
    }

    pub fn pow(&self, n: u32) -> Self {
        let mut acc = Self::one();
        let mut base = self.clone();
        let mut n = n;
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Degree in `v`; `None` for the zero polynomial.
    pub fn degree_in(&self, v: Var) -> Option<u16> {
        self.terms.keys().map(|m| m.exp(v)).max()
    }

    pub fn contains(&self, v: Var) -> bool {
        self.terms.keys().any(|m| m.exp(v) > 0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms
            .keys()
            .map(|m| m.0.iter().map(|&e| e as u32).sum())
            .max()
    }

    /// Coefficients with respect to `v`: entry `k` multiplies `v^k`.
    pub fn coefficients_in(&self, v: Var) -> Vec<MPoly> {
        let deg = match self.degree_in(v) {
            None => return Vec::new(),
            Some(d) => d as usize,
        };
        let mut out = vec![MPoly::zero(); deg + 1];
        for (m, c) in &self.terms {
            out[m.exp(v) as usize].add_term(m.with_exp(v, 0), c.clone());
        }
        out
    }

    pub fn from_coefficients_in(v: Var, coeffs: &[MPoly]) -> Self {
        let mut out = MPoly::zero();
        for (k, c) in coeffs.iter().enumerate() {
            for (m, a) in &c.terms {
                debug_assert_eq!(m.exp(v), 0);
                out.add_term(m.with_exp(v, k as u16), a.clone());
            }
        }
        out
    }

    /// Replace `v` by `value` everywhere.
    pub fn substitute(&self, v: Var, value: &MPoly) -> Self {
        let coeffs = self.coefficients_in(v);
        coeffs
            .iter()
            .rev()
            .fold(MPoly::zero(), |acc, c| &(&acc * value) + c)
    }

    pub fn eval_var(&self, v: Var, value: &Rat) -> Self {
        self.substitute(v, &MPoly::constant(value.clone()))
    }

    /// Leading term in lexicographic order.
    pub fn leading_term(&self) -> Option<(&Monomial, &Rat)> {
        self.terms.iter().next_back()
    }

    /// Exact quotient `self / divisor`, or `None` if the division leaves a remainder.
    pub fn div_exact(&self, divisor: &MPoly) -> Option<MPoly> {
        let (lm, lc) = divisor.leading_term()?;
        if let Some(c) = divisor.constant_value() {
            return Some(self.scale(&c.recip()));
        }
        let mut rem = self.clone();
        let mut quot = MPoly::zero();
        while let Some((m, c)) = rem.leading_term() {
            let qm = m.div(lm)?;
            let qc = c / lc;
            let t = MPoly::term(qc.clone(), qm);
            rem = &rem - &(&t * divisor);
            quot.add_term(qm, qc);
        }
        Some(quot)
    }

    /// Univariate view over ℚ when only `v` occurs.
    pub fn to_upoly(&self, v: Var) -> Option<UPoly<Rat>> {
        let coeffs = self.coefficients_in(v);
        coeffs
            .iter()
            .map(|c| c.constant_value())
            .collect::<Option<Vec<_>>>()
            .map(UPoly::new)
    }

    pub fn from_upoly(p: &UPoly<Rat>, v: Var) -> Self {
        let mut out = MPoly::zero();
        for (k, c) in p.coeffs().iter().enumerate() {
            out.add_term(Monomial::var(v, k as u16), c.clone());
        }
        out
    }

    /// Content-free normalization used only for display and stable comparison:
    /// the leading coefficient becomes 1.
    pub fn monic(&self) -> Self {
        match self.leading_term() {
            None => MPoly::zero(),
            Some((_, c)) => self.scale(&c.recip()),
        }
    }
}

impl<'a> Add<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn add(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }
}

impl<'a> Sub<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn sub(self, rhs: &MPoly) -> MPoly {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c);
        }
        out
    }
}

impl<'a> Mul<&'a MPoly> for &'a MPoly {
    type Output = MPoly;
    fn mul(self, rhs: &MPoly) -> MPoly {
        let mut out = MPoly::zero();
        for (m1, c1) in &self.terms {
            for (m2, c2) in &rhs.terms {
                out.add_term(m1.mul(m2), c1 * c2);
            }
        }
        out
    }
}

impl Neg for &MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        MPoly {
            terms: self.terms.iter().map(|(m, c)| (*m, -c)).collect(),
        }
    }
}

macro_rules! owned_ops {
    ($($tr:ident $f:ident),*) => {$(
        impl $tr<MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly { (&self).$f(&rhs) }
        }
        impl $tr<&MPoly> for MPoly {
            type Output = MPoly;
            fn $f(self, rhs: &MPoly) -> MPoly { (&self).$f(rhs) }
        }
        impl $tr<MPoly> for &MPoly {
            type Output = MPoly;
            fn $f(self, rhs: MPoly) -> MPoly { self.$f(&rhs) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul);

impl Neg for MPoly {
    type Output = MPoly;
    fn neg(self) -> MPoly {
        -&self
    }
}

impl fmt::Display for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let neg = c.is_negative();
            let a = c.abs();
            match (i, neg) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let is_one = *m == Monomial::one();
            if !a.is_one() || is_one {
                write!(f, "{a}")?;
                if !is_one {
                    write!(f, "*")?;
                }
            }
            let mut first = true;
            for v in Var::ALL {
                let e = m.exp(v);
                if e == 0 {
                    continue;
                }
                if !first {
                    write!(f, "*")?;
                }
                first = false;
                if e == 1 {
                    write!(f, "{v}")?;
                } else {
                    write!(f, "{v}^{e}")?;
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for MPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "MPoly({self})")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_and_display() {
        let x = MPoly::var(Var::X);
        let y = MPoly::var(Var::Yt);
        let p = (&x + &y).pow(2);
        assert_eq!(p.to_string(), "X^2 + 2*X*yt + yt^2");
        assert_eq!(p.div_exact(&(&x + &y)), Some(&x + &y));
        assert_eq!(p.div_exact(&(&x - &y)), None);
    }

    #[test]
    fn substitution() {
        let x = MPoly::var(Var::X);
        let p = &x.pow(3) - &MPoly::int(1);
        let q = p.substitute(Var::X, &(&MPoly::var(Var::Z) + &MPoly::int(1)));
        assert_eq!(q.eval_var(Var::Z, &crate::exactmath::int(0)), MPoly::zero());
    }
}
