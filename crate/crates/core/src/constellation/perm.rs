use std::fmt;

use super::CycleType;

/// A permutation of `{1..d}`, stored 0-based as an image table.
///
/// Products follow one fixed convention throughout the crate: `a.then(b)` is
/// the product `a·b`, which applies `a` first and then `b` (points act on
/// the right). Under it, `(1234)·(1324)·(1342)·(12)` is the identity.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Perm {
    images: Vec<u8>,
}

/// Largest supported degree.
pub const MAX_DEGREE: usize = 255;

impl Perm {
    pub fn identity(d: usize) -> Self {
        assert!(d <= MAX_DEGREE);
        Perm {
            images: (0..d as u8).collect(),
        }
    }

    /// From a 0-based image table. Returns `None` if it is not a bijection.
    pub fn from_images(images: Vec<u8>) -> Option<Self> {
        let d = images.len();
        if d > MAX_DEGREE {
            return None;
        }
        let mut seen = vec![false; d];
        for &i in &images {
            let i = i as usize;
            if i >= d || seen[i] {
                return None;
            }
            seen[i] = true;
        }
        Some(Perm { images })
    }

    pub(crate) fn from_images_unchecked(images: Vec<u8>) -> Self {
        debug_assert!(Self::from_images(images.clone()).is_some());
        Perm { images }
    }

    /// From disjoint cycles written with 1-based points.
    pub fn from_cycles(d: usize, cycles: &[Vec<usize>]) -> Option<Self> {
        if d > MAX_DEGREE {
            return None;
        }
        let mut images: Vec<u8> = (0..d as u8).collect();
        let mut used = vec![false; d];
        for c in cycles {
            for (k, &p) in c.iter().enumerate() {
                if p == 0 || p > d || used[p - 1] {
                    return None;
                }
                used[p - 1] = true;
                let q = c[(k + 1) % c.len()];
                if q == 0 || q > d {
                    return None;
                }
                images[p - 1] = (q - 1) as u8;
            }
        }
        Some(Perm { images })
    }

    /// The transposition of two distinct 1-based points.
    pub fn transposition(d: usize, a: usize, b: usize) -> Option<Self> {
        if a == b {
            return None;
        }
        Self::from_cycles(d, &[vec![a, b]])
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[u8] {
        &self.images
    }

    /// Image of a 0-based point.
    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.images[i] as usize
    }

    /// `self·other`: apply `self`, then `other`.
    pub fn then(&self, other: &Perm) -> Perm {
        debug_assert_eq!(self.degree(), other.degree());
        Perm {
            images: self.images.iter().map(|&i| other.images[i as usize]).collect(),
        }
    }


    pub fn inverse(&self) -> Perm {
        let mut inv = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            inv[j as usize] = i as u8;
        }
        Perm { images: inv }
    }

    /// `h⁻¹·self·h`, i.e. relabel every point `x` as `h(x)`.
    pub fn conjugate_by(&self, h: &Perm) -> Perm {
        let mut out = vec![0u8; self.degree()];
        for (i, &j) in self.images.iter().enumerate() {
            out[h.images[i] as usize] = h.images[j as usize];
        }
        Perm { images: out }
    }

    /// Commutator `a·b·a⁻¹·b⁻¹`.
    pub fn commutator(a: &Perm, b: &Perm) -> Perm {
        a.then(b).then(&a.inverse()).then(&b.inverse())
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &j)| i == j as usize)
    }

    /// Disjoint cycles of length ≥ 2 with 1-based points, each starting at
    /// its smallest point, ordered by that point.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        self.all_cycles()
            .into_iter()
            .filter(|c| c.len() > 1)
            .map(|c| c.into_iter().map(|p| p + 1).collect())
            .collect()
    }

    /// All cycles including fixed points, 0-based.
    pub fn all_cycles(&self) -> Vec<Vec<usize>> {
        let d = self.degree();
        let mut seen = vec![false; d];
        let mut out = Vec::new();
        for s in 0..d {
            if seen[s] {
                continue;
            }
            let mut c = Vec::new();
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                c.push(x);
                x = self.apply(x);
            }
            out.push(c);
        }
        out
    }

    pub fn num_cycles(&self) -> usize {
        let d = self.degree();
        let mut seen = [false; MAX_DEGREE];
        let mut n = 0;
        for s in 0..d {
            if seen[s] {
                continue;
            }
            n += 1;
            let mut x = s;
            while !seen[x] {
                seen[x] = true;
                x = self.images[x] as usize;
            }
        }
        n
    }

    pub fn cycle_type(&self) -> CycleType {
        CycleType::from_images(&self.images)
    }

    /// Whether both 1-based points lie in the same cycle.
    pub fn same_cycle(&self, a: usize, b: usize) -> bool {
        let (a, b) = (a - 1, b - 1);
        let mut x = self.apply(a);
        loop {
            if x == b {
                return true;
            }
            if x == a {
                return a == b;
            }
            x = self.apply(x);
        }
    }
}

impl fmt::Display for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            let s: Vec<String> = c.iter().map(usize::to_string).collect();
            if self.degree() < 10 {
                write!(f, "({})", s.join(""))?;
            } else {
                write!(f, "({})", s.join(","))?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Perm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Perm[{}; {}]", self.degree(), self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(d: usize, c: &[&[usize]]) -> Perm {
        Perm::from_cycles(d, &c.iter().map(|c| c.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    #[test]
    fn product_convention_closes_the_degree_four_tuple() {
        let s0 = p(4, &[&[1, 2, 3, 4]]);
        let s1 = p(4, &[&[1, 3, 2, 4]]);
        let si = p(4, &[&[1, 3, 4, 2]]);
        let st = p(4, &[&[1, 2]]);
        assert!(s0.then(&s1).then(&si).then(&st).is_identity());
        // the opposite convention does not close
        assert!(!st.then(&si).then(&s1).then(&s0).is_identity());
    }

    #[test]
    fn merge_identity_of_two_three_cycles() {
        let a = p(6, &[&[1, 2, 3], &[4, 5, 6]]);
        let t = p(6, &[&[1, 4]]);
        assert_eq!(a.then(&t), p(6, &[&[1, 2, 3, 4, 5, 6]]));
        assert_eq!(p(6, &[&[1, 2, 3, 4, 5, 6]]).then(&t), a);
    }

    #[test]
    fn cycles_and_inverse() {
        let a = p(5, &[&[1, 3], &[2, 5, 4]]);
        assert_eq!(a.cycles(), vec![vec![1, 3], vec![2, 5, 4]]);
        assert!(a.then(&a.inverse()).is_identity());
        assert_eq!(a.num_cycles(), 2);
        assert!(a.same_cycle(2, 4));
        assert!(!a.same_cycle(1, 4));
        assert_eq!(a.to_string(), "(13)(254)");
    }

    #[test]
    fn rejects_bad_input() {
        assert!(Perm::from_cycles(3, &[vec![1, 4]]).is_none());
        assert!(Perm::from_cycles(3, &[vec![1, 2], vec![2, 3]]).is_none());
        assert!(Perm::from_images(vec![0, 0]).is_none());
        assert!(Perm::transposition(3, 2, 2).is_none());
    }

    #[test]
    fn conjugation_relabels() {
        let a = p(3, &[&[1, 2]]);
        let h = p(3, &[&[1, 2, 3]]);
        // relabel 1→2, 2→3
        assert_eq!(a.conjugate_by(&h), p(3, &[&[2, 3]]));
        assert_eq!(a.conjugate_by(&h), h.inverse().then(&a).then(&h));
    }
}
