//! Permutation constellations: tuples of permutations whose ordered product
//! is the identity and which generate a transitive group.
//!
//! These encode branched covers of a base surface. Slot `j` records the
//! monodromy around the `j`-th branch point; handle pairs record the
//! monodromy along the `a`/`b` loops of a base of positive genus. The
//! relation checked is `[a₁,b₁]⋯[a_g,b_g]·σ₁⋯σ_k = id` in the product
//! convention of [`Perm::then`].

mod compose;
mod construct;
mod cycle_type;
mod io;
mod perm;
pub mod pipeline;
mod search;

pub use compose::{compose, lift, InnerMonodromy, LiftTarget, SchreierGenerators};
pub use construct::{absorb_last_transposition, find_pivots, merge_cycles, split_cycle, Route, RouteOp, RouteResult};
pub use cycle_type::{ClassTable, CycleType};
pub use io::{ConstellationJson, InnerJson, SearchResultJson, FORMAT_VERSION};
pub use perm::{Perm, MAX_DEGREE};
pub use search::{search, BranchData, SearchOptions, SearchOutcome};

use std::collections::VecDeque;

use thiserror::Error;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ConstellationError {
    #[error("permutation {index} has degree {found}, expected {expected}")]
    DegreeMismatch {
        index: usize,
        expected: usize,
        found: usize,
    },
    #[error("slot {0} does not exist")]
    NoSuchSlot(usize),
    #[error("point {0} is outside 1..=degree")]
    NoSuchPoint(usize),
    #[error("points {0} and {1} lie in the same cycle of slot {2}")]
    SameCycle(usize, usize, usize),
    #[error("points {0} and {1} lie in different cycles of slot {2}")]
    DifferentCycles(usize, usize, usize),
    #[error("the product of the slots is not the identity")]
    ProductNotIdentity,
    #[error("the monodromy group is not transitive")]
    NotTransitive,
    #[error("Riemann–Hurwitz gives a non-integral or negative genus")]
    BadGenus,
    #[error("{0}")]
    Invalid(String),
}

/// A constellation over a base of genus `handles.len()`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Constellation {
    degree: usize,
    handles: Vec<(Perm, Perm)>,
    slots: Vec<Perm>,
    labels: Vec<String>,
}

/// Outcome of [`Constellation::validate`] against expected cycle types.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationReport {
    pub product_is_identity: bool,
    pub transitive: bool,
    /// `(slot, expected, found)` for every slot whose type differs.
    pub type_mismatches: Vec<(usize, CycleType, CycleType)>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.product_is_identity && self.transitive && self.type_mismatches.is_empty()
    }

    /// The first failing check, if any.
    pub fn first_violation(&self) -> Option<String> {
        if !self.product_is_identity {
            return Some("product is not the identity".into());
        }
        if !self.transitive {
            return Some("group is not transitive".into());
        }
        self.type_mismatches
            .first()
            .map(|(s, e, f)| format!("slot {s} has type {f}, expected {e}"))
    }
}

/// Default slot labels: `0, 1, ∞` for three slots, then `t1, t2, …`.
pub fn default_labels(n: usize) -> Vec<String> {
    let named = ["0", "1", "inf"];
    (0..n)
        .map(|i| {
            if i < 3 {
                named[i].to_string()
            } else {
                format!("t{}", i - 2)
            }
        })
        .collect()
}

impl Constellation {
    /// Builds a constellation over the sphere, checking degrees only.
    pub fn new(slots: Vec<Perm>) -> Result<Self, ConstellationError> {
        Self::with_handles(Vec::new(), slots)
    }

    pub fn with_handles(handles: Vec<(Perm, Perm)>, slots: Vec<Perm>) -> Result<Self, ConstellationError> {
        let degree = slots
            .first()
            .map(Perm::degree)
            .or_else(|| handles.first().map(|h| h.0.degree()))
            .ok_or_else(|| ConstellationError::Invalid("no permutations".into()))?;
        let all = handles.iter().flat_map(|(a, b)| [a, b]).chain(slots.iter());
        for (index, p) in all.enumerate() {
            if p.degree() != degree {
                return Err(ConstellationError::DegreeMismatch {
                    index,
                    expected: degree,
                    found: p.degree(),
                });
            }
        }
        let labels = default_labels(slots.len());
        Ok(Constellation {
            degree,
            handles,
            slots,
            labels,
        })
    }

    /// From 1-based cycle lists, one per slot.
    pub fn from_cycles(degree: usize, slots: &[Vec<Vec<usize>>]) -> Result<Self, ConstellationError> {
        let perms = slots
            .iter()
            .enumerate()
            .map(|(i, c)| {
                Perm::from_cycles(degree, c).ok_or_else(|| ConstellationError::Invalid(format!("slot {i}: bad cycles")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::new(perms)
    }

    pub fn with_labels(mut self, labels: Vec<String>) -> Self {
        assert_eq!(labels.len(), self.slots.len());
        self.labels = labels;
        self
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn base_genus(&self) -> usize {
        self.handles.len()
    }

    pub fn slots(&self) -> &[Perm] {
        &self.slots
    }

    pub fn slot(&self, i: usize) -> &Perm {
        &self.slots[i]
    }

    pub fn handles(&self) -> &[(Perm, Perm)] {
        &self.handles
    }

    pub fn labels(&self) -> &[String] {
        &self.labels
    }

    pub(crate) fn slots_mut(&mut self) -> &mut Vec<Perm> {
        &mut self.slots
    }

    pub(crate) fn labels_mut(&mut self) -> &mut Vec<String> {
        &mut self.labels
    }

    pub fn cycle_types(&self) -> Vec<CycleType> {
        self.slots.iter().map(Perm::cycle_type).collect()
    }

    /// The full relator `[a₁,b₁]⋯σ₁⋯σ_k`.
    pub fn product(&self) -> Perm {
        let mut acc = Perm::identity(self.degree);
        for (a, b) in &self.handles {
            acc = acc.then(&Perm::commutator(a, b));
        }
        for s in &self.slots {
            acc = acc.then(s);
        }
        acc
    }

    pub fn product_is_identity(&self) -> bool {
        self.product().is_identity()
    }

    fn generators(&self) -> impl Iterator<Item = &Perm> {
        self.handles.iter().flat_map(|(a, b)| [a, b]).chain(self.slots.iter())
    }

    pub fn is_transitive(&self) -> bool {
        is_transitive(self.degree, self.generators())
    }

    /// Checks the relation, transitivity and, when given, the cycle types.
    pub fn validate(&self, expected: Option<&[CycleType]>) -> ValidationReport {
        let mut type_mismatches = Vec::new();
        if let Some(exp) = expected {
            for (i, s) in self.slots.iter().enumerate() {
                let found = s.cycle_type();
                match exp.get(i) {
                    Some(e) if *e == found => {}
                    Some(e) => type_mismatches.push((i, e.clone(), found)),
                    None => type_mismatches.push((i, CycleType::identity(self.degree as u32), found)),
                }
            }
        }
        ValidationReport {
            product_is_identity: self.product_is_identity(),
            transitive: self.is_transitive(),
            type_mismatches,
        }
    }

    /// Genus of the cover from `2 − 2g̃ = d(2 − 2g) − Σ (d − #cycles)`.
    pub fn genus(&self) -> Result<u32, ConstellationError> {
        let types = self.cycle_types();
        genus_from_types(self.degree as u32, self.base_genus() as u32, &types)
    }

    /// Relabels every point `x` as `h(x)`.
    pub fn relabel(&self, h: &Perm) -> Constellation {
        Constellation {
            degree: self.degree,
            handles: self
                .handles
                .iter()
                .map(|(a, b)| (a.conjugate_by(h), b.conjugate_by(h)))
                .collect(),
            slots: self.slots.iter().map(|s| s.conjugate_by(h)).collect(),
            labels: self.labels.clone(),
        }
    }

    /// Canonical representative of the simultaneous-conjugacy class.
    ///
    /// For every start point, points are numbered in breadth-first order
    /// (generators scanned in tuple order); the lexicographically least
    /// relabelled tuple wins. Two transitive constellations are conjugate
    /// iff their canonical forms agree. Returns `None` if not transitive.
    pub fn canonical(&self) -> Option<Constellation> {
        let gens: Vec<&Perm> = self.generators().collect();
        let key = canonical_key(self.degree, &gens)?;
        let d = self.degree;
        let mut perms = key.chunks(d).map(|c| Perm::from_images_unchecked(c.to_vec()));
        let handles = (0..self.handles.len())
            .map(|_| (perms.next().unwrap(), perms.next().unwrap()))
            .collect();
        Some(Constellation {
            degree: d,
            handles,
            slots: perms.collect(),
            labels: self.labels.clone(),
        })
    }

    /// Whether the two are related by a simultaneous relabelling.
    pub fn is_equivalent(&self, other: &Constellation) -> bool {
        self.degree == other.degree
            && self.slots.len() == other.slots.len()
            && self.handles.len() == other.handles.len()
            && match (self.canonical(), other.canonical()) {
                (Some(a), Some(b)) => a.slots == b.slots && a.handles == b.handles,
                _ => false,
            }
    }

    /// The flat key used for ordering canonical forms.
    pub fn key(&self) -> Vec<u8> {
        self.generators().flat_map(|p| p.images().iter().copied()).collect()
    }
}

pub(crate) fn genus_from_types(d: u32, base_genus: u32, types: &[CycleType]) -> Result<u32, ConstellationError> {
    let ram: i64 = types.iter().map(|t| t.ramification() as i64).sum();
    let chi = d as i64 * (2 - 2 * base_genus as i64) - ram;
    if chi % 2 != 0 || chi > 2 {
        return Err(ConstellationError::BadGenus);
    }
    Ok(((2 - chi) / 2) as u32)
}

pub(crate) fn is_transitive<'a>(d: usize, gens: impl Iterator<Item = &'a Perm>) -> bool {
    if d == 0 {
        return true;
    }
    let gens: Vec<&Perm> = gens.collect();
    let mut seen = vec![false; d];
    seen[0] = true;
    let mut stack = vec![0usize];
    let mut count = 1;
    while let Some(x) = stack.pop() {
        for g in &gens {
            let y = g.apply(x);
            if !seen[y] {
                seen[y] = true;
                count += 1;
                stack.push(y);
            }
        }
    }
    count == d
}

/// Lexicographically least BFS relabelling over all start points.
pub(crate) fn canonical_key(d: usize, gens: &[&Perm]) -> Option<Vec<u8>> {
    let mut best: Option<Vec<u8>> = None;
    let mut label = vec![u8::MAX; d];
    let mut order = Vec::with_capacity(d);
    let mut queue = VecDeque::with_capacity(d);
    let mut key = vec![0u8; d * gens.len()];
    for start in 0..d {
        label.iter_mut().for_each(|l| *l = u8::MAX);
        order.clear();
        queue.clear();
        label[start] = 0;
        order.push(start);
        queue.push_back(start);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = g.apply(x);
                if label[y] == u8::MAX {
                    label[y] = order.len() as u8;
                    order.push(y);
                    queue.push_back(y);
                }
            }
        }
        if order.len() < d {
            return None;
        }
        // Compare incrementally so losing starts are abandoned early.
        let mut better = best.is_none();
        let mut decided = better;
        'fill: for (gi, g) in gens.iter().enumerate() {
            for (new, &old) in order.iter().enumerate() {
                let v = label[g.apply(old)];
                let idx = gi * d + new;
                if !decided {
                    let b = best.as_ref().unwrap()[idx];
                    if v < b {
                        better = true;
                        decided = true;
                    } else if v > b {
                        break 'fill;
                    }
                }
                key[idx] = v;
            }
        }
        if better {
            best = Some(key.clone());
        }
    }
    best
}
