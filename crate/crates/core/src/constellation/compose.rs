//! Covers of covers.
//!
//! A degree-`d` constellation over the sphere minus `k` points is the
//! monodromy of a cover whose fundamental group is a finite-index subgroup
//! of the free group on the first `k − 1` loops. Its free generators are the
//! Schreier generators of a breadth-first transversal. Giving each of them a
//! permutation of degree `e` defines a further cover, and [`compose`] writes
//! the degree `d·e` composite as a constellation over the original base.

use super::{is_transitive, Constellation, ConstellationError, CycleType, Perm};

/// Transversal and Schreier generators of an outer constellation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SchreierGenerators {
    degree: usize,
    slots: usize,
    /// `(parent sheet, slot)` of the tree edge reaching each sheet.
    tree: Vec<Option<(usize, usize)>>,
    /// Non-tree edges `(sheet, slot)` in canonical order.
    edges: Vec<(usize, usize)>,
    /// Generator index for every edge, `None` on tree edges.
    index: Vec<Vec<Option<usize>>>,
}

impl SchreierGenerators {
    /// Breadth-first from sheet 1, scanning the first `k − 1` slots in order.
    pub fn new(outer: &Constellation) -> Result<Self, ConstellationError> {
        if outer.base_genus() > 0 {
            return Err(ConstellationError::Invalid("outer base must be a sphere".into()));
        }
        let k = outer.slots().len();
        if k < 2 {
            return Err(ConstellationError::Invalid("need at least two slots".into()));
        }
        if !outer.is_transitive() {
            return Err(ConstellationError::NotTransitive);
        }
        let d = outer.degree();
        let mut tree = vec![None; d];
        let mut seen = vec![false; d];
        let mut is_tree = vec![vec![false; k - 1]; d];
        seen[0] = true;
        let mut queue = std::collections::VecDeque::from([0usize]);
        while let Some(x) = queue.pop_front() {
            for j in 0..k - 1 {
                let y = outer.slot(j).apply(x);
                if !seen[y] {
                    seen[y] = true;
                    tree[y] = Some((x, j));
                    is_tree[x][j] = true;
                    queue.push_back(y);
                }
            }
        }
        let mut edges = Vec::new();
        let mut index = vec![vec![None; k - 1]; d];
        for x in 0..d {
            for j in 0..k - 1 {
                if !is_tree[x][j] {
                    index[x][j] = Some(edges.len());
                    edges.push((x, j));
                }
            }
        }
        Ok(SchreierGenerators {
            degree: d,
            slots: k,
            tree,
            edges,
            index,
        })
    }

    /// Rank of the free group `(k − 2)·d + 1`.
    pub fn rank(&self) -> usize {
        self.edges.len()
    }

    /// Non-tree edges as 1-based `(sheet, slot)` pairs; slots are 0-based.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        self.edges.iter().map(|&(x, j)| (x + 1, j)).collect()
    }

    pub fn generator_of(&self, sheet: usize, slot: usize) -> Option<usize> {
        self.index[sheet][slot]
    }

    pub fn parent(&self, sheet: usize) -> Option<(usize, usize)> {
        self.tree[sheet]
    }
}

/// Images of the Schreier generators, in canonical order.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct InnerMonodromy {
    pub degree: usize,
    pub images: Vec<Perm>,
}

impl InnerMonodromy {
    /// The permutation attached to edge `(sheet, slot)` of the first `k − 1`
    /// slots, the identity on tree edges.
    fn edge(&self, gens: &SchreierGenerators, sheet: usize, slot: usize) -> Perm {
        match gens.index[sheet][slot] {
            Some(i) => self.images[i].clone(),
            None => Perm::identity(self.degree),
        }
    }

    /// Holonomy on every edge of every slot, the last slot derived from the
    /// relation.
    pub fn cocycle(&self, outer: &Constellation) -> Result<Vec<Vec<Perm>>, ConstellationError> {
        let gens = SchreierGenerators::new(outer)?;
        if gens.rank() != self.images.len() {
            return Err(ConstellationError::Invalid(format!(
                "expected {} generator images, got {}",
                gens.rank(),
                self.images.len()
            )));
        }
        if let Some(p) = self.images.iter().find(|p| p.degree() != self.degree) {
            return Err(ConstellationError::DegreeMismatch {
                index: 0,
                expected: self.degree,
                found: p.degree(),
            });
        }
        let (d, k) = (outer.degree(), outer.slots().len());
        let mut g = vec![vec![Perm::identity(self.degree); k]; d];
        for (x, row) in g.iter_mut().enumerate() {
            for (j, cell) in row.iter_mut().enumerate().take(k - 1) {
                *cell = self.edge(&gens, x, j);
            }
        }
        let last = outer.slot(k - 1);
        for x in 0..d {
            let mut i = last.apply(x);
            let mut acc = Perm::identity(self.degree);
            for j in 0..k - 1 {
                acc = acc.then(&g[i][j]);
                i = outer.slot(j).apply(i);
            }
            debug_assert_eq!(i, x);
            g[x][k - 1] = acc.inverse();
        }
        Ok(g)
    }

    /// Cycle type of the holonomy around each cycle of each outer slot,
    /// listed with the cycle (0-based, starting at its least point).
    pub fn holonomy_types(&self, outer: &Constellation) -> Result<Vec<Vec<(Vec<usize>, CycleType)>>, ConstellationError> {
        let g = self.cocycle(outer)?;
        Ok(outer
            .slots()
            .iter()
            .enumerate()
            .map(|(j, s)| {
                s.all_cycles()
                    .into_iter()
                    .map(|c| {
                        let h = c.iter().fold(Perm::identity(self.degree), |acc, &x| acc.then(&g[x][j]));
                        (c, h.cycle_type())
                    })
                    .collect()
            })
            .collect())
    }
}

/// The composite of `outer` and a cover given by `inner`, of degree `d·e`.
/// Sheet `(i, s)` is point `i·e + s` (0-based), so point `(i−1)·e + s` in
/// 1-based terms.
pub fn compose(outer: &Constellation, inner: &InnerMonodromy) -> Result<Constellation, ConstellationError> {
    let g = inner.cocycle(outer)?;
    let (d, e) = (outer.degree(), inner.degree);
    if d * e > super::MAX_DEGREE {
        return Err(ConstellationError::Invalid(format!("composite degree {} too large", d * e)));
    }
    let slots = outer
        .slots()
        .iter()
        .enumerate()
        .map(|(j, s)| {
            let mut images = vec![0u8; d * e];
            for i in 0..d {
                for t in 0..e {
                    images[i * e + t] = (s.apply(i) * e + g[i][j].apply(t)) as u8;
                }
            }
            Perm::from_images_unchecked(images)
        })
        .collect();
    Ok(Constellation::new(slots)?.with_labels(outer.labels().to_vec()))
}

/// Wanted holonomy class for every cycle of every outer slot.
#[derive(Clone, Debug)]
pub struct LiftTarget {
    degree: usize,
    targets: Vec<Vec<CycleType>>,
}

impl LiftTarget {
    /// `f(slot, cycle)` gives the class for each cycle (0-based points).
    pub fn from_fn(outer: &Constellation, degree: usize, f: impl Fn(usize, &[usize]) -> CycleType) -> Self {
        let targets = outer
            .slots()
            .iter()
            .enumerate()
            .map(|(j, s)| s.all_cycles().iter().map(|c| f(j, c)).collect())
            .collect();
        LiftTarget { degree, targets }
    }
}

/// A word in the unknowns: `(variable, inverted)` factors, left to right.
#[derive(Clone, Debug)]
struct Constraint {
    word: Vec<(usize, bool)>,
    target: CycleType,
    identity: bool,
}

/// Node budget for [`lift`].
pub const LIFT_NODE_LIMIT: u64 = 50_000_000;

/// Finds an inner monodromy whose holonomies have the target classes and
/// whose composite is transitive, by propagation and branching.
///
/// Returns `Ok(None)` when the search space is exhausted and `Err` when the
/// node budget runs out.
pub fn lift(outer: &Constellation, target: &LiftTarget) -> Result<Option<InnerMonodromy>, ConstellationError> {
    let gens = SchreierGenerators::new(outer)?;
    let (k, e) = (outer.slots().len(), target.degree);
    if target.targets.len() != k {
        return Err(ConstellationError::Invalid("one target list per slot".into()));
    }
    // Word for the holonomy on edge (x, j), as factors of unknowns.
    let edge_word = |x: usize, j: usize| -> Vec<(usize, bool)> {
        if j < k - 1 {
            return gens.index[x][j].map(|v| vec![(v, false)]).unwrap_or_default();
        }
        let mut i = outer.slot(k - 1).apply(x);
        let mut fwd = Vec::new();
        for jj in 0..k - 1 {
            if let Some(v) = gens.index[i][jj] {
                fwd.push((v, true));
            }
            i = outer.slot(jj).apply(i);
        }
        fwd.reverse();
        fwd
    };
    let mut constraints = Vec::new();
    for (j, s) in outer.slots().iter().enumerate() {
        for (c, t) in s.all_cycles().iter().zip(&target.targets[j]) {
            if t.degree() as usize != e {
                return Err(ConstellationError::Invalid(format!("target {t} has wrong degree")));
            }
            let word: Vec<(usize, bool)> = c.iter().flat_map(|&x| edge_word(x, j)).collect();
            constraints.push(Constraint {
                word,
                identity: t.is_identity(),
                target: t.clone(),
            });
        }
    }
    let mut solver = Solver {
        outer,
        e,
        constraints,
        nodes: 0,
        classes: Vec::new(),
        all: None,
    };
    let mut assign = vec![None; gens.rank()];
    match solver.solve(&mut assign, true)? {
        Some(images) => Ok(Some(InnerMonodromy { degree: e, images })),
        None => Ok(None),
    }
}

struct Solver<'a> {
    outer: &'a Constellation,
    e: usize,
    constraints: Vec<Constraint>,
    nodes: u64,
    classes: Vec<(CycleType, Vec<Perm>)>,
    all: Option<Vec<Perm>>,
}

fn literal(p: &Perm, inv: bool) -> Perm {
    if inv {
        p.inverse()
    } else {
        p.clone()
    }
}

impl Solver<'_> {
    fn class(&mut self, t: &CycleType) -> Vec<Perm> {
        if let Some((_, v)) = self.classes.iter().find(|(c, _)| c == t) {
            return v.clone();
        }
        let table = t.enumerate();
        let v: Vec<Perm> = (0..table.len()).map(|i| table.perm(i)).collect();
        self.classes.push((t.clone(), v.clone()));
        v
    }

    fn all_perms(&mut self) -> Vec<Perm> {
        if self.all.is_none() {
            let mut v = Vec::new();
            partitions(self.e as u32, self.e as u32, &mut Vec::new(), &mut |p| {
                let t = CycleType::new(p.to_vec()).unwrap();
                let table = t.enumerate();
                v.extend((0..table.len()).map(|i| table.perm(i)));
            });
            self.all = Some(v);
        }
        self.all.clone().unwrap()
    }

    /// Splits a word around its single unknown into the known products
    /// `L` and `R`, returning `(var, inverted, L, R)`.
    fn around(&self, c: &Constraint, assign: &[Option<Perm>]) -> (usize, bool, Perm, Perm) {
        let id = Perm::identity(self.e);
        let pos = c.word.iter().position(|(v, _)| assign[*v].is_none()).unwrap();
        let prod = |range: &[(usize, bool)]| {
            range
                .iter()
                .fold(id.clone(), |acc, (v, inv)| acc.then(&literal(assign[*v].as_ref().unwrap(), *inv)))
        };
        let (v, inv) = c.word[pos];
        (v, inv, prod(&c.word[..pos]), prod(&c.word[pos + 1..]))
    }

    /// Solves `L·x^{±1}·R = m` for `x`.
    fn solve_for(inv: bool, l: &Perm, r: &Perm, m: &Perm) -> Perm {
        let y = l.inverse().then(m).then(&r.inverse());
        literal(&y, inv)
    }

    fn solve(&mut self, assign: &mut Vec<Option<Perm>>, symmetric: bool) -> Result<Option<Vec<Perm>>, ConstellationError> {
        self.nodes += 1;
        if self.nodes > LIFT_NODE_LIMIT {
            return Err(ConstellationError::Invalid("lift search exceeded its node budget".into()));
        }
        let mut assign = assign.clone();
        let mut symmetric = symmetric;
        // Propagate identity constraints with one unknown; check closed ones.
        loop {
            let mut progress = false;
            for ci in 0..self.constraints.len() {
                let c = &self.constraints[ci];
                let unknown = c.word.iter().filter(|(v, _)| assign[*v].is_none()).count();
                if unknown == 0 {
                    let p = c
                        .word
                        .iter()
                        .fold(Perm::identity(self.e), |acc, (v, inv)| acc.then(&literal(assign[*v].as_ref().unwrap(), *inv)));
                    if p.cycle_type() != c.target {
                        return Ok(None);
                    }
                } else if unknown == 1 && c.identity && !has_repeat(&c.word, &assign) {
                    let (v, inv, l, r) = self.around(c, &assign);
                    let x = Self::solve_for(inv, &l, &r, &Perm::identity(self.e));
                    if !x.is_identity() {
                        symmetric = false;
                    }
                    assign[v] = Some(x);
                    progress = true;
                }
            }
            if !progress {
                break;
            }
        }
        if assign.iter().all(Option::is_some) {
            let images: Vec<Perm> = assign.into_iter().map(Option::unwrap).collect();
            let inner = InnerMonodromy {
                degree: self.e,
                images: images.clone(),
            };
            let comp = compose(self.outer, &inner)?;
            let ok = is_transitive(comp.degree(), comp.slots().iter());
            return Ok(ok.then_some(images));
        }
        // Typed constraint with one unknown and the smallest class.
        let mut best: Option<(usize, u128)> = None;
        for (ci, c) in self.constraints.iter().enumerate() {
            let unknown = c.word.iter().filter(|(v, _)| assign[*v].is_none()).count();
            if unknown == 1 && !has_repeat(&c.word, &assign) {
                let size = c.target.class_size();
                if best.is_none_or(|(_, s)| size < s) {
                    best = Some((ci, size));
                }
            }
        }
        if let Some((ci, _)) = best {
            let c = self.constraints[ci].clone();
            let (v, inv, l, r) = self.around(&c, &assign);
            let choices = if symmetric {
                vec![c.target.representative()]
            } else {
                self.class(&c.target)
            };
            for m in choices {
                let x = Self::solve_for(inv, &l, &r, &m);
                assign[v] = Some(x);
                if let Some(sol) = self.solve(&mut assign, false)? {
                    return Ok(Some(sol));
                }
            }
            return Ok(None);
        }
        // Otherwise branch on an unknown of the tightest constraint.
        let v = self
            .constraints
            .iter()
            .filter_map(|c| {
                let u: Vec<usize> = c.word.iter().map(|(v, _)| *v).filter(|v| assign[*v].is_none()).collect();
                (!u.is_empty()).then(|| (u.len(), u[0]))
            })
            .min()
            .map(|(_, v)| v)
            .or_else(|| assign.iter().position(Option::is_none))
            .unwrap();
        let choices = if symmetric {
            let mut reps = Vec::new();
            partitions(self.e as u32, self.e as u32, &mut Vec::new(), &mut |p| {
                reps.push(CycleType::new(p.to_vec()).unwrap().representative());
            });
            reps
        } else {
            self.all_perms()
        };
        for x in choices {
            assign[v] = Some(x);
            if let Some(sol) = self.solve(&mut assign, false)? {
                return Ok(Some(sol));
            }
        }
        Ok(None)
    }
}

/// Whether the unknown in a one-unknown word appears more than once.
fn has_repeat(word: &[(usize, bool)], assign: &[Option<Perm>]) -> bool {
    let mut first = None;
    for (v, _) in word {
        if assign[*v].is_none() {
            match first {
                None => first = Some(*v),
                Some(f) if f == *v => return true,
                _ => {}
            }
        }
    }
    false
}

fn partitions(n: u32, max: u32, cur: &mut Vec<u32>, f: &mut impl FnMut(&[u32])) {
    if n == 0 {
        f(cur);
        return;
    }
    for p in (1..=max.min(n)).rev() {
        cur.push(p);
        partitions(n - p, p, cur, f);
        cur.pop();
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn outer333() -> Constellation {
        let c = vec![vec![1, 2, 3]];
        Constellation::from_cycles(3, &[c.clone(), c.clone(), c, vec![]]).unwrap()
    }

    #[test]
    fn schreier_rank() {
        let o = outer333();
        let g = SchreierGenerators::new(&o).unwrap();
        assert_eq!(g.rank(), 2 * 3 + 1);
        assert_eq!(g.parent(0), None);
        assert_eq!(g.parent(1), Some((0, 0)));
    }

    #[test]
    fn trivial_inner_gives_disjoint_copies() {
        let o = outer333();
        let inner = InnerMonodromy {
            degree: 2,
            images: vec![Perm::identity(2); 7],
        };
        let c = compose(&o, &inner).unwrap();
        assert!(c.product_is_identity());
        assert!(!c.is_transitive());
    }

    #[test]
    fn lift_produces_the_requested_holonomy() {
        let o = outer333();
        let target = LiftTarget::from_fn(&o, 2, |j, c| {
            if j == 2 || (j == 3 && c[0] == 0) {
                CycleType::transposition(2)
            } else {
                CycleType::identity(2)
            }
        });
        let inner = lift(&o, &target).unwrap().expect("a lift exists");
        let c = compose(&o, &inner).unwrap();
        let types: Vec<CycleType> = ["3,3", "3,3", "6", "2,1,1,1,1"].iter().map(|s| s.parse().unwrap()).collect();
        assert!(c.validate(Some(&types)).is_valid());
        assert_eq!(c.genus(), Ok(2));
        let h = inner.holonomy_types(&o).unwrap();
        assert!(h[2][0].1.is_transposition());
    }
}
