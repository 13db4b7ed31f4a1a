use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicBool, Ordering};
use std::time::{Duration, Instant};

use rayon::prelude::*;

use super::{canonical_key, default_labels, genus_from_types, is_transitive, ClassTable, Constellation, CycleType, Perm};

/// Degree, base genus and one cycle type per branch point.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BranchData {
    pub degree: u32,
    pub base_genus: u32,
    pub types: Vec<CycleType>,
    pub labels: Vec<String>,
}

impl BranchData {
    pub fn new(degree: u32, types: Vec<CycleType>) -> Self {
        let labels = default_labels(types.len());
        BranchData {
            degree,
            base_genus: 0,
            types,
            labels,
        }
    }

    pub fn with_base_genus(mut self, g: u32) -> Self {
        self.base_genus = g;
        self
    }

    /// Branch data of a classification row: its profiles plus one
    /// transposition slot per free branch point.
    pub fn from_row(row: &crate::classify::TableRow) -> Self {
        let d = row.degree;
        let mut types: Vec<CycleType> = row
            .profiles
            .iter()
            .map(|p| CycleType::new(p.clone()).expect("valid profile"))
            .collect();
        for _ in 0..row.free_branch.max(0) {
            types.push(CycleType::transposition(d));
        }
        BranchData::new(d, types).with_base_genus(row.signature.genus)
    }

    /// Sum of `d − #cycles` over all slots.
    pub fn ramification(&self) -> u32 {
        self.types.iter().map(CycleType::ramification).sum()
    }

    /// Genus of the cover, if Riemann–Hurwitz gives a valid one.
    pub fn cover_genus(&self) -> Option<u32> {
        genus_from_types(self.degree, self.base_genus, &self.types).ok()
    }

    fn check(&self) -> Result<(), String> {
        for (i, t) in self.types.iter().enumerate() {
            if t.degree() != self.degree {
                return Err(format!("slot {i}: partition {t} does not sum to {}", self.degree));
            }
        }
        if self.degree == 0 {
            return Err("degree must be positive".into());
        }
        if self.degree as usize > super::MAX_DEGREE {
            return Err(format!("degree above {}", super::MAX_DEGREE));
        }
        Ok(())
    }
}

/// Parses `d=6; 2,2,2; 6; 6; free` with an optional `g=1` field.
///
/// Each slot is a partition (`,` or `+` separated, `p^k` allowed); missing
/// parts are padded with fixed points. `free` is a transposition and `id`
/// the identity.
impl FromStr for BranchData {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut degree = None;
        let mut genus = 0;
        let mut raw: Vec<&str> = Vec::new();
        for field in s.split(';').map(str::trim).filter(|f| !f.is_empty()) {
            if let Some(v) = field.strip_prefix("d=") {
                degree = Some(v.trim().parse::<u32>().map_err(|e| format!("bad degree: {e}"))?);
            } else if let Some(v) = field.strip_prefix("g=") {
                genus = v.trim().parse::<u32>().map_err(|e| format!("bad genus: {e}"))?;
            } else {
                raw.push(field);
            }
        }
        let d = degree.ok_or("missing d=<degree>")?;
        let mut types = Vec::new();
        for f in raw {
            let t = match f {
                "free" => {
                    if d < 2 {
                        return Err("free slot needs degree at least 2".into());
                    }
                    CycleType::transposition(d)
                }
                "id" => CycleType::identity(d),
                _ => {
                    let mut parts = Vec::new();
                    for item in f.split([',', '+']).map(str::trim) {
                        let (p, k) = match item.split_once('^') {
                            Some((p, k)) => (p.trim(), k.trim().parse::<u32>().map_err(|e| format!("bad {item:?}: {e}"))?),
                            None => (item, 1),
                        };
                        let p = p.parse::<u32>().map_err(|e| format!("bad part {item:?}: {e}"))?;
                        parts.extend(std::iter::repeat_n(p, k as usize));
                    }
                    CycleType::padded(&parts, d).ok_or_else(|| format!("partition {f:?} exceeds degree {d}"))?
                }
            };
            types.push(t);
        }
        let data = BranchData::new(d, types).with_base_genus(genus);
        data.check()?;
        Ok(data)
    }
}

impl fmt::Display for BranchData {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "d={}", self.degree)?;
        if self.base_genus > 0 {
            write!(f, "; g={}", self.base_genus)?;
        }
        for t in &self.types {
            if t.is_transposition() && self.degree > 2 {
                write!(f, "; free")?;
            } else {
                write!(f, "; {}", t.compact())?;
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Enumerate every conjugacy class instead of stopping at a witness.
    pub exhaustive: bool,
    /// Number of distinct witnesses wanted in witness mode.
    pub limit: usize,
    /// Ignore the degree cap and the work estimate.
    pub force: bool,
    pub max_degree: u32,
    /// Cap on the number of enumerated tuples.
    pub max_work: u128,
    /// Wall-clock budget; the search gives up when it runs out.
    pub time_budget: Option<Duration>,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            exhaustive: false,
            limit: 1,
            force: false,
            max_degree: 12,
            max_work: 4_000_000_000,
            time_budget: None,
        }
    }
}

impl SearchOptions {
    pub fn exhaustive() -> Self {
        SearchOptions {
            exhaustive: true,
            ..Self::default()
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SearchOutcome {
    /// Witnesses, or all classes (canonical forms) in exhaustive mode.
    Found(Vec<Constellation>),
    /// The search space was covered and nothing exists.
    Infeasible(String),
    /// Refused because of the degree cap or the work estimate.
    ResourceLimit(String),
}

impl SearchOutcome {
    pub fn found(&self) -> Option<&[Constellation]> {
        match self {
            SearchOutcome::Found(v) => Some(v),
            _ => None,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            SearchOutcome::Found(_) => 0,
            SearchOutcome::Infeasible(_) => 1,
            SearchOutcome::ResourceLimit(_) => 3,
        }
    }
}

enum Item {
    Fixed(usize, Perm),
    Slot(usize, ClassTable),
    Handle(usize),
}

struct Plan {
    d: usize,
    k: usize,
    g: usize,
    items: Vec<Item>,
    determined: Option<(usize, CycleType)>,
    full_group: ClassTable,
    deadline: Option<Instant>,
    expired: AtomicBool,
}

/// Searches for constellations with the given branch data.
///
/// The slot with the largest class is fixed to its least representative,
/// the slot with the next largest class is solved from the relation, and the
/// remaining slots (and handle pairs, over all of `S_d`) are enumerated.
pub fn search(data: &BranchData, opts: &SearchOptions) -> Result<SearchOutcome, String> {
    data.check()?;
    let d = data.degree as usize;
    let ram: u32 = data.ramification();
    if ram % 2 != 0 {
        return Ok(SearchOutcome::Infeasible(format!(
            "total ramification {ram} is odd, so no product of these classes is the identity"
        )));
    }
    if data.cover_genus().is_none() {
        return Ok(SearchOutcome::Infeasible("Riemann–Hurwitz gives a negative genus".into()));
    }
    if data.degree > opts.max_degree && !opts.force {
        return Ok(SearchOutcome::ResourceLimit(format!(
            "degree {} exceeds the cap {}; pass force to override",
            data.degree, opts.max_degree
        )));
    }
    let k = data.types.len();
    let g = data.base_genus as usize;
    let sizes: Vec<u128> = data.types.iter().map(CycleType::class_size).collect();
    let mut by_size: Vec<usize> = (0..k).collect();
    by_size.sort_by(|&a, &b| sizes[b].cmp(&sizes[a]).then(a.cmp(&b)));
    let anchor = by_size.first().copied();
    let determined = by_size.get(1).copied();
    let factorial: u128 = (1..=d as u128).product();
    let mut work: u128 = factorial.saturating_pow(2 * g as u32);
    for (j, s) in sizes.iter().enumerate() {
        if Some(j) != anchor && Some(j) != determined {
            work = work.saturating_mul(*s);
        }
    }
    if work > opts.max_work && !opts.force {
        return Ok(SearchOutcome::ResourceLimit(format!(
            "about {work} tuples to enumerate, above the cap {}; pass force to override",
            opts.max_work
        )));
    }

    // Rotate so the determined slot closes the word.
    let order: Vec<Option<usize>> = match determined {
        Some(dj) => (dj + 1..k).map(Some).chain(std::iter::once(None)).chain((0..dj).map(Some)).collect(),
        None => std::iter::once(None).chain((0..k).map(Some)).collect(),
    };
    let mut items = Vec::new();
    for o in order {
        match o {
            None => items.extend((0..g).map(Item::Handle)),
            Some(j) if Some(j) == anchor => items.push(Item::Fixed(j, data.types[j].representative())),
            Some(j) => items.push(Item::Slot(j, data.types[j].enumerate())),
        }
    }
    let full_group = if g > 0 { all_perms(d) } else { ClassTable::empty(d) };
    let plan = Plan {
        d,
        k,
        g,
        items,
        determined: determined.map(|j| (j, data.types[j].clone())),
        full_group,
        deadline: opts.time_budget.map(|t| Instant::now() + t),
        expired: AtomicBool::new(false),
    };

    let mut found: Vec<Constellation> = if opts.exhaustive {
        plan.run_exhaustive()
    } else {
        plan.run_witness(opts.limit.max(1))
    };
    if plan.expired.load(Ordering::Relaxed) && (found.is_empty() || opts.exhaustive) {
        return Ok(SearchOutcome::ResourceLimit("time budget exhausted".into()));
    }
    if found.is_empty() {
        return Ok(SearchOutcome::Infeasible("exhaustive enumeration found no constellation".into()));
    }
    for c in &mut found {
        *c.labels_mut() = data.labels.clone();
    }
    Ok(SearchOutcome::Found(found))
}

fn all_perms(d: usize) -> ClassTable {
    let mut tables = Vec::new();
    partitions(d as u32, d as u32, &mut Vec::new(), &mut |p| {
        tables.push(CycleType::new(p.to_vec()).unwrap().enumerate());
    });
    ClassTable::concat(d, &tables)
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

/// One partial assignment during the depth-first walk.
struct State {
    slots: Vec<Option<Perm>>,
    handles: Vec<(Option<Perm>, Option<Perm>)>,
}

impl Plan {
    /// Index of the first enumerated item, with the fixed prefix before it.
    fn split_point(&self) -> usize {
        self.items
            .iter()
            .position(|it| !matches!(it, Item::Fixed(..)))
            .unwrap_or(self.items.len())
    }

    fn fresh_state(&self) -> State {
        State {
            slots: vec![None; self.k],
            handles: vec![(None, None); self.g],
        }
    }

    fn top_len(&self, idx: usize) -> usize {
        match self.items.get(idx) {
            Some(Item::Slot(_, t)) => t.len(),
            Some(Item::Handle(_)) => self.full_group.len(),
            _ => 1,
        }
    }

    /// Walks the subtree where the first enumerated item takes row `row`.
    fn walk_from(&self, row: usize, visit: &mut dyn FnMut(&State) -> bool) -> bool {
        if self.out_of_time() {
            return true;
        }
        let mut st = self.fresh_state();
        let mut prefix = Perm::identity(self.d);
        let start = self.split_point();
        for it in &self.items[..start] {
            if let Item::Fixed(j, p) = it {
                prefix = prefix.then(p);
                st.slots[*j] = Some(p.clone());
            }
        }
        if start == self.items.len() {
            return self.leaf(&mut st, &prefix, visit);
        }
        self.step(start, Some(row), &mut st, &prefix, visit)
    }

    fn out_of_time(&self) -> bool {
        if self.expired.load(Ordering::Relaxed) {
            return true;
        }
        match self.deadline {
            Some(t) if Instant::now() > t => {
                self.expired.store(true, Ordering::Relaxed);
                true
            }
            _ => false,
        }
    }

    /// Returns `true` to stop the walk.
    fn step(&self, idx: usize, only: Option<usize>, st: &mut State, prefix: &Perm, visit: &mut dyn FnMut(&State) -> bool) -> bool {
        if only.is_none() && idx + 1 < self.items.len() && self.deadline.is_some() && self.out_of_time() {
            return true;
        }
        if idx == self.items.len() {
            return self.leaf(st, prefix, visit);
        }
        match &self.items[idx] {
            Item::Fixed(j, p) => {
                st.slots[*j] = Some(p.clone());
                self.step(idx + 1, None, st, &prefix.then(p), visit)
            }
            Item::Slot(j, table) => {
                let rows = only.map_or(0..table.len(), |r| r..r + 1);
                for r in rows {
                    let p = table.perm(r);
                    let next = prefix.then(&p);
                    st.slots[*j] = Some(p);
                    if self.step(idx + 1, None, st, &next, visit) {
                        return true;
                    }
                }
                false
            }
            Item::Handle(h) => {
                let rows = only.map_or(0..self.full_group.len(), |r| r..r + 1);
                for r in rows {
                    let a = self.full_group.perm(r);
                    for s in 0..self.full_group.len() {
                        let b = self.full_group.perm(s);
                        let next = prefix.then(&Perm::commutator(&a, &b));
                        st.handles[*h] = (Some(a.clone()), Some(b));
                        if self.step(idx + 1, None, st, &next, visit) {
                            return true;
                        }
                    }
                }
                false
            }
        }
    }

    fn leaf(&self, st: &mut State, prefix: &Perm, visit: &mut dyn FnMut(&State) -> bool) -> bool {
        match &self.determined {
            Some((j, t)) => {
                let last = prefix.inverse();
                if last.cycle_type() != *t {
                    return false;
                }
                st.slots[*j] = Some(last);
            }
            None => {
                if !prefix.is_identity() {
                    return false;
                }
            }
        }
        let gens = st
            .handles
            .iter()
            .flat_map(|(a, b)| [a.as_ref().unwrap(), b.as_ref().unwrap()])
            .chain(st.slots.iter().map(|s| s.as_ref().unwrap()));
        if !is_transitive(self.d, gens) {
            return false;
        }
        visit(st)
    }

    fn to_constellation(&self, st: &State) -> Constellation {
        let handles = st
            .handles
            .iter()
            .map(|(a, b)| (a.clone().unwrap(), b.clone().unwrap()))
            .collect();
        let slots = st.slots.iter().map(|s| s.clone().unwrap()).collect();
        Constellation::with_handles(handles, slots).expect("consistent degrees")
    }

    fn key_of(&self, st: &State) -> Vec<u8> {
        let gens: Vec<&Perm> = st
            .handles
            .iter()
            .flat_map(|(a, b)| [a.as_ref().unwrap(), b.as_ref().unwrap()])
            .chain(st.slots.iter().map(|s| s.as_ref().unwrap()))
            .collect();
        canonical_key(self.d, &gens).expect("transitive")
    }

    fn from_key(&self, key: &[u8]) -> Constellation {
        let mut perms = key.chunks(self.d).map(|c| Perm::from_images_unchecked(c.to_vec()));
        let handles = (0..self.g).map(|_| (perms.next().unwrap(), perms.next().unwrap())).collect();
        Constellation::with_handles(handles, perms.collect()).expect("consistent degrees")
    }

    fn run_exhaustive(&self) -> Vec<Constellation> {
        let n = self.top_len(self.split_point());
        let keys: BTreeSet<Vec<u8>> = (0..n)
            .into_par_iter()
            .fold(BTreeSet::new, |mut acc, row| {
                self.walk_from(row, &mut |st| {
                    acc.insert(self.key_of(st));
                    false
                });
                acc
            })
            .reduce(BTreeSet::new, |mut a, b| {
                a.extend(b);
                a
            });
        keys.iter().map(|k| self.from_key(k)).collect()
    }

    fn run_witness(&self, limit: usize) -> Vec<Constellation> {
        let n = self.top_len(self.split_point());
        if limit == 1 {
            let hit = (0..n).into_par_iter().find_map_first(|row| {
                let mut out = None;
                self.walk_from(row, &mut |st| {
                    out = Some(self.to_constellation(st));
                    true
                });
                out
            });
            return hit.into_iter().collect();
        }
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        let chunk = rayon::current_num_threads().max(1) * 4;
        let mut start = 0;
        while start < n && out.len() < limit {
            let end = (start + chunk).min(n);
            let batches: Vec<Vec<(Vec<u8>, Constellation)>> = (start..end)
                .into_par_iter()
                .map(|row| {
                    let mut local: Vec<(Vec<u8>, Constellation)> = Vec::new();
                    self.walk_from(row, &mut |st| {
                        let key = self.key_of(st);
                        if !local.iter().any(|(k, _)| *k == key) {
                            local.push((key, self.to_constellation(st)));
                        }
                        local.len() >= limit
                    });
                    local
                })
                .collect();
            for (key, c) in batches.into_iter().flatten() {
                if out.len() < limit && seen.insert(key) {
                    out.push(c);
                }
            }
            start = end;
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parses_branch_data() {
        let b: BranchData = "d=6; 2,2,2; 6; 6; free".parse().unwrap();
        assert_eq!(b.degree, 6);
        assert_eq!(b.types.len(), 4);
        assert!(b.types[3].is_transposition());
        assert_eq!(b.cover_genus(), Some(2));
        let b: BranchData = "d=4; g=1; 2^2".parse().unwrap();
        assert_eq!(b.base_genus, 1);
        assert_eq!(b.types[0].parts(), &[2, 2]);
        assert!("d=3; 2,2".parse::<BranchData>().is_err());
        assert!("2,2".parse::<BranchData>().is_err());
    }

    #[test]
    fn degree_four_witness_and_count() {
        let b: BranchData = "d=4; 4; 4; 4; free".parse().unwrap();
        let w = search(&b, &SearchOptions::default()).unwrap();
        let w = &w.found().unwrap()[0];
        assert!(w.validate(Some(&b.types)).is_valid());
        assert_eq!(w.genus(), Ok(2));
        let all = search(&b, &SearchOptions::exhaustive()).unwrap();
        let all = all.found().unwrap();
        for c in all {
            assert!(c.validate(Some(&b.types)).is_valid());
        }
        assert!(!all.is_empty());
    }

    #[test]
    fn parity_and_genus_obstructions() {
        let b: BranchData = "d=3; 3; 3; free".parse().unwrap();
        assert!(matches!(search(&b, &SearchOptions::default()).unwrap(), SearchOutcome::Infeasible(_)));
        let b: BranchData = "d=3; 2; 2".parse().unwrap();
        // parity is fine but two transpositions cannot act transitively on 3 points
        assert!(matches!(search(&b, &SearchOptions::default()).unwrap(), SearchOutcome::Infeasible(_)));
    }

    #[test]
    fn rows_become_branch_data() {
        let rows = crate::classify::table_general();
        let last = rows.last().unwrap();
        let b = BranchData::from_row(last);
        assert_eq!(b.to_string(), "d=2; g=1; 2; 2");
        assert_eq!(b.cover_genus(), Some(2));
    }

    #[test]
    fn resource_guard() {
        let b: BranchData = "d=13; 13; 13; free; free".parse().unwrap();
        assert!(matches!(search(&b, &SearchOptions::default()).unwrap(), SearchOutcome::ResourceLimit(_)));
    }

    #[test]
    fn handles_over_a_torus() {
        // unbranched double covers of a torus: three classes
        let b: BranchData = "d=2; g=1; id".parse().unwrap();
        let all = search(&b, &SearchOptions::exhaustive()).unwrap();
        assert_eq!(all.found().unwrap().len(), 3);
        let b: BranchData = "d=2; g=1; free; free".parse().unwrap();
        let w = search(&b, &SearchOptions::default()).unwrap();
        assert_eq!(w.found().unwrap()[0].genus(), Ok(2));
    }
}
