use super::{search, BranchData, Constellation, ConstellationError, CycleType, Perm, SearchOptions, SearchOutcome};

/// Product of the slots strictly after `slot`.
fn tail_product(c: &Constellation, slot: usize) -> Perm {
    c.slots()[slot + 1..]
        .iter()
        .fold(Perm::identity(c.degree()), |acc, s| acc.then(s))
}

fn check_points(c: &Constellation, slot: usize, a: usize, b: usize) -> Result<(), ConstellationError> {
    if slot >= c.slots().len() {
        return Err(ConstellationError::NoSuchSlot(slot));
    }
    for p in [a, b] {
        if p == 0 || p > c.degree() {
            return Err(ConstellationError::NoSuchPoint(p));
        }
    }
    if a == b {
        return Err(ConstellationError::Invalid("pivot points must differ".into()));
    }
    Ok(())
}

/// Replaces `σ_slot` by `σ_slot·(a b)` and appends `R⁻¹(a b)R`, where `R` is
/// the product of the slots after `slot`. The product stays the identity.
fn insert_transposition(c: &Constellation, slot: usize, a: usize, b: usize) -> Constellation {
    let d = c.degree();
    let t = Perm::transposition(d, a, b).expect("distinct points");
    let r = tail_product(c, slot);
    let moved = Perm::transposition(d, r.apply(a - 1) + 1, r.apply(b - 1) + 1).expect("distinct points");
    let mut out = c.clone();
    out.slots_mut()[slot] = c.slot(slot).then(&t);
    out.slots_mut().push(moved);
    let n = out.slots().len();
    out.labels_mut().push(super::default_labels(n)[n - 1].clone());
    out
}

/// Joins the cycles of `σ_slot` through the 1-based points `a` and `b`,
/// appending one transposition slot for the new simple branch point.
pub fn merge_cycles(c: &Constellation, slot: usize, a: usize, b: usize) -> Result<Constellation, ConstellationError> {
    check_points(c, slot, a, b)?;
    if c.slot(slot).same_cycle(a, b) {
        return Err(ConstellationError::SameCycle(a, b, slot));
    }
    Ok(insert_transposition(c, slot, a, b))
}

/// Cuts the cycle of `σ_slot` containing `a` and `b` in two, appending one
/// transposition slot.
pub fn split_cycle(c: &Constellation, slot: usize, a: usize, b: usize) -> Result<Constellation, ConstellationError> {
    check_points(c, slot, a, b)?;
    if !c.slot(slot).same_cycle(a, b) {
        return Err(ConstellationError::DifferentCycles(a, b, slot));
    }
    Ok(insert_transposition(c, slot, a, b))
}

/// Undoes [`merge_cycles`]/[`split_cycle`]: drops the last slot, which must
/// be a transposition, and multiplies it back into `σ_slot`.
pub fn absorb_last_transposition(c: &Constellation, slot: usize) -> Result<Constellation, ConstellationError> {
    let n = c.slots().len();
    if n < 2 || slot >= n - 1 {
        return Err(ConstellationError::NoSuchSlot(slot));
    }
    let tau = c.slot(n - 1);
    let cyc = tau.cycles();
    if cyc.len() != 1 || cyc[0].len() != 2 {
        return Err(ConstellationError::Invalid("last slot is not a transposition".into()));
    }
    let mut rest = c.clone();
    rest.slots_mut().pop();
    rest.labels_mut().pop();
    // `R` here excludes the dropped slot.
    let r_inv = tail_product(&rest, slot).inverse();
    let back = Perm::transposition(c.degree(), r_inv.apply(cyc[0][0] - 1) + 1, r_inv.apply(cyc[0][1] - 1) + 1)
        .expect("distinct points");
    rest.slots_mut()[slot] = c.slot(slot).then(&back);
    Ok(rest)
}

/// First pivot pair (lexicographic) whose merge or split gives `target`.
pub fn find_pivots(c: &Constellation, slot: usize, target: &CycleType, merge: bool) -> Option<(usize, usize)> {
    let s = c.slot(slot);
    for a in 1..=c.degree() {
        for b in a + 1..=c.degree() {
            if s.same_cycle(a, b) == merge {
                continue;
            }
            let t = Perm::transposition(c.degree(), a, b).unwrap();
            if s.then(&t).cycle_type() == *target {
                return Some((a, b));
            }
        }
    }
    None
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum RouteOp {
    Merge,
    Split,
}

/// A construction of a genus-two pullback: search a small seed
/// constellation, then merge or split one cycle, creating the free point.
#[derive(Clone, Debug)]
pub struct Route {
    pub name: &'static str,
    pub triple: [u32; 3],
    pub seed: &'static str,
    pub op: RouteOp,
    pub slot: usize,
    pub target: &'static str,
    pub needs_force: bool,
}

#[derive(Clone, Debug)]
pub struct RouteResult {
    pub seed: Constellation,
    pub pivots: (usize, usize),
    pub result: Constellation,
    pub target: BranchData,
}

const ROUTES: &[Route] = &[
    Route {
        name: "2-6-6",
        triple: [2, 6, 6],
        seed: "d=6; 2,2,2; 6; 3,3",
        op: RouteOp::Merge,
        slot: 2,
        target: "d=6; 2,2,2; 6; 6; free",
        needs_force: false,
    },
    Route {
        name: "2-4-8",
        triple: [2, 4, 8],
        seed: "d=8; 2^4; 4,4; 4,4",
        op: RouteOp::Merge,
        slot: 2,
        target: "d=8; 2^4; 4,4; 8; free",
        needs_force: false,
    },
    Route {
        name: "2-3-12",
        triple: [2, 3, 12],
        seed: "d=12; 2^6; 3^4; 6,6",
        op: RouteOp::Merge,
        slot: 2,
        target: "d=12; 2^6; 3^4; 12; free",
        needs_force: false,
    },
    Route {
        name: "3-3-6",
        triple: [3, 3, 6],
        seed: "d=6; 3,3; 6; 6",
        op: RouteOp::Split,
        slot: 1,
        target: "d=6; 3,3; 3,3; 6; free",
        needs_force: false,
    },
    Route {
        name: "3-3-6-merge",
        triple: [3, 3, 6],
        seed: "d=6; 3,3; 3,3; 3,3",
        op: RouteOp::Merge,
        slot: 2,
        target: "d=6; 3,3; 3,3; 6; free",
        needs_force: false,
    },
    Route {
        name: "2-5-5",
        triple: [2, 5, 5],
        seed: "d=10; 2^5; 5,5; 10",
        op: RouteOp::Split,
        slot: 2,
        target: "d=10; 2^5; 5,5; 5,5; free",
        needs_force: false,
    },
    Route {
        name: "2-4-6",
        triple: [2, 4, 6],
        seed: "d=12; 2^6; 4^3; 12",
        op: RouteOp::Split,
        slot: 2,
        target: "d=12; 2^6; 4^3; 6,6; free",
        needs_force: false,
    },
    Route {
        name: "2-3-9",
        triple: [2, 3, 9],
        seed: "d=18; 2^9; 3^6; 18",
        op: RouteOp::Split,
        slot: 2,
        target: "d=18; 2^9; 3^6; 9,9; free",
        needs_force: true,
    },
];

impl Route {
    pub fn all() -> &'static [Route] {
        ROUTES
    }

    pub fn by_name(name: &str) -> Option<&'static Route> {
        ROUTES.iter().find(|r| r.name == name)
    }

    pub fn seed_data(&self) -> BranchData {
        self.seed.parse().expect("valid route seed")
    }

    pub fn target_data(&self) -> BranchData {
        self.target.parse().expect("valid route target")
    }

    /// Runs the seed search and the cycle surgery, then validates.
    pub fn run(&self, opts: &SearchOptions) -> Result<RouteResult, String> {
        let seed_data = self.seed_data();
        let target = self.target_data();
        let mut opts = opts.clone();
        opts.exhaustive = false;
        opts.limit = 1;
        let seed = match search(&seed_data, &opts)? {
            SearchOutcome::Found(mut v) => v.remove(0),
            SearchOutcome::Infeasible(m) => return Err(format!("seed {}: {m}", self.seed)),
            SearchOutcome::ResourceLimit(m) => return Err(format!("seed {}: {m}", self.seed)),
        };
        let merge = self.op == RouteOp::Merge;
        let pivots = find_pivots(&seed, self.slot, &target.types[self.slot], merge)
            .ok_or_else(|| "no pivot pair gives the target type".to_string())?;
        let result = if merge {
            merge_cycles(&seed, self.slot, pivots.0, pivots.1)
        } else {
            split_cycle(&seed, self.slot, pivots.0, pivots.1)
        }
        .map_err(|e| e.to_string())?;
        let report = result.validate(Some(&target.types));
        if let Some(v) = report.first_violation() {
            return Err(format!("constructed tuple fails: {v}"));
        }
        Ok(RouteResult {
            seed,
            pivots,
            result,
            target,
        })
    }
}
