//! The degree-42 genus-two pullback of the (2,3,7) orbifold, built as a
//! degree-6 cover of a degree-7 cover.

use super::{
    compose, lift, search, BranchData, Constellation, CycleType, InnerMonodromy, LiftTarget, SearchOptions,
    SearchOutcome,
};

/// Branch data of the degree-7 outer cover: a genus-zero pullback of
/// (2,3,7) with three unramified points over 0 and one over 1, plus a free
/// slot (identity) where the inner cover will put its simple branch point.
pub const OUTER_QUERY: &str = "d=7; 2,2; 3,3; 7; id";

/// Branch data of the inner cover as a cover of the line in its own right:
/// the corrected first row of the general table plus its free point.
pub const INNER_QUERY: &str = "d=6; 2,2,2; 2,2,2; 2,2,2; 3,3; free";

/// Branch data the composite must have.
pub const TARGET_QUERY: &str = "d=42; 2^21; 3^14; 7^6; free";

#[derive(Clone, Debug)]
pub struct Pipeline {
    pub outer: Constellation,
    /// A witness for [`INNER_QUERY`], showing the inner branch data is realizable.
    pub inner_witness: Constellation,
    /// Sheet (0-based) carrying the inner simple branch point.
    pub free_sheet: usize,
    pub inner: InnerMonodromy,
    pub composite: Constellation,
    /// Non-trivial inner branching: `(outer slot, outer point, type)`.
    pub inner_branching: Vec<(usize, usize, CycleType)>,
}

/// Holonomy wanted around each outer cycle: fixed points of σ₀ get
/// `2+2+2`, the fixed point of σ₁ gets `3+3`, one chosen fixed point of
/// the free slot gets a transposition, everything else is trivial.
pub fn lift_target(outer: &Constellation, free_sheet: usize) -> LiftTarget {
    LiftTarget::from_fn(outer, 6, |slot, cycle| match (slot, cycle.len()) {
        (0, 1) => CycleType::uniform(2, 6).unwrap(),
        (1, 1) => CycleType::uniform(3, 6).unwrap(),
        (3, 1) if cycle[0] == free_sheet => CycleType::transposition(6),
        _ => CycleType::identity(6),
    })
}

pub fn run(opts: &SearchOptions) -> Result<Pipeline, String> {
    run_with(opts, &|d, o| search(d, o))
}

type SearchFn<'a> = dyn Fn(&BranchData, &SearchOptions) -> Result<SearchOutcome, String> + 'a;

/// [`run`] with a caller-supplied search, e.g. one backed by a cache.
///
/// Steps: a degree-7 witness for [`OUTER_QUERY`]; a degree-6 witness for
/// [`INNER_QUERY`]; a lift of the outer cover with the inner branching placed
/// at the unramified points; the composite.
pub fn run_with(opts: &SearchOptions, search: &SearchFn<'_>) -> Result<Pipeline, String> {
    let mut o = opts.clone();
    o.exhaustive = false;
    o.limit = 1;
    let first = |q: &str| -> Result<Constellation, String> {
        match search(&q.parse()?, &o)? {
            SearchOutcome::Found(mut v) => Ok(v.remove(0)),
            other => Err(format!("search {q:?} failed: {other:?}")),
        }
    };
    let outer = first(OUTER_QUERY)?;
    let inner_witness = first(INNER_QUERY)?;
    let target: BranchData = TARGET_QUERY.parse()?;
    for free_sheet in 0..outer.degree() {
        let t = lift_target(&outer, free_sheet);
        let Some(inner) = lift(&outer, &t).map_err(|e| e.to_string())? else {
            continue;
        };
        let composite = compose(&outer, &inner).map_err(|e| e.to_string())?;
        if let Some(v) = composite.validate(Some(&target.types)).first_violation() {
            return Err(format!("composite fails: {v}"));
        }
        let inner_branching = inner
            .holonomy_types(&outer)
            .map_err(|e| e.to_string())?
            .into_iter()
            .enumerate()
            .flat_map(|(j, cs)| {
                cs.into_iter()
                    .filter(|(_, t)| !t.is_identity())
                    .map(move |(c, t)| (j, c[0], t))
            })
            .collect();
        return Ok(Pipeline {
            outer,
            inner_witness,
            free_sheet,
            inner,
            composite,
            inner_branching,
        });
    }
    Err("no lift exists for this outer cover".into())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builds_a_valid_degree_42_constellation() {
        let p = run(&SearchOptions::default()).unwrap();
        assert_eq!(p.outer.genus(), Ok(0));
        assert_eq!(p.inner_witness.genus(), Ok(2));
        assert_eq!(p.composite.degree(), 42);
        assert_eq!(p.composite.genus(), Ok(2));
        let mut types: Vec<String> = p.inner_branching.iter().map(|(_, _, t)| t.to_string()).collect();
        types.sort();
        assert_eq!(types, ["2,1,1,1,1", "2,2,2", "2,2,2", "2,2,2", "3,3"]);
    }
}
