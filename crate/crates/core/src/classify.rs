//! Admissible branch data for deformable (`b = 1`) genus-2 covers over a
//! hyperbolic base orbifold.
//!
//! Everything here is derived from the constraints alone: the branch-excess
//! identity `b = 2 + d·χ = 1`, total ramification of order exactly `p` over
//! each cone point (so that a free branch point remains), and the bounds that
//! make each scan finite.

use num_traits::{One, Signed};
use serde::{Deserialize, Serialize};

use crate::exactmath::{int, Rat};
use crate::orbifold::OrbifoldSignature;

/// Largest cone order visited by the scans. The inequalities cut off far below it.
pub const ORDER_SCAN_BOUND: u32 = 64;
/// Largest base genus visited by the general scan.
pub const GENUS_SCAN_BOUND: u32 = 2;

/// One row of a classification table.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TableRow {
    pub signature: OrbifoldSignature,
    pub degree: u32,
    /// One partition of `degree` per cone point, in signature order.
    pub profiles: Vec<Vec<u32>>,
    pub free_branch: i64,
}

impl TableRow {
    fn totally_ramified(signature: OrbifoldSignature, degree: u32) -> Self {
        let profiles = signature
            .cone_orders
            .iter()
            .map(|o| {
                let p = o.finite().expect("finite cone order");
                vec![p; (degree / p) as usize]
            })
            .collect();
        let b = signature.branch_excess(degree);
        assert!(b.is_integer());
        TableRow {
            signature,
            degree,
            profiles,
            free_branch: b.to_integer().try_into().unwrap(),
        }
    }

    pub fn orders(&self) -> Vec<u32> {
        self.signature
            .cone_orders
            .iter()
            .map(|o| o.finite().expect("finite cone order"))
            .collect()
    }
}

/// Hyperbolic triples `p0 ≤ p1 ≤ p∞` with `(1 − 1/p0 − 1/p1)·p∞ ≤ 2` and
/// `1/3 ≤ 1/p0 + 1/p1 < 1`, in lexicographic order.
pub fn candidate_triples() -> Vec<[u32; 3]> {
    let mut out = Vec::new();
    for p0 in 2..=ORDER_SCAN_BOUND {
        for p1 in p0..=ORDER_SCAN_BOUND {
            let s = recip(p0) + recip(p1);
            if s < Rat::new(1.into(), 3.into()) {
                // 1/p0 + 1/p1 only decreases with p1
                break;
            }
            if s >= Rat::one() {
                continue;
            }
            for pinf in p1..=ORDER_SCAN_BOUND {
                if (Rat::one() - &s) * int(pinf as i64) > int(2) {
                    break;
                }
                let chi = OrbifoldSignature::finite(0, &[p0, p1, pinf]).euler_characteristic();
                if chi.is_negative() {
                    out.push([p0, p1, pinf]);
                }
            }
        }
    }
    out
}

fn recip(p: u32) -> Rat {
    Rat::new(1.into(), (p as i64).into())
}

/// Degree forced by `(1 − Σ 1/p_i)·d = 1` when it is an integer multiple of every `p_i`.
fn admissible_degree(sig: &OrbifoldSignature) -> Option<u32> {
    let chi = sig.euler_characteristic();
    if !chi.is_negative() {
        return None;
    }
    let d = (-chi).recip();
    if !d.is_integer() {
        return None;
    }
    let d: u32 = d.to_integer().try_into().ok()?;
    sig.cone_orders
        .iter()
        .all(|o| o.finite().is_some_and(|p| d % p == 0))
        .then_some(d)
}

/// Covers of hyperbolic triangle orbifolds, one row per admissible triple.
pub fn table_hypergeometric() -> Vec<TableRow> {
    candidate_triples()
        .into_iter()
        .filter_map(|t| {
            let sig = OrbifoldSignature::finite(0, &t);
            admissible_degree(&sig).map(|d| TableRow::totally_ramified(sig, d))
        })
        .collect()
}

/// Candidate triples removed by the integrality and divisibility conditions.
pub fn excluded_triples() -> Vec<[u32; 3]> {
    candidate_triples()
        .into_iter()
        .filter(|t| admissible_degree(&OrbifoldSignature::finite(0, t)).is_none())
        .collect()
}

/// Covers of every other hyperbolic base: genus ≤ 2 and any number of cone
/// points, excluding the three-point spheres of [`table_hypergeometric`].
///
/// The scan is exhaustive: `b = 1` forces `χ = −1/d ≥ −1`, each cone point
/// lowers `χ` by at least `1/2`, and raising an order only lowers `χ`
/// further, so branches are cut as soon as `χ < −1`.
pub fn table_general() -> Vec<TableRow> {
    let mut rows = Vec::new();
    for genus in 0..=GENUS_SCAN_BOUND {
        let mut orders = Vec::new();
        scan_orders(genus, &mut orders, 2, &mut rows);
    }
    rows.sort_by(|a, b| {
        (a.signature.genus, a.signature.cone_orders.len(), a.orders())
            .cmp(&(b.signature.genus, b.signature.cone_orders.len(), b.orders()))
    });
    rows
}

/// Machine-width rational for the hot scan loop; denominators stay below 64^6.
type SmallRat = num_rational::Ratio<i128>;

fn scan_orders(genus: u32, orders: &mut Vec<u32>, min: u32, rows: &mut Vec<TableRow>) {
    let chi = SmallRat::from_integer(2 - 2 * genus as i128);
    scan_from(genus, orders, chi, min, rows);
}

fn scan_from(genus: u32, orders: &mut Vec<u32>, chi: SmallRat, min: u32, rows: &mut Vec<TableRow>) {
    let hypergeometric = genus == 0 && orders.len() == 3;
    if !hypergeometric && chi.is_negative() {
        let sig = OrbifoldSignature::finite(genus, orders);
        if let Some(d) = admissible_degree(&sig) {
            rows.push(TableRow::totally_ramified(sig, d));
        }
    }
    for p in min..=ORDER_SCAN_BOUND {
        let child = chi + SmallRat::new(1, p as i128) - 1;
        if child < SmallRat::from_integer(-1) {
            break;
        }
        orders.push(p);
        scan_from(genus, orders, child, p, rows);
        orders.pop();
    }
}

/// Compact partition notation: `2^21`, `3+3`, `6`.
pub fn format_partition(parts: &[u32]) -> String {
    let mut groups: Vec<(u32, usize)> = Vec::new();
    for &p in parts {
        match groups.last_mut() {
            Some((q, k)) if *q == p => *k += 1,
            _ => groups.push((p, 1)),
        }
    }
    groups
        .iter()
        .map(|&(p, k)| match k {
            1 => p.to_string(),
            2 | 3 | 4 => vec![p.to_string(); k].join("+"),
            _ => format!("{p}^{k}"),
        })
        .collect::<Vec<_>>()
        .join("+")
}

/// Aligned plain-text rendering of a table.
pub fn render_table(rows: &[TableRow], hypergeometric: bool) -> String {
    let head = if hypergeometric {
        ["(p0,p1,pinf)", "degree", "ramification over (0 ; 1 ; inf)"]
    } else {
        ["(g ; p1,...,pn)", "degree", "ramification over (p1 ; ... ; pn)"]
    };
    let body: Vec<[String; 3]> = rows
        .iter()
        .map(|r| {
            let orders: Vec<String> = r.orders().iter().map(u32::to_string).collect();
            let sig = if hypergeometric {
                format!("({})", orders.join(","))
            } else {
                format!("({} ; {})", r.signature.genus, orders.join(","))
            };
            let prof: Vec<String> = r.profiles.iter().map(|p| format_partition(p)).collect();
            [sig, r.degree.to_string(), format!("({})", prof.join(" ; "))]
        })
        .collect();
    let w0 = body.iter().map(|r| r[0].len()).chain([head[0].len()]).max().unwrap();
    let w1 = body.iter().map(|r| r[1].len()).chain([head[1].len()]).max().unwrap();
    let mut out = format!("{:<w0$}  {:>w1$}  {}\n", head[0], head[1], head[2]);
    for r in &body {
        out.push_str(&format!("{:<w0$}  {:>w1$}  {}\n", r[0], r[1], r[2]));
    }
    out
}

pub fn render_triples(triples: &[[u32; 3]]) -> String {
    triples
        .iter()
        .map(|t| format!("({},{},{})\n", t[0], t[1], t[2]))
        .collect()
}

/// Consistency of a row: `b` equals the branch excess and every profile is an
/// apparent partition of the degree.
pub fn row_is_consistent(row: &TableRow) -> bool {
    let b = row.signature.branch_excess(row.degree);
    if b != int(row.free_branch) {
        return false;
    }
    match row.signature.pullback(row.degree, &row.profiles) {
        Ok(rep) => rep.apparent && rep.excess == 0,
        Err(_) => false,
    }
}
