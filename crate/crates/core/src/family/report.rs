use std::fmt::Write as _;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::special::{scan_admissible, scan_rational, verify, FamilyParams, SpecializationReport};
use super::symbolic;
use crate::exactmath::{MPoly, Var};

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct SymbolicChecks {
    pub phi2_on_curve: bool,
    pub composition_identity: bool,
    pub branch_point_identity: bool,
    /// `α − βY` at `(0, y_t)`.
    pub conjugate_factor: String,
    pub phi1_ramification_points: bool,
}

#[derive(Clone, Debug, Serialize, Deserialize)]
pub struct FamilyReport {
    pub format: u32,
    pub symbolic: SymbolicChecks,
    /// `Res_X(f, f')` as a polynomial in `xt`.
    pub discriminant: String,
    /// Squarefree factors of the discriminant, with multiplicities.
    pub degenerate_locus: Vec<(String, u32)>,
    /// Every rational point of small height on `E`, with its status.
    pub rational_points: Vec<SpecializationReport>,
    pub specializations: Vec<SpecializationReport>,
    pub all_passed: bool,
}

/// Height bound for the rational scan and the candidate scan.
pub const SCAN_HEIGHT: i64 = 12;

fn xt_name(p: &crate::exactmath::UPoly<crate::exactmath::Rat>) -> String {
    MPoly::from_upoly(p, Var::Xt).to_string()
}

fn symbolic_checks() -> SymbolicChecks {
    let (branch, low) = symbolic::branch_point_residues();
    let (xt, yt) = (MPoly::var(Var::Xt), MPoly::var(Var::Yt));
    let p0 = &MPoly::int(2) * &(&MPoly::int(1) - &yt);
    let q0 = &(&(&MPoly::int(4) * &yt) - &xt.pow(3)) - &MPoly::int(4);
    SymbolicChecks {
        phi2_on_curve: symbolic::phi2_on_curve_residue().is_zero() && symbolic::denominator_residue().is_zero(),
        composition_identity: symbolic::composition_residue().is_zero(),
        branch_point_identity: branch.is_zero() && low.iter().all(MPoly::is_zero),
        conjugate_factor: symbolic::conjugate_at_branch_point().to_string(),
        phi1_ramification_points: symbolic::phi1_numerator_at(&p0, &q0).is_zero(),
    }
}

/// Symbolic identities plus exact checks at `params`, or at the first
/// `count` admissible parameters found by scanning when `params` is empty.
pub fn verify_family(params: &[FamilyParams], count: usize) -> FamilyReport {
    let symbolic = symbolic_checks();
    let disc = symbolic::discriminant().expect("sextic has a discriminant");
    let locus = symbolic::degenerate_locus()
        .unwrap_or_default()
        .iter()
        .map(|(p, m)| (xt_name(p), *m))
        .collect();
    let rational_points: Vec<SpecializationReport> = scan_rational(SCAN_HEIGHT).par_iter().map(verify).collect();
    let chosen = if params.is_empty() {
        scan_admissible(count, SCAN_HEIGHT)
    } else {
        params.to_vec()
    };
    let specializations: Vec<SpecializationReport> = chosen.par_iter().map(verify).collect();
    let all_passed = symbolic.phi2_on_curve
        && symbolic.composition_identity
        && symbolic.branch_point_identity
        && symbolic.phi1_ramification_points
        && !specializations.is_empty()
        && specializations.iter().all(|s| s.passed);
    FamilyReport {
        format: crate::constellation::FORMAT_VERSION,
        symbolic,
        discriminant: xt_name(&disc),
        degenerate_locus: locus,
        rational_points,
        specializations,
        all_passed,
    }
}

fn mark(b: bool) -> &'static str {
    if b {
        "ok"
    } else {
        "FAILED"
    }
}

impl FamilyReport {
    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("serializable")
    }

    pub fn render_text(&self) -> String {
        let mut s = String::new();
        let sy = &self.symbolic;
        let _ = writeln!(s, "symbolic identities (mod Y^2 = f(X), yt^2 = xt^3 + 1)");
        let _ = writeln!(s, "  phi2 lands on E ............ {}", mark(sy.phi2_on_curve));
        let _ = writeln!(s, "  phi = phi1 o phi2 .......... {}", mark(sy.composition_identity));
        let _ = writeln!(s, "  phi(0, yt) = (y(2T) + 1)/2 ... {}", mark(sy.branch_point_identity));
        let _ = writeln!(s, "  phi1 ramification points ... {}", mark(sy.phi1_ramification_points));
        let _ = writeln!(s, "  conjugate factor at (0, yt): {}", sy.conjugate_factor);
        let _ = writeln!(s, "discriminant of f in X: {}", self.discriminant);
        let locus: Vec<String> = self.degenerate_locus.iter().map(|(p, m)| format!("({p})^{m}")).collect();
        let _ = writeln!(s, "degenerate locus: {}", locus.join(" * "));
        let _ = writeln!(s, "rational points of E (height <= {SCAN_HEIGHT}):");
        for r in &self.rational_points {
            let _ = writeln!(s, "  xt = {:>4}, yt = {:>3}: {}", r.xt, r.yt, r.status);
        }
        let _ = writeln!(s, "specializations:");
        for r in &self.specializations {
            let prof = r
                .profiles
                .as_ref()
                .map(|p| format!("{:?} / {:?} / {:?}", p[0], p[1], p[2]))
                .unwrap_or_else(|| "-".into());
            let _ = writeln!(
                s,
                "  xt = {}, yt = {} in {}: profiles {prof}; free value {} with fiber {:?}; genus {}; {}",
                r.xt,
                r.yt,
                r.field,
                r.free_value.as_deref().unwrap_or("-"),
                r.free_profile.as_deref().unwrap_or(&[]),
                r.genus.map(|g| g.to_string()).unwrap_or_else(|| "-".into()),
                if r.passed { "ok".to_string() } else { format!("FAILED ({}) {}", r.status, r.failures.join("; ")) }
            );
        }
        let _ = writeln!(s, "overall: {}", if self.all_passed { "pass" } else { "FAIL" });
        s
    }
}
