//! Exact verification of an explicit degree-6 family of covers from genus-two
//! curves to the line, totally ramified of orders 3, 3, 6 over 0, 1, ∞ with
//! one movable simple branch point.
//!
//! The cover is the composite of a bielliptic double cover
//! `φ₂: X_t → E` and the degree-3 quotient `φ₁: E → ℙ¹`, where
//! `E: y² = x³ + 1` and `(x_t, y_t) ∈ E` is the parameter.

mod elliptic;
mod report;
mod special;
pub mod symbolic;

pub use elliptic::{ec_translate, eval_mpoly, phi1, phi2, to_upoly_in, EllipticPoint};
pub use report::{verify_family, FamilyReport, SymbolicChecks};
pub use special::{
    candidates, closed_form_at, divisor, fiber, phi_closed, scan_admissible, scan_rational, sextic_at, status, verify,
    DivisorPart, FamilyParams, SpecializationReport, Status,
};
