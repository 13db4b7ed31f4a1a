//! Hurwitz branch data and branched coverings for genus-2 pullbacks of rank-2
//! logarithmic connections.
//!
//! * [`exactmath`]: exact rationals, polynomials, resultants and curve relations.
//! * [`orbifold`]: orbifold signatures, Euler characteristics and the branch excess.
//! * [`classify`]: the admissible `b = 1` branch data over hyperbolic bases.
//! * [`constellation`]: permutation models of covers, search and constructions.
//! * [`family`]: exact verification of an explicit degree-6 family of genus-2 covers.
//! * [`cli`]: the command implementations behind the `hurwitz` binary.
//!
//! The `examples/` directory of this crate holds one runnable program per
//! capability; `cargo run --example <name>` lists them.

pub mod classify;
pub mod cli;
pub mod constellation;
pub mod exactmath;
pub mod family;
pub mod orbifold;
