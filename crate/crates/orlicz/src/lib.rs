//! Orlicz-function calculus and multiplier inequalities at desk scale:
//! convex conjugation, generalized singular values, Luxemburg and Orlicz
//! norms, Koethe duality and growth-condition probes on finite
//! weighted-block tracial algebras.
//!
//! The semifinite trace is modeled as a finite direct sum of real matrix
//! blocks with positive trace weights. Everything infinite-dimensional
//! enters only through the finite identities it rests on; probes and
//! checks report "holds on this grid with these constants", never more.
//!
//! ## Examples
//!
//! One runnable example per capability:
//!
//! ```bash
//! cargo run --release -p orlicz --example conjugates        # conjugation, Young gaps
//! cargo run --release -p orlicz --example growth_probes     # Delta2 / Delta' / Nabla', power fit
//! cargo run --release -p orlicz --example singular_values   # mu, rearrangement CSV, trace identity
//! cargo run --release -p orlicz --example norms_demo        # Luxemburg vs Orlicz, Hoelder pairing
//! cargo run --release -p orlicz --example multiplier_search # three-function Young, witness search
//! cargo run --release -p orlicz --example rescaling_maps    # rescale up/down, measure map
//! cargo run --release -p orlicz --example compactness_cases # Rademacher, isometry chains, sandwich
//! ```
//!
//! ## Command line
//!
//! A thin binary exposes the same operations on JSON function/element
//! files:
//!
//! ```bash
//! orlicz fn conjugate --spec power2.json --at 3
//! orlicz norm --which luxemburg --fn p2.json --element diag34.json
//! orlicz mult check --zeta z.json --phi1 a.json --phi2 b.json --constants 2,1,1,1
//! orlicz verify-suite --seed 7
//! ```
//!
//! Exit codes: 0 success/all-pass, 1 violated assertion, 2 usage or parse
//! error.

// negated comparisons are NaN-rejecting guards: `!(x <= y)` must trip
// when x is NaN, `x > y` would not
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod algebra;
pub mod cli;
pub mod compactness;
pub mod config;
pub mod function;
pub mod io;
pub mod multipliers;
pub mod norms;
pub mod numeric;
pub mod probe;
pub mod rescaling;
pub mod step;
pub mod verify;

pub use algebra::{AlgebraElement, BlockAlgebra, BlockSpec};
pub use function::{FunctionSpec, OrliczFunction};
pub use norms::{luxemburg_norm, modular, orlicz_norm};
pub use step::{mu, mu_at, StepFunction};
