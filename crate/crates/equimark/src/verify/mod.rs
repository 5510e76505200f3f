//! Finite-truncation verification of generation claims.
//!
//! Every check here is exact: lattice spans are decided by Hermite normal
//! forms, fiber connectivity by exhaustive enumeration plus union-find, and
//! per-order reduction confluence by walking the full reduction graph.
//! Checks return a [`Report`] whose verdict reflects precisely what was
//! computed at the chosen truncation; nothing is sampled away silently.
//!
//! The ambient bound of a check is `N = n + slack`: claims are stated for
//! kernels at truncation `n`, while moves may act through columns beyond
//! `n` (the constructions introduce fresh indices), so orbits are expanded
//! in `[N]`.

pub mod decompose;
pub mod fiber;
pub mod groebner;
pub mod markov;
pub mod report;
pub mod span;

pub use decompose::{
    decompose_phi_kernel, decompose_psi_kernel, primitive_divisor_search, replay_phi_steps,
    MoveKind, PhiStep,
};
pub use fiber::{
    dedup_degrees_by_symmetry, fiber_enumerate, fiber_enumerate_z, y_image_degrees,
    z_image_degrees,
};
pub use groebner::{groebner_check, WeightOrder};
pub use markov::{connecting_path, markov_check};
pub use report::Report;
pub use span::lattice_span_check;
