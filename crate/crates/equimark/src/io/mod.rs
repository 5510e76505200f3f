//! Text interchange and rendering.
//!
//! Three surfaces live here:
//!
//! * [`fourti2`] — the 4ti2 matrix text format (`r c` header plus `r` rows
//!   of whitespace-separated integers), used both for truncated map
//!   matrices (rows = target dimensions) and for move files (rows =
//!   moves).
//! * [`text`] — a self-describing serialization for [`GeneratorSet`]s that
//!   round-trips the kind, target, and every move.
//! * [`render`] — the box-shape formalism: monomials drawn as columns of
//!   stacked boxes, in ASCII or TikZ.
//!
//! [`GeneratorSet`]: crate::generators::GeneratorSet

pub mod fourti2;
pub mod render;
pub mod text;

pub use fourti2::{
    export_moves, export_truncation, import_4ti2, moves_from_rows, ring_variables, FtiMatrix,
};
pub use render::BoxShape;
pub use text::{generators_from_text, generators_to_text};
