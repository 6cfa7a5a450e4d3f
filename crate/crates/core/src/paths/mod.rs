//! Paths with prover-chosen canonical identifiers.
//!
//! On a path the prover can hand every vertex its position `J(v)` in one of
//! the two path orders. The positions are checkable with radius 1, so a
//! scheme written for identifiers `1, 2, ..., n` in path order (a weak
//! scheme) lifts to arbitrary identifiers for one extra identifier, and a
//! radius-`d` scheme shrinks to radius 1 by copying the `2d + 1` certificates
//! around each position into that position's certificate.

mod canonical;
mod fixtures;
mod lift;
mod shave;

pub use canonical::{canonical_assignment, canonical_rule, count_locally_canonical, path_order};
pub use fixtures::{EvenLength, UniformLabels};
pub use lift::{lift_weak, LiftedScheme};
pub use shave::{
    compare_with_generic, generic_id_fields, shave, shaved_framing, shaved_size_bound, ComparisonRow, ShavedScheme,
    Window,
};
