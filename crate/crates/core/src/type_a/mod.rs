//! Graded data for products of `GL_n` with integral weights.
//!
//! Basis elements are words (one arrangement of the weights per factor),
//! orbits are multisegments on chains of weights congruent mod `n`.

mod builder;
pub mod orbits;
mod spec;
mod words;

pub use builder::{
    build_datum, c_f, constant_sheaf_word, factor_is_rigid, is_rigid, theta_ratio, v2_factorial,
    MAX_BUILDER_RANK,
};
pub use orbits::{Multisegment, Segment};
pub use spec::{GlFactor, TypeASpec};
pub use words::{
    arrangements, canonical_lines, next_permutation, pairing_orbits, tau_of_pair, word_label,
    words, Line, Word,
};
