//! Exact computation of the matrices attached to a graded Lie algebra: the
//! bar-invariant basis of the Grothendieck module, its transition matrix
//! (the intersection-cohomology multiplicities), weight dimensions, the
//! Fourier matching between opposite gradings and the induction table.
//!
//! Data enter either as an explicit table ([`datum`]) or through the
//! `GL_n` builder ([`type_a`]). The [`engine`] works purely on tables, and
//! [`oracles`] holds independent point-counting and Kazhdan-Lusztig code
//! used to cross-check its output.

pub mod datum;
pub mod engine;
pub mod error;
pub mod exact;
pub mod fixtures;
pub mod oracles;
pub mod report;
pub mod selftest;
pub mod type_a;

pub use error::{Error, Result};
