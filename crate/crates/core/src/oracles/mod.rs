//! Independent checks: point counts over finite fields, orbit dimensions by
//! linear algebra, and Kazhdan-Lusztig polynomials of symmetric groups.
//! Nothing here calls into the engine's algebra.

mod counts;
mod dims;
pub mod field;
mod kl;

pub use counts::{
    borel_shift, canonical_rep, check_e_against_counts, conjugated_rep, flag_point_count, max_dim,
    predicted_count, verify_rep, OrbitRep, DEFAULT_MAX_DIM,
};
pub use dims::orbit_dim_oracle;
pub use kl::{bruhat_leq, kl_cross_check, kl_polynomial, to_v, KlTable, MAX_KL_RANK};
