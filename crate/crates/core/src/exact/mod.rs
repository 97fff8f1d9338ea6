//! Exact arithmetic over `Z[v, v^-1]` and `Q(v)`.

mod laurent;
mod matrix;
mod poly;
mod ratfunc;

pub use laurent::LaurentPoly;
pub use matrix::{solve_linear, RFMatrix};
pub use poly::Poly;
pub use ratfunc::RatFunc;
