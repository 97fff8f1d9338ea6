//! Graded data in table form, the pairing on `K_G`, loading and validation.

mod kvector;
mod model;
mod pairing;
mod table;
mod validate;

pub use kvector::KVector;
pub use model::{
    BasisElement, CPrimeEntry, Conventions, EtaClass, Finding, FlagOrder, GradedDatum, Grading,
    Leaf, OrbitLabel, PairingOrbit, PrimitiveClass, SignConvention,
};
pub use pairing::{gram_laurent, Pairing};
pub use table::{load_datum_file, load_datum_str};
pub use validate::validate_datum;
