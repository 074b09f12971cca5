//! Weyl group combinatorics of algebraic zip data, with a finite-field orbit oracle.
//!
//! * [`root_weyl`]: root systems, Weyl groups, Bruhat order, diagram automorphisms.
//! * [`parabolic`]: parabolic subgroups and minimal coset representatives.
//! * [`zip_poset`]: zip data, twisted orders, strata posets and the duality between them.
//! * [`fq_oracle`]: matrix groups over finite fields, zip group orbits and point counts.
//! * [`verify`]: exhaustive consistency reports over all supported types.

pub mod bitmat;
pub mod caps;
pub mod error;
pub mod exec;
pub mod fq_oracle;
pub mod parabolic;
pub mod root_weyl;
pub mod verify;
pub mod zip_poset;

pub use caps::Caps;
pub use error::{Error, Result};
pub use exec::Exec;
