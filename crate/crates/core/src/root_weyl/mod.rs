//! Root systems and finite Weyl groups.
//!
//! Elements are permutations of root indices and compose as functions: `(a b)(beta) = a(b(beta))`.
//! Simple indices are 0-based throughout the library; only user-facing text is 1-based.

mod cartan;
mod element;
mod group;
mod roots;

pub use cartan::{CartanDatum, Family};
pub use element::{
    apply_frobenius, bruhat_leq, length, longest_element, multiply, reduced_word, WeylElement,
};
pub use group::{enumerate, ElemId, WeylGroup};
pub use roots::{build_root_system, RootSystem};
