//! Matrix groups over finite fields and the orbits of zip groups on them.

mod classify;
mod field;
mod flags;
mod group;
mod matrix;
mod orbits;

pub use classify::{orbit_invariant, Classifier, OrbitInvariant};
pub use field::Fq;
pub use flags::{dl_strata_counts, enumerate_flags, flag_count, log_slope, DlStrataCounts};
pub use group::{
    enumerate_group, lang_map, orbit_representatives, weyl_permutation, weyl_representative_matrix,
    zip_generators, zip_group, FqGroupSpec, GroupFamily, GroupTable,
};
pub use matrix::{Mat, MAX_N};
pub use orbits::{geometric_merge, orbit_partition, MergeReport, OrbitMode, OrbitTable, Stability, FULL_MODE_LIMIT};
