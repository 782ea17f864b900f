//! Computational engine for finite permutation groups: stabilizer chains,
//! normal-subgroup lattices, chief series, the supersoluble and
//! p-supersoluble formations, p-group structure, and the partial
//! Pi-property of subgroups, together with a claim harness that checks
//! the structure theorems these notions feed into over concrete corpora.

pub mod arith;
mod backtrack;
pub mod corpus;
pub mod error;
pub mod group;
pub mod limits;
pub mod perm;
pub mod quotient;
pub mod subgroup;

pub use error::{Error, Result};
pub use group::PermGroup;
pub use perm::Permutation;
pub use subgroup::SubgroupHandle;
