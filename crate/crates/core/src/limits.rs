//! Default resource bounds. Exceeding any of these yields a clean
//! `Error::Resource`, never a crash or silent truncation.

/// Maximum number of points a permutation group may act on.
pub const DEGREE_CAP: usize = 4096;

/// Maximum group order accepted at construction time.
pub const ORDER_CAP: u64 = 10_000_000;

/// Maximum order for which full element enumeration is permitted
/// (conjugacy classes, element filters, canonical hashing).
pub const ELEMENT_ENUM_CAP: u64 = 200_000;

/// Order threshold below which the element-filter fallback for
/// centralizer/normalizer/intersection is available.
pub const ELEMENT_FILTER_CAP: u64 = 100_000;

/// Maximum index |G : N| for a coset action.
pub const COSET_INDEX_CAP: u64 = 10_000;

/// Cap on the number of chief series a single enumeration may yield.
pub const SERIES_CAP: usize = 100_000;

/// Order bound for general-purpose full subgroup enumeration
/// (maximal subgroups, Frattini subgroup of a non-p-group).
pub const SUBGROUP_ENUM_ORDER_CAP: u64 = 500;

/// Order bound for automorphism-group search on p-groups.
pub const AUTOMORPHISM_ORDER_CAP: u64 = 128;

/// Budget of generator-image tuples the automorphism search may try.
pub const AUTOMORPHISM_BUDGET: u64 = 4_000_000;

/// Order bound on a 2-group for quaternion-free section enumeration.
pub const SECTION_ENUM_ORDER_CAP: u64 = 512;

/// Maximum size |L/K| of a chief factor in the semidirect construction.
pub const FACTOR_SIZE_CAP: u64 = 4096;
