//! Census of unlabeled posets refined by the number of arcs in their Hasse
//! diagram.
//!
//! The crate is organised in three layers:
//!
//! * [`poset`]: bit-matrix Hasse diagrams, order relations, poset sums,
//!   canonical labeling and the extremal (maximum arc) family.
//! * [`enumerator`]: level-by-level generation of every isomorphism class
//!   and the refined count tables `H(p,a)`, `H_c(p,a)`, `H_0(p,a)` and the
//!   self-dual variants.
//! * [`calculus`]: the distinct-connected-partition formula that derives
//!   no-isolated-point counts from small connected counts, and with it the
//!   stationary differences, the row limits and row extensions.
//!
//! [`io`] holds the cache format, b-file export and the golden reference
//! tables used by the `verify` command.
//!
//! Counts are generic over an exact unsigned [`Count`] type. [`BigCount`]
//! (arbitrary precision) is the default everywhere tables are persisted or
//! compared against reference data.

pub mod calculus;
pub mod count;
pub mod enumerator;
pub mod error;
pub mod io;
pub mod poset;

pub use count::Count;
pub use error::{Error, Result};

pub use calculus::{
    delta_h, delta_h_selfdual, enumerate_dcp, extend_row, h0_selfdual_via_partitions,
    h0_via_partitions, h_infinity, multiset_coeff, stationarity_oracle, DistinctConnectedPartition,
    Part,
};
pub use enumerator::{
    a_max, classify_region, count_refined, enumerate_posets, extend_by_maximal_point,
    h0_by_difference, CountTable, EnumerationConfig, Refinement, RefinedCounts, RegionLabel,
    RegionSet,
};
pub use poset::{
    canonical_key, direct_sum, dual, is_self_dual, max_arc_family, ordinal_sum,
    transitive_closure, transitive_reduction, underlying_components, validate_hasse,
    CanonicalKey, CoverDigraph, HasseReport, OrderRelation, Violation,
};

/// Arbitrary-precision natural number used for all persisted counts.
pub type BigCount = num_bigint::BigUint;

/// Count table over arbitrary-precision naturals.
pub type BigCountTable = CountTable<BigCount>;
/// Count table over `u64`; overflow is reported as [`Error::Overflow`].
pub type U64CountTable = CountTable<u64>;
/// Count table over `u128`.
pub type U128CountTable = CountTable<u128>;

/// All refined tables over arbitrary-precision naturals.
pub type BigRefinedCounts = RefinedCounts<BigCount>;
