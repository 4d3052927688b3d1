//! No-isolated-point counts from connected counts via distinct connected
//! partitions, and the stationary quantities derived from them. All
//! arithmetic is exact.

mod partition;
mod stationary;

pub use partition::{
    enumerate_dcp, h0_selfdual_via_partitions, h0_terms, h0_via_partitions, multiset_coeff,
    DistinctConnectedPartition, Part,
};
pub use stationary::{
    delta_h, delta_h_requirement, delta_h_selfdual, delta_h_selfdual_via_partitions, extend_row,
    h_from_partitions, h_infinity, h_infinity_requirement, stationarity_oracle,
    StationarityReport,
};
