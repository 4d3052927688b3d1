//! Generation of every unlabeled poset up to a point bound and the refined
//! count tables.

mod generate;
mod region;
mod table;

pub use generate::{
    count_refined, count_refined_with_progress, enumerate_levels, enumerate_posets,
    extend_by_maximal_point, EnumerationConfig, Progress, BYTES_PER_LEVEL_KEY,
};
pub use region::{classify_region, h0_by_difference, RegionLabel, RegionSet};
pub use table::{CountTable, Refinement, RefinedCounts};

pub use crate::poset::a_max;
