//! Hasse diagrams and the operations on them.

mod canon;
mod digraph;
mod extremal;

pub use canon::{
    canonical_form, canonical_key, exhaustive_min_matrix, is_self_dual, CanonicalForm,
    CanonicalKey, KEY_FORMAT_VERSION,
};
pub use digraph::{
    direct_sum, dual, ordinal_sum, transitive_closure, transitive_reduction,
    underlying_components, validate_hasse, CoverDigraph, HasseReport, OrderRelation, Violation,
    MAX_POINTS,
};
pub use extremal::{a_max, max_arc_family};

pub(crate) use digraph::{bit, closure_unchecked, Bits};
