//! Contextuality and non-locality checks: degree witnesses, value-assignment
//! search, the temporal bound and the probabilistic thresholds.

mod degree;
mod distance;
mod search;
mod witness;

pub use degree::{
    degree_witness, degree_witness_table, exceeds_temporal_bound, temporal_degree_bound,
};
pub use distance::{
    delta_distance, nu_distance, threshold_check, NuResult, ThresholdReport, NU_LIMIT,
};
pub use search::{ncva_search, ncva_search_with_budget, NcvaInstance, NODE_BUDGET};
pub use witness::{Certificate, LocalAssignment, Verdict, Witness};
