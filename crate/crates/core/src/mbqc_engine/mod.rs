//! Plans with Z_d-linear side-processing, their execution and analysis.

mod plan;
mod resource;
mod run;
mod temporal;

pub use plan::{MbqcPlan, Party, Resource};
pub use resource::TableResource;
pub use run::{
    analytic_output, empirical_success, extract_output_function, is_deterministic,
    local_observable, monte_carlo_success, output_distribution, run, Distribution, OutputFunction,
    RunTrace, SuccessEstimate, BRANCH_BUDGET, SAMPLING_SEEDS,
};
pub use temporal::{longest_path, temporal_graph, TemporalGraph};
