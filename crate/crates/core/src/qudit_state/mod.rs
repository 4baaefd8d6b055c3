//! Exact sparse states, monomial observables and local measurement, with a
//! dense complex backend as a cross-check.

pub mod cyclotomic;
pub mod dense;
mod monomial;
mod sparse;

pub use monomial::{GlobalObservable, MonomialMatrix};
pub use sparse::{
    apply_observable, eigenphase_of, make_example2_state, make_ghz, measure_local,
    outcome_branches, sample_index, Branch, SparseState, Term,
};
