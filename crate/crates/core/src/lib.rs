//! Exact simulation, analysis and compilation of measurement-based
//! computation on qudits with Z_d-linear classical side-processing.
//!
//! The crate is organised bottom-up:
//!
//! * [`field_poly`]: Z_d / GF(p^r) arithmetic, polynomials, interpolation.
//! * [`weyl`]: Weyl labels, symplectic Cliffords and conjugation phases.
//! * [`qudit_state`]: exact sparse states, monomial observables, measurement.
//! * [`mbqc_engine`]: plans, runs, output-function extraction.
//! * [`contextuality`]: degree witnesses, value-assignment search, thresholds.
//! * [`compiler`]: constructions that turn target functions into plans.

pub mod compiler;
pub mod contextuality;
pub mod error;
pub mod field_poly;
pub mod mbqc_engine;
pub mod qudit_state;
pub mod weyl;

pub use error::{Error, Result};
