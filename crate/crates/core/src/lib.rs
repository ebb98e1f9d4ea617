//! Exact index formulas for the quaternionic elliptic complexes `D_k`.
//!
//! The pipeline runs from Lie-theoretic weight systems through characteristic
//! series to an Atiyah–Singer style division by the universal Euler class, and
//! presents the result in the Pontryagin classes `p_1..p_m` and the class `q_1`
//! of the quaternionic structure.

pub mod appcli;
pub mod charclass;
pub mod error;
pub mod exactalg;
pub mod indexengine;
pub mod repweights;
pub mod symred;

pub use error::{Error, Result};
