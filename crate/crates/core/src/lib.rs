//! Monotonicity testing lower-bound laboratory.
//!
//! * [`grid`]: hypercube/hypergrid points, the canonical map `phi` and the product orders.
//! * [`family`]: the hard distribution (`2 val` and the perturbed `g_{j,k}`).
//! * [`distance`]: exact distance to monotonicity with self-checking certificates.
//! * [`capture`]: capture analysis of query sets and the query lower bound.
//! * [`testers`]: comparison trees, the non-adaptive reduction, exact and Monte Carlo error.
//! * [`experiment`]: budget sweeps for plotting.

pub mod capture;
pub mod distance;
pub mod error;
pub mod experiment;
pub mod family;
pub mod grid;
pub mod rational;
pub mod testers;

pub use error::{Error, Result};
pub use family::{Epsilon, FamilyParams, HardFunction};
pub use grid::{BitPoint, DomainParams, GridPoint};
pub use rational::Rational;
