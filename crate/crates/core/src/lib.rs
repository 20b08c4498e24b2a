//! Hall–Littlewood processes and the stochastic six vertex model.
//!
//! The crate implements both sides of a family of exact distributional
//! identities between Hall–Littlewood processes and the stochastic six
//! vertex model in a quadrant, together with the tools used to check them:
//!
//! - [`partitions`]: partitions, ± strings and one-variable skew
//!   Hall–Littlewood polynomials.
//! - [`hl_process`]: exact distributions and samplers for general
//!   Hall–Littlewood processes.
//! - [`six_vertex`]: the stochastic six vertex model on rectangular and jagged
//!   domains, exact transfer-matrix enumeration and the half-continuous limit.
//! - [`tboson`]: t-boson vertex weights, row operators, the Yang–Baxter
//!   equation and exchange relations.
//! - [`moments`]: nested contour integral formulas for t-moments.
//! - [`rsk`]: Hall–Littlewood RSK dynamics, set dynamics and t-PushTASEP.
//! - [`verify`]: exact and statistical comparison reports.

// Negated comparisons are used on purpose so that NaN inputs are rejected.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod dist;
pub mod error;
pub mod hl_process;
pub mod moments;
pub mod partitions;
pub mod rng;
pub mod rsk;
pub mod six_vertex;
pub mod tboson;
pub mod verify;

pub use dist::DiscreteDistribution;
pub use error::{Error, Result};
pub use partitions::{Partition, Sign, SignString, SkewDiagram};
