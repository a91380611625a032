//! Exponential penalty geometry on `SU(2^N)`.
//!
//! The crate covers four related computations:
//!
//! - [`pauli`]: exact algebra of Pauli words and Majorana strings, the
//!   nested Cartan tower of X-type words and the bracket checks showing the
//!   tower tori are totally geodesic under any diagonal metric.
//! - [`metric`]: the penalty metric `b^{2w}`, torus diameters and the
//!   covering-number lower bounds built on them, in exact big-integer and
//!   log-domain arithmetic.
//! - [`code`]: search for linear subspaces of `F_2^{2n}` whose nonzero
//!   Majorana codewords pairwise anticommute.
//! - [`curvature`]: structure constants and Ricci curvature of the penalty
//!   metric in the orthonormal Pauli frame, and the Bishop-Gromov volume
//!   comparison.

// `!(x > 0.0)` is used on purpose: it also rejects NaN.
#![allow(clippy::neg_cmp_op_on_partial_ord)]

mod bits;
pub mod code;
pub mod curvature;
pub mod error;
pub mod metric;
pub mod pauli;

pub use error::{Error, Result};
