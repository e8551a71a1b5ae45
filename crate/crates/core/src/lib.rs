//! Exact max-plus machinery for deciding consistency of P-time event graphs.
//!
//! The pipeline, bottom to top:
//!
//! * [`maxplus`] — arbitrary-precision rationals extended with `±inf`, tropical
//!   matrices over them, and the Kleene star (all-pairs maximum path weight).
//! * [`staticgraph`] — the finite weighted digraph with arc shifts in
//!   `{-1, 0, +1}` that encodes a block-tridiagonal constraint system.
//! * [`periodic`] — finite slices of the induced infinite periodic graph,
//!   detection of infinite-weight paths, and pumpable-pair certificates.
//! * [`pteg`] — P-time event graphs: marking normalization, characteristic
//!   matrices, the reduction to a static graph, consistency verdicts with
//!   witness trajectories.
//! * [`oracle`] — independent brute-force checks and generators used to
//!   cross-validate the main algorithms.
//!
//! Index conventions used across the crate: graph nodes, transitions, and
//! slice node ids are 1-based; raw matrix accessors (`get`/`set`) are 0-based
//! row/column. The matrix entry for an arc `i -> j` lives at row `j-1`,
//! column `i-1`.

#![forbid(unsafe_code)]

mod error;

pub mod maxplus;
pub mod oracle;
pub mod periodic;
pub mod pteg;
pub mod staticgraph;

pub use error::Error;

/// Crate-wide result alias.
pub type Result<T> = std::result::Result<T, Error>;
