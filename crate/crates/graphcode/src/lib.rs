//! Random quantum graph codes for the quantum erasure channel, simulated
//! classically through GF(2) linear algebra.
//!
//! A graph code is built from a simple graph `G` and a classical binary code
//! `C`: the code space is spanned by `Z_c|G>` over codewords `c`. Erasure
//! recovery reduces to a rank condition on a decoding matrix `F` stacked from
//! the restricted generators of `C` and the transpose of the graph's cut
//! matrix. This crate provides:
//!
//! - [`f2la`]: bit-packed dense linear algebra over GF(2),
//! - [`codes`]: classical codes given by parity-check matrices,
//! - [`graphs`]: simple undirected graphs and their cut matrices,
//! - [`gcode`]: symplectic Pauli algebra and the graph code construction,
//! - [`erasure`]: the erasure channel, the decoder, and Monte Carlo trials,
//! - [`oracle`]: an exact small-n statevector ground truth,
//! - [`analysis`]: entropy functions, the feasibility function `g(p)`, and
//!   rank-statistics experiments.

pub mod analysis;
pub mod codes;
pub mod erasure;
pub mod f2la;
pub mod gcode;
pub mod graphs;
pub mod oracle;

mod parallel;

pub use analysis::MonteCarloEstimate;
pub use codes::ParityCheckCode;
pub use f2la::{BitMatrix, BitVector};
pub use gcode::{GraphCode, PauliOp};
pub use graphs::Graph;
