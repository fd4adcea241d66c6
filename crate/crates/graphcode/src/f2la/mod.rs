//! Bit-packed dense linear algebra over GF(2).
//!
//! Matrices are stored row-major as packed 64-bit words. Elimination works on
//! whole words, which is the dominant cost of everything downstream (rank of
//! the decoding matrix, kernel extraction, coset solving).

mod bitmat;
mod bitvec;
mod sample;

pub use bitmat::{BitMatrix, Rref};
pub use bitvec::BitVector;
pub use sample::{bernoulli, mix64, random_bits, sample_bernoulli_matrix, subseed};

use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum F2Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("malformed matrix text: {0}")]
    ParseError(String),
}
