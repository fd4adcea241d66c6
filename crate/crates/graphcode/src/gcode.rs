//! Symplectic Pauli algebra with phase tracking, and the quantum graph code
//! `(G, C)` built from graph stabilizers.
//!
//! Every operator is kept in the canonical order `i^phase * X_x * Z_z`; the
//! reordering rule `Z_z X_x = (-1)^{z.x} X_x Z_z` fixes all products, so
//! equality of operators is syntactic equality of `(x, z, phase)`.

use std::fmt;

use thiserror::Error;

use crate::codes::ParityCheckCode;
use crate::f2la::BitVector;
use crate::graphs::Graph;

#[derive(Debug, Error, PartialEq)]
pub enum GcodeError {
    #[error("operator length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("vertex {0} out of range for {1} qubits")]
    OutOfRange(usize, usize),
    #[error("graph has {0} vertices but code has block length {1}")]
    SizeMismatch(usize, usize),
    #[error("generated stabilizers do not commute (internal error)")]
    NonCommuting,
}

/// A Pauli group element `i^phase * X_x * Z_z` on `len` qubits.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct PauliOp {
    x: BitVector,
    z: BitVector,
    phase: u8, // mod 4
}

impl PauliOp {
    pub fn identity(n: usize) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    pub fn from_parts(x: BitVector, z: BitVector, phase: u8) -> Result<Self, GcodeError> {
        if x.len() != z.len() {
            return Err(GcodeError::LengthMismatch(x.len(), z.len()));
        }
        Ok(Self { x, z, phase: phase % 4 })
    }

    pub fn x_string(n: usize, support: &[usize]) -> Self {
        Self {
            x: BitVector::from_indices(n, support),
            z: BitVector::zeros(n),
            phase: 0,
        }
    }

    pub fn z_string(n: usize, support: &[usize]) -> Self {
        Self {
            x: BitVector::zeros(n),
            z: BitVector::from_indices(n, support),
            phase: 0,
        }
    }

    /// `Z_v` for a binary label vector.
    pub fn z_from_vector(v: &BitVector) -> Self {
        Self {
            x: BitVector::zeros(v.len()),
            z: v.clone(),
            phase: 0,
        }
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    pub fn x_support(&self) -> &BitVector {
        &self.x
    }

    pub fn z_support(&self) -> &BitVector {
        &self.z
    }

    pub fn phase(&self) -> u8 {
        self.phase
    }

    /// Number of qubits on which the operator acts nontrivially.
    pub fn weight(&self) -> usize {
        self.x.union_weight(&self.z)
    }

    /// Product `self * other` in canonical order. Moving `Z_{z1}` past
    /// `X_{x2}` contributes `(-1)^{z1.x2}`, i.e. two quarter-phases.
    pub fn mul(&self, other: &Self) -> Result<Self, GcodeError> {
        if self.len() != other.len() {
            return Err(GcodeError::LengthMismatch(self.len(), other.len()));
        }
        let reorder = if self.z.dot(&other.x) { 2 } else { 0 };
        Ok(Self {
            x: self.x.xor(&other.x),
            z: self.z.xor(&other.z),
            phase: (self.phase + other.phase + reorder) % 4,
        })
    }

    /// True iff the symplectic form `x1.z2 + z1.x2` vanishes over GF(2).
    pub fn commutes(&self, other: &Self) -> Result<bool, GcodeError> {
        if self.len() != other.len() {
            return Err(GcodeError::LengthMismatch(self.len(), other.len()));
        }
        Ok(self.x.dot(&other.z) == self.z.dot(&other.x))
    }

    /// Compact symplectic dump `x|z|phase` for fixtures.
    pub fn symplectic_dump(&self) -> String {
        format!("{}|{}|{}", self.x, self.z, self.phase)
    }
}

impl fmt::Display for PauliOp {
    /// Renders as `+X.. Z..` style: sign/phase prefix, then per-qubit letters.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let prefix = match self.phase {
            0 => "+",
            1 => "+i",
            2 => "-",
            _ => "-i",
        };
        write!(f, "{prefix} X[")?;
        let xs: Vec<String> = self.x.iter_ones().map(|i| i.to_string()).collect();
        write!(f, "{}] Z[", xs.join(","))?;
        let zs: Vec<String> = self.z.iter_ones().map(|i| i.to_string()).collect();
        write!(f, "{}]", zs.join(","))
    }
}

impl fmt::Debug for PauliOp {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "PauliOp({self})")
    }
}

/// Graph stabilizer `S_i = X_i * prod_{j in N(i)} Z_j`.
pub fn graph_stabilizer(graph: &Graph, i: usize) -> Result<PauliOp, GcodeError> {
    let n = graph.n();
    if i >= n {
        return Err(GcodeError::OutOfRange(i, n));
    }
    Ok(PauliOp {
        x: BitVector::from_indices(n, &[i]),
        z: graph.adjacency().row(i).clone(),
        phase: 0,
    })
}

/// The quantum graph code `(G, C)`: span of `Z_c|G>` over codewords `c`,
/// with stabilizer generators `g_j = prod_{i in h_j} S_i` for dual
/// generators `h_j`.
#[derive(Clone, Debug)]
pub struct GraphCode {
    graph: Graph,
    code: ParityCheckCode,
    stabilizer_generators: Vec<PauliOp>,
}

impl GraphCode {
    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn code(&self) -> &ParityCheckCode {
        &self.code
    }

    pub fn stabilizer_generators(&self) -> &[PauliOp] {
        &self.stabilizer_generators
    }

    /// Maximum weight over the stabilizer generators.
    pub fn max_generator_weight(&self) -> usize {
        self.stabilizer_generators
            .iter()
            .map(PauliOp::weight)
            .max()
            .unwrap_or(0)
    }

    /// `d_Q <= K_min`: the minimum vertex degree, reported as an upper bound
    /// on the adversarial distance (the exact distance is not computed).
    pub fn distance_upper_bound(&self) -> usize {
        self.graph.min_degree()
    }
}

/// Builds the graph code, deriving the stabilizer generators from an
/// independent subset of the rows of `H` and multiplying graph stabilizers
/// in increasing vertex order with full phase tracking.
pub fn build_graph_code(graph: Graph, code: ParityCheckCode) -> Result<GraphCode, GcodeError> {
    let n = graph.n();
    if n != code.block_length() {
        return Err(GcodeError::SizeMismatch(n, code.block_length()));
    }
    let duals = code.dual_sparse_generators();
    let mut generators = Vec::with_capacity(duals.len());
    for h in &duals {
        let mut g = PauliOp::identity(n);
        for i in h.iter_ones() {
            g = g.mul(&graph_stabilizer(&graph, i)?)?;
        }
        generators.push(g);
    }
    debug_assert_eq!(generators.len(), n - code.dimension());
    for (a, ga) in generators.iter().enumerate() {
        for gb in generators.iter().skip(a + 1) {
            if !ga.commutes(gb)? {
                return Err(GcodeError::NonCommuting);
            }
        }
    }
    Ok(GraphCode {
        graph,
        code,
        stabilizer_generators: generators,
    })
}
