//! Exact small-n statevector ground truth. Every state in scope has
//! amplitudes of the form `s * 2^(-e/2)` with `s` in {-1, 0, +1} and a shared
//! exponent, so all comparisons here are exact integer arithmetic — no
//! tolerances anywhere.
//!
//! Used to pin down the three equivalent graph-state constructions, the
//! orthogonality and measurement lemmas, entanglement entropy, and the
//! reduction of quantum erasure recovery to classical coset identification.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use thiserror::Error;

use crate::erasure::{build_f, identify_coset, is_recoverable};
use crate::f2la::BitVector;
use crate::gcode::{graph_stabilizer, GraphCode, PauliOp};
use crate::graphs::Graph;

/// Hard ceiling on statevector size (2^16 amplitudes).
pub const STATE_LIMIT: usize = 16;
/// Ceiling for the exhaustive orthogonality and recovery loops.
pub const EXHAUSTIVE_LIMIT: usize = 12;
/// Ceiling for measurement-lemma and Schmidt-rank checks.
pub const PROJECTION_LIMIT: usize = 14;

#[derive(Debug, Error, PartialEq)]
pub enum OracleError {
    #[error("{n} qubits exceeds the oracle guard of {limit}")]
    SizeGuard { n: usize, limit: usize },
    #[error("operator on {got} qubits applied to a {expected}-qubit state")]
    SizeMismatch { expected: usize, got: usize },
    #[error("index {0} out of range for {1} qubits")]
    OutOfRange(usize, usize),
    #[error("outcome length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("odd power of i would leave the real exact representation")]
    PhaseEscape,
    #[error("coefficient rank {0} is not a power of two; input is not a stabilizer state")]
    NonPowerOfTwoRank(usize),
    #[error("the erasure pattern is not recoverable for this code")]
    NotRecoverable,
}

/// A real statevector with amplitudes `signs[x] * 2^(-exponent/2)`.
///
/// Normalized states have exactly `2^exponent` nonzero entries; projections
/// keep the parent exponent and are subnormalized.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactState {
    n: usize,
    exponent: u32,
    signs: Vec<i8>,
}

impl ExactState {
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn exponent(&self) -> u32 {
        self.exponent
    }

    /// Sign of the amplitude at basis string `x` (bit b = qubit b).
    pub fn sign(&self, x: usize) -> i8 {
        self.signs[x]
    }

    pub fn nonzero_count(&self) -> usize {
        self.signs.iter().filter(|&&s| s != 0).count()
    }

    /// True when the squared amplitudes sum exactly to 1.
    pub fn is_normalized(&self) -> bool {
        self.nonzero_count() == 1usize << self.exponent
    }

    /// `<self|other> * 2^exponent` as an exact integer; both states must
    /// share dimensions and exponent.
    pub fn inner_sign_sum(&self, other: &ExactState) -> i64 {
        assert_eq!(self.n, other.n, "dimension mismatch");
        assert_eq!(self.exponent, other.exponent, "exponent mismatch");
        self.signs
            .iter()
            .zip(&other.signs)
            .map(|(&a, &b)| a as i64 * b as i64)
            .sum()
    }
}

fn guard(n: usize, limit: usize) -> Result<(), OracleError> {
    if n > limit {
        return Err(OracleError::SizeGuard { n, limit });
    }
    Ok(())
}

fn edge_list(graph: &Graph) -> Vec<(usize, usize)> {
    let n = graph.n();
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if graph.has_edge(i, j) {
                edges.push((i, j));
            }
        }
    }
    edges
}

fn mask_of(v: &BitVector) -> usize {
    v.iter_ones().fold(0usize, |m, b| m | (1 << b))
}

/// Amplitude construction: sign at `x` is `(-1)^(x^T A_top x)`, the parity of
/// the number of edges internal to the support of `x`.
pub fn graph_state_vector(graph: &Graph) -> Result<ExactState, OracleError> {
    let n = graph.n();
    guard(n, STATE_LIMIT)?;
    let edges = edge_list(graph);
    let signs = (0..1usize << n)
        .map(|x| {
            let internal = edges
                .iter()
                .filter(|&&(i, j)| (x >> i) & 1 == 1 && (x >> j) & 1 == 1)
                .count();
            if internal % 2 == 0 {
                1
            } else {
                -1
            }
        })
        .collect();
    Ok(ExactState {
        n,
        exponent: n as u32,
        signs,
    })
}

/// Circuit construction: start from `|+>^n` and apply one CP gate per edge,
/// each flipping the sign of every basis string with both endpoints set.
pub fn graph_state_via_cp(graph: &Graph) -> Result<ExactState, OracleError> {
    let n = graph.n();
    guard(n, STATE_LIMIT)?;
    let mut signs = vec![1i8; 1 << n];
    for (i, j) in edge_list(graph) {
        let mask = (1usize << i) | (1 << j);
        for (x, s) in signs.iter_mut().enumerate() {
            if x & mask == mask {
                *s = -*s;
            }
        }
    }
    Ok(ExactState {
        n,
        exponent: n as u32,
        signs,
    })
}

/// Stabilizer construction: the graph state is the image of `|0...0>` under
/// the group-average projector, accumulated by a Gray-code walk through all
/// 2^n products of the generators `S_i`.
pub fn graph_state_via_stabilizers(graph: &Graph) -> Result<ExactState, OracleError> {
    let n = graph.n();
    guard(n, STATE_LIMIT)?;
    let generators: Vec<PauliOp> = (0..n)
        .map(|i| graph_stabilizer(graph, i).expect("index in range"))
        .collect();
    let mut acc = vec![0i64; 1 << n];
    let mut current = PauliOp::identity(n);
    acc[0] += 1;
    for w in 1..1u64 << n {
        let flip = w.trailing_zeros() as usize;
        current = current
            .mul(&generators[flip])
            .expect("generators share the qubit count");
        // P|0...0> = i^phase |x_P>; stabilizer products stay real.
        assert!(current.phase() % 2 == 0, "graph stabilizers are real");
        let contribution = if current.phase() == 0 { 1 } else { -1 };
        acc[mask_of(current.x_support())] += contribution;
    }
    let magnitude = acc.iter().map(|v| v.abs()).max().unwrap_or(0);
    assert!(magnitude > 0, "projector cannot vanish on |0...0>");
    let mut signs = vec![0i8; 1 << n];
    let mut nonzero = 0usize;
    for (x, &v) in acc.iter().enumerate() {
        if v != 0 {
            assert_eq!(v.abs(), magnitude, "stabilizer state amplitudes share magnitude");
            signs[x] = v.signum() as i8;
            nonzero += 1;
        }
    }
    assert!(nonzero.is_power_of_two(), "support of a stabilizer state");
    Ok(ExactState {
        n,
        exponent: nonzero.trailing_zeros(),
        signs,
    })
}

/// Exact action of `i^phase X_x Z_z`; a surviving odd power of i cannot be
/// represented and is reported instead.
pub fn apply_pauli(state: &ExactState, p: &PauliOp) -> Result<ExactState, OracleError> {
    if p.len() != state.n {
        return Err(OracleError::SizeMismatch {
            expected: state.n,
            got: p.len(),
        });
    }
    if p.phase() % 2 == 1 {
        return Err(OracleError::PhaseEscape);
    }
    let global = if p.phase() == 0 { 1i8 } else { -1 };
    let x_mask = mask_of(p.x_support());
    let z_mask = mask_of(p.z_support());
    let mut signs = vec![0i8; state.signs.len()];
    for (x, &s) in state.signs.iter().enumerate() {
        if s == 0 {
            continue;
        }
        let z_sign = if (x & z_mask).count_ones() % 2 == 0 {
            1
        } else {
            -1
        };
        signs[x ^ x_mask] = global * z_sign * s;
    }
    Ok(ExactState {
        n: state.n,
        exponent: state.exponent,
        signs,
    })
}

fn validated_subset(n: usize, k: &[usize]) -> Result<Vec<usize>, OracleError> {
    if let Some(&bad) = k.iter().find(|&&v| v >= n) {
        return Err(OracleError::OutOfRange(bad, n));
    }
    let mut s = k.to_vec();
    s.sort_unstable();
    s.dedup();
    Ok(s)
}

/// Projects onto `<y|` on the qubits in `K`, returning the unnormalized
/// residual state on the remaining qubits (exponent is inherited, so the
/// squared norm is `nonzero_count * 2^-exponent`).
pub fn project_onto(
    state: &ExactState,
    k: &[usize],
    y: &BitVector,
) -> Result<ExactState, OracleError> {
    let k = validated_subset(state.n, k)?;
    if y.len() != k.len() {
        return Err(OracleError::LengthMismatch {
            expected: k.len(),
            got: y.len(),
        });
    }
    let kept: Vec<usize> = (0..state.n).filter(|v| !k.contains(v)).collect();
    let y_full = {
        let mut m = 0usize;
        for (pos, &qubit) in k.iter().enumerate() {
            if y.get(pos) {
                m |= 1 << qubit;
            }
        }
        m
    };
    let signs = (0..1usize << kept.len())
        .map(|xk| {
            let mut full = y_full;
            for (pos, &qubit) in kept.iter().enumerate() {
                if (xk >> pos) & 1 == 1 {
                    full |= 1 << qubit;
                }
            }
            state.signs[full]
        })
        .collect();
    Ok(ExactState {
        n: kept.len(),
        exponent: state.exponent,
        signs,
    })
}

/// Exhaustively verifies `<G| Z_x |G> = 0` for every nonzero `x`.
pub fn check_orthogonality(graph: &Graph) -> Result<bool, OracleError> {
    let n = graph.n();
    guard(n, EXHAUSTIVE_LIMIT)?;
    let state = graph_state_vector(graph)?;
    for x in 1..1usize << n {
        let sum: i64 = state
            .signs
            .iter()
            .enumerate()
            .map(|(y, &s)| {
                let parity = if (x & y).count_ones() % 2 == 0 { 1 } else { -1 };
                s as i64 * s as i64 * parity
            })
            .sum();
        if sum != 0 {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Verifies amplitude-by-amplitude that measuring `y` on the qubits in `K`
/// leaves `2^(-|K|/2) (-1)^(y^T A_K y) Z_(A_cut y) |G'>`, with `G'` the
/// induced subgraph on the survivors.
pub fn check_measure_lemma(graph: &Graph, k: &[usize], y: &BitVector) -> Result<bool, OracleError> {
    let n = graph.n();
    guard(n, PROJECTION_LIMIT)?;
    let k = validated_subset(n, k)?;
    assert!(
        !k.is_empty() && k.len() < n,
        "K must be a nonempty proper subset"
    );
    if y.len() != k.len() {
        return Err(OracleError::LengthMismatch {
            expected: k.len(),
            got: y.len(),
        });
    }
    let lhs = project_onto(&graph_state_vector(graph)?, &k, y)?;

    let inner = graph.induced_subgraph(&k).expect("subset validated");
    let quad_sign: i8 = {
        let internal = edge_list(&inner)
            .iter()
            .filter(|&&(a, b)| y.get(a) && y.get(b))
            .count();
        if internal % 2 == 0 {
            1
        } else {
            -1
        }
    };
    let a_cut = graph.cut_matrix(&k).expect("subset validated");
    let label = a_cut.mul_vec(y);
    let g_prime = {
        let kept: Vec<usize> = (0..n).filter(|v| !k.contains(v)).collect();
        graph.induced_subgraph(&kept).expect("complement in range")
    };
    let mut rhs = apply_pauli(&graph_state_vector(&g_prime)?, &PauliOp::z_from_vector(&label))?;
    if quad_sign < 0 {
        for s in &mut rhs.signs {
            *s = -*s;
        }
    }
    // 2^(-|K|/2) * 2^(-(n-|K|)/2) matches the inherited 2^(-n/2) scale.
    rhs.exponent = lhs.exponent;
    Ok(lhs == rhs)
}

fn rational_rank(gram: &[Vec<i64>]) -> usize {
    let rows = gram.len();
    if rows == 0 {
        return 0;
    }
    let cols = gram[0].len();
    let mut m: Vec<Vec<BigRational>> = gram
        .iter()
        .map(|row| {
            row.iter()
                .map(|&v| BigRational::from(BigInt::from(v)))
                .collect()
        })
        .collect();
    let mut rank = 0;
    for c in 0..cols {
        if rank >= rows {
            break;
        }
        let Some(pivot) = (rank..rows).find(|&r| !m[r][c].is_zero()) else {
            continue;
        };
        m.swap(rank, pivot);
        let inv = m[rank][c].clone();
        for r in 0..rows {
            if r != rank && !m[r][c].is_zero() {
                let factor = &m[r][c] / &inv;
                for cc in c..cols {
                    let sub = &factor * &m[rank][cc];
                    m[r][cc] = &m[r][cc] - sub;
                }
            }
        }
        rank += 1;
    }
    rank
}

/// log2 of the rank of the coefficient matrix across the cut `(K, V \ K)`,
/// computed exactly over the rationals via the Gram matrix of the smaller
/// side (`rank(M) = rank(M M^T)` over Q).
pub fn schmidt_rank_log2(state: &ExactState, k: &[usize]) -> Result<usize, OracleError> {
    let n = state.n;
    guard(n, PROJECTION_LIMIT)?;
    let k = validated_subset(n, k)?;
    let kept: Vec<usize> = (0..n).filter(|v| !k.contains(v)).collect();
    let (row_qubits, col_qubits) = if k.len() <= kept.len() {
        (k.clone(), kept)
    } else {
        (kept, k.clone())
    };
    let rows = 1usize << row_qubits.len();
    let cols = 1usize << col_qubits.len();
    let entry = |r: usize, c: usize| -> i64 {
        let mut full = 0usize;
        for (pos, &q) in row_qubits.iter().enumerate() {
            if (r >> pos) & 1 == 1 {
                full |= 1 << q;
            }
        }
        for (pos, &q) in col_qubits.iter().enumerate() {
            if (c >> pos) & 1 == 1 {
                full |= 1 << q;
            }
        }
        state.signs[full] as i64
    };
    let mut gram = vec![vec![0i64; rows]; rows];
    for a in 0..rows {
        for b in a..rows {
            let dot: i64 = (0..cols).map(|c| entry(a, c) * entry(b, c)).sum();
            gram[a][b] = dot;
            gram[b][a] = dot;
        }
    }
    let rank = rational_rank(&gram);
    if !rank.is_power_of_two() {
        return Err(OracleError::NonPowerOfTwoRank(rank));
    }
    Ok(rank.trailing_zeros() as usize)
}

/// Pairwise orthonormality of the code basis `{Z_c |G> : c in C}`.
pub fn check_code_basis(gc: &GraphCode) -> Result<bool, OracleError> {
    let n = gc.graph().n();
    guard(n, EXHAUSTIVE_LIMIT)?;
    let base = graph_state_vector(gc.graph())?;
    let k = gc.code().dimension();
    let mut states = Vec::with_capacity(1 << k);
    for mm in 0..1u64 << k {
        let msg = BitVector::from_bits(&(0..k).map(|b| (mm >> b) & 1 == 1).collect::<Vec<_>>());
        let c = gc.code().codeword(&msg);
        states.push(apply_pauli(&base, &PauliOp::z_from_vector(&c))?);
    }
    for (i, a) in states.iter().enumerate() {
        if a.inner_sign_sum(a) != 1i64 << n {
            return Ok(false);
        }
        for b in states.iter().skip(i + 1) {
            if a.inner_sign_sum(b) != 0 {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Full quantum-to-classical reduction check: for every codeword `c` and
/// every measurement outcome `y` on `K`, the surviving qubits' Z-label read
/// off the exact post-measurement state decodes via `identify_coset` back to
/// exactly `(y, c)`.
pub fn end_to_end_recovery_check(gc: &GraphCode, k: &[usize]) -> Result<bool, OracleError> {
    let n = gc.graph().n();
    guard(n, EXHAUSTIVE_LIMIT)?;
    let k = validated_subset(n, k)?;
    let dp = build_f(gc, &k).expect("subset validated");
    if !is_recoverable(&dp) {
        return Err(OracleError::NotRecoverable);
    }
    let kept: Vec<usize> = (0..n).filter(|v| !k.contains(v)).collect();
    let g_prime = gc.graph().induced_subgraph(&kept).expect("complement in range");
    let gp_state = graph_state_vector(&g_prime)?;
    let base = graph_state_vector(gc.graph())?;
    let dim = gc.code().dimension();
    for mm in 0..1u64 << dim {
        let msg =
            BitVector::from_bits(&(0..dim).map(|b| (mm >> b) & 1 == 1).collect::<Vec<_>>());
        let c = gc.code().codeword(&msg);
        let labeled = apply_pauli(&base, &PauliOp::z_from_vector(&c))?;
        for ym in 0..1u64 << k.len() {
            let y = BitVector::from_bits(
                &(0..k.len()).map(|b| (ym >> b) & 1 == 1).collect::<Vec<_>>(),
            );
            let proj = project_onto(&labeled, &k, &y)?;
            // The residual is (global sign) * Z_u |G'> for some label u; read
            // u off the sign ratios against |G'> and confirm the whole
            // pattern, then decode.
            let ratio = |x: usize| proj.sign(x) * gp_state.sign(x);
            let r0 = ratio(0);
            if r0 == 0 {
                return Ok(false);
            }
            let mut u = BitVector::zeros(kept.len());
            for b in 0..kept.len() {
                u.set(b, ratio(1 << b) != r0);
            }
            let u_mask = mask_of(&u);
            for x in 0..1usize << kept.len() {
                let expect = if (x & u_mask).count_ones() % 2 == 0 {
                    r0
                } else {
                    -r0
                };
                if ratio(x) != expect {
                    return Ok(false);
                }
            }
            let Ok(sol) = identify_coset(&dp, &u) else {
                return Ok(false);
            };
            if sol.j != y || gc.code().codeword(&sol.message) != c {
                return Ok(false);
            }
        }
    }
    Ok(true)
}
