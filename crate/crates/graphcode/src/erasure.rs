//! Erasure-channel simulation: sampling erasure patterns, building the
//! decoding matrix F, deciding recoverability, the explicit coset decoder,
//! and the Monte Carlo engine estimating the failure rate.
//!
//! The channel acts classically here: the erased set K and the implicit
//! measurement outcome j on K are sampled, the survivors carry the label
//! `u = c|_{V\K} xor A_cut j`, and recovery means identifying (j, c) from u.
//! The physical re-entangling unitaries are not enacted; the oracle module
//! verifies at small n that coset identification is equivalent to full state
//! recovery.

use serde::Serialize;
use thiserror::Error;

use crate::analysis::{bernoulli_density, MonteCarloEstimate};
use crate::codes::ParityCheckCode;
use crate::f2la::{bernoulli, random_bits, sample_bernoulli_matrix, subseed, BitMatrix, BitVector};
use crate::gcode::{build_graph_code, GraphCode};
use crate::graphs::Graph;
use crate::parallel::run_trials;

#[derive(Debug, Error, PartialEq)]
pub enum ErasureError {
    #[error("probability {0} outside [0, 1]")]
    InvalidProbability(f64),
    #[error("erased index {0} out of range for {1} qubits")]
    OutOfRange(usize, usize),
    #[error("label length {got}, expected {expected}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("label lies outside the span of F's rows; trial bookkeeping is broken")]
    InconsistentInput,
    #[error("decode requested on a non-recoverable instance")]
    NotRecoverable,
    #[error("need at least one trial")]
    NoTrials,
    #[error("rate {0} outside (0, 1)")]
    InvalidRate(f64),
}

/// One draw of the erasure channel: each qubit lands in K independently.
#[derive(Clone, Debug, Serialize)]
pub struct ErasureSample {
    pub n: usize,
    /// Sorted erased positions.
    pub erased: Vec<usize>,
    pub p: f64,
}

pub fn sample_erasure(n: usize, p: f64, seed: u64) -> Result<ErasureSample, ErasureError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ErasureError::InvalidProbability(p));
    }
    let erased = (0..n).filter(|&i| bernoulli(seed, i as u64, p)).collect();
    Ok(ErasureSample { n, erased, p })
}

/// The decoding instance for a fixed code and erasure pattern: the stacked
/// matrix `F = [restricted generators of C ; A_cut^T]` together with its
/// building blocks. Rows of F: k message rows then |K| cut rows; columns are
/// the kept positions in sorted order.
#[derive(Debug)]
pub struct DecodeProblem<'a> {
    graph_code: &'a GraphCode,
    erased: Vec<usize>,
    kept: Vec<usize>,
    f: BitMatrix,
    a_cut: BitMatrix,
    restricted_generators: BitMatrix,
}

impl<'a> DecodeProblem<'a> {
    pub fn graph_code(&self) -> &GraphCode {
        self.graph_code
    }

    pub fn erased(&self) -> &[usize] {
        &self.erased
    }

    pub fn kept(&self) -> &[usize] {
        &self.kept
    }

    pub fn f(&self) -> &BitMatrix {
        &self.f
    }

    /// Biadjacency between kept rows and erased columns.
    pub fn a_cut(&self) -> &BitMatrix {
        &self.a_cut
    }

    pub fn restricted_generators(&self) -> &BitMatrix {
        &self.restricted_generators
    }

    /// The surviving qubits' Z-label for a chosen codeword and measurement
    /// outcome: `u = c|_{V\K} xor A_cut j`.
    pub fn label(&self, codeword: &BitVector, j: &BitVector) -> BitVector {
        codeword.select(&self.kept).xor(&self.a_cut.mul_vec(j))
    }
}

/// Assembles F for the erasure pattern `erased`. Degenerate shapes (empty K,
/// everything erased, more rows than columns) are allowed; recoverability
/// sorts them out.
pub fn build_f<'a>(gc: &'a GraphCode, erased: &[usize]) -> Result<DecodeProblem<'a>, ErasureError> {
    let n = gc.graph().n();
    if let Some(&bad) = erased.iter().find(|&&v| v >= n) {
        return Err(ErasureError::OutOfRange(bad, n));
    }
    let (erased, kept) = gc
        .graph()
        .split_cut(erased)
        .expect("indices validated above");
    let restricted_generators = gc.code().generators().select_cols(&kept);
    let a_cut = gc
        .graph()
        .cut_matrix(&erased)
        .expect("indices validated above");
    let f = restricted_generators.vstack(&a_cut.transpose());
    Ok(DecodeProblem {
        graph_code: gc,
        erased,
        kept,
        f,
        a_cut,
        restricted_generators,
    })
}

/// Recovery is possible exactly when F has full row rank.
pub fn is_recoverable(dp: &DecodeProblem) -> bool {
    dp.f.rank() == dp.f.rows()
}

/// The decoded coset data: the measurement outcome j, the restricted
/// codeword, and the message that generates it.
#[derive(Clone, Debug, PartialEq)]
pub struct CosetSolution {
    pub j: BitVector,
    pub c_restricted: BitVector,
    pub message: BitVector,
}

/// Solves `u = c|_{V\K} xor A_cut j` for the unique `(j, c)`; callers must
/// first establish [`is_recoverable`]. An inconsistent `u` signals a
/// bookkeeping bug upstream, not a channel failure.
pub fn identify_coset(dp: &DecodeProblem, u: &BitVector) -> Result<CosetSolution, ErasureError> {
    if u.len() != dp.kept.len() {
        return Err(ErasureError::LengthMismatch {
            expected: dp.kept.len(),
            got: u.len(),
        });
    }
    if !is_recoverable(dp) {
        return Err(ErasureError::NotRecoverable);
    }
    // x F = u for the row vector x = (message | j), i.e. F^T x = u.
    let ft = dp.f.transpose();
    let (x, kernel) = ft
        .solve(u)
        .expect("dimensions checked above")
        .ok_or(ErasureError::InconsistentInput)?;
    debug_assert!(kernel.is_empty(), "full row rank of F makes x unique");
    let k = dp.restricted_generators.rows();
    let message = x.select(&(0..k).collect::<Vec<_>>());
    let j = x.select(&(k..dp.f.rows()).collect::<Vec<_>>());
    let c_restricted = dp.restricted_generators.vec_mul(&message);
    Ok(CosetSolution {
        j,
        c_restricted,
        message,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum FailureCause {
    /// More F rows than surviving qubits; full rank is impossible by shape.
    ShapeInfeasible,
    /// Feasible shape but F is rank deficient.
    RankDeficient,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TrialOutcome {
    Success,
    Failure(FailureCause),
}

/// One channel use: sample K, the implicit measurement outcome j (uniform),
/// and a uniform logical codeword; then decode. Success is decided by the
/// explicit decoder, with the rank predicate cross-asserted — a mismatch
/// panics, since it can only mean an implementation bug.
pub fn run_trial(gc: &GraphCode, p: f64, seed: u64) -> Result<TrialOutcome, ErasureError> {
    let n = gc.graph().n();
    let sample = sample_erasure(n, p, subseed(seed, 1))?;
    let dp = build_f(gc, &sample.erased)?;
    let j = random_bits(subseed(seed, 2), dp.erased.len());
    let message = random_bits(subseed(seed, 3), gc.code().dimension());
    let codeword = gc.code().codeword(&message);
    let u = dp.label(&codeword, &j);
    if !is_recoverable(&dp) {
        let cause = if dp.f.rows() > dp.f.cols() {
            FailureCause::ShapeInfeasible
        } else {
            FailureCause::RankDeficient
        };
        return Ok(TrialOutcome::Failure(cause));
    }
    let solution = identify_coset(&dp, &u)
        .expect("forward-constructed label is always consistent");
    let lifted = gc.code().codeword(&solution.message);
    assert!(
        solution.j == j && lifted == codeword,
        "rank predicate and explicit decoder disagree; implementation bug"
    );
    Ok(TrialOutcome::Success)
}

/// Failure-rate estimate with per-cause counts.
#[derive(Clone, Debug, Serialize)]
pub struct ErasureReport {
    pub estimate: MonteCarloEstimate,
    pub shape_infeasible: u64,
    pub rank_deficient: u64,
}

/// Parameters of the random-code ensemble: block length n, target rate R
/// (H gets `round((1-R) n)` rows), and the density exponent w giving the
/// Bernoulli parameter `w log(n)/n` for both H and the graph.
#[derive(Clone, Copy, Debug, Serialize)]
pub struct EnsembleParams {
    pub n: usize,
    pub rate: f64,
    pub w: f64,
}

/// Ensemble-mode Monte Carlo: every trial draws a fresh (H, G) pair and a
/// fresh erasure, so the estimate averages over the random-code ensemble
/// rather than conditioning on one draw.
pub fn monte_carlo_ensemble(
    params: EnsembleParams,
    p: f64,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<ErasureReport, ErasureError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ErasureError::InvalidProbability(p));
    }
    if !(params.rate > 0.0 && params.rate < 1.0) {
        return Err(ErasureError::InvalidRate(params.rate));
    }
    if trials < 1 {
        return Err(ErasureError::NoTrials);
    }
    let n = params.n;
    let q = bernoulli_density(n as u64, params.w);
    let m = (((1.0 - params.rate) * n as f64).round() as usize).max(1);
    let outcomes = run_trials(trials, threads, |t| {
        let s = subseed(seed, t);
        let h = sample_bernoulli_matrix(m, n, q, subseed(s, 10))
            .expect("density is clamped to [0, 1]");
        let graph = Graph::sample_er(n, q, subseed(s, 11)).expect("density is clamped");
        let code = ParityCheckCode::from_parity_check(h).expect("H has m >= 1 rows");
        let gc = build_graph_code(graph, code)
            .expect("graph stabilizer products always commute");
        run_trial(&gc, p, subseed(s, 12)).expect("p validated above")
    });
    Ok(tally(outcomes, trials, seed))
}

/// Fixed-code mode: the same graph code every trial, fresh erasures.
pub fn monte_carlo_fixed(
    gc: &GraphCode,
    p: f64,
    trials: u64,
    seed: u64,
    threads: usize,
) -> Result<ErasureReport, ErasureError> {
    if !(0.0..=1.0).contains(&p) {
        return Err(ErasureError::InvalidProbability(p));
    }
    if trials < 1 {
        return Err(ErasureError::NoTrials);
    }
    let outcomes = run_trials(trials, threads, |t| {
        run_trial(gc, p, subseed(seed, t)).expect("p validated above")
    });
    Ok(tally(outcomes, trials, seed))
}

fn tally(outcomes: Vec<TrialOutcome>, trials: u64, seed: u64) -> ErasureReport {
    let mut shape_infeasible = 0;
    let mut rank_deficient = 0;
    for o in outcomes {
        match o {
            TrialOutcome::Success => {}
            TrialOutcome::Failure(FailureCause::ShapeInfeasible) => shape_infeasible += 1,
            TrialOutcome::Failure(FailureCause::RankDeficient) => rank_deficient += 1,
        }
    }
    ErasureReport {
        estimate: MonteCarloEstimate::from_counts(shape_infeasible + rank_deficient, trials, seed),
        shape_infeasible,
        rank_deficient,
    }
}
