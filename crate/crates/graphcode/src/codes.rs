//! Classical binary linear codes defined by parity-check matrices.

use itertools::Itertools;
use thiserror::Error;

use crate::f2la::{BitMatrix, BitVector, F2Error};

/// Hard cap on enumeration work in the exact distance search.
const ENUMERATION_GUARD: u64 = 1 << 28;
/// Exact distance is only attempted when `min(k, n-k)` is at most this.
const ENUMERATION_BITS: usize = 28;

#[derive(Debug, Error, PartialEq)]
pub enum CodeError {
    #[error("parity check matrix must be nonempty")]
    EmptyMatrix,
    #[error("code has dimension zero; no nonzero codewords")]
    DimensionZero,
    #[error("enumeration guard exceeded (min(k, n-k) <= {ENUMERATION_BITS}, {ENUMERATION_GUARD} iterations)")]
    SizeLimit,
    #[error("index {0} out of range for block length {1}")]
    OutOfRange(usize, usize),
    #[error("restricted code is trivial; no nonzero words")]
    DegenerateRestriction,
    #[error("malformed code text: {0}")]
    ParseError(String),
    #[error(transparent)]
    F2(#[from] F2Error),
}

/// A binary linear code `{c : H c = 0}` given by its parity-check matrix.
#[derive(Clone, Debug)]
pub struct ParityCheckCode {
    h: BitMatrix,
    n: usize,
    k: usize,
    generators: BitMatrix,
}

impl ParityCheckCode {
    /// Builds the code from `H`, extracting a kernel basis as generator
    /// matrix. `k = n - rank(H)` by rank-nullity.
    pub fn from_parity_check(h: BitMatrix) -> Result<Self, CodeError> {
        if h.rows() == 0 || h.cols() == 0 {
            return Err(CodeError::EmptyMatrix);
        }
        let n = h.cols();
        let generators = BitMatrix::from_rows(h.kernel_basis());
        let k = generators.rows();
        debug_assert_eq!(k, n - h.rank());
        let generators = if k == 0 {
            BitMatrix::zeros(0, n)
        } else {
            generators
        };
        Ok(Self { h, n, k, generators })
    }

    pub fn parity_check(&self) -> &BitMatrix {
        &self.h
    }

    pub fn block_length(&self) -> usize {
        self.n
    }

    pub fn dimension(&self) -> usize {
        self.k
    }

    /// `k x n` generator matrix; rows are a basis of the code.
    pub fn generators(&self) -> &BitMatrix {
        &self.generators
    }

    /// Encodes a length-`k` message as a codeword.
    pub fn codeword(&self, message: &BitVector) -> BitVector {
        self.generators.vec_mul(message)
    }

    pub fn contains(&self, word: &BitVector) -> bool {
        self.h.mul_vec(word).is_zero()
    }

    /// Exact minimum distance by exhausting the smaller of the message space
    /// and the low-weight word space.
    pub fn min_distance_exact(&self) -> Result<usize, CodeError> {
        if self.k == 0 {
            return Err(CodeError::DimensionZero);
        }
        if self.k.min(self.n - self.k) > ENUMERATION_BITS {
            return Err(CodeError::SizeLimit);
        }
        if self.k <= self.n - self.k {
            min_weight_by_messages(&self.generators)
        } else {
            self.min_weight_by_column_sums()
        }
    }

    /// Increasing-weight search: the distance is the smallest number of
    /// columns of `H` that sum to zero.
    fn min_weight_by_column_sums(&self) -> Result<usize, CodeError> {
        let ht = self.h.transpose();
        let columns: Vec<&BitVector> = ht.row_iter().collect();
        let mut iterations: u64 = 0;
        for weight in 1..=self.n {
            for combo in (0..self.n).combinations(weight) {
                iterations += 1;
                if iterations > ENUMERATION_GUARD {
                    return Err(CodeError::SizeLimit);
                }
                let mut syndrome = BitVector::zeros(self.h.rows());
                for &c in &combo {
                    syndrome.xor_assign(columns[c]);
                }
                if syndrome.is_zero() {
                    return Ok(weight);
                }
            }
        }
        // k >= 1 guarantees a dependent column set exists.
        unreachable!("code with k >= 1 has a nonzero codeword")
    }

    /// Punctures the code to the positions `kept` (order preserved).
    pub fn restrict<'a>(&'a self, kept: &[usize]) -> Result<RestrictedCode<'a>, CodeError> {
        for &i in kept {
            if i >= self.n {
                return Err(CodeError::OutOfRange(i, self.n));
            }
        }
        let restricted_generators = self.generators.select_cols(kept);
        Ok(RestrictedCode {
            parent: self,
            kept_positions: kept.to_vec(),
            restricted_generators,
        })
    }

    /// An independent generating set for the dual code, taken from the rows
    /// of `H` (lowest row indices first). The rows are Bernoulli-sparse by
    /// construction, which is what the stabilizer weight bounds assume.
    pub fn dual_sparse_generators(&self) -> Vec<BitVector> {
        let mut basis: Vec<BitVector> = Vec::new();
        let mut kept = Vec::new();
        for row in self.h.row_iter() {
            let mut reduced = row.clone();
            for b in &basis {
                let lead = b.iter_ones().next().expect("basis rows are nonzero");
                if reduced.get(lead) {
                    reduced.xor_assign(b);
                }
            }
            if !reduced.is_zero() {
                // keep basis rows in echelon order by leading bit
                let lead = reduced.iter_ones().next().unwrap();
                let pos = basis
                    .iter()
                    .position(|b| b.iter_ones().next().unwrap() > lead)
                    .unwrap_or(basis.len());
                basis.insert(pos, reduced);
                kept.push(row.clone());
            }
        }
        kept
    }

    /// Fixture format: a line `parity-check`, then the matrix text of `H`.
    pub fn to_text(&self) -> String {
        format!("parity-check\n{}", self.h.to_text())
    }

    pub fn from_text(text: &str) -> Result<Self, CodeError> {
        let rest = text
            .strip_prefix("parity-check\n")
            .ok_or_else(|| CodeError::ParseError("missing parity-check header".into()))?;
        Self::from_parity_check(BitMatrix::from_text(rest)?)
    }
}

/// A code punctured to an ordered subset of its positions.
#[derive(Clone, Debug)]
pub struct RestrictedCode<'a> {
    parent: &'a ParityCheckCode,
    kept_positions: Vec<usize>,
    restricted_generators: BitMatrix,
}

impl RestrictedCode<'_> {
    pub fn parent(&self) -> &ParityCheckCode {
        self.parent
    }

    pub fn kept_positions(&self) -> &[usize] {
        &self.kept_positions
    }

    /// `k x |S|` matrix: the parent generators punctured to the kept
    /// positions. May be rank-deficient.
    pub fn restricted_generators(&self) -> &BitMatrix {
        &self.restricted_generators
    }

    /// Minimum weight over nonzero words of the punctured code.
    pub fn min_distance(&self) -> Result<usize, CodeError> {
        let independent: Vec<BitVector> = self
            .restricted_generators
            .rref()
            .reduced
            .row_iter()
            .filter(|r| !r.is_zero())
            .cloned()
            .collect();
        if independent.is_empty() {
            return Err(CodeError::DegenerateRestriction);
        }
        if independent.len() > ENUMERATION_BITS {
            return Err(CodeError::SizeLimit);
        }
        min_weight_by_messages(&BitMatrix::from_rows(independent))
    }
}

/// Minimum nonzero-codeword weight by Gray-code enumeration of the row span.
fn min_weight_by_messages(generators: &BitMatrix) -> Result<usize, CodeError> {
    let k = generators.rows();
    if (1u64 << k) > ENUMERATION_GUARD {
        return Err(CodeError::SizeLimit);
    }
    let mut acc = BitVector::zeros(generators.cols());
    let mut best = usize::MAX;
    for t in 1u64..(1 << k) {
        acc.xor_assign(generators.row(t.trailing_zeros() as usize));
        best = best.min(acc.weight());
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn from_strs(rows: &[&str]) -> ParityCheckCode {
        let m = BitMatrix::from_rows(
            rows.iter().map(|s| BitVector::parse01(s).unwrap()).collect(),
        );
        ParityCheckCode::from_parity_check(m).unwrap()
    }

    /// Independent oracle: all words of length n satisfying every check.
    fn enumerate_codewords(code: &ParityCheckCode) -> Vec<BitVector> {
        let n = code.block_length();
        assert!(n <= 16);
        (0u32..1 << n)
            .map(|b| BitVector::from_bits(&(0..n).map(|i| (b >> i) & 1 == 1).collect::<Vec<_>>()))
            .filter(|w| code.contains(w))
            .collect()
    }

    #[test]
    fn identity_check_gives_trivial_code() {
        let code = ParityCheckCode::from_parity_check(BitMatrix::identity(4)).unwrap();
        assert_eq!(code.dimension(), 0);
        assert_eq!(code.generators().rows(), 0);
        assert_eq!(code.min_distance_exact(), Err(CodeError::DimensionZero));
    }

    #[test]
    fn single_check_even_weight_code() {
        // H = (1 1 1): oracle enumeration of all 8 words leaves the 4 even ones.
        let code = from_strs(&["111"]);
        assert_eq!(code.dimension(), 2);
        let words = enumerate_codewords(&code);
        assert_eq!(words.len(), 4);
        assert!(words.iter().all(|w| w.weight() % 2 == 0));
        assert_eq!(code.min_distance_exact().unwrap(), 2);
    }

    #[test]
    fn repetition_code() {
        // H = {110, 011}: oracle enumeration gives exactly {000, 111}.
        let code = from_strs(&["110", "011"]);
        assert_eq!(code.dimension(), 1);
        let words = enumerate_codewords(&code);
        let strings: Vec<String> = words.iter().map(BitVector::to_string).collect();
        assert!(strings.contains(&"000".to_string()));
        assert!(strings.contains(&"111".to_string()));
        assert_eq!(words.len(), 2);
        assert_eq!(code.min_distance_exact().unwrap(), 3);
    }

    #[test]
    fn generators_span_the_kernel_exactly() {
        for seed in 0..20u64 {
            let n = 6 + (seed % 8) as usize; // up to 13
            let rows = 2 + (seed % 5) as usize;
            let h = crate::f2la::sample_bernoulli_matrix(rows, n, 0.4, seed).unwrap();
            let Ok(code) = ParityCheckCode::from_parity_check(h) else {
                continue;
            };
            let words = enumerate_codewords(&code);
            assert_eq!(words.len(), 1 << code.dimension());
            // span(generators) subset of kernel and same cardinality -> equal.
            for mask in 0u32..(1 << code.dimension()) {
                let msg = BitVector::from_bits(
                    &(0..code.dimension()).map(|i| (mask >> i) & 1 == 1).collect::<Vec<_>>(),
                );
                assert!(code.contains(&code.codeword(&msg)));
            }
        }
    }

    #[test]
    fn restrict_examples() {
        let code = from_strs(&["110", "011"]); // {000, 111}
        let all = code.restrict(&[0, 1, 2]).unwrap();
        assert_eq!(all.restricted_generators(), code.generators());
        assert_eq!(all.min_distance().unwrap(), 3);

        let r = code.restrict(&[1, 2]).unwrap();
        // punctured code {00, 11}
        assert_eq!(r.min_distance().unwrap(), 2);

        let empty = code.restrict(&[]).unwrap();
        assert_eq!(empty.restricted_generators().cols(), 0);
        assert_eq!(empty.min_distance(), Err(CodeError::DegenerateRestriction));

        assert!(matches!(code.restrict(&[3]), Err(CodeError::OutOfRange(3, 3))));
    }

    #[test]
    fn distance_shrinks_only_within_erasure_budget() {
        // If d > |erased K|, no nonzero codeword lives inside K, so
        // restriction to the complement is injective (exhaustive, small n).
        for seed in 100..115u64 {
            let h = crate::f2la::sample_bernoulli_matrix(5, 9, 0.35, seed).unwrap();
            let Ok(code) = ParityCheckCode::from_parity_check(h) else {
                continue;
            };
            if code.dimension() == 0 {
                continue;
            }
            let d = code.min_distance_exact().unwrap();
            let erased: Vec<usize> = (0..d.saturating_sub(1).min(code.block_length())).collect();
            let kept: Vec<usize> = (erased.len()..code.block_length()).collect();
            let words = enumerate_codewords(&code);
            let mut seen = std::collections::HashSet::new();
            for w in &words {
                assert!(seen.insert(w.select(&kept).to_string()), "restriction not injective");
            }
        }
    }

    #[test]
    fn dual_sparse_generators_are_independent_h_rows() {
        let code = from_strs(&["1100", "0110", "1010"]); // third = first + second
        let gens = code.dual_sparse_generators();
        assert_eq!(gens.len(), 2);
        assert_eq!(gens[0].to_string(), "1100");
        assert_eq!(gens[1].to_string(), "0110");

        let dup = from_strs(&["11", "11"]);
        let gens = dup.dual_sparse_generators();
        assert_eq!(gens.len(), 1);
        assert_eq!(gens[0].to_string(), "11");

        // weights equal the corresponding H row weights by construction
        for g in &code.dual_sparse_generators() {
            assert!(code.parity_check().row_iter().any(|r| r == g));
        }
    }

    #[test]
    fn dual_generators_of_full_rank_h_are_all_rows() {
        let code = from_strs(&["100", "011"]);
        let gens = code.dual_sparse_generators();
        assert_eq!(gens.len(), 2);
    }

    #[test]
    fn text_roundtrip() {
        let code = from_strs(&["110", "011"]);
        let text = code.to_text();
        let back = ParityCheckCode::from_text(&text).unwrap();
        assert_eq!(back.parity_check(), code.parity_check());
        assert!(ParityCheckCode::from_text("3 3\n111\n").is_err());
    }

    #[test]
    fn distance_by_column_sums_branch() {
        // k = 3 > n - k = 1 forces the increasing-weight branch.
        let code = from_strs(&["1111"]);
        assert_eq!(code.dimension(), 3);
        assert_eq!(code.min_distance_exact().unwrap(), 2);
    }
}
