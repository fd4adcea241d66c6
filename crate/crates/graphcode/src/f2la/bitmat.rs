use std::fmt;

use super::{BitVector, F2Error};

/// Dense bit-packed matrix over GF(2), stored as one [`BitVector`] per row.
#[derive(Clone, PartialEq, Eq)]
pub struct BitMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BitVector>,
}

/// Reduced row-echelon form together with its row transform.
///
/// `reduced = transform * original` over GF(2); `transform` is invertible and
/// `pivot_cols` is strictly increasing.
#[derive(Clone, Debug)]
pub struct Rref {
    pub reduced: BitMatrix,
    pub pivot_cols: Vec<usize>,
    pub transform: BitMatrix,
}

impl BitMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BitVector::zeros(cols); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, true);
        }
        m
    }

    pub fn from_rows(rows: Vec<BitVector>) -> Self {
        let cols = rows.first().map_or(0, BitVector::len);
        assert!(
            rows.iter().all(|r| r.len() == cols),
            "all rows must have equal length"
        );
        Self {
            rows: rows.len(),
            cols,
            data: rows,
        }
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, r: usize, c: usize) -> bool {
        self.data[r].get(c)
    }

    #[inline]
    pub fn set(&mut self, r: usize, c: usize, value: bool) {
        self.data[r].set(c, value);
    }

    pub fn row(&self, r: usize) -> &BitVector {
        &self.data[r]
    }

    pub fn row_iter(&self) -> impl Iterator<Item = &BitVector> {
        self.data.iter()
    }

    pub fn transpose(&self) -> BitMatrix {
        let mut t = BitMatrix::zeros(self.cols, self.rows);
        for r in 0..self.rows {
            for c in self.data[r].iter_ones() {
                t.set(c, r, true);
            }
        }
        t
    }

    /// Matrix product over GF(2).
    pub fn mul(&self, other: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, other.rows, "inner dimension mismatch");
        let mut out = BitMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            let mut acc = BitVector::zeros(other.cols);
            for c in self.data[r].iter_ones() {
                acc.xor_assign(&other.data[c]);
            }
            out.data[r] = acc;
        }
        out
    }

    /// Matrix-vector product `M * x`, `x` of length `cols`.
    pub fn mul_vec(&self, x: &BitVector) -> BitVector {
        assert_eq!(self.cols, x.len(), "vector length mismatch");
        let mut out = BitVector::zeros(self.rows);
        for r in 0..self.rows {
            if self.data[r].dot(x) {
                out.set(r, true);
            }
        }
        out
    }

    /// Row-vector product `x * M`, `x` of length `rows`.
    pub fn vec_mul(&self, x: &BitVector) -> BitVector {
        assert_eq!(self.rows, x.len(), "vector length mismatch");
        let mut out = BitVector::zeros(self.cols);
        for r in x.iter_ones() {
            out.xor_assign(&self.data[r]);
        }
        out
    }

    pub fn vstack(&self, bottom: &BitMatrix) -> BitMatrix {
        assert_eq!(self.cols, bottom.cols, "column count mismatch in vstack");
        let mut data = self.data.clone();
        data.extend(bottom.data.iter().cloned());
        BitMatrix {
            rows: self.rows + bottom.rows,
            cols: self.cols,
            data,
        }
    }

    pub fn hstack(&self, right: &BitMatrix) -> BitMatrix {
        assert_eq!(self.rows, right.rows, "row count mismatch in hstack");
        let mut out = BitMatrix::zeros(self.rows, self.cols + right.cols);
        for r in 0..self.rows {
            for c in self.data[r].iter_ones() {
                out.set(r, c, true);
            }
            for c in right.data[r].iter_ones() {
                out.set(r, self.cols + c, true);
            }
        }
        out
    }

    /// Submatrix of the given rows, in the order listed.
    pub fn select_rows(&self, indices: &[usize]) -> BitMatrix {
        let data = indices.iter().map(|&i| self.data[i].clone()).collect();
        BitMatrix {
            rows: indices.len(),
            cols: self.cols,
            data,
        }
    }

    /// Submatrix of the given columns, in the order listed.
    pub fn select_cols(&self, indices: &[usize]) -> BitMatrix {
        let data = self.data.iter().map(|r| r.select(indices)).collect();
        BitMatrix {
            rows: self.rows,
            cols: indices.len(),
            data,
        }
    }

    /// GF(2) row rank. The argument is unmodified; elimination runs on a
    /// scratch copy.
    pub fn rank(&self) -> usize {
        let mut work = self.data.clone();
        let mut rank = 0;
        for col in 0..self.cols {
            if rank == self.rows {
                break;
            }
            let Some(pivot) = (rank..self.rows).find(|&r| work[r].get(col)) else {
                continue;
            };
            work.swap(rank, pivot);
            let (head, tail) = work.split_at_mut(rank + 1);
            let pivot_row = &head[rank];
            for row in tail.iter_mut() {
                if row.get(col) {
                    row.xor_assign(pivot_row);
                }
            }
            rank += 1;
        }
        rank
    }

    /// Reduced row-echelon form with transform, using the lowest-index
    /// nonzero pivot column and the first qualifying row at each step.
    pub fn rref(&self) -> Rref {
        let mut reduced = self.data.clone();
        let mut transform = BitMatrix::identity(self.rows);
        let mut pivot_cols = Vec::new();
        for col in 0..self.cols {
            let next = pivot_cols.len();
            if next == self.rows {
                break;
            }
            let Some(pivot) = (next..self.rows).find(|&r| reduced[r].get(col)) else {
                continue;
            };
            reduced.swap(next, pivot);
            transform.data.swap(next, pivot);
            for r in 0..self.rows {
                if r != next && reduced[r].get(col) {
                    let (pr, tr) = (reduced[next].clone(), transform.data[next].clone());
                    reduced[r].xor_assign(&pr);
                    transform.data[r].xor_assign(&tr);
                }
            }
            pivot_cols.push(col);
        }
        Rref {
            reduced: BitMatrix {
                rows: self.rows,
                cols: self.cols,
                data: reduced,
            },
            pivot_cols,
            transform,
        }
    }

    /// Solves `A x = b`. Returns a particular solution and a kernel basis so
    /// the full solution set is `x0 + span(kernel)`, or `None` if
    /// inconsistent.
    pub fn solve(&self, b: &BitVector) -> Result<Option<(BitVector, Vec<BitVector>)>, F2Error> {
        if b.len() != self.rows {
            return Err(F2Error::DimensionMismatch {
                expected: self.rows,
                got: b.len(),
            });
        }
        let rref = self.rref();
        let y = rref.transform.mul_vec(b);
        // Rows below the pivots are zero in the reduced form; b must vanish there.
        for r in rref.pivot_cols.len()..self.rows {
            if y.get(r) {
                return Ok(None);
            }
        }
        let mut x0 = BitVector::zeros(self.cols);
        for (r, &pc) in rref.pivot_cols.iter().enumerate() {
            if y.get(r) {
                x0.set(pc, true);
            }
        }
        Ok(Some((x0, kernel_from_rref(&rref, self.cols))))
    }

    /// Basis of `{x : A x = 0}`.
    pub fn kernel_basis(&self) -> Vec<BitVector> {
        kernel_from_rref(&self.rref(), self.cols)
    }

    /// Text fixture format: first line `rows cols`, then one '0'/'1' line per
    /// row.
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in &self.data {
            out.push_str(&r.to_string());
            out.push('\n');
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, F2Error> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| F2Error::ParseError("empty input".into()))?;
        let mut parts = header.split_whitespace();
        let parse_dim = |s: Option<&str>| -> Result<usize, F2Error> {
            s.ok_or_else(|| F2Error::ParseError("missing dimension".into()))?
                .parse()
                .map_err(|e| F2Error::ParseError(format!("bad dimension: {e}")))
        };
        let rows = parse_dim(parts.next())?;
        let cols = parse_dim(parts.next())?;
        let mut data = Vec::with_capacity(rows);
        for _ in 0..rows {
            let line = lines
                .next()
                .ok_or_else(|| F2Error::ParseError("too few rows".into()))?;
            let v = BitVector::parse01(line.trim())?;
            if v.len() != cols {
                return Err(F2Error::ParseError(format!(
                    "row has {} bits, expected {cols}",
                    v.len()
                )));
            }
            data.push(v);
        }
        Ok(Self { rows, cols, data })
    }

    pub(crate) fn rows_mut(&mut self) -> &mut Vec<BitVector> {
        &mut self.data
    }
}

fn kernel_from_rref(rref: &Rref, cols: usize) -> Vec<BitVector> {
    let pivot_set: std::collections::HashSet<usize> = rref.pivot_cols.iter().copied().collect();
    let mut basis = Vec::with_capacity(cols - rref.pivot_cols.len());
    for free in (0..cols).filter(|c| !pivot_set.contains(c)) {
        let mut k = BitVector::zeros(cols);
        k.set(free, true);
        for (r, &pc) in rref.pivot_cols.iter().enumerate() {
            if rref.reduced.get(r, free) {
                k.set(pc, true);
            }
        }
        basis.push(k);
    }
    basis
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix {}x{}:", self.rows, self.cols)?;
        for r in &self.data {
            writeln!(f, "  {r}")?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::super::sample_bernoulli_matrix;
    use super::*;
    use proptest::prelude::*;

    pub(crate) fn from_strs(rows: &[&str]) -> BitMatrix {
        BitMatrix::from_rows(rows.iter().map(|s| BitVector::parse01(s).unwrap()).collect())
    }

    /// Independent oracle: the number of distinct vectors in the row span is
    /// 2^rank. Only usable for small row counts.
    pub(crate) fn span_size_log2(m: &BitMatrix) -> usize {
        assert!(m.rows() <= 16);
        let mut span = std::collections::HashSet::new();
        for mask in 0u32..(1 << m.rows()) {
            let mut acc = BitVector::zeros(m.cols());
            for r in 0..m.rows() {
                if (mask >> r) & 1 == 1 {
                    acc.xor_assign(m.row(r));
                }
            }
            span.insert(acc.to_string());
        }
        let size = span.len();
        assert!(size.is_power_of_two());
        size.trailing_zeros() as usize
    }

    #[test]
    fn rank_identity_and_zero() {
        assert_eq!(BitMatrix::identity(4).rank(), 4);
        assert_eq!(BitMatrix::zeros(3, 5).rank(), 0);
    }

    #[test]
    fn rank_matches_span_enumeration() {
        // {110, 011, 101}: span has 4 = 2^2 vectors.
        let m = from_strs(&["110", "011", "101"]);
        assert_eq!(span_size_log2(&m), 2);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn rref_identity() {
        let r = BitMatrix::identity(3).rref();
        assert_eq!(r.reduced, BitMatrix::identity(3));
        assert_eq!(r.pivot_cols, vec![0, 1, 2]);
        assert_eq!(r.transform, BitMatrix::identity(3));
    }

    #[test]
    fn rref_dependent_rows() {
        // {11, 11} reduces to {11, 00} with transform {10, 11}.
        let m = from_strs(&["11", "11"]);
        let r = m.rref();
        assert_eq!(r.reduced, from_strs(&["11", "00"]));
        assert_eq!(r.pivot_cols, vec![0]);
        assert_eq!(r.transform, from_strs(&["10", "11"]));
        assert_eq!(r.transform.mul(&m), r.reduced);
    }

    #[test]
    fn rref_zero_matrix() {
        let r = BitMatrix::zeros(2, 3).rref();
        assert_eq!(r.reduced, BitMatrix::zeros(2, 3));
        assert!(r.pivot_cols.is_empty());
        assert_eq!(r.transform, BitMatrix::identity(2));
    }

    #[test]
    fn solve_identity() {
        let b = BitVector::parse01("101").unwrap();
        let (x0, kernel) = BitMatrix::identity(3).solve(&b).unwrap().unwrap();
        assert_eq!(x0, b);
        assert!(kernel.is_empty());
    }

    #[test]
    fn solve_underdetermined() {
        // Single row (1 1), b = (0): x0 = 00, kernel = {11}.
        // Oracle: exhausting all 4 candidates, the solutions are {00, 11}.
        let m = from_strs(&["11"]);
        let b = BitVector::zeros(1);
        let (x0, kernel) = m.solve(&b).unwrap().unwrap();
        assert_eq!(x0.to_string(), "00");
        assert_eq!(kernel.len(), 1);
        assert_eq!(kernel[0].to_string(), "11");
    }

    #[test]
    fn solve_inconsistent() {
        let m = from_strs(&["10", "10"]);
        let b = BitVector::parse01("10").unwrap();
        assert_eq!(m.solve(&b).unwrap(), None);
    }

    #[test]
    fn solve_dimension_mismatch() {
        let m = BitMatrix::identity(3);
        let b = BitVector::zeros(2);
        assert!(matches!(
            m.solve(&b),
            Err(F2Error::DimensionMismatch { expected: 3, got: 2 })
        ));
    }

    #[test]
    fn text_roundtrip() {
        let m = from_strs(&["10110", "01001", "00000"]);
        let t = m.to_text();
        assert_eq!(BitMatrix::from_text(&t).unwrap(), m);
        assert!(BitMatrix::from_text("2 2\n10\n").is_err());
        assert!(BitMatrix::from_text("1 3\n10\n").is_err());
    }

    #[test]
    fn stack_and_select() {
        let a = from_strs(&["101"]);
        let b = from_strs(&["010", "111"]);
        let v = a.vstack(&b);
        assert_eq!(v, from_strs(&["101", "010", "111"]));
        assert_eq!(v.select_rows(&[2, 0]), from_strs(&["111", "101"]));
        assert_eq!(v.select_cols(&[0, 2]), from_strs(&["11", "00", "11"]));
        let h = a.hstack(&from_strs(&["11"]));
        assert_eq!(h, from_strs(&["10111"]));
    }

    #[test]
    fn transpose_and_mul() {
        let m = from_strs(&["110", "011"]);
        assert_eq!(m.transpose(), from_strs(&["10", "11", "01"]));
        let p = m.mul(&m.transpose());
        // row weights: [2, 2], overlap 1 -> off-diagonal 1, diagonal 0 mod 2.
        assert_eq!(p, from_strs(&["01", "10"]));
        let x = BitVector::parse01("110").unwrap();
        assert_eq!(m.mul_vec(&x).to_string(), "01");
        let y = BitVector::parse01("11").unwrap();
        assert_eq!(m.vec_mul(&y).to_string(), "101");
    }

    fn arb_matrix(max_rows: usize, max_cols: usize) -> impl Strategy<Value = BitMatrix> {
        (1..=max_rows, 1..=max_cols).prop_flat_map(|(r, c)| {
            proptest::collection::vec(proptest::collection::vec(any::<bool>(), c), r)
                .prop_map(|rows| {
                    BitMatrix::from_rows(rows.iter().map(|b| BitVector::from_bits(b)).collect())
                })
        })
    }

    proptest! {
        #[test]
        fn rank_equals_transpose_rank(m in arb_matrix(10, 16)) {
            prop_assert_eq!(m.rank(), m.transpose().rank());
        }

        #[test]
        fn rank_matches_oracle(m in arb_matrix(8, 10)) {
            prop_assert_eq!(m.rank(), span_size_log2(&m));
        }

        #[test]
        fn rref_is_idempotent(m in arb_matrix(8, 12)) {
            let r = m.rref();
            prop_assert_eq!(r.reduced.rref().reduced, r.reduced.clone());
            prop_assert_eq!(r.transform.mul(&m), r.reduced);
            prop_assert_eq!(r.transform.rank(), m.rows());
        }

        #[test]
        fn solve_postconditions(m in arb_matrix(8, 12), bits in proptest::collection::vec(any::<bool>(), 8)) {
            let b = BitVector::from_bits(&bits[..m.rows()]);
            if let Some((x0, kernel)) = m.solve(&b).unwrap() {
                prop_assert_eq!(m.mul_vec(&x0), b);
                for k in &kernel {
                    prop_assert!(m.mul_vec(k).is_zero());
                }
                prop_assert_eq!(kernel.len(), m.cols() - m.rank());
            }
        }
    }

    #[test]
    fn bernoulli_matrix_rank_spot_check() {
        let m = sample_bernoulli_matrix(30, 40, 0.5, 99).unwrap();
        assert_eq!(m.rank(), m.transpose().rank());
    }
}
