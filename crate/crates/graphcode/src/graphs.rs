//! Simple undirected graphs: Erdős–Rényi sampling, cut matrices, induced
//! subgraphs, and the entanglement entropy of the associated graph state.

use thiserror::Error;

use crate::f2la::{bernoulli, BitMatrix, F2Error};

#[derive(Debug, Error, PartialEq)]
pub enum GraphError {
    #[error("vertex {0} out of range for {1} vertices")]
    OutOfRange(usize, usize),
    #[error("graph must have at least one vertex")]
    Empty,
    #[error("malformed graph text: {0}")]
    ParseError(String),
    #[error(transparent)]
    F2(#[from] F2Error),
}

/// Simple undirected graph on vertices `0..n`, stored as a symmetric
/// adjacency matrix with zero diagonal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adjacency: BitMatrix,
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Self {
            adjacency: BitMatrix::zeros(n, n),
        }
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        let mut g = Self::empty(n);
        for &(i, j) in edges {
            g.add_edge(i, j)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, i: usize, j: usize) -> Result<(), GraphError> {
        let n = self.n();
        for v in [i, j] {
            if v >= n {
                return Err(GraphError::OutOfRange(v, n));
            }
        }
        if i != j {
            self.adjacency.set(i, j, true);
            self.adjacency.set(j, i, true);
        }
        Ok(())
    }

    pub fn n(&self) -> usize {
        self.adjacency.rows()
    }

    pub fn adjacency(&self) -> &BitMatrix {
        &self.adjacency
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency.get(i, j)
    }

    /// Samples G(n, q): each unordered pair {i, j}, i < j, is an edge
    /// independently with probability q; reproducible from the seed.
    pub fn sample_er(n: usize, q: f64, seed: u64) -> Result<Self, GraphError> {
        if !(0.0..=1.0).contains(&q) {
            return Err(F2Error::InvalidProbability(q).into());
        }
        if n == 0 {
            return Err(GraphError::Empty);
        }
        let mut g = Self::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                if bernoulli(seed, (i * n + j) as u64, q) {
                    g.adjacency.set(i, j, true);
                    g.adjacency.set(j, i, true);
                }
            }
        }
        Ok(g)
    }

    /// One triangle of the adjacency matrix: entry (i, j) is kept when
    /// `i >= j`, so `A_top + A_topᵀ = A` and `xᵀ A_top x` counts each edge
    /// inside the support of `x` exactly once.
    pub fn adjacency_top(&self) -> BitMatrix {
        let n = self.n();
        let mut top = BitMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..i {
                if self.adjacency.get(i, j) {
                    top.set(i, j, true);
                }
            }
        }
        top
    }

    /// Biadjacency matrix between `K` and its complement: rows indexed by
    /// sorted `V \ K`, columns by sorted `K`.
    pub fn cut_matrix(&self, cut: &[usize]) -> Result<BitMatrix, GraphError> {
        let (inside, outside) = self.split_cut(cut)?;
        let mut m = BitMatrix::zeros(outside.len(), inside.len());
        for (r, &i) in outside.iter().enumerate() {
            for (c, &j) in inside.iter().enumerate() {
                if self.adjacency.get(i, j) {
                    m.set(r, c, true);
                }
            }
        }
        Ok(m)
    }

    /// Entanglement entropy in ebits of the graph state across the cut
    /// `(K, V \ K)`: the GF(2) rank of the cut matrix.
    pub fn entanglement_entropy(&self, cut: &[usize]) -> Result<usize, GraphError> {
        Ok(self.cut_matrix(cut)?.rank())
    }

    /// Subgraph induced by `S` (sorted vertex order).
    pub fn induced_subgraph(&self, vertices: &[usize]) -> Result<Graph, GraphError> {
        let s = self.validated_sorted(vertices)?;
        let mut g = Graph::empty(s.len());
        for (a, &i) in s.iter().enumerate() {
            for (b, &j) in s.iter().enumerate().skip(a + 1) {
                if self.adjacency.get(i, j) {
                    g.adjacency.set(a, b, true);
                    g.adjacency.set(b, a, true);
                }
            }
        }
        Ok(g)
    }

    pub fn degree(&self, i: usize) -> usize {
        self.adjacency.row(i).weight()
    }

    pub fn max_degree(&self) -> usize {
        (0..self.n()).map(|i| self.degree(i)).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        (0..self.n()).map(|i| self.degree(i)).min().unwrap_or(0)
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n()).map(|i| self.degree(i)).sum::<usize>() / 2
    }

    /// Sorted cut set and sorted complement.
    pub fn split_cut(&self, cut: &[usize]) -> Result<(Vec<usize>, Vec<usize>), GraphError> {
        let inside = self.validated_sorted(cut)?;
        let mut mask = vec![false; self.n()];
        for &i in &inside {
            mask[i] = true;
        }
        let outside = (0..self.n()).filter(|&i| !mask[i]).collect();
        Ok((inside, outside))
    }

    fn validated_sorted(&self, vertices: &[usize]) -> Result<Vec<usize>, GraphError> {
        let n = self.n();
        for &v in vertices {
            if v >= n {
                return Err(GraphError::OutOfRange(v, n));
            }
        }
        let mut s = vertices.to_vec();
        s.sort_unstable();
        s.dedup();
        Ok(s)
    }

    /// Serialization: first line `n`, then one `i j` edge per line, i < j.
    pub fn to_text(&self) -> String {
        let mut out = format!("{}\n", self.n());
        for i in 0..self.n() {
            for j in (i + 1)..self.n() {
                if self.adjacency.get(i, j) {
                    out.push_str(&format!("{i} {j}\n"));
                }
            }
        }
        out
    }

    pub fn from_text(text: &str) -> Result<Self, GraphError> {
        let mut lines = text.lines();
        let n: usize = lines
            .next()
            .ok_or_else(|| GraphError::ParseError("empty input".into()))?
            .trim()
            .parse()
            .map_err(|e| GraphError::ParseError(format!("bad vertex count: {e}")))?;
        let mut g = Graph::empty(n);
        for line in lines {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let mut parts = line.split_whitespace();
            let parse = |s: Option<&str>| -> Result<usize, GraphError> {
                s.ok_or_else(|| GraphError::ParseError("missing endpoint".into()))?
                    .parse()
                    .map_err(|e| GraphError::ParseError(format!("bad endpoint: {e}")))
            };
            let i = parse(parts.next())?;
            let j = parse(parts.next())?;
            g.add_edge(i, j)?;
        }
        Ok(g)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn complete(n: usize) -> Graph {
        let mut g = Graph::empty(n);
        for i in 0..n {
            for j in (i + 1)..n {
                g.add_edge(i, j).unwrap();
            }
        }
        g
    }

    #[test]
    fn sample_degenerate_probabilities() {
        let g = Graph::sample_er(10, 0.0, 1).unwrap();
        assert_eq!(g.edge_count(), 0);
        let g = Graph::sample_er(10, 1.0, 1).unwrap();
        assert!((0..10).all(|i| g.degree(i) == 9));
        assert!(Graph::sample_er(10, 1.5, 1).is_err());
    }

    #[test]
    fn sample_edge_count_within_three_sigma() {
        // C(100,2) = 4950 pairs at q = 0.5: mean 2475, sigma ~ 35.2.
        let g = Graph::sample_er(100, 0.5, 7).unwrap();
        let edges = g.edge_count() as f64;
        assert!((edges - 2475.0).abs() < 3.0 * 35.2, "edges {edges}");
    }

    #[test]
    fn sample_reproducible() {
        assert_eq!(
            Graph::sample_er(20, 0.3, 5).unwrap(),
            Graph::sample_er(20, 0.3, 5).unwrap()
        );
    }

    #[test]
    fn adjacency_is_symmetric_no_loops() {
        let g = Graph::sample_er(15, 0.4, 2).unwrap();
        for i in 0..15 {
            assert!(!g.has_edge(i, i));
            for j in 0..15 {
                assert_eq!(g.has_edge(i, j), g.has_edge(j, i));
            }
        }
    }

    #[test]
    fn top_half_splits_symmetric_pairs() {
        assert_eq!(Graph::empty(3).adjacency_top(), BitMatrix::zeros(3, 3));

        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let top = g.adjacency_top();
        let ones: usize = top.row_iter().map(|r| r.weight()).sum();
        assert_eq!(ones, 1);

        let k3 = complete(3);
        let top = k3.adjacency_top();
        let ones: usize = top.row_iter().map(|r| r.weight()).sum();
        assert_eq!(ones, 3);
        // A_top + A_topᵀ = A
        let mut sum = BitMatrix::zeros(3, 3);
        for i in 0..3 {
            for j in 0..3 {
                sum.set(i, j, top.get(i, j) ^ top.get(j, i));
            }
        }
        assert_eq!(&sum, k3.adjacency());
    }

    #[test]
    fn cut_matrix_shapes_and_rank() {
        let g = Graph::from_edges(3, &[(0, 1)]).unwrap();
        let empty_cut = g.cut_matrix(&[]).unwrap();
        assert_eq!((empty_cut.rows(), empty_cut.cols()), (3, 0));

        let single = g.cut_matrix(&[0]).unwrap();
        assert_eq!((single.rows(), single.cols()), (2, 1));
        assert!(single.get(0, 0)); // vertex 1 adjacent to 0
        assert!(!single.get(1, 0));

        let k4 = complete(4);
        let m = k4.cut_matrix(&[0, 1]).unwrap();
        assert_eq!((m.rows(), m.cols()), (2, 2));
        assert_eq!(m.rank(), 1); // all-ones 2x2
        assert_eq!(k4.entanglement_entropy(&[0, 1]).unwrap(), 1);
    }

    #[test]
    fn entropy_examples_and_symmetry() {
        assert_eq!(Graph::empty(4).entanglement_entropy(&[0, 1]).unwrap(), 0);
        let g = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(g.entanglement_entropy(&[0]).unwrap(), 1);

        let g = Graph::sample_er(12, 0.3, 9).unwrap();
        for cut_seed in 0..5u64 {
            let cut: Vec<usize> = (0..12).filter(|&i| (cut_seed + i as u64) % 3 == 0).collect();
            let complement: Vec<usize> = (0..12).filter(|i| !cut.contains(i)).collect();
            let e1 = g.entanglement_entropy(&cut).unwrap();
            let e2 = g.entanglement_entropy(&complement).unwrap();
            assert_eq!(e1, e2);
            assert!(e1 <= cut.len().min(12 - cut.len()));
        }
    }

    #[test]
    fn induced_subgraph_examples() {
        let path = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        assert_eq!(path.induced_subgraph(&[0, 1, 2]).unwrap(), path);
        let ends = path.induced_subgraph(&[0, 2]).unwrap();
        assert_eq!(ends.edge_count(), 0);
        assert_eq!(path.induced_subgraph(&[]).unwrap().n(), 0);
        assert!(path.induced_subgraph(&[5]).is_err());
    }

    #[test]
    fn degrees() {
        let k4 = complete(4);
        assert_eq!(k4.min_degree(), 3);
        assert_eq!(k4.max_degree(), 3);
        let g = Graph::from_edges(4, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        assert_eq!(g.min_degree(), 0); // vertex 3 isolated
    }

    #[test]
    fn text_roundtrip() {
        let g = Graph::sample_er(8, 0.5, 3).unwrap();
        assert_eq!(Graph::from_text(&g.to_text()).unwrap(), g);
        assert!(Graph::from_text("").is_err());
        assert!(Graph::from_text("2\n0 5\n").is_err());
    }
}
