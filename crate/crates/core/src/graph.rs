//! Finite (q+1)-regular multigraphs with explicit directed-edge structure.
//!
//! Edge `i` of the input list yields the directed edges (darts) `2i` and
//! `2i+1`, oriented `u→v` and `v→u`. The inverse of dart `e` is `e ^ 1`.
//! A loop at `v` yields two distinct darts `v→v`, so it counts 2 towards the
//! degree of `v` and 2 towards the diagonal adjacency entry.

use crate::error::{Error, Result};
use crate::matrix::{Dense, DenseSymmetricMatrix, IntMatrix};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Dart {
    pub origin: usize,
    pub terminus: usize,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RegularGraph {
    n: usize,
    q: u64,
    edges: Vec<(usize, usize)>,
    darts: Vec<Dart>,
    /// darts leaving each vertex, ascending
    out: Vec<Vec<usize>>,
}

#[inline]
pub fn inverse(dart: usize) -> usize {
    dart ^ 1
}

impl RegularGraph {
    /// Validates and builds a graph on vertices `0..n`.
    pub fn new(n: usize, edges: Vec<(usize, usize)>, expected_q: u64) -> Result<Self> {
        if expected_q < 1 {
            return Err(Error::InvalidParameter(format!(
                "branching number q must be >= 1, got {expected_q}"
            )));
        }
        if n == 0 || edges.is_empty() {
            return Err(Error::EmptyGraph);
        }
        let mut darts = Vec::with_capacity(2 * edges.len());
        let mut out = vec![Vec::new(); n];
        for &(u, v) in &edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { index: w, n });
                }
            }
            out[u].push(darts.len());
            darts.push(Dart {
                origin: u,
                terminus: v,
            });
            out[v].push(darts.len());
            darts.push(Dart {
                origin: v,
                terminus: u,
            });
        }
        let expected = expected_q as usize + 1;
        for (vertex, ds) in out.iter().enumerate() {
            if ds.len() != expected {
                return Err(Error::NonRegular {
                    vertex,
                    degree: ds.len(),
                    expected,
                });
            }
        }
        Ok(Self {
            n,
            q: expected_q,
            edges,
            darts,
            out,
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    pub fn degree(&self) -> usize {
        self.q as usize + 1
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn darts(&self) -> &[Dart] {
        &self.darts
    }

    pub fn dart(&self, e: usize) -> Dart {
        self.darts[e]
    }

    pub fn out_darts(&self, v: usize) -> &[usize] {
        &self.out[v]
    }

    pub fn has_loops(&self) -> bool {
        self.edges.iter().any(|&(u, v)| u == v)
    }

    /// Exact integer adjacency matrix.
    pub fn int_adjacency(&self) -> IntMatrix {
        let mut a = IntMatrix::zeros(self.n);
        for d in &self.darts {
            a.set(d.origin, d.terminus, a.get(d.origin, d.terminus) + 1);
        }
        a
    }

    pub fn adjacency(&self) -> DenseSymmetricMatrix {
        DenseSymmetricMatrix::new(self.int_adjacency().to_f64())
            .expect("adjacency of an undirected graph is symmetric")
    }

    /// `Δ = (q+1)I − A`.
    pub fn laplacian(&self) -> DenseSymmetricMatrix {
        let a = self.int_adjacency();
        let d = self.degree() as f64;
        let m = Dense::from_fn(self.n, |i, j| {
            (if i == j { d } else { 0.0 }) - a.get(i, j) as f64
        });
        DenseSymmetricMatrix::new(m).expect("laplacian is symmetric")
    }

    /// Two-colourability by BFS.
    pub fn is_bipartite(&self) -> bool {
        let mut colour = vec![u8::MAX; self.n];
        for s in 0..self.n {
            if colour[s] != u8::MAX {
                continue;
            }
            colour[s] = 0;
            let mut stack = vec![s];
            while let Some(u) = stack.pop() {
                for &e in &self.out[u] {
                    let v = self.darts[e].terminus;
                    if colour[v] == u8::MAX {
                        colour[v] = 1 - colour[u];
                        stack.push(v);
                    } else if colour[v] == colour[u] {
                        return false;
                    }
                }
            }
        }
        true
    }

    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.n];
        seen[0] = true;
        let mut stack = vec![0];
        while let Some(u) = stack.pop() {
            for &e in &self.out[u] {
                let v = self.darts[e].terminus;
                if !seen[v] {
                    seen[v] = true;
                    stack.push(v);
                }
            }
        }
        seen.into_iter().all(|s| s)
    }
}

/// Builds a graph whose vertex count is inferred from the largest index.
pub fn build_graph(edges: &[(usize, usize)], expected_q: u64) -> Result<RegularGraph> {
    let n = edges.iter().map(|&(u, v)| u.max(v) + 1).max().unwrap_or(0);
    RegularGraph::new(n, edges.to_vec(), expected_q)
}

/// Cartesian product; vertex `(i, j)` becomes `i·n2 + j`.
pub fn cartesian_product(g1: &RegularGraph, g2: &RegularGraph) -> Result<RegularGraph> {
    let (n1, n2) = (g1.n(), g2.n());
    let mut edges = Vec::with_capacity(g1.edges.len() * n2 + g2.edges.len() * n1);
    for &(a, b) in &g1.edges {
        for j in 0..n2 {
            edges.push((a * n2 + j, b * n2 + j));
        }
    }
    for i in 0..n1 {
        for &(c, d) in &g2.edges {
            edges.push((i * n2 + c, i * n2 + d));
        }
    }
    RegularGraph::new(n1 * n2, edges, g1.q + g2.q + 1)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn triangle_builds() {
        let g = build_graph(&[(0, 1), (1, 2), (2, 0)], 1).unwrap();
        assert_eq!((g.n(), g.q(), g.darts().len()), (3, 1, 6));
    }

    #[test]
    fn path_is_not_regular() {
        let err = build_graph(&[(0, 1), (1, 2)], 1).unwrap_err();
        assert!(matches!(err, Error::NonRegular { .. }));
    }

    #[test]
    fn empty_graph_rejected() {
        assert_eq!(build_graph(&[], 1).unwrap_err(), Error::EmptyGraph);
    }

    #[test]
    fn loop_adds_two_to_diagonal() {
        let g = build_graph(&[(0, 0)], 1).unwrap();
        assert_eq!(g.int_adjacency().get(0, 0), 2);
        assert_ne!(inverse(0), 0);
    }

    #[test]
    fn dart_inverse_is_involution() {
        let g = build_graph(&[(0, 1), (1, 2), (2, 0)], 1).unwrap();
        for e in 0..g.darts().len() {
            let (d, di) = (g.dart(e), g.dart(inverse(e)));
            assert_eq!(inverse(inverse(e)), e);
            assert_eq!((d.origin, d.terminus), (di.terminus, di.origin));
        }
    }
}
