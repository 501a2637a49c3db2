//! Executable form of the lower bound for square grids.
//!
//! In any decomposition of the `k x k` grid, every 2x2 square contributes
//! one diagonal joining the two neighbours of its lowest-labelled corner, and
//! those two neighbours always share a part. The resulting diagonal graph has
//! a component meeting every row or every column, which forces a part of
//! size at least `k`. These functions build diagonal graphs and find the
//! spanning component.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Which diagonal of the square with top-left corner `(i, j)` is present.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Diagonal {
    /// `(i, j) - (i + 1, j + 1)`.
    Main,
    /// `(i, j + 1) - (i + 1, j)`.
    Anti,
}

/// Graph on the `k x k` lattice points (row-major ids) holding exactly the
/// chosen diagonal of each of the `(k - 1)^2` unit squares.
pub fn build_diagonal_graph<F>(k: usize, mut chooser: F) -> Result<Graph>
where
    F: FnMut(usize, usize) -> Diagonal,
{
    if k < 2 {
        return Err(Error::Parameter(format!("diagonal graphs need k >= 2, got {k}")));
    }
    let id = |i: usize, j: usize| i * k + j;
    let mut edges = Vec::with_capacity((k - 1) * (k - 1));
    for i in 0..k - 1 {
        for j in 0..k - 1 {
            edges.push(match chooser(i, j) {
                Diagonal::Main => (id(i, j), id(i + 1, j + 1)),
                Diagonal::Anti => (id(i, j + 1), id(i + 1, j)),
            });
        }
    }
    Graph::from_edges(k * k, edges)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Orientation {
    Rows,
    Columns,
}

/// A connected component meeting every row (or every column).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpanningWitness {
    pub vertices: Vec<usize>,
    pub orientation: Orientation,
}

/// Finds a component of a diagonal graph that meets every row or every
/// column. Failing to find one means the input was not a diagonal graph or
/// the implementation is wrong; it is reported as a theorem violation.
pub fn spanning_component_check(h_d: &Graph, k: usize) -> Result<SpanningWitness> {
    if h_d.vertex_count() != k * k {
        return Err(Error::Parameter(format!("graph has {} vertices, expected {}", h_d.vertex_count(), k * k)));
    }
    for comp in h_d.components() {
        let mut rows = vec![false; k];
        let mut cols = vec![false; k];
        for &v in &comp {
            rows[v / k] = true;
            cols[v % k] = true;
        }
        let orientation = if rows.iter().all(|&r| r) {
            Orientation::Rows
        } else if cols.iter().all(|&c| c) {
            Orientation::Columns
        } else {
            continue;
        };
        return Ok(SpanningWitness { vertices: comp, orientation });
    }
    Err(Error::TheoremViolation(format!("no component of the {k}x{k} diagonal graph meets every row or every column")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn two_by_two() {
        for d in [Diagonal::Main, Diagonal::Anti] {
            let g = build_diagonal_graph(2, |_, _| d).unwrap();
            assert_eq!(g.edge_count(), 1);
            let w = spanning_component_check(&g, 2).unwrap();
            assert_eq!(w.vertices.len(), 2);
            assert_eq!(w.orientation, Orientation::Rows);
        }
    }

    #[test]
    fn three_by_three_main_diagonals() {
        let g = build_diagonal_graph(3, |_, _| Diagonal::Main).unwrap();
        assert_eq!(g.edge_count(), 4);
        // Main diagonal path (0,0)-(1,1)-(2,2) plus the edges (0,1)-(1,2)
        // and (1,0)-(2,1).
        let nontrivial: Vec<Vec<usize>> = g.components().into_iter().filter(|c| c.len() > 1).collect();
        assert_eq!(nontrivial, vec![vec![0, 4, 8], vec![1, 5], vec![3, 7]]);
        let w = spanning_component_check(&g, 3).unwrap();
        assert_eq!(w.vertices, vec![0, 4, 8]);
    }

    #[test]
    fn edge_count_is_square_count() {
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for k in 2..12 {
            let g = build_diagonal_graph(k, |_, _| if rng.gen() { Diagonal::Main } else { Diagonal::Anti }).unwrap();
            assert_eq!(g.edge_count(), (k - 1) * (k - 1));
        }
        assert!(build_diagonal_graph(1, |_, _| Diagonal::Main).is_err());
    }

    #[test]
    fn non_diagonal_graphs_can_violate() {
        assert!(matches!(spanning_component_check(&Graph::empty(9), 3), Err(Error::TheoremViolation(_))));
    }
}
