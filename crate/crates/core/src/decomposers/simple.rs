//! Paths, cycles, trees and rectangular grids.

use super::checked;
use super::engine::Builder;
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::generators::grid;
use crate::graph::Graph;

/// Vertices of a connected graph of maximum degree 2, walked from `start`
/// towards its lower-index neighbour.
fn walk(g: &Graph, start: usize) -> Vec<usize> {
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    while let Some(&next) = g.adjacent(cur).iter().find(|&&w| w != prev && w != start) {
        order.push(next);
        prev = cur;
        cur = next;
    }
    order
}

/// One vertex per part, from the lower-index endpoint to the other.
pub fn decompose_path(h: &Graph) -> Result<Decomposition> {
    let n = h.vertex_count();
    if n == 0 {
        return Err(Error::class("path", "the graph has no vertices"));
    }
    if !h.is_connected() || h.edge_count() != n - 1 || h.max_degree() > 2 {
        return Err(Error::class("path", "expected a connected graph with n - 1 edges and maximum degree 2"));
    }
    let start = (0..n).find(|&v| h.degree(v) <= 1).expect("a path has an endpoint");
    let parts = walk(h, start).into_iter().map(|v| vec![v]).collect();
    checked("path", h, Decomposition::new(parts)?, 1)
}

/// `{s1}, {s2, sk}, {s3}, ..., {s(k-1)}` with `s1 = 0` and `s2` its
/// lower-index neighbour.
pub fn decompose_cycle(h: &Graph) -> Result<Decomposition> {
    let n = h.vertex_count();
    if n < 3 || !h.is_connected() || (0..n).any(|v| h.degree(v) != 2) {
        return Err(Error::class("cycle", "expected a connected 2-regular graph"));
    }
    if n == 3 {
        return Err(Error::UseTriangleExtension);
    }
    let s = walk(h, 0);
    let mut parts = vec![vec![s[0]], vec![s[1], s[n - 1]]];
    parts.extend(s[2..n - 1].iter().map(|&v| vec![v]));
    checked("cycle", h, Decomposition::new(parts)?, 2)
}

/// Rooted at `root` (vertex 0 by default); each later part is the set of
/// children of the lowest-index selected vertex that still has unselected
/// neighbours. Width is at most the maximum degree.
pub fn decompose_tree(h: &Graph, root: Option<usize>) -> Result<Decomposition> {
    let n = h.vertex_count();
    if n == 0 || !h.is_connected() || h.edge_count() != n - 1 {
        return Err(Error::class("tree", "expected a connected acyclic graph"));
    }
    let root = root.unwrap_or(0);
    h.check_vertices(&[root])?;
    let mut b = Builder::new(h, "tree");
    b.select([root])?;
    while !b.all_selected() {
        let u = (0..n).find(|&v| b.is_active(v)).expect("connected graph has an active vertex");
        b.finish(u)?;
    }
    checked("tree", h, b.into_decomposition()?, h.max_degree())
}

/// Anti-diagonals of the `rows x cols` grid, starting from the corner 0.
pub fn decompose_grid(h: &Graph, rows: usize, cols: usize) -> Result<Decomposition> {
    if rows == 0 || cols == 0 {
        return Err(Error::class("grid", "rows and cols must be positive"));
    }
    if *h != grid(rows, cols) {
        return Err(Error::class("grid", format!("graph is not the row-major {rows}x{cols} grid")));
    }
    let parts = (0..rows + cols - 1)
        .map(|d| (0..rows).filter(|&i| d >= i && d - i < cols).map(|i| i * cols + (d - i)).collect())
        .collect();
    checked("grid", h, Decomposition::new(parts)?, 2 * rows.min(cols))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{stage_graphs, width};
    use crate::generators::{complete_bipartite, cycle, path, random_tree};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn stage_edges(h: &Graph, d: &Decomposition) -> Vec<usize> {
        stage_graphs(h, d).unwrap().iter().map(|s| s.edge_count()).collect()
    }

    #[test]
    fn paths() {
        let d = decompose_path(&path(2)).unwrap();
        assert_eq!(d.parts(), &[vec![0], vec![1], vec![2]]);
        assert_eq!(width(&path(2), &d).unwrap(), 1);
        let single = decompose_path(&Graph::empty(1)).unwrap();
        assert_eq!(width(&Graph::empty(1), &single).unwrap(), 0);
        let relabelled = path(3).relabel(&[2, 0, 3, 1]).unwrap();
        let d = decompose_path(&relabelled).unwrap();
        assert_eq!(d.parts()[0], vec![1]);
        assert!(decompose_path(&path(50)).is_ok());
        assert!(decompose_path(&cycle(4).unwrap()).is_err());
        assert!(decompose_path(&Graph::empty(2)).is_err());
    }

    #[test]
    fn cycles() {
        let c4 = cycle(4).unwrap();
        let d = decompose_cycle(&c4).unwrap();
        assert_eq!(d.parts(), &[vec![0], vec![1, 3], vec![2]]);
        assert_eq!(width(&c4, &d).unwrap(), 2);
        let c5 = cycle(5).unwrap();
        let d = decompose_cycle(&c5).unwrap();
        assert_eq!(stage_edges(&c5, &d), vec![0, 2, 1, 2]);
        assert_eq!(width(&c5, &d).unwrap(), 2);
        assert!(matches!(decompose_cycle(&cycle(3).unwrap()), Err(Error::UseTriangleExtension)));
        assert!(matches!(decompose_cycle(&path(4)), Err(Error::ClassValidation { .. })));
        for k in 4..40 {
            assert!(decompose_cycle(&cycle(k).unwrap()).is_ok());
        }
    }

    #[test]
    fn trees() {
        let star = complete_bipartite(1, 4);
        let d = decompose_tree(&star, None).unwrap();
        assert_eq!(d.parts(), &[vec![0], vec![1, 2, 3, 4]]);
        assert_eq!(width(&star, &d).unwrap(), 4);
        let p = path(6);
        for root in 0..7 {
            let d = decompose_tree(&p, Some(root)).unwrap();
            assert!(width(&p, &d).unwrap() <= 2);
        }
        let mut rng = ChaCha8Rng::seed_from_u64(17);
        for _ in 0..50 {
            let t = random_tree(100, 5, &mut rng).unwrap();
            let d = decompose_tree(&t, None).unwrap();
            assert!(width(&t, &d).unwrap() <= 5);
        }
        assert!(decompose_tree(&cycle(4).unwrap(), None).is_err());
        assert!(decompose_tree(&Graph::empty(2), None).is_err());
        assert!(decompose_tree(&p, Some(9)).is_err());
    }

    #[test]
    fn grids() {
        let d = decompose_grid(&grid(2, 2), 2, 2).unwrap();
        assert_eq!(d.parts(), &[vec![0], vec![1, 2], vec![3]]);
        let g = grid(3, 3);
        let d = decompose_grid(&g, 3, 3).unwrap();
        assert_eq!(stage_edges(&g, &d), vec![0, 2, 4, 4, 2]);
        for k in 1..=50 {
            let g = grid(2, k);
            assert!(width(&g, &decompose_grid(&g, 2, k).unwrap()).unwrap() <= 4);
        }
        assert!(decompose_grid(&grid(3, 2), 2, 3).is_err());
    }
}
