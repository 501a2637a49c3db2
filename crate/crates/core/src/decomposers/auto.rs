//! Component-wise decomposition of graphs without a declared class.

use super::simple::{decompose_cycle, decompose_path, decompose_tree};
use super::{decompose, decompose_planar16, ClassInput, Structure, PLANAR_MIN_GIRTH};
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::search::{exhaustive_min_width, MinWidth};

/// Components with at most this many vertices that fit no named class are
/// decomposed by exhaustive search.
pub const AUTO_SEARCH_MAX_VERTICES: usize = 10;

/// Node budget for the exhaustive fallback.
pub const AUTO_SEARCH_BUDGET: u64 = 2_000_000;

/// Result of [`decompose_auto`]: a decomposition of every vertex outside
/// `triangles`, plus the triangle components left to the estimator.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AutoDecomposition {
    pub decomposition: Decomposition,
    /// Triangle components, each sorted.
    pub triangles: Vec<[usize; 3]>,
}

/// Decomposes `h`.
///
/// With a `hint`, the whole graph goes to that class decomposer. Without
/// one, each connected component (in order of lowest vertex) is classified
/// as a path, cycle, triangle, tree or girth-16 graph, and small leftovers
/// are searched exhaustively; the parts are concatenated.
pub fn decompose_auto(h: &Graph, hint: Option<&Structure>) -> Result<AutoDecomposition> {
    if let Some(structure) = hint {
        let input = ClassInput { graph: h.clone(), structure: structure.clone() };
        return Ok(AutoDecomposition { decomposition: decompose(&input)?, triangles: Vec::new() });
    }
    let mut decomposition = Decomposition::empty();
    let mut triangles = Vec::new();
    for comp in h.components() {
        let (g, _) = h.induced_subgraph(&comp)?;
        let n = g.vertex_count();
        let m = g.edge_count();
        let local = if m + 1 == n && g.max_degree() <= 2 {
            decompose_path(&g)?
        } else if m == n && (0..n).all(|v| g.degree(v) == 2) {
            if n == 3 {
                triangles.push([comp[0], comp[1], comp[2]]);
                continue;
            }
            decompose_cycle(&g)?
        } else if m + 1 == n {
            decompose_tree(&g, None)?
        } else if g.girth().is_some_and(|girth| girth >= PLANAR_MIN_GIRTH) {
            decompose_planar16(&g)?
        } else if n <= AUTO_SEARCH_MAX_VERTICES {
            match exhaustive_min_width(&g, m, AUTO_SEARCH_BUDGET)? {
                MinWidth::Found { decomposition, .. } => decomposition,
                MinWidth::NoDecomposition => return Err(Error::UnsupportedClass { component_root: comp[0] }),
                MinWidth::Inconclusive { .. } => return Err(Error::BudgetExhausted { budget: AUTO_SEARCH_BUDGET }),
            }
        } else {
            return Err(Error::UnsupportedClass { component_root: comp[0] });
        };
        decomposition = decomposition.concat(local.map_vertices(|v| comp[v]));
    }
    Ok(AutoDecomposition { decomposition, triangles })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::verify;
    use crate::generators::{complete, cycle, grid, path};

    #[test]
    fn path_and_cycle() {
        let g = path(2).disjoint_union(&cycle(4).unwrap());
        let a = decompose_auto(&g, None).unwrap();
        assert!(verify(&g, &a.decomposition).unwrap().valid);
        assert_eq!(a.decomposition.parts(), &[vec![0], vec![1], vec![2], vec![3], vec![4, 6], vec![5]]);
        assert!(a.triangles.is_empty());
    }

    #[test]
    fn triangle_marker() {
        let g = cycle(4).unwrap().disjoint_union(&cycle(3).unwrap());
        let a = decompose_auto(&g, None).unwrap();
        assert_eq!(a.triangles, vec![[4, 5, 6]]);
        assert_eq!(a.decomposition.parts(), &[vec![0], vec![1, 3], vec![2]]);
    }

    #[test]
    fn empty_and_fallbacks() {
        let a = decompose_auto(&Graph::empty(0), None).unwrap();
        assert!(a.decomposition.is_empty() && a.triangles.is_empty());
        let iso = decompose_auto(&Graph::empty(3), None).unwrap();
        assert_eq!(iso.decomposition.len(), 3);
        // grid(3, 3) is found by search.
        let g = grid(3, 3);
        let a = decompose_auto(&g, None).unwrap();
        assert!(verify(&g, &a.decomposition).unwrap().valid);
        assert!(matches!(decompose_auto(&complete(4), None), Err(Error::UnsupportedClass { component_root: 0 })));
        assert!(matches!(decompose_auto(&grid(4, 4), None), Err(Error::UnsupportedClass { .. })));
    }

    #[test]
    fn hinted() {
        let g = grid(4, 4);
        let a = decompose_auto(&g, Some(&Structure::Grid { rows: 4, cols: 4 })).unwrap();
        assert!(verify(&g, &a.decomposition).unwrap().valid);
    }

    #[test]
    fn restriction_matches_component_decomposer() {
        let c = cycle(6).unwrap();
        let g = path(3).disjoint_union(&c);
        let a = decompose_auto(&g, None).unwrap();
        let own = decompose_cycle(&c).unwrap().map_vertices(|v| v + 4);
        let restricted: Vec<Vec<usize>> = a.decomposition.parts().iter().filter(|p| p[0] >= 4).cloned().collect();
        assert_eq!(restricted, own.parts());
    }
}
