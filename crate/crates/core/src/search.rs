//! Exhaustive minimum-width search for small templates.
//!
//! Decompositions are grown front to back. Whether a candidate next part is
//! admissible depends only on the set of already placed vertices: it must be
//! independent, and every placed vertex with unplaced neighbours must have
//! either all or none of them in the new part. Feasibility for a fixed width
//! cap is therefore memoised on the placed set.

use std::collections::HashSet;

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Largest template accepted by [`exhaustive_min_width`].
pub const MAX_SEARCH_VERTICES: usize = 24;

/// Result of [`exhaustive_min_width`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum MinWidth {
    /// A minimum-width decomposition among those of width at most the cap.
    Found { decomposition: Decomposition, width: usize },
    /// The search completed: no decomposition of width at most the cap.
    NoDecomposition,
    /// The node budget ran out before the search completed.
    Inconclusive { nodes: u64 },
}

struct Search<'a> {
    adj: Vec<u32>,
    full: u32,
    budget: u64,
    nodes: u64,
    failed: HashSet<u32>,
    _graph: &'a Graph,
}

impl Search<'_> {
    /// Depth-first search for a completion of `placed` whose stages all have
    /// at most `cap` edges. Parts are returned in reverse stage order.
    fn complete(&mut self, placed: u32, cap: usize) -> Result<Option<Vec<u32>>, ()> {
        if placed == self.full {
            return Ok(Some(Vec::new()));
        }
        if self.failed.contains(&placed) {
            return Ok(None);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(());
        }
        let free = self.full & !placed;
        // Placed vertices with unplaced neighbours: each block is all-or-none.
        let blocks: Vec<u32> = iter_bits(placed).map(|u| self.adj[u] & free).filter(|&b| b != 0).collect();
        let mut part: u32 = 0;
        loop {
            // Next non-empty submask of `free` in increasing order.
            part = part.wrapping_sub(free) & free;
            if part == 0 {
                break;
            }
            if !self.admissible(part, placed, &blocks, cap) {
                continue;
            }
            if let Some(mut rest) = self.complete(placed | part, cap)? {
                rest.push(part);
                return Ok(Some(rest));
            }
        }
        self.failed.insert(placed);
        Ok(None)
    }

    fn admissible(&self, part: u32, placed: u32, blocks: &[u32], cap: usize) -> bool {
        let mut edges = 0usize;
        for v in iter_bits(part) {
            if self.adj[v] & part != 0 {
                return false;
            }
            edges += (self.adj[v] & placed).count_ones() as usize;
        }
        edges <= cap && blocks.iter().all(|&b| b & part == 0 || b & part == b)
    }
}

fn iter_bits(mut mask: u32) -> impl Iterator<Item = usize> {
    std::iter::from_fn(move || {
        (mask != 0).then(|| {
            let v = mask.trailing_zeros() as usize;
            mask &= mask - 1;
            v
        })
    })
}

/// Finds a minimum-width decomposition of `h` among those of width at most
/// `width_cap`, exploring at most `budget` search nodes.
///
/// Widths are tried in increasing order, so the first decomposition found is
/// of minimum width. The result is deterministic.
pub fn exhaustive_min_width(h: &Graph, width_cap: usize, budget: u64) -> Result<MinWidth> {
    let n = h.vertex_count();
    if n > MAX_SEARCH_VERTICES {
        return Err(Error::Parameter(format!(
            "exhaustive search supports at most {MAX_SEARCH_VERTICES} vertices, got {n}"
        )));
    }
    let adj: Vec<u32> = (0..n).map(|v| h.adjacent(v).iter().fold(0u32, |m, &w| m | 1 << w)).collect();
    let full = if n == 0 { 0 } else { u32::MAX >> (32 - n) };
    let mut search = Search { adj, full, budget, nodes: 0, failed: HashSet::new(), _graph: h };
    // Any decomposition has width at least half the maximum degree.
    let lower = h.max_degree().div_ceil(2);
    for cap in lower..=width_cap {
        search.failed.clear();
        match search.complete(0, cap) {
            Err(()) => return Ok(MinWidth::Inconclusive { nodes: search.nodes }),
            Ok(Some(mut parts)) => {
                parts.reverse();
                let parts = parts.into_iter().map(|m| iter_bits(m).collect()).collect();
                return Ok(MinWidth::Found { decomposition: Decomposition::new(parts)?, width: cap });
            }
            Ok(None) => {}
        }
    }
    Ok(MinWidth::NoDecomposition)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::{verify, width};
    use crate::generators::{complete, cycle, grid, path};

    const BUDGET: u64 = 10_000_000;

    #[test]
    fn triangle_has_none() {
        for cap in 0..=3 {
            assert_eq!(exhaustive_min_width(&complete(3), cap, BUDGET).unwrap(), MinWidth::NoDecomposition);
        }
    }

    #[test]
    fn grid_three_by_three_needs_width_three() {
        assert_eq!(exhaustive_min_width(&grid(3, 3), 2, BUDGET).unwrap(), MinWidth::NoDecomposition);
        match exhaustive_min_width(&grid(3, 3), 4, BUDGET).unwrap() {
            MinWidth::Found { decomposition, width: w } => {
                assert!(w >= 3);
                assert_eq!(width(&grid(3, 3), &decomposition).unwrap(), w);
            }
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn small_cases() {
        match exhaustive_min_width(&path(2), 1, BUDGET).unwrap() {
            MinWidth::Found { decomposition, width: 1 } => {
                assert!(verify(&path(2), &decomposition).unwrap().valid)
            }
            other => panic!("{other:?}"),
        }
        assert_eq!(exhaustive_min_width(&grid(2, 2), 0, BUDGET).unwrap(), MinWidth::NoDecomposition);
        match exhaustive_min_width(&cycle(5).unwrap(), 5, BUDGET).unwrap() {
            MinWidth::Found { width, .. } => assert_eq!(width, 2),
            other => panic!("{other:?}"),
        }
        match exhaustive_min_width(&Graph::empty(0), 0, BUDGET).unwrap() {
            MinWidth::Found { decomposition, width: 0 } => assert!(decomposition.is_empty()),
            other => panic!("{other:?}"),
        }
    }

    #[test]
    fn budget_is_reported_not_hidden() {
        assert!(matches!(exhaustive_min_width(&grid(3, 3), 2, 5).unwrap(), MinWidth::Inconclusive { .. }));
    }

    #[test]
    fn agrees_with_verify_on_all_graphs_up_to_five_vertices() {
        // A graph has some decomposition iff the uncapped search finds one,
        // and whatever it finds must verify.
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let g =
                    Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
                        .unwrap();
                let found = exhaustive_min_width(&g, g.edge_count(), BUDGET).unwrap();
                let has_triangle = g.girth() == Some(3);
                match found {
                    MinWidth::Found { decomposition, width: w } => {
                        assert!(!has_triangle);
                        assert!(verify(&g, &decomposition).unwrap().valid);
                        assert_eq!(width(&g, &decomposition).unwrap(), w);
                    }
                    MinWidth::NoDecomposition => assert!(has_triangle, "{g:?}"),
                    MinWidth::Inconclusive { .. } => panic!("budget"),
                }
            }
        }
    }
}
