//! Exact brute-force counts used as ground truth.
//!
//! Nothing in this module depends on decompositions or on the estimator, so
//! its answers can be compared against both.

use num_bigint::BigUint;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Default node budget for oracle searches.
pub const ORACLE_BUDGET: u64 = 50_000_000;

/// Exact embedding and copy counts of a template in a base graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ExactCount {
    /// Injective edge-preserving maps from the template into the base.
    pub embeddings: BigUint,
    /// Subgraphs of the base isomorphic to the template.
    pub copies: BigUint,
    /// Automorphisms of the template.
    pub aut: BigUint,
}

/// Non-isolated vertices of `h`, ordered so that every vertex after the
/// first of its component has an earlier neighbour.
fn connected_order(h: &Graph) -> Vec<usize> {
    let mut order = Vec::new();
    for comp in h.components() {
        if comp.len() < 2 {
            continue;
        }
        let start = order.len();
        let mut seen = vec![false; h.vertex_count()];
        seen[comp[0]] = true;
        order.push(comp[0]);
        let mut i = start;
        while i < order.len() {
            for &w in h.adjacent(order[i]) {
                if !std::mem::replace(&mut seen[w], true) {
                    order.push(w);
                }
            }
            i += 1;
        }
    }
    order
}

struct Backtrack<'a> {
    h: &'a Graph,
    g: &'a Graph,
    order: Vec<usize>,
    /// For each position, the earlier positions holding neighbours.
    back: Vec<Vec<usize>>,
    image: Vec<usize>,
    used: Vec<bool>,
    nodes: u64,
    budget: u64,
    stop_at_first: bool,
}

impl Backtrack<'_> {
    fn new<'a>(h: &'a Graph, g: &'a Graph, budget: u64, stop_at_first: bool) -> Backtrack<'a> {
        let order = connected_order(h);
        let mut pos = vec![usize::MAX; h.vertex_count()];
        for (i, &v) in order.iter().enumerate() {
            pos[v] = i;
        }
        let back = order
            .iter()
            .enumerate()
            .map(|(i, &v)| h.adjacent(v).iter().map(|&w| pos[w]).filter(|&j| j < i).collect())
            .collect();
        Backtrack {
            h,
            g,
            back,
            image: vec![0; order.len()],
            order,
            used: vec![false; g.vertex_count()],
            nodes: 0,
            budget,
            stop_at_first,
        }
    }

    fn count(&mut self, i: usize) -> Result<u64> {
        if i == self.order.len() {
            return Ok(1);
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            return Err(Error::BudgetExhausted { budget: self.budget });
        }
        let v = self.order[i];
        let need = self.h.degree(v);
        let candidates: Vec<usize> = match self.back[i].first() {
            Some(&j) => self.g.adjacent(self.image[j]).to_vec(),
            None => (0..self.g.vertex_count()).collect(),
        };
        let mut total = 0u64;
        for x in candidates {
            if self.used[x]
                || self.g.degree(x) < need
                || !self.back[i].iter().all(|&j| self.g.has_edge(self.image[j], x))
            {
                continue;
            }
            self.used[x] = true;
            self.image[i] = x;
            let sub = self.count(i + 1);
            self.used[x] = false;
            total += sub?;
            if self.stop_at_first && total > 0 {
                return Ok(total);
            }
        }
        Ok(total)
    }
}

/// `n (n - 1) ... (n - k + 1)`.
pub fn falling_factorial(n: usize, k: usize) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    (n - k + 1..=n).fold(BigUint::one(), |acc, x| acc * x)
}

/// Number of injective maps from `V(h)` to `V(g)` that carry every edge of
/// `h` to an edge of `g`.
///
/// Non-isolated template vertices are matched by backtracking; isolated ones
/// contribute a falling factorial over the base vertices left over.
pub fn exact_embeddings(h: &Graph, g: &Graph, budget: u64) -> Result<BigUint> {
    let mut bt = Backtrack::new(h, g, budget, false);
    let placed = bt.order.len();
    let isolated = h.vertex_count() - placed;
    if h.vertex_count() > g.vertex_count() {
        return Ok(BigUint::zero());
    }
    let core = bt.count(0)?;
    Ok(BigUint::from(core) * falling_factorial(g.vertex_count() - placed, isolated))
}

/// Embeddings, copies and automorphisms of `h` in `g`. The automorphism
/// count is the number of embeddings of `h` into itself.
pub fn exact_copies(h: &Graph, g: &Graph, budget: u64) -> Result<ExactCount> {
    let embeddings = exact_embeddings(h, g, budget)?;
    let aut = exact_embeddings(h, h, budget)?;
    let copies = &embeddings / &aut;
    if &copies * &aut != embeddings {
        return Err(Error::Logic(format!("{embeddings} embeddings not divisible by {aut} automorphisms")));
    }
    Ok(ExactCount { embeddings, copies, aut })
}

/// Whether `a` and `b` are isomorphic.
pub fn isomorphic(a: &Graph, b: &Graph, budget: u64) -> Result<bool> {
    if a.vertex_count() != b.vertex_count() || a.edge_count() != b.edge_count() {
        return Ok(false);
    }
    let degrees = |g: &Graph| {
        let mut d: Vec<usize> = (0..g.vertex_count()).map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    };
    if degrees(a) != degrees(b) {
        return Ok(false);
    }
    // With equal vertex and edge counts, an injective edge-preserving map is
    // a bijection onto the edges of `b`, hence an isomorphism.
    let mut bt = Backtrack::new(a, b, budget, true);
    Ok(bt.count(0)? > 0)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, disjoint_triangles, grid, path};
    use itertools::Itertools;
    use proptest::prelude::*;

    /// Primitive oracle: scan every injective map.
    fn scan_embeddings(h: &Graph, g: &Graph) -> u64 {
        (0..g.vertex_count())
            .permutations(h.vertex_count())
            .filter(|phi| h.edges().all(|(u, v)| g.has_edge(phi[u], phi[v])))
            .count() as u64
    }

    fn copies(h: &Graph, g: &Graph) -> u64 {
        let c = exact_copies(h, g, ORACLE_BUDGET).unwrap();
        u64::try_from(c.copies).unwrap()
    }

    #[test]
    fn known_counts() {
        let k3 = complete(3);
        let c = exact_copies(&path(1), &k3, ORACLE_BUDGET).unwrap();
        assert_eq!((c.embeddings, c.copies), (6u32.into(), 3u32.into()));
        assert_eq!(copies(&path(2), &complete(4)), 12);
        assert_eq!(copies(&complete(3), &complete(4)), 4);
        assert_eq!(copies(&cycle(4).unwrap(), &complete(4)), 3);
        assert_eq!(copies(&disjoint_triangles(2), &complete(6)), 10);
        assert_eq!(copies(&path(4), &complete(5)), 60);
        let ladder = grid(2, 3);
        assert_eq!(copies(&ladder, &ladder), 1);
    }

    #[test]
    fn edgeless_templates_give_falling_factorials() {
        for v in 0..5 {
            for n in 0..7 {
                assert_eq!(
                    exact_embeddings(&Graph::empty(v), &complete(n), ORACLE_BUDGET).unwrap(),
                    falling_factorial(n, v)
                );
            }
        }
    }

    #[test]
    fn isomorphism() {
        let iso = |a: &Graph, b: &Graph| isomorphic(a, b, ORACLE_BUDGET).unwrap();
        assert!(iso(&cycle(4).unwrap(), &grid(2, 2)));
        assert!(!iso(&path(3), &complete_bipartite(1, 3)));
        let g = grid(3, 3);
        assert!(iso(&g, &g.relabel(&[8, 7, 6, 5, 4, 3, 2, 1, 0]).unwrap()));
        // Same degree sequence, not isomorphic: C6 versus two triangles.
        assert!(!iso(&cycle(6).unwrap(), &disjoint_triangles(2)));
    }

    #[test]
    fn budget_is_an_error() {
        assert!(matches!(exact_embeddings(&path(5), &complete(8), 10), Err(Error::BudgetExhausted { budget: 10 })));
    }

    fn small_graph() -> impl Strategy<Value = Graph> {
        (1usize..=5).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * (n - 1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(1500))]

        #[test]
        fn backtracking_matches_scan(h in small_graph(), g in small_graph()) {
            let l = exact_embeddings(&h, &g, ORACLE_BUDGET).unwrap();
            prop_assert_eq!(l.clone(), BigUint::from(scan_embeddings(&h, &g)));
            let c = exact_copies(&h, &g, ORACLE_BUDGET).unwrap();
            prop_assert_eq!(&c.copies * &c.aut, l);
            prop_assert_eq!(c.aut, BigUint::from(scan_embeddings(&h, &h)));
        }

        #[test]
        fn copies_invariant_under_relabelling(h in small_graph(), g in small_graph(), seed in any::<u64>()) {
            use rand::{seq::SliceRandom, SeedableRng};
            let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
            perm.shuffle(&mut rand_chacha::ChaCha8Rng::seed_from_u64(seed));
            let g2 = g.relabel(&perm).unwrap();
            prop_assert_eq!(
                exact_copies(&h, &g, ORACLE_BUDGET).unwrap(),
                exact_copies(&h, &g2, ORACLE_BUDGET).unwrap()
            );
            prop_assert!(isomorphic(&g, &g2, ORACLE_BUDGET).unwrap());
        }
    }
}
