use num_bigint::BigUint;
use num_traits::One;

use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::oracle::isomorphic;

fn factorial(k: usize) -> BigUint {
    (2..=k).fold(BigUint::one(), |acc, x| acc * x)
}

/// Automorphisms of a connected graph by backtracking in BFS order from a
/// vertex of maximum degree. Each image must match the degree of its
/// preimage and agree on adjacency with every earlier vertex.
fn connected_automorphisms(c: &Graph, budget: u64, nodes: &mut u64) -> Result<u64> {
    let n = c.vertex_count();
    let start = (0..n).max_by_key(|&v| (c.degree(v), std::cmp::Reverse(v))).unwrap_or(0);
    let mut order = vec![start];
    let mut seen = vec![false; n];
    seen[start] = true;
    let mut i = 0;
    while i < order.len() {
        for &w in c.adjacent(order[i]) {
            if !std::mem::replace(&mut seen[w], true) {
                order.push(w);
            }
        }
        i += 1;
    }

    struct State<'a> {
        c: &'a Graph,
        order: Vec<usize>,
        image: Vec<usize>,
        used: Vec<bool>,
        budget: u64,
    }

    fn go(s: &mut State<'_>, i: usize, nodes: &mut u64) -> Result<u64> {
        if i == s.order.len() {
            return Ok(1);
        }
        *nodes += 1;
        if *nodes > s.budget {
            return Err(Error::BudgetExhausted { budget: s.budget });
        }
        let v = s.order[i];
        let mut total = 0;
        for x in 0..s.c.vertex_count() {
            if s.used[x] || s.c.degree(x) != s.c.degree(v) {
                continue;
            }
            let consistent = s.order[..i].iter().zip(&s.image).all(|(&u, &y)| s.c.has_edge(u, v) == s.c.has_edge(y, x));
            if !consistent {
                continue;
            }
            s.used[x] = true;
            s.image.push(x);
            let sub = go(s, i + 1, nodes);
            s.image.pop();
            s.used[x] = false;
            total += sub?;
        }
        Ok(total)
    }

    let mut state = State { c, order, image: Vec::with_capacity(n), used: vec![false; n], budget };
    go(&mut state, 0, nodes)
}

/// Size of the automorphism group of `h`.
///
/// Components are grouped into isomorphism classes; a class of `m` copies of
/// a component with `a` automorphisms contributes `a^m * m!`, and `k`
/// isolated vertices contribute `k!`. The node budget is shared by all
/// searches and exhausting it is an error.
pub fn automorphism_count(h: &Graph, budget: u64) -> Result<BigUint> {
    let mut isolated = 0;
    let mut classes: Vec<(Graph, usize)> = Vec::new();
    let mut nodes = 0u64;
    for comp in h.components() {
        if comp.len() == 1 {
            isolated += 1;
            continue;
        }
        let (c, _) = h.induced_subgraph(&comp)?;
        let mut placed = false;
        for (rep, m) in classes.iter_mut() {
            if isomorphic(rep, &c, budget)? {
                *m += 1;
                placed = true;
                break;
            }
        }
        if !placed {
            classes.push((c, 1));
        }
    }
    let mut total = factorial(isolated);
    for (rep, m) in &classes {
        let a = BigUint::from(connected_automorphisms(rep, budget, &mut nodes)?);
        total *= a.pow(*m as u32) * factorial(*m);
    }
    Ok(total)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, complete_bipartite, cycle, disjoint_triangles, grid, matching, path};
    use crate::oracle::{exact_embeddings, ORACLE_BUDGET};

    const BUDGET: u64 = 10_000_000;

    fn aut(h: &Graph) -> u64 {
        u64::try_from(automorphism_count(h, BUDGET).unwrap()).unwrap()
    }

    #[test]
    fn known_groups() {
        assert_eq!(aut(&cycle(4).unwrap()), 8);
        assert_eq!(aut(&path(2)), 2);
        assert_eq!(aut(&complete(4)), 24);
        assert_eq!(aut(&complete_bipartite(1, 4)), 24);
        assert_eq!(aut(&disjoint_triangles(2)), 72);
        assert_eq!(aut(&matching(3)), 48);
        assert_eq!(aut(&Graph::empty(5)), 120);
        assert_eq!(aut(&path(1).with_isolated(2)), 4);
        assert_eq!(aut(&grid(3, 3)), 8);
        assert_eq!(aut(&Graph::empty(0)), 1);
    }

    #[test]
    fn agrees_with_oracle_on_all_small_graphs() {
        for n in 1..=5usize {
            let pairs: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).collect();
            for mask in 0u32..(1 << pairs.len()) {
                let g =
                    Graph::from_edges(n, pairs.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &e)| e))
                        .unwrap();
                let a = automorphism_count(&g, BUDGET).unwrap();
                assert_eq!(a, exact_embeddings(&g, &g, ORACLE_BUDGET).unwrap());
                // aut divides the labelled embeddings into K_n.
                let l = exact_embeddings(&g, &complete(n), ORACLE_BUDGET).unwrap();
                assert_eq!(&l % &a, 0u32.into());
            }
        }
    }

    #[test]
    fn budget_is_an_error() {
        assert!(matches!(automorphism_count(&complete(7), 5), Err(Error::BudgetExhausted { budget: 5 })));
    }
}
