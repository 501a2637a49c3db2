//! Planar graphs of girth at least 16.
//!
//! The vertices are first peeled into a sequence of sets, each either a
//! vertex of degree at most one or a 3-thread (three consecutive vertices of
//! degree two) in the graph left after removing the earlier sets. The
//! decomposition then runs the peeling backwards: it always grows from the
//! latest-peeled unselected vertex that touches the selected region.
//! Planarity is not checked; a failure to find a 3-thread is reported as a
//! precondition error.

use std::collections::BTreeSet;

use super::checked;
use super::engine::Builder;
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;

const CLASS: &str = "planar16";

/// Smallest girth accepted by [`thread_partition`] and [`decompose_planar16`].
pub const PLANAR_MIN_GIRTH: usize = 16;

/// Sets `X_1, ..., X_c` produced by [`thread_partition`], in peeling order.
/// Each set is a single vertex or a 3-thread `[a, b, c]` listed along the
/// thread.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ThreadPartition {
    pub sets: Vec<Vec<usize>>,
}

fn check_girth(h: &Graph) -> Result<()> {
    match h.girth() {
        Some(g) if g < PLANAR_MIN_GIRTH => Err(Error::class(CLASS, format!("girth {g} is below {PLANAR_MIN_GIRTH}"))),
        _ => Ok(()),
    }
}

/// Greedy peeling: remove the lowest-index vertex of residual degree at most
/// one if there is one, otherwise the first 3-thread found scanning middle
/// vertices in index order.
pub fn thread_partition(h: &Graph) -> Result<ThreadPartition> {
    check_girth(h)?;
    let n = h.vertex_count();
    let mut removed = vec![false; n];
    let mut degree: Vec<usize> = (0..n).map(|v| h.degree(v)).collect();
    let mut sets = Vec::new();
    let mut left = n;
    while left > 0 {
        let set = if let Some(v) = (0..n).find(|&v| !removed[v] && degree[v] <= 1) {
            vec![v]
        } else {
            let live = |v: usize| h.adjacent(v).iter().copied().filter(|&w| !removed[w]);
            (0..n)
                .filter(|&b| !removed[b] && degree[b] == 2)
                .find_map(|b| {
                    let (a, c) = {
                        let mut it = live(b);
                        (it.next()?, it.next()?)
                    };
                    (degree[a] == 2 && degree[c] == 2).then_some(vec![a, b, c])
                })
                .ok_or_else(|| {
                    Error::class(
                        CLASS,
                        "residual graph has minimum degree 2 but no 3-thread; the input is not planar with girth >= 16",
                    )
                })?
        };
        for &v in &set {
            removed[v] = true;
            left -= 1;
            for &w in h.adjacent(v) {
                degree[w] -= 1;
            }
        }
        sets.push(set);
    }
    Ok(ThreadPartition { sets })
}

/// Decomposes a connected planar graph of girth at least 16. Width is at
/// most twice the maximum degree.
pub fn decompose_planar16(h: &Graph) -> Result<Decomposition> {
    let n = h.vertex_count();
    if n == 0 || !h.is_connected() {
        return Err(Error::class(CLASS, "expected a non-empty connected graph"));
    }
    let partition = thread_partition(h)?;
    let mut set_of = vec![0; n];
    for (l, set) in partition.sets.iter().enumerate() {
        for &v in set {
            set_of[v] = l;
        }
    }
    let last = partition.sets.last().expect("non-empty graph");
    let mut b = Builder::new(h, CLASS);
    b.select([*last.iter().min().expect("sets are non-empty")])?;
    while !b.all_selected() {
        let z = (0..n)
            .filter(|&z| !b.is_selected(z) && h.adjacent(z).iter().any(|&u| b.is_selected(u)))
            .max_by(|&x, &y| set_of[x].cmp(&set_of[y]).then(y.cmp(&x)))
            .expect("connected graph grows from the selected region");
        let anchors: Vec<usize> = h.adjacent(z).iter().copied().filter(|&u| b.is_selected(u)).collect();
        let seed: Vec<usize> = anchors.iter().flat_map(|&u| b.unselected_neighbors(u)).collect();
        let part = b.select(seed)?.expect("z is unselected");
        let stage_anchors: BTreeSet<usize> = part
            .iter()
            .flat_map(|&v| h.adjacent(v).iter().copied())
            .filter(|&u| b.stage_of(u).is_some_and(|s| s + 1 < b.stage_count()))
            .collect();
        if stage_anchors.len() > 2 {
            return Err(Error::TheoremViolation(format!(
                "planar stage {} has {} anchors",
                b.stage_count(),
                stage_anchors.len()
            )));
        }
    }
    checked(CLASS, h, b.into_decomposition()?, 2 * h.max_degree())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::width;
    use crate::generators::{complete, cycle, random_planar16, random_tree, subdivide};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    /// Recomputes residual degrees from scratch for each emitted set.
    fn assert_literal(h: &Graph, p: &ThreadPartition) {
        let n = h.vertex_count();
        let mut removed = vec![false; n];
        for set in &p.sets {
            let deg = |v: usize| h.adjacent(v).iter().filter(|&&w| !removed[w]).count();
            match set[..] {
                [v] => assert!(!removed[v] && deg(v) <= 1),
                [a, b, c] => {
                    assert!(h.has_edge(a, b) && h.has_edge(b, c));
                    for v in [a, b, c] {
                        assert!(!removed[v] && deg(v) == 2);
                    }
                }
                _ => panic!("bad set {set:?}"),
            }
            for &v in set {
                removed[v] = true;
            }
        }
        assert!(removed.iter().all(|&r| r));
    }

    #[test]
    fn sixteen_cycle() {
        let c16 = cycle(16).unwrap();
        let p = thread_partition(&c16).unwrap();
        assert_literal(&c16, &p);
        assert_eq!(p.sets[0], vec![1, 0, 15]);
        // Removing one thread leaves a path, which peels from its ends.
        assert_eq!(p.sets.len(), 14);
        let d = decompose_planar16(&c16).unwrap();
        assert!(width(&c16, &d).unwrap() <= 4);
    }

    #[test]
    fn trees_peel_into_singletons() {
        let mut rng = ChaCha8Rng::seed_from_u64(2);
        for _ in 0..20 {
            let t = random_tree(50, 4, &mut rng).unwrap();
            let p = thread_partition(&t).unwrap();
            assert_literal(&t, &p);
            assert!(p.sets.iter().all(|s| s.len() == 1));
            let d = decompose_planar16(&t).unwrap();
            assert!(width(&t, &d).unwrap() <= 2 * t.max_degree());
        }
    }

    #[test]
    fn subdivided_k4() {
        let (g, _) = subdivide(&complete(4), &[5; 6]).unwrap();
        assert!(g.girth().unwrap() >= 18);
        let p = thread_partition(&g).unwrap();
        assert_literal(&g, &p);
        assert_eq!(p.sets[0].len(), 3);
        let d = decompose_planar16(&g).unwrap();
        assert!(width(&g, &d).unwrap() <= 6);
    }

    #[test]
    fn rejects_short_girth() {
        assert!(matches!(thread_partition(&cycle(15).unwrap()), Err(Error::ClassValidation { .. })));
        assert!(decompose_planar16(&Graph::empty(2)).is_err());
    }

    #[test]
    fn random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        for _ in 0..100 {
            let g = random_planar16(200, 4, &mut rng).unwrap();
            let p = thread_partition(&g).unwrap();
            assert_literal(&g, &p);
            let d = decompose_planar16(&g).unwrap();
            assert!(width(&g, &d).unwrap() <= 2 * g.max_degree());
        }
    }
}
