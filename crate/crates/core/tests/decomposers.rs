use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use obd::decomposers::{decompose_auto, decompose_tree};
use obd::generators::{cycle, grid, random_gnp, random_tree};
use obd::search::{exhaustive_min_width, MinWidth};
use obd::{read_graph, verify, width, Decomposition, Graph};

fn min_width(h: &Graph, cap: usize) -> Option<usize> {
    match exhaustive_min_width(h, cap, 50_000_000).unwrap() {
        MinWidth::Found { width, .. } => Some(width),
        MinWidth::NoDecomposition => None,
        MinWidth::Inconclusive { nodes } => panic!("search inconclusive after {nodes} nodes"),
    }
}

#[test]
fn tree_decompositions_are_never_below_the_optimum() {
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    for _ in 0..40 {
        let t = random_tree(9, 4, &mut rng).unwrap();
        let d = decompose_tree(&t, None).unwrap();
        let w = width(&t, &d).unwrap();
        let best = min_width(&t, w).expect("the decomposer's own width is feasible");
        assert!(best <= w);
        // Every vertex of degree k forces a stage with at least ceil(k / 2) edges.
        assert!(best >= t.max_degree().div_ceil(2));
    }
}

/// Minimum width over every ordered partition, by trying all labellings
/// of the vertices with part indices.
fn brute_min_width(h: &Graph) -> Option<usize> {
    let n = h.vertex_count();
    let mut best: Option<usize> = None;
    let mut label = vec![0usize; n];
    loop {
        let parts = label.iter().max().map_or(0, |&m| m + 1);
        let surjective = (0..parts).all(|p| label.contains(&p));
        let valid = surjective
            && h.edges().all(|(u, v)| label[u] != label[v])
            && (0..n).all(|v| {
                let mut later = h.adjacent(v).iter().map(|&u| label[u]).filter(|&p| p > label[v]);
                match later.next() {
                    Some(first) => later.all(|p| p == first),
                    None => true,
                }
            });
        if valid {
            let w =
                (0..parts).map(|p| h.edges().filter(|&(u, v)| label[u].max(label[v]) == p).count()).max().unwrap_or(0);
            best = Some(best.map_or(w, |b| b.min(w)));
        }
        let mut i = 0;
        while i < n && label[i] == n - 1 {
            label[i] = 0;
            i += 1;
        }
        if i == n {
            return best;
        }
        label[i] += 1;
    }
}

#[test]
fn exhaustive_search_matches_brute_force() {
    let mut graphs = vec![
        cycle(4).unwrap(),
        cycle(5).unwrap(),
        cycle(6).unwrap(),
        grid(2, 3),
        obd::generators::complete_bipartite(2, 3),
        obd::generators::complete(4),
    ];
    graphs.extend((0..12).map(|seed| random_gnp(6, 0.45, seed).unwrap()));
    for g in &graphs {
        assert_eq!(min_width(g, g.edge_count()), brute_min_width(g), "{g:?}");
    }
}

#[test]
fn text_round_trips() {
    let g = random_gnp(12, 0.3, 8).unwrap();
    assert_eq!(read_graph(&obd::write_graph(&g)).unwrap(), g);
    let d = Decomposition::new(vec![vec![0], vec![1, 3], vec![2]]).unwrap();
    assert_eq!(Decomposition::parse(&d.to_text()).unwrap(), d);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Whatever `decompose_auto` returns for a small random graph is valid.
    #[test]
    fn auto_output_verifies(n in 2usize..9, p in 0.1f64..0.6, seed in any::<u64>()) {
        let g = random_gnp(n, p, seed).unwrap();
        if let Ok(auto) = decompose_auto(&g, None) {
            let in_triangle: Vec<bool> = (0..n).map(|v| auto.triangles.iter().any(|t| t.contains(&v))).collect();
            let rest: Vec<usize> = (0..n).filter(|&v| !in_triangle[v]).collect();
            let (sub, map) = g.induced_subgraph(&rest).unwrap();
            let local = auto.decomposition.map_vertices(|v| map[v].unwrap());
            prop_assert!(verify(&sub, &local).unwrap().valid);
        }
    }
}
