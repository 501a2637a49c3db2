//! Deterministic graph families and seeded random graphs.
//!
//! Vertex numbering is fixed per family:
//!
//! * `path(k)`: vertices `0..=k` in path order (`k` edges).
//! * `cycle(k)`: vertices `0..k` in cyclic order.
//! * `grid(rows, cols)`: vertex `(i, j)` is `i * cols + j` (row-major).
//! * `complete_bipartite(a, b)`: one side `0..a`, the other `a..a + b`.
//!
//! The `random_*` class generators feed property tests and the acceptance
//! suite; each returns whatever structure the matching decomposer needs.

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::decomposers::{SpExpr, SpSummary};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// The path with `k` edges on vertices `0..=k`.
pub fn path(k: usize) -> Graph {
    Graph::from_edges(k + 1, (1..=k).map(|v| (v - 1, v))).expect("path edges are simple")
}

/// The cycle on `k >= 3` vertices.
pub fn cycle(k: usize) -> Result<Graph> {
    if k < 3 {
        return Err(Error::Parameter(format!("a cycle needs at least 3 vertices, got {k}")));
    }
    Graph::from_edges(k, (0..k).map(|v| (v, (v + 1) % k)))
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).expect("complete graph edges are simple")
}

pub fn grid(rows: usize, cols: usize) -> Graph {
    let id = |i: usize, j: usize| i * cols + j;
    let mut edges = Vec::new();
    for i in 0..rows {
        for j in 0..cols {
            if j + 1 < cols {
                edges.push((id(i, j), id(i, j + 1)));
            }
            if i + 1 < rows {
                edges.push((id(i, j), id(i + 1, j)));
            }
        }
    }
    Graph::from_edges(rows * cols, edges).expect("grid edges are simple")
}

pub fn complete_bipartite(a: usize, b: usize) -> Graph {
    Graph::from_edges(a + b, (0..a).flat_map(|u| (a..a + b).map(move |v| (u, v)))).expect("bipartite edges are simple")
}

/// `k` vertex-disjoint edges on `2k` vertices, edge `i` being `(2i, 2i + 1)`.
pub fn matching(k: usize) -> Graph {
    Graph::from_edges(2 * k, (0..k).map(|i| (2 * i, 2 * i + 1))).expect("matching is simple")
}

/// `k` vertex-disjoint triangles, triangle `i` on `3i, 3i + 1, 3i + 2`.
pub fn disjoint_triangles(k: usize) -> Graph {
    Graph::from_edges(3 * k, (0..k).flat_map(|i| [(3 * i, 3 * i + 1), (3 * i + 1, 3 * i + 2), (3 * i, 3 * i + 2)]))
        .expect("triangles are simple")
}

/// Erdős–Rényi `G(n, p)`.
///
/// Pairs `(u, v)`, `u < v`, are visited in lexicographic order and each one
/// consumes exactly one uniform draw from a ChaCha stream keyed by `seed`, so
/// the graph is a pure function of `(n, p, seed)`.
pub fn random_gnp(n: usize, p: f64, seed: u64) -> Result<Graph> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Parameter(format!("edge probability {p} outside [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut g = Graph::empty(n);
    for u in 0..n {
        for v in u + 1..n {
            let draw: f64 = rng.gen();
            if draw < p {
                g.add_edge(u, v)?;
            }
        }
    }
    Ok(g)
}

/// A random labelled tree on `n` vertices with maximum degree at most
/// `max_degree` (which must be at least 2 when `n > 2`).
///
/// Vertices are attached one at a time to a uniformly chosen earlier vertex
/// that still has spare degree; the labels are then shuffled.
pub fn random_tree<R: Rng + ?Sized>(n: usize, max_degree: usize, rng: &mut R) -> Result<Graph> {
    if n > 2 && max_degree < 2 {
        return Err(Error::Parameter("trees on more than 2 vertices need max degree >= 2".into()));
    }
    let mut labels: Vec<usize> = (0..n).collect();
    labels.shuffle(rng);
    let mut degree = vec![0usize; n];
    let mut open: Vec<usize> = Vec::new();
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 0..n {
        if v > 0 {
            let slot = rng.gen_range(0..open.len());
            let u = open[slot];
            edges.push((labels[u], labels[v]));
            degree[u] += 1;
            degree[v] += 1;
            if degree[u] >= max_degree {
                open.swap_remove(slot);
            }
        }
        if degree[v] < max_degree {
            open.push(v);
        }
    }
    Graph::from_edges(n, edges)
}

/// Replaces the `i`-th edge of `f` (in [`Graph::edges`] order) by a path
/// through `counts[i]` new vertices. The original vertices keep their
/// indices and are returned as the branch set.
pub fn subdivide(f: &Graph, counts: &[usize]) -> Result<(Graph, Vec<usize>)> {
    if counts.len() != f.edge_count() {
        return Err(Error::Parameter(format!("{} subdivision counts for {} edges", counts.len(), f.edge_count())));
    }
    let mut next = f.vertex_count();
    let mut edges = Vec::new();
    for ((u, v), &k) in f.edges().zip(counts) {
        let mut prev = u;
        for _ in 0..k {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
        edges.push((prev, v));
    }
    Ok((Graph::from_edges(next, edges)?, (0..f.vertex_count()).collect()))
}

/// Applies a uniformly random relabelling; returns the graph and the map
/// from old to new labels.
fn shuffle_labels<R: Rng + ?Sized>(g: &Graph, rng: &mut R) -> (Graph, Vec<usize>) {
    let mut perm: Vec<usize> = (0..g.vertex_count()).collect();
    perm.shuffle(rng);
    (g.relabel(&perm).expect("a shuffle is a permutation"), perm)
}

/// Random graph on `n` vertices with maximum degree at most `max_degree`,
/// built by proposing `2n` uniform pairs.
fn random_bounded_graph<R: Rng + ?Sized>(n: usize, max_degree: usize, rng: &mut R) -> Graph {
    let mut g = Graph::empty(n);
    if n < 2 {
        return g;
    }
    for _ in 0..2 * n {
        let u = rng.gen_range(0..n);
        let v = rng.gen_range(0..n);
        if u != v && !g.has_edge(u, v) && g.degree(u) < max_degree && g.degree(v) < max_degree {
            g.add_edge(u, v).expect("checked simple");
        }
    }
    g
}

/// Random subdivision: a random graph `F` on `branch` vertices with maximum
/// degree at most `max_degree`, each edge replaced by a path through
/// `1..=max_inner` new vertices, randomly relabelled. Returns the graph and
/// its branch vertices.
pub fn random_subdivision<R: Rng + ?Sized>(
    branch: usize,
    max_degree: usize,
    max_inner: usize,
    rng: &mut R,
) -> Result<(Graph, Vec<usize>)> {
    if max_inner == 0 {
        return Err(Error::Parameter("subdivision paths need at least one inner vertex".into()));
    }
    let f = random_bounded_graph(branch, max_degree, rng);
    let counts: Vec<usize> = (0..f.edge_count()).map(|_| rng.gen_range(1..=max_inner)).collect();
    let (g, marked) = subdivide(&f, &counts)?;
    let (g, perm) = shuffle_labels(&g, rng);
    let mut marked: Vec<usize> = marked.into_iter().map(|v| perm[v]).collect();
    marked.sort_unstable();
    Ok((g, marked))
}

/// Random triangle-free outerplanar graph on `n >= 4` vertices with maximum
/// degree at most `max_degree >= 2`: the face cycle plus random
/// non-crossing chords that close no triangle, with a few edges then
/// deleted, randomly relabelled. Returns the graph and its face order.
pub fn random_outerplanar<R: Rng + ?Sized>(n: usize, max_degree: usize, rng: &mut R) -> Result<(Graph, Vec<usize>)> {
    if n < 4 || max_degree < 2 {
        return Err(Error::Parameter("need n >= 4 and max degree >= 2".into()));
    }
    let mut g = cycle(n)?;
    let crosses = |a: usize, b: usize, c: usize, d: usize| {
        // Chords (a, b) and (c, d) with a < b, c < d cross iff exactly one of
        // c, d lies strictly between a and b, and they share no endpoint.
        let inside = |x: usize| a < x && x < b;
        a != c && a != d && b != c && b != d && (inside(c) != inside(d))
    };
    for _ in 0..n {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        let (a, b) = (a.min(b), a.max(b));
        if b < a + 2 || (a == 0 && b == n - 1) || g.has_edge(a, b) {
            continue;
        }
        if g.degree(a) >= max_degree || g.degree(b) >= max_degree {
            continue;
        }
        if g.adjacent(a).iter().any(|&w| g.has_edge(w, b)) {
            continue;
        }
        if g.edges().any(|(c, d)| crosses(a, b, c, d)) {
            continue;
        }
        g.add_edge(a, b)?;
    }
    let kept: Vec<(usize, usize)> = g.edges().filter(|_| !rng.gen_bool(0.1)).collect();
    let g = Graph::from_edges(n, kept)?;
    let (g, perm) = shuffle_labels(&g, rng);
    let face = perm;
    Ok((g, face))
}

/// Random series-parallel expression with `edges` edges whose graph has
/// maximum degree at most `max_degree >= 2` and no cycle of length 3 or 5.
///
/// Subexpressions are generated bottom-up and combined in parallel when
/// that keeps the graph admissible, otherwise in series; if neither works
/// the subexpression becomes a path.
pub fn random_series_parallel<R: Rng + ?Sized>(edges: usize, max_degree: usize, rng: &mut R) -> SpExpr {
    fn chain(m: usize) -> (SpExpr, SpSummary) {
        let mut e = (SpExpr::Edge, SpSummary::EDGE);
        for _ in 1..m {
            e = (SpExpr::series(SpExpr::Edge, e.0), SpSummary::series(SpSummary::EDGE, e.1));
        }
        e
    }
    fn gen<R: Rng + ?Sized>(m: usize, max_degree: usize, rng: &mut R) -> (SpExpr, SpSummary) {
        if m <= 1 {
            return (SpExpr::Edge, SpSummary::EDGE);
        }
        let split = rng.gen_range(1..m);
        let (ea, sa) = gen(split, max_degree, rng);
        let (eb, sb) = gen(m - split, max_degree, rng);
        if rng.gen_bool(0.6) {
            if let Some(s) = SpSummary::parallel(sa, sb).filter(|s| s.max_degree <= max_degree) {
                return (SpExpr::parallel(ea, eb), s);
            }
        }
        let s = SpSummary::series(sa, sb);
        if s.max_degree <= max_degree {
            return (SpExpr::series(ea, eb), s);
        }
        chain(m)
    }
    gen(edges.max(1), max_degree.max(2), rng).0
}

/// Random connected planar graph of girth at least 16 with at most
/// `max_vertices >= 16` vertices: either a random tree of maximum degree
/// `max_degree`, or a random connected spanning subgraph of a small grid
/// with every edge subdivided by three or four vertices. Randomly relabelled.
pub fn random_planar16<R: Rng + ?Sized>(max_vertices: usize, max_degree: usize, rng: &mut R) -> Result<Graph> {
    if max_vertices < 16 || max_degree < 2 {
        return Err(Error::Parameter("need max_vertices >= 16 and max_degree >= 2".into()));
    }
    if rng.gen_bool(0.25) {
        let n = rng.gen_range(1..=max_vertices);
        return random_tree(n, max_degree, rng);
    }
    loop {
        let rows = rng.gen_range(2..=5);
        let cols = rng.gen_range(2..=5);
        let base = grid(rows, cols);
        // Random spanning tree by union-find over shuffled edges, then extra
        // edges with probability one half.
        let mut all: Vec<(usize, usize)> = base.edges().collect();
        all.shuffle(rng);
        let mut root: Vec<usize> = (0..base.vertex_count()).collect();
        fn find(root: &mut [usize], mut v: usize) -> usize {
            while root[v] != v {
                root[v] = root[root[v]];
                v = root[v];
            }
            v
        }
        let mut chosen = Vec::new();
        for (u, v) in all {
            let (ru, rv) = (find(&mut root, u), find(&mut root, v));
            if ru != rv {
                root[ru] = rv;
                chosen.push((u, v));
            } else if rng.gen_bool(0.5) {
                chosen.push((u, v));
            }
        }
        let f = Graph::from_edges(base.vertex_count(), chosen)?;
        if f.max_degree() > max_degree {
            continue;
        }
        let counts: Vec<usize> = (0..f.edge_count()).map(|_| rng.gen_range(3..=4)).collect();
        let (g, _) = subdivide(&f, &counts)?;
        if g.vertex_count() <= max_vertices {
            return Ok(shuffle_labels(&g, rng).0);
        }
    }
}
