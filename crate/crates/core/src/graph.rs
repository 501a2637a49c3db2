//! Undirected simple graphs over dense vertex indices `0..n`.

use std::collections::VecDeque;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// An undirected simple graph.
///
/// Vertices are the integers `0..n`. Adjacency lists are kept sorted, so two
/// graphs compare equal exactly when they have the same vertex count and the
/// same edge set.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    edge_count: usize,
}

impl Graph {
    /// The edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Self {
        Graph { adj: vec![Vec::new(); n], edge_count: 0 }
    }

    /// Builds a graph from an edge list, rejecting self-loops, repeated
    /// pairs and out-of-range endpoints.
    pub fn from_edges<I>(n: usize, edges: I) -> Result<Self>
    where
        I: IntoIterator<Item = (usize, usize)>,
    {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub(crate) fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.vertex_count();
        for w in [u, v] {
            if w >= n {
                return Err(Error::InvalidVertex { vertex: w, vertex_count: n });
            }
        }
        if u == v {
            return Err(Error::Structural(format!("self-loop at vertex {u}")));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::Structural(format!("duplicate edge ({u}, {v})"))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.edge_count += 1;
                Ok(())
            }
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    /// Sorted neighbour list of `v`. Panics if `v` is out of range.
    pub fn adjacent(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.adj.len() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as pairs `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj.iter().enumerate().flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    pub fn isolated_vertices(&self) -> Vec<usize> {
        (0..self.vertex_count()).filter(|&v| self.adj[v].is_empty()).collect()
    }

    pub(crate) fn check_vertices(&self, s: &[usize]) -> Result<()> {
        let n = self.vertex_count();
        match s.iter().find(|&&v| v >= n) {
            Some(&vertex) => Err(Error::InvalidVertex { vertex, vertex_count: n }),
            None => Ok(()),
        }
    }

    /// The neighbourhood of `s`: vertices outside `s` adjacent to some vertex
    /// of `s`, sorted and deduplicated.
    pub fn neighbors(&self, s: &[usize]) -> Result<Vec<usize>> {
        self.check_vertices(s)?;
        let mut in_s = vec![false; self.vertex_count()];
        for &v in s {
            in_s[v] = true;
        }
        let mut seen = vec![false; self.vertex_count()];
        let mut out = Vec::new();
        for &v in s {
            for &w in &self.adj[v] {
                if !in_s[w] && !seen[w] {
                    seen[w] = true;
                    out.push(w);
                }
            }
        }
        out.sort_unstable();
        Ok(out)
    }

    /// The subgraph induced by `s`, with vertices renumbered in the order
    /// they appear in `s`. The second component maps old indices to new ones.
    pub fn induced_subgraph(&self, s: &[usize]) -> Result<(Graph, Vec<Option<usize>>)> {
        self.check_vertices(s)?;
        let mut map = vec![None; self.vertex_count()];
        for (i, &v) in s.iter().enumerate() {
            if map[v].is_some() {
                return Err(Error::Structural(format!("vertex {v} repeated in set")));
            }
            map[v] = Some(i);
        }
        let mut sub = Graph::empty(s.len());
        for (i, &v) in s.iter().enumerate() {
            for &w in &self.adj[v] {
                if let Some(j) = map[w] {
                    if i < j {
                        sub.add_edge(i, j)?;
                    }
                }
            }
        }
        Ok((sub, map))
    }

    /// Connected components, each sorted, ordered by their lowest vertex.
    pub fn components(&self) -> Vec<Vec<usize>> {
        let n = self.vertex_count();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for root in 0..n {
            if seen[root] {
                continue;
            }
            seen[root] = true;
            let mut comp = vec![root];
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.components().len() <= 1
    }

    pub fn is_independent(&self, s: &[usize]) -> bool {
        s.iter().enumerate().all(|(i, &u)| s[i + 1..].iter().all(|&v| !self.has_edge(u, v)))
    }

    /// Length of a shortest cycle, or `None` for a forest.
    pub fn girth(&self) -> Option<usize> {
        let n = self.vertex_count();
        let mut best: Option<usize> = None;
        let mut dist = vec![usize::MAX; n];
        let mut parent = vec![usize::MAX; n];
        for root in 0..n {
            dist.iter_mut().for_each(|d| *d = usize::MAX);
            dist[root] = 0;
            parent[root] = usize::MAX;
            let mut queue = VecDeque::from([root]);
            while let Some(v) = queue.pop_front() {
                if best.is_some_and(|b| 2 * dist[v] + 1 >= b) {
                    break;
                }
                for &w in &self.adj[v] {
                    if dist[w] == usize::MAX {
                        dist[w] = dist[v] + 1;
                        parent[w] = v;
                        queue.push_back(w);
                    } else if parent[v] != w {
                        let len = dist[v] + dist[w] + 1;
                        best = Some(best.map_or(len, |b| b.min(len)));
                    }
                }
            }
        }
        best
    }

    /// This graph with `k` isolated vertices appended.
    pub fn with_isolated(&self, k: usize) -> Graph {
        let mut g = self.clone();
        g.adj.extend(std::iter::repeat_with(Vec::new).take(k));
        g
    }

    /// Vertex-disjoint union; the vertices of `other` are shifted by
    /// `self.vertex_count()`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let off = self.vertex_count();
        let mut g = self.with_isolated(other.vertex_count());
        for (u, v) in other.edges() {
            g.add_edge(u + off, v + off).expect("shifted edges are fresh");
        }
        g
    }

    /// Renames vertex `v` to `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Result<Graph> {
        if perm.len() != self.vertex_count() {
            return Err(Error::Parameter(format!(
                "permutation of length {} for {} vertices",
                perm.len(),
                self.vertex_count()
            )));
        }
        Graph::from_edges(self.vertex_count(), self.edges().map(|(u, v)| (perm[u], perm[v])))
    }
}

/// Parses the edge-list text format.
///
/// The first non-comment line holds the vertex count `n`; every further
/// non-empty line holds one edge `u v`. Lines starting with `#` are comments.
pub fn read_graph(text: &str) -> Result<Graph> {
    let mut graph: Option<Graph> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let parse_err = |message: String| Error::Parse { line: line_no, message };
        let fields: Vec<&str> = line.split_whitespace().collect();
        match graph.as_mut() {
            None => {
                if fields.len() != 1 {
                    return Err(parse_err("expected the vertex count on its own line".into()));
                }
                let n = fields[0]
                    .parse::<usize>()
                    .map_err(|e| parse_err(format!("bad vertex count {:?}: {e}", fields[0])))?;
                graph = Some(Graph::empty(n));
            }
            Some(g) => {
                if fields.len() != 2 {
                    return Err(parse_err(format!("expected `u v`, found {line:?}")));
                }
                let mut ends = [0usize; 2];
                for (slot, f) in ends.iter_mut().zip(&fields) {
                    *slot = f.parse().map_err(|e| parse_err(format!("bad vertex {f:?}: {e}")))?;
                }
                g.add_edge(ends[0], ends[1]).map_err(|e| parse_err(e.to_string()))?;
            }
        }
    }
    graph.ok_or(Error::Parse { line: text.lines().count().max(1), message: "missing vertex count".into() })
}

/// Writes the canonical edge-list text: `n`, then edges `u v` with `u < v`
/// in lexicographic order.
pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{}\n", g.vertex_count());
    for (u, v) in g.edges() {
        let _ = writeln!(out, "{u} {v}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::generators::{complete, cycle, path};
    use proptest::prelude::*;

    #[test]
    fn neighbors_examples() {
        assert_eq!(path(2).neighbors(&[1]).unwrap(), vec![0, 2]);
        assert!(path(2).neighbors(&[]).unwrap().is_empty());
        assert_eq!(cycle(4).unwrap().neighbors(&[0, 2]).unwrap(), vec![1, 3]);
        assert!(matches!(path(2).neighbors(&[3]), Err(Error::InvalidVertex { vertex: 3, .. })));
    }

    #[test]
    fn induced_subgraph_examples() {
        let (tri, map) = complete(4).induced_subgraph(&[0, 2, 3]).unwrap();
        assert_eq!(tri, complete(3));
        assert_eq!(map, vec![Some(0), None, Some(1), Some(2)]);
        assert_eq!(complete(4).induced_subgraph(&[]).unwrap().0, Graph::empty(0));
        let (p, _) = cycle(4).unwrap().induced_subgraph(&[0, 1, 2]).unwrap();
        assert_eq!(p, path(2));
    }

    #[test]
    fn read_examples() {
        assert_eq!(read_graph("3\n0 1\n1 2\n").unwrap(), path(2));
        assert_eq!(read_graph("2\n").unwrap(), Graph::empty(2));
        assert_eq!(read_graph("# a comment\n3\n\n# another\n1 0\n").unwrap(), Graph::from_edges(3, [(0, 1)]).unwrap());
    }

    #[test]
    fn read_rejects_with_line_numbers() {
        let cases =
            [("3\n0 1\n1 0\n", 3), ("3\n0 0\n", 2), ("3\n0 3\n", 2), ("3\n0 1 2\n", 2), ("x\n", 1), ("3\n0 a\n", 2)];
        for (text, line) in cases {
            match read_graph(text) {
                Err(Error::Parse { line: l, .. }) => assert_eq!(l, line, "{text:?}"),
                other => panic!("{text:?}: {other:?}"),
            }
        }
        assert!(read_graph("# only a comment\n").is_err());
    }

    #[test]
    fn write_is_canonical() {
        let g = read_graph("4\n3 2\n0 3\n1 0\n").unwrap();
        assert_eq!(write_graph(&g), "4\n0 1\n0 3\n2 3\n");
    }

    #[test]
    fn girth_examples() {
        assert_eq!(path(5).girth(), None);
        assert_eq!(cycle(7).unwrap().girth(), Some(7));
        assert_eq!(complete(4).girth(), Some(3));
        assert_eq!(crate::generators::grid(3, 4).girth(), Some(4));
    }

    fn arb_graph() -> impl Strategy<Value = Graph> {
        (0usize..12).prop_flat_map(|n| {
            proptest::collection::vec(any::<bool>(), n * n.saturating_sub(1) / 2).prop_map(move |bits| {
                let pairs = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
                Graph::from_edges(n, pairs.zip(bits).filter(|(_, b)| *b).map(|(e, _)| e)).unwrap()
            })
        })
    }

    proptest! {
        #[test]
        fn handshake_and_symmetry(g in arb_graph()) {
            let total: usize = (0..g.vertex_count()).map(|v| g.degree(v)).sum();
            prop_assert_eq!(total, 2 * g.edge_count());
            for v in 0..g.vertex_count() {
                prop_assert_eq!(g.neighbors(&[v]).unwrap().len(), g.degree(v));
                for &w in g.adjacent(v) {
                    prop_assert!(g.has_edge(w, v));
                }
            }
        }

        #[test]
        fn text_round_trip(g in arb_graph()) {
            prop_assert_eq!(read_graph(&write_graph(&g)).unwrap(), g);
        }

        #[test]
        fn induced_on_everything_is_identity(g in arb_graph()) {
            let all: Vec<usize> = (0..g.vertex_count()).collect();
            let (sub, map) = g.induced_subgraph(&all).unwrap();
            prop_assert_eq!(&sub, &g);
            prop_assert!(map.iter().enumerate().all(|(i, m)| *m == Some(i)));
        }
    }
}
