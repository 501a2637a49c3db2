//! Series-parallel graphs without cycles of length 3 or 5.
//!
//! Graphs are given by an expression over two-terminal graphs:
//!
//! ```text
//! expr := e | S(expr, expr) | P(expr, expr)
//! ```
//!
//! `e` is a single edge from the source to the sink, `S(a, b)` glues the sink
//! of `a` to the source of `b`, and `P(a, b)` identifies both terminals.
//!
//! Vertex numbering: the source of the whole expression is 0 and its sink
//! is 1. The expression is then walked in preorder, left child first, and each
//! `S` node allocates the next free index for its joining vertex when it is
//! visited, before its children.

use std::fmt;

use super::checked;
use super::engine::Builder;
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;

const CLASS: &str = "series-parallel";

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum SpExpr {
    Edge,
    Series(Box<SpExpr>, Box<SpExpr>),
    Parallel(Box<SpExpr>, Box<SpExpr>),
}

impl SpExpr {
    pub fn series(a: SpExpr, b: SpExpr) -> SpExpr {
        SpExpr::Series(Box::new(a), Box::new(b))
    }

    pub fn parallel(a: SpExpr, b: SpExpr) -> SpExpr {
        SpExpr::Parallel(Box::new(a), Box::new(b))
    }

    pub fn parse(text: &str) -> Result<SpExpr> {
        let bytes: Vec<u8> = text.bytes().filter(|b| !b.is_ascii_whitespace()).collect();
        let mut at = 0;
        let expr = parse_expr(&bytes, &mut at)?;
        if at != bytes.len() {
            return Err(Error::Structural(format!("trailing input after position {at} of expression")));
        }
        Ok(expr)
    }

    /// Number of edges.
    pub fn edge_count(&self) -> usize {
        match self {
            SpExpr::Edge => 1,
            SpExpr::Series(a, b) | SpExpr::Parallel(a, b) => a.edge_count() + b.edge_count(),
        }
    }

    /// Number of vertices: the two terminals plus one per series node.
    pub fn vertex_count(&self) -> usize {
        fn joins(e: &SpExpr) -> usize {
            match e {
                SpExpr::Edge => 0,
                SpExpr::Series(a, b) => 1 + joins(a) + joins(b),
                SpExpr::Parallel(a, b) => joins(a) + joins(b),
            }
        }
        2 + joins(self)
    }

    /// Builds the graph under the documented numbering. Fails if a parallel
    /// composition duplicates an edge.
    pub fn build(&self) -> Result<Graph> {
        Ok(Tree::build(self)?.graph)
    }
}

fn parse_expr(s: &[u8], at: &mut usize) -> Result<SpExpr> {
    let err = |at: usize, what: &str| Error::Structural(format!("expected {what} at position {at} of expression"));
    match s.get(*at) {
        Some(b'e') => {
            *at += 1;
            Ok(SpExpr::Edge)
        }
        Some(&op @ (b'S' | b'P')) => {
            *at += 1;
            if s.get(*at) != Some(&b'(') {
                return Err(err(*at, "`(`"));
            }
            *at += 1;
            let a = parse_expr(s, at)?;
            if s.get(*at) != Some(&b',') {
                return Err(err(*at, "`,`"));
            }
            *at += 1;
            let b = parse_expr(s, at)?;
            if s.get(*at) != Some(&b')') {
                return Err(err(*at, "`)`"));
            }
            *at += 1;
            Ok(if op == b'S' { SpExpr::series(a, b) } else { SpExpr::parallel(a, b) })
        }
        _ => Err(err(*at, "`e`, `S(` or `P(`")),
    }
}

impl fmt::Display for SpExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpExpr::Edge => write!(f, "e"),
            SpExpr::Series(a, b) => write!(f, "S({a},{b})"),
            SpExpr::Parallel(a, b) => write!(f, "P({a},{b})"),
        }
    }
}

/// Summary used to build random instances: terminal degrees, the largest
/// degree of any vertex, and the set of source-sink path lengths up to 5 as a
/// bit mask.
#[derive(Clone, Copy, Debug)]
pub(crate) struct SpSummary {
    pub source_degree: usize,
    pub sink_degree: usize,
    pub max_degree: usize,
    pub short_paths: u8,
}

impl SpSummary {
    pub const EDGE: SpSummary = SpSummary { source_degree: 1, sink_degree: 1, max_degree: 1, short_paths: 1 << 1 };

    pub fn series(a: SpSummary, b: SpSummary) -> SpSummary {
        let mut short_paths = 0u8;
        for i in 1..=5 {
            for j in 1..=5 - i {
                if a.short_paths >> i & 1 == 1 && b.short_paths >> j & 1 == 1 {
                    short_paths |= 1 << (i + j);
                }
            }
        }
        SpSummary {
            source_degree: a.source_degree,
            sink_degree: b.sink_degree,
            max_degree: a.max_degree.max(b.max_degree).max(a.sink_degree + b.source_degree),
            short_paths,
        }
    }

    /// `None` if the composition would create a parallel edge or a cycle of
    /// length 3 or 5.
    pub fn parallel(a: SpSummary, b: SpSummary) -> Option<SpSummary> {
        for i in 1..=5 {
            for j in 1..=5 {
                if a.short_paths >> i & 1 == 1 && b.short_paths >> j & 1 == 1 && matches!(i + j, 2 | 3 | 5) {
                    return None;
                }
            }
        }
        let source_degree = a.source_degree + b.source_degree;
        let sink_degree = a.sink_degree + b.sink_degree;
        Some(SpSummary {
            source_degree,
            sink_degree,
            max_degree: a.max_degree.max(b.max_degree).max(source_degree).max(sink_degree),
            short_paths: a.short_paths | b.short_paths,
        })
    }
}

enum Kind {
    Edge,
    Series { left: usize, right: usize, join: usize },
    Parallel { left: usize, right: usize },
}

struct Node {
    kind: Kind,
    /// Every vertex of the node's subgraph, terminals included.
    vertices: Vec<usize>,
}

struct Tree {
    graph: Graph,
    nodes: Vec<Node>,
    root: usize,
}

impl Tree {
    fn build(expr: &SpExpr) -> Result<Tree> {
        let mut tree = Tree { graph: Graph::empty(expr.vertex_count()), nodes: Vec::new(), root: 0 };
        let mut next = 2;
        tree.root = tree.add(expr, 0, 1, &mut next)?;
        Ok(tree)
    }

    fn add(&mut self, expr: &SpExpr, s: usize, t: usize, next: &mut usize) -> Result<usize> {
        let node = match expr {
            SpExpr::Edge => {
                if self.graph.has_edge(s, t) {
                    return Err(Error::Structural(format!("expression repeats the edge ({s}, {t})")));
                }
                self.graph.add_edge(s, t)?;
                Node { kind: Kind::Edge, vertices: vec![s, t] }
            }
            SpExpr::Series(a, b) => {
                let join = *next;
                *next += 1;
                let left = self.add(a, s, join, next)?;
                let right = self.add(b, join, t, next)?;
                Node { kind: Kind::Series { left, right, join }, vertices: self.union(left, right) }
            }
            SpExpr::Parallel(a, b) => {
                let left = self.add(a, s, t, next)?;
                let right = self.add(b, s, t, next)?;
                Node { kind: Kind::Parallel { left, right }, vertices: self.union(left, right) }
            }
        };
        self.nodes.push(node);
        Ok(self.nodes.len() - 1)
    }

    fn union(&self, a: usize, b: usize) -> Vec<usize> {
        let mut v = [self.nodes[a].vertices.as_slice(), self.nodes[b].vertices.as_slice()].concat();
        v.sort_unstable();
        v.dedup();
        v
    }
}

/// Whether `g` has a cycle of length exactly `len`, by depth-bounded search
/// from each vertex over higher-indexed vertices.
fn has_cycle_of_length(g: &Graph, len: usize) -> bool {
    fn extend(g: &Graph, start: usize, path: &mut Vec<usize>, len: usize) -> bool {
        let last = *path.last().expect("path starts non-empty");
        if path.len() == len {
            return g.has_edge(last, start);
        }
        for &w in g.adjacent(last) {
            if w > start && !path.contains(&w) {
                path.push(w);
                if extend(g, start, path, len) {
                    return true;
                }
                path.pop();
            }
        }
        false
    }
    len >= 3 && (0..g.vertex_count()).any(|s| extend(g, s, &mut vec![s], len))
}

/// Decomposes the series-parallel graph described by `expr`; `h` must equal
/// the graph the expression builds. Width is at most `2 * maxdeg^2`.
pub fn decompose_series_parallel(h: &Graph, expr: &SpExpr) -> Result<Decomposition> {
    let tree = Tree::build(expr)?;
    if tree.graph != *h {
        return Err(Error::Structural("graph does not match the series-parallel expression".into()));
    }
    for len in [3, 5] {
        if has_cycle_of_length(h, len) {
            return Err(Error::class(CLASS, format!("the graph has a cycle of length {len}")));
        }
    }
    let mut b = Builder::new(h, CLASS);
    b.select([0])?;
    b.finish(0)?;
    if !b.is_selected(1) {
        b.select([1])?;
    }
    b.finish(1)?;
    schedule(&tree, tree.root, &mut b)?;
    let bound = 2 * h.max_degree() * h.max_degree();
    checked(CLASS, h, b.into_decomposition()?, bound)
}

/// Both terminals of `node` are finished on entry.
fn schedule(tree: &Tree, node: usize, b: &mut Builder<'_>) -> Result<()> {
    let n = &tree.nodes[node];
    if n.vertices.iter().all(|&v| b.is_selected(v)) {
        return Ok(());
    }
    match n.kind {
        Kind::Edge => Err(Error::Logic("edge node with unselected terminal".into())),
        Kind::Parallel { left, right } => {
            schedule(tree, left, b)?;
            schedule(tree, right, b)
        }
        Kind::Series { left, right, join } => {
            if !b.is_selected(join) {
                b.select([join])?;
            }
            b.finish(join)?;
            schedule(tree, left, b)?;
            schedule(tree, right, b)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::width;
    use crate::generators::random_series_parallel;
    use itertools::Itertools;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn sp(text: &str) -> (Graph, SpExpr) {
        let e = SpExpr::parse(text).unwrap();
        (e.build().unwrap(), e)
    }

    #[test]
    fn parse_and_display() {
        let e = SpExpr::parse(" P( S(e, e) , S(e,e) ) ").unwrap();
        assert_eq!(e.to_string(), "P(S(e,e),S(e,e))");
        assert_eq!(e.edge_count(), 4);
        assert_eq!(e.vertex_count(), 4);
        for bad in ["", "S(e)", "P(e,e", "e e", "Q(e,e)", "S(e,e))"] {
            assert!(SpExpr::parse(bad).is_err(), "{bad}");
        }
    }

    #[test]
    fn numbering() {
        let (g, _) = sp("S(e,S(e,e))");
        // 0 -2- ... : S allocates 2, inner S allocates 3.
        assert_eq!(g.edges().collect::<Vec<_>>(), vec![(0, 2), (1, 3), (2, 3)]);
        assert!(SpExpr::parse("P(e,e)").unwrap().build().is_err());
    }

    #[test]
    fn base_case_and_four_cycle() {
        let (g, e) = sp("e");
        let d = decompose_series_parallel(&g, &e).unwrap();
        assert_eq!(d.parts(), &[vec![0], vec![1]]);
        assert_eq!(width(&g, &d).unwrap(), 1);
        let (g, e) = sp("P(S(e,e),S(e,e))");
        decompose_series_parallel(&g, &e).unwrap();
    }

    #[test]
    fn theta_graph() {
        let (g, e) = sp("P(P(S(e,S(e,e)),S(e,S(e,e))),S(e,S(e,e)))");
        assert_eq!(g.girth(), Some(6));
        assert_eq!(g.max_degree(), 3);
        let d = decompose_series_parallel(&g, &e).unwrap();
        assert!(width(&g, &d).unwrap() <= 18);
    }

    #[test]
    fn rejections() {
        let (g, e) = sp("P(e,S(e,e))");
        assert!(matches!(decompose_series_parallel(&g, &e), Err(Error::ClassValidation { .. })));
        let (g, e) = sp("P(S(e,e),S(e,S(e,e)))");
        assert!(matches!(decompose_series_parallel(&g, &e), Err(Error::ClassValidation { .. })));
        let (g, _) = sp("S(e,e)");
        let other = SpExpr::parse("S(e,S(e,e))").unwrap();
        assert!(matches!(decompose_series_parallel(&g, &other), Err(Error::Structural(_))));
    }

    fn brute_force_cycle(g: &Graph, len: usize) -> bool {
        (0..g.vertex_count()).permutations(len).any(|c| (0..len).all(|i| g.has_edge(c[i], c[(i + 1) % len])))
    }

    #[test]
    fn cycle_search_matches_brute_force() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..300 {
            let n = 4 + (rand::Rng::gen_range(&mut rng, 0..7usize));
            let p = rand::Rng::gen_range(&mut rng, 0.1..0.6);
            let g = crate::generators::random_gnp(n, p, rand::Rng::gen(&mut rng)).unwrap();
            for len in [3, 4, 5] {
                assert_eq!(has_cycle_of_length(&g, len), brute_force_cycle(&g, len), "{g:?} {len}");
            }
        }
    }

    #[test]
    fn random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..200 {
            let e = random_series_parallel(80, 6, &mut rng);
            let g = e.build().unwrap();
            let d = decompose_series_parallel(&g, &e).unwrap();
            let dm = g.max_degree();
            assert!(width(&g, &d).unwrap() <= 2 * dm * dm, "{e}");
        }
    }
}
