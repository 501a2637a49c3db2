//! Stage-by-stage construction shared by the class decomposers.
//!
//! A vertex is *selected* once it belongs to a part and *finished* once all
//! its neighbours are selected. A selected vertex that is not finished is
//! *active*. Selecting any neighbour of an active vertex forces all of its
//! unselected neighbours into the same part, so [`Builder::select`] closes
//! the requested set under that rule before emitting a part. Every sequence
//! of parts produced this way satisfies the partition and single-later-part
//! properties by construction; independence is checked per part.

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;

pub(crate) struct Builder<'a> {
    g: &'a Graph,
    stage: Vec<Option<usize>>,
    /// Number of unselected neighbours of each vertex.
    open: Vec<usize>,
    parts: Vec<Vec<usize>>,
    class: &'static str,
}

impl<'a> Builder<'a> {
    pub fn new(g: &'a Graph, class: &'static str) -> Self {
        Builder {
            g,
            stage: vec![None; g.vertex_count()],
            open: (0..g.vertex_count()).map(|v| g.degree(v)).collect(),
            parts: Vec::new(),
            class,
        }
    }

    pub fn is_selected(&self, v: usize) -> bool {
        self.stage[v].is_some()
    }

    pub fn stage_of(&self, v: usize) -> Option<usize> {
        self.stage[v]
    }

    pub fn is_active(&self, v: usize) -> bool {
        self.stage[v].is_some() && self.open[v] > 0
    }

    pub fn is_finished(&self, v: usize) -> bool {
        self.stage[v].is_some() && self.open[v] == 0
    }

    pub fn all_selected(&self) -> bool {
        self.stage.iter().all(Option::is_some)
    }

    pub fn unselected_neighbors(&self, v: usize) -> impl Iterator<Item = usize> + '_ {
        self.g.adjacent(v).iter().copied().filter(|&w| self.stage[w].is_none())
    }

    pub fn stage_count(&self) -> usize {
        self.parts.len()
    }

    /// Emits one part containing the unselected vertices of `seed`, closed
    /// under the forcing rule. Returns the new part, or `None` when there was
    /// nothing left to select.
    pub fn select<I>(&mut self, seed: I) -> Result<Option<Vec<usize>>>
    where
        I: IntoIterator<Item = usize>,
    {
        let n = self.g.vertex_count();
        let mut in_part = vec![false; n];
        let mut part = Vec::new();
        for v in seed {
            if self.stage[v].is_none() && !in_part[v] {
                in_part[v] = true;
                part.push(v);
            }
        }
        let mut cursor = 0;
        while cursor < part.len() {
            let w = part[cursor];
            cursor += 1;
            for &u in self.g.adjacent(w) {
                if self.stage[u].is_none() {
                    continue;
                }
                for &x in self.g.adjacent(u) {
                    if self.stage[x].is_none() && !in_part[x] {
                        in_part[x] = true;
                        part.push(x);
                    }
                }
            }
        }
        if part.is_empty() {
            return Ok(None);
        }
        part.sort_unstable();
        if let Some((u, v)) =
            part.iter().flat_map(|&u| self.g.adjacent(u).iter().map(move |&v| (u, v))).find(|&(_, v)| in_part[v])
        {
            return Err(Error::class(self.class, format!("forced part contains the edge ({u}, {v})")));
        }
        let idx = self.parts.len();
        for &v in &part {
            self.stage[v] = Some(idx);
            for &w in self.g.adjacent(v) {
                self.open[w] -= 1;
            }
        }
        self.parts.push(part.clone());
        Ok(Some(part))
    }

    /// Selects every unselected neighbour of `v`.
    pub fn finish(&mut self, v: usize) -> Result<Option<Vec<usize>>> {
        let seed: Vec<usize> = self.unselected_neighbors(v).collect();
        self.select(seed)
    }

    pub fn into_decomposition(self) -> Result<Decomposition> {
        if let Some(v) = self.stage.iter().position(Option::is_none) {
            return Err(Error::Logic(format!("{} construction left vertex {v} unselected", self.class)));
        }
        Decomposition::new(self.parts)
    }
}
