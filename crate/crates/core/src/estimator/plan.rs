use num_bigint::BigUint;

use super::automorphism::automorphism_count;
use super::stage::{Group, StageProblem};
use crate::decomposers::decompose_auto;
use crate::decomposition::{verify, Decomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;

/// Node budget for automorphism counting when a plan is built.
pub const AUT_BUDGET: u64 = 50_000_000;

/// Template vertices of one part sharing the same anchors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanGroup {
    pub anchors: Vec<usize>,
    pub members: Vec<usize>,
}

/// One stage: the vertices placed together, grouped by anchor set.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PlanStage {
    pub groups: Vec<PlanGroup>,
}

/// Everything a trial needs about the template: the stage sequence over its
/// non-isolated vertices and its automorphism count.
///
/// Isolated template vertices never constrain anything. Padding the
/// template with isolated vertices up to the size of the base adds a final
/// stage whose count is `k!` for `k` padding vertices, and multiplies the
/// automorphism count by the same `k!`, so that stage is dropped and the
/// automorphisms are those of the non-isolated part. The estimate is
/// therefore the number of copies of the template padded to the size of the
/// base, which is the number of copies of its non-isolated part.
#[derive(Clone, Debug)]
pub struct Plan {
    template: Graph,
    stages: Vec<PlanStage>,
    aut: BigUint,
    triangles: Vec<[usize; 3]>,
}

impl Plan {
    /// Builds the plan for `h` from a decomposition of the vertices outside
    /// `triangles`, each of which must be a triangle component of `h`. The
    /// triangles are placed vertex by vertex after the decomposed part.
    pub fn new(h: &Graph, d: &Decomposition, triangles: &[[usize; 3]]) -> Result<Plan> {
        let n = h.vertex_count();
        let mut in_triangle = vec![false; n];
        for t in triangles {
            h.check_vertices(t)?;
            let [a, b, c] = *t;
            let is_component =
                h.has_edge(a, b) && h.has_edge(b, c) && h.has_edge(a, c) && t.iter().all(|&v| h.degree(v) == 2);
            if !is_component {
                return Err(Error::UnsupportedShape(format!("{t:?} is not a triangle component")));
            }
            for &v in t {
                if std::mem::replace(&mut in_triangle[v], true) {
                    return Err(Error::UnsupportedShape(format!("vertex {v} is listed in two triangles")));
                }
            }
        }
        let rest: Vec<usize> = (0..n).filter(|&v| !in_triangle[v]).collect();
        let (rest_graph, map) = h.induced_subgraph(&rest)?;
        for part in d.parts() {
            h.check_vertices(part)?;
        }
        if d.parts().iter().flatten().any(|&v| in_triangle[v]) {
            return Err(Error::Structural("decomposition covers a triangle vertex".into()));
        }
        let local = d.map_vertices(|v| map[v].expect("checked above"));
        let report = verify(&rest_graph, &local)?;
        if !report.valid {
            return Err(Error::InvalidDecomposition(Box::new(report)));
        }

        let mut stage_of = vec![usize::MAX; n];
        let mut stages = Vec::new();
        for part in d.parts() {
            let part: Vec<usize> = part.iter().copied().filter(|&v| h.degree(v) > 0).collect();
            if part.is_empty() {
                continue;
            }
            let index = stages.len();
            let mut groups: Vec<PlanGroup> = Vec::new();
            for &v in &part {
                let anchors: Vec<usize> = h.adjacent(v).iter().copied().filter(|&u| stage_of[u] < index).collect();
                match groups.iter_mut().find(|g| g.anchors == anchors) {
                    Some(g) => g.members.push(v),
                    None => groups.push(PlanGroup { anchors, members: vec![v] }),
                }
            }
            for &v in &part {
                stage_of[v] = index;
            }
            stages.push(PlanStage { groups });
        }
        for &[a, b, c] in triangles {
            for (v, anchors) in [(a, vec![]), (b, vec![a]), (c, vec![a, b])] {
                stages.push(PlanStage { groups: vec![PlanGroup { anchors, members: vec![v] }] });
            }
        }
        let core: Vec<usize> = (0..n).filter(|&v| h.degree(v) > 0).collect();
        let (core_graph, _) = h.induced_subgraph(&core)?;
        Ok(Plan {
            template: h.clone(),
            stages,
            aut: automorphism_count(&core_graph, AUT_BUDGET)?,
            triangles: triangles.to_vec(),
        })
    }

    /// Decomposes `h` with [`decompose_auto`] and builds the plan, handling
    /// triangle components through the triangle extension.
    pub fn auto(h: &Graph) -> Result<Plan> {
        let auto = decompose_auto(h, None)?;
        Plan::new(h, &auto.decomposition, &auto.triangles)
    }

    pub fn template(&self) -> &Graph {
        &self.template
    }

    pub fn stages(&self) -> &[PlanStage] {
        &self.stages
    }

    /// Automorphisms of the non-isolated part of the template.
    pub fn aut(&self) -> &BigUint {
        &self.aut
    }

    pub fn triangles(&self) -> &[[usize; 3]] {
        &self.triangles
    }

    pub(crate) fn check_base(&self, g: &Graph) -> Result<()> {
        if g.vertex_count() < self.template.vertex_count() {
            return Err(Error::Parameter(format!(
                "base graph has {} vertices, fewer than the template's {}",
                g.vertex_count(),
                self.template.vertex_count()
            )));
        }
        Ok(())
    }
}

/// Partial embedding built up stage by stage during a trial.
pub(crate) struct Embedding<'a> {
    g: &'a Graph,
    phi: Vec<usize>,
    marked: Vec<bool>,
}

impl<'a> Embedding<'a> {
    pub fn new(template_vertices: usize, g: &'a Graph) -> Self {
        Embedding { g, phi: vec![usize::MAX; template_vertices], marked: vec![false; g.vertex_count()] }
    }

    /// Placements of `stage` consistent with the current partial embedding:
    /// each vertex goes to an unmarked base vertex adjacent to the images of
    /// all its anchors.
    pub fn problem(&self, stage: &PlanStage) -> Result<StageProblem> {
        let groups = stage
            .groups
            .iter()
            .map(|pg| {
                let candidates: Vec<usize> = match pg.anchors.split_first() {
                    None => (0..self.g.vertex_count()).filter(|&x| !self.marked[x]).collect(),
                    Some((&first, rest)) => self
                        .g
                        .adjacent(self.phi[first])
                        .iter()
                        .copied()
                        .filter(|&x| !self.marked[x] && rest.iter().all(|&u| self.g.has_edge(self.phi[u], x)))
                        .collect(),
                };
                Group { members: pg.members.clone(), candidates }
            })
            .collect();
        StageProblem::new(groups)
    }

    pub fn apply(&mut self, placement: &[(usize, usize)]) {
        for &(v, x) in placement {
            self.phi[v] = x;
            self.marked[x] = true;
        }
    }

    pub fn undo(&mut self, placement: &[(usize, usize)]) {
        for &(v, x) in placement {
            self.phi[v] = usize::MAX;
            self.marked[x] = false;
        }
    }

    /// Whether every template edge between placed vertices lands on a base
    /// edge.
    pub fn preserves_edges(&self, h: &Graph) -> bool {
        h.edges().all(|(u, v)| {
            self.phi[u] == usize::MAX || self.phi[v] == usize::MAX || self.g.has_edge(self.phi[u], self.phi[v])
        })
    }
}
