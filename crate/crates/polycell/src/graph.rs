//! Directed graph substrate: vertices, edges, flows, travels and flux.

use crate::error::Error;

pub type VertexId = usize;
pub type EdgeId = usize;

/// A simple directed graph with dense integer identifiers.
///
/// Simplicity (no loops, no duplicate pairs, no anti-parallel pairs) is not
/// enforced on construction; `validate` on the enclosing polycell reports
/// violations instead.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedGraph {
    vertices: Vec<VertexId>,
    edges: Vec<(VertexId, VertexId)>,
}

impl DirectedGraph {
    pub fn new(mut vertices: Vec<VertexId>, edges: Vec<(VertexId, VertexId)>) -> Self {
        vertices.sort_unstable();
        vertices.dedup();
        DirectedGraph { vertices, edges }
    }

    pub fn vertices(&self) -> &[VertexId] {
        &self.vertices
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> Option<(VertexId, VertexId)> {
        self.edges.get(e).copied()
    }

    pub fn vertex_count(&self) -> usize {
        self.vertices.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn contains_vertex(&self, v: VertexId) -> bool {
        self.vertices.binary_search(&v).is_ok()
    }

    /// One past the largest vertex id, for array-backed vertex maps.
    pub fn vertex_bound(&self) -> usize {
        self.vertices.last().map_or(0, |v| v + 1)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StepDir {
    Forward,
    Backward,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Step {
    pub edge: EdgeId,
    pub dir: StepDir,
}

impl Step {
    pub fn forward(edge: EdgeId) -> Self {
        Step { edge, dir: StepDir::Forward }
    }

    pub fn backward(edge: EdgeId) -> Self {
        Step { edge, dir: StepDir::Backward }
    }
}

/// An undirected walk remembering, for each step, whether the underlying
/// directed edge is crossed along or against its orientation.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct Travel {
    steps: Vec<Step>,
}

impl Travel {
    pub fn new(steps: Vec<Step>) -> Self {
        Travel { steps }
    }

    pub fn steps(&self) -> &[Step] {
        &self.steps
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Start and end vertex of the walk, or `None` when consecutive steps do
    /// not chain or an edge id is unknown.
    pub fn endpoints(&self, g: &DirectedGraph) -> Option<(VertexId, VertexId)> {
        let mut it = self.steps.iter();
        let first = it.next()?;
        let (start, mut at) = oriented(g, first)?;
        for step in it {
            let (from, to) = oriented(g, step)?;
            if from != at {
                return None;
            }
            at = to;
        }
        Some((start, at))
    }

    pub fn is_closed(&self, g: &DirectedGraph) -> bool {
        matches!(self.endpoints(g), Some((s, t)) if s == t)
    }

    /// Concatenation; the caller is responsible for the endpoints matching.
    pub fn concat(&self, other: &Travel) -> Travel {
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Travel { steps }
    }

    pub fn reversed(&self) -> Travel {
        let steps = self
            .steps
            .iter()
            .rev()
            .map(|s| Step {
                edge: s.edge,
                dir: match s.dir {
                    StepDir::Forward => StepDir::Backward,
                    StepDir::Backward => StepDir::Forward,
                },
            })
            .collect();
        Travel { steps }
    }
}

fn oriented(g: &DirectedGraph, step: &Step) -> Option<(VertexId, VertexId)> {
    let (s, t) = g.edge(step.edge)?;
    Some(match step.dir {
        StepDir::Forward => (s, t),
        StepDir::Backward => (t, s),
    })
}

/// An integer labeling of every edge, indexed by edge id.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Flow {
    values: Vec<i64>,
}

impl Flow {
    pub fn new(values: Vec<i64>) -> Self {
        Flow { values }
    }

    pub fn constant(len: usize, value: i64) -> Self {
        Flow { values: vec![value; len] }
    }

    pub fn get(&self, e: EdgeId) -> Option<i64> {
        self.values.get(e).copied()
    }

    pub fn set(&mut self, e: EdgeId, value: i64) {
        self.values[e] = value;
    }

    pub fn len(&self) -> usize {
        self.values.len()
    }

    pub fn is_empty(&self) -> bool {
        self.values.is_empty()
    }

    pub fn values(&self) -> &[i64] {
        &self.values
    }
}

/// Sum of the flow over forward steps minus the sum over backward steps.
pub fn flux(flow: &Flow, travel: &Travel) -> Result<i64, Error> {
    let mut total = 0i64;
    for step in travel.steps() {
        let v = flow.get(step.edge).ok_or(Error::UnknownEdge(step.edge))?;
        match step.dir {
            StepDir::Forward => total += v,
            StepDir::Backward => total -= v,
        }
    }
    Ok(total)
}
