//! Tilings, the tiling/tension bijection, and height functions.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;
use crate::graph::{EdgeId, Flow, VertexId};
use crate::polycell::{propagate_potential, Polycell};

/// A tiling, represented by its tiling edges: one interior edge per cell.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Tiling {
    edges: BTreeSet<EdgeId>,
}

impl Tiling {
    pub fn new(edges: BTreeSet<EdgeId>) -> Self {
        Tiling { edges }
    }

    pub fn edges(&self) -> &BTreeSet<EdgeId> {
        &self.edges
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }
}

impl FromIterator<EdgeId> for Tiling {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        Tiling { edges: iter.into_iter().collect() }
    }
}

/// Integer potential on vertices with base 0 at the distinguished vertex.
/// The domain may be partial (heights on the boundary only).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HeightFunction {
    heights: BTreeMap<VertexId, i64>,
    base: VertexId,
}

impl HeightFunction {
    pub fn new(heights: BTreeMap<VertexId, i64>, base: VertexId) -> Self {
        HeightFunction { heights, base }
    }

    pub fn base(&self) -> VertexId {
        self.base
    }

    pub fn get(&self, v: VertexId) -> Option<i64> {
        self.heights.get(&v).copied()
    }

    pub fn heights(&self) -> &BTreeMap<VertexId, i64> {
        &self.heights
    }

    pub fn sum(&self) -> i64 {
        self.heights.values().sum()
    }

    /// Restriction to a vertex subset.
    pub fn restricted_to(&self, domain: &BTreeSet<VertexId>) -> HeightFunction {
        HeightFunction {
            heights: self
                .heights
                .iter()
                .filter(|(v, _)| domain.contains(v))
                .map(|(&v, &h)| (v, h))
                .collect(),
            base: self.base,
        }
    }
}

/// True iff every tiling edge is interior and every cell contains exactly one
/// tiling edge.
pub fn is_valid_tiling(p: &Polycell, q: &Tiling) -> bool {
    if q.edges().iter().any(|&e| p.graph().edge(e).is_none() || p.is_boundary_edge(e)) {
        return false;
    }
    p.cells()
        .iter()
        .all(|cell| cell.edges().iter().filter(|&&e| q.contains(e)).count() == 1)
}

/// The tension of a tiling: value `1-k` on tiling edges, `1` elsewhere.
pub fn tiling_to_tension(p: &Polycell, q: &Tiling) -> Result<Flow, Error> {
    if !is_valid_tiling(p, q) {
        return Err(Error::InvalidTiling(describe_tiling_defect(p, q)));
    }
    let k = p.k() as i64;
    let values = (0..p.graph().edge_count())
        .map(|e| if q.contains(e) { 1 - k } else { 1 })
        .collect();
    Ok(Flow::new(values))
}

fn describe_tiling_defect(p: &Polycell, q: &Tiling) -> String {
    for &e in q.edges() {
        if p.graph().edge(e).is_none() {
            return format!("unknown edge {e}");
        }
        if p.is_boundary_edge(e) {
            return format!("tiling edge {e} is on the boundary");
        }
    }
    for (ci, cell) in p.cells().iter().enumerate() {
        let n = cell.edges().iter().filter(|&&e| q.contains(e)).count();
        if n == 0 {
            return format!("cell {ci} contains no tiling edge");
        }
        if n > 1 {
            return format!("cell {ci} contains {n} tiling edges");
        }
    }
    "unspecified defect".to_string()
}

/// Inverse of `tiling_to_tension`: the tiling whose edges are exactly the
/// negative edges of an admissible tension.
pub fn tension_to_tiling(p: &Polycell, flow: &Flow) -> Result<Tiling, Error> {
    let k = p.k() as i64;
    for e in 0..p.graph().edge_count() {
        let v = flow.get(e).ok_or(Error::UnknownEdge(e))?;
        if v != 1 && v != 1 - k {
            return Err(Error::BadTensionValue { edge: e, value: v });
        }
        if p.is_boundary_edge(e) && v != 1 {
            return Err(Error::BadBoundaryValue { edge: e, value: v });
        }
    }
    for (ci, cell) in p.cells().iter().enumerate() {
        let negatives = cell.edges().iter().filter(|&&e| flow.get(e) == Some(1 - k)).count();
        if negatives == 0 {
            return Err(Error::CellWithoutNegativeEdge { cell: ci });
        }
        if negatives > 1 {
            return Err(Error::CellWithExtraNegativeEdge { cell: ci });
        }
    }
    // no global zero-flux check: the cell fluxes vanish by construction
    // (1-k plus k-1 ones), which already forces a tension wherever the cells
    // span the cycle space
    Ok(Tiling::new(
        (0..p.graph().edge_count()).filter(|&e| flow.get(e) == Some(1 - k)).collect(),
    ))
}

/// Height function of a tiling: potentials from the base vertex accumulating
/// the tension values.
pub fn height_function(p: &Polycell, q: &Tiling) -> Result<HeightFunction, Error> {
    let flow = tiling_to_tension(p, q)?;
    heights_of_tension(p, &flow)
}

/// Potentials of an arbitrary admissible tension (shared with the flip and
/// sampling machinery, which work on tensions directly).
pub fn heights_of_tension(p: &Polycell, flow: &Flow) -> Result<HeightFunction, Error> {
    let all: BTreeSet<EdgeId> = (0..p.graph().edge_count()).collect();
    let (pot, conflict) = propagate_potential(p, &all, |e| flow.get(e).unwrap_or(0), Some(p.nu()));
    if let Some(edge) = conflict {
        return Err(Error::NotATension { edge });
    }
    Ok(HeightFunction::new(pot, p.nu()))
}

/// Heights of the boundary vertices, computed from the boundary edge
/// orientations alone; independent of any tiling.
pub fn height_on_boundary(p: &Polycell) -> Result<HeightFunction, Error> {
    // full means the undirected boundary is connected, so every boundary
    // vertex is reached from nu and based at height 0 there
    if !p.boundary_vertices().contains(&p.nu()) || !is_boundary_connected(p) {
        return Err(Error::NotFull);
    }
    if !crate::polycell::is_balanced_boundary(p) {
        return Err(Error::UnbalancedBoundary);
    }
    let (pot, _) = propagate_potential(p, p.boundary(), |_| 1, Some(p.nu()));
    Ok(HeightFunction::new(pot, p.nu()))
}

pub(crate) fn is_boundary_connected(p: &Polycell) -> bool {
    if p.boundary().is_empty() {
        return true;
    }
    let root = *p.boundary_vertices().iter().next().unwrap();
    let mut seen = BTreeSet::from([root]);
    let mut queue = std::collections::VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        for &(e, _) in p.incident_edges(v) {
            if !p.is_boundary_edge(e) {
                continue;
            }
            let (s, t) = p.graph().edge(e).unwrap();
            let w = if s == v { t } else { s };
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    seen.len() == p.boundary_vertices().len()
}
