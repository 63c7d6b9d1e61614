//! Polycells: sets of cells (elementary directed circuits) with a
//! distinguished boundary edge set and base vertex, plus the structural
//! predicates (validity, balanced boundary, tension, contractibility).

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::graph::{DirectedGraph, EdgeId, Flow, StepDir, VertexId};
use crate::linalg;

/// An elementary directed circuit, stored as its edge ids in circuit order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cell {
    edges: Vec<EdgeId>,
}

impl Cell {
    pub fn new(edges: Vec<EdgeId>) -> Self {
        Cell { edges }
    }

    pub fn edges(&self) -> &[EdgeId] {
        &self.edges
    }

    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.edges.contains(&e)
    }
}

/// For an interior edge, the set of all cells containing it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tile {
    pub anchor: EdgeId,
    pub cells: Vec<usize>,
}

/// The region to tile: a directed graph, a set of cells, a boundary edge set
/// and a distinguished base vertex on the boundary.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Polycell {
    graph: DirectedGraph,
    cells: Vec<Cell>,
    k: usize,
    boundary: BTreeSet<EdgeId>,
    nu: VertexId,
    // derived, fixed at construction
    edge_cells: Vec<Vec<usize>>,
    incident: Vec<Vec<(EdgeId, StepDir)>>,
    boundary_vertices: BTreeSet<VertexId>,
}

impl Polycell {
    pub fn new(
        graph: DirectedGraph,
        cells: Vec<Cell>,
        k: usize,
        boundary: BTreeSet<EdgeId>,
        nu: VertexId,
    ) -> Self {
        let mut bound = graph.vertex_bound();
        for &(s, t) in graph.edges() {
            bound = bound.max(s + 1).max(t + 1);
        }
        let mut edge_cells = vec![Vec::new(); graph.edge_count()];
        for (ci, cell) in cells.iter().enumerate() {
            for &e in cell.edges() {
                if let Some(list) = edge_cells.get_mut(e) {
                    list.push(ci);
                }
            }
        }
        let mut incident = vec![Vec::new(); bound];
        for (e, &(s, t)) in graph.edges().iter().enumerate() {
            incident[s].push((e, StepDir::Forward));
            if t != s {
                incident[t].push((e, StepDir::Backward));
            }
        }
        let mut boundary_vertices = BTreeSet::new();
        for &e in &boundary {
            if let Some((s, t)) = graph.edge(e) {
                boundary_vertices.insert(s);
                boundary_vertices.insert(t);
            }
        }
        Polycell { graph, cells, k, boundary, nu, edge_cells, incident, boundary_vertices }
    }

    pub fn graph(&self) -> &DirectedGraph {
        &self.graph
    }

    pub fn cells(&self) -> &[Cell] {
        &self.cells
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn boundary(&self) -> &BTreeSet<EdgeId> {
        &self.boundary
    }

    pub fn nu(&self) -> VertexId {
        self.nu
    }

    pub fn is_boundary_edge(&self, e: EdgeId) -> bool {
        self.boundary.contains(&e)
    }

    pub fn is_boundary_vertex(&self, v: VertexId) -> bool {
        self.boundary_vertices.contains(&v)
    }

    pub fn boundary_vertices(&self) -> &BTreeSet<VertexId> {
        &self.boundary_vertices
    }

    pub fn interior_edges(&self) -> impl Iterator<Item = EdgeId> + '_ {
        (0..self.graph.edge_count()).filter(|e| !self.boundary.contains(e))
    }

    /// Cells containing the given edge.
    pub fn cells_of_edge(&self, e: EdgeId) -> &[usize] {
        self.edge_cells.get(e).map_or(&[], Vec::as_slice)
    }

    /// Incident edges of a vertex: `(edge, Forward)` when outgoing.
    pub fn incident_edges(&self, v: VertexId) -> &[(EdgeId, StepDir)] {
        self.incident.get(v).map_or(&[], Vec::as_slice)
    }

    /// Vertices incident to at least one edge, ascending.
    pub fn used_vertices(&self) -> Vec<VertexId> {
        let mut set = BTreeSet::new();
        for &(s, t) in self.graph.edges() {
            set.insert(s);
            set.insert(t);
        }
        set.into_iter().collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum Violation {
    LoopEdge { edge: EdgeId },
    DuplicateEdgePair { first: EdgeId, second: EdgeId },
    AntiParallelEdgePair { first: EdgeId, second: EdgeId },
    DanglingEdgeVertex { edge: EdgeId, vertex: VertexId },
    UnknownCellEdge { cell: usize, edge: EdgeId },
    CellNotCircuit { cell: usize },
    CellNotElementary { cell: usize },
    CellWrongLength { cell: usize, len: usize, k: usize },
    RegularityTooSmall { k: usize },
    UnknownBoundaryEdge { edge: EdgeId },
    BoundaryEdgeNotInCell { edge: EdgeId },
    NuNotOnBoundary { vertex: VertexId },
    CellsShareMultipleEdges { first: usize, second: usize },
    EdgeInNoCell { edge: EdgeId },
    DisconnectedEdgeGraph,
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::LoopEdge { edge } => write!(f, "edge {edge} is a loop"),
            Violation::DuplicateEdgePair { first, second } => {
                write!(f, "edges {first} and {second} duplicate the same vertex pair")
            }
            Violation::AntiParallelEdgePair { first, second } => {
                write!(f, "edges {first} and {second} are anti-parallel")
            }
            Violation::DanglingEdgeVertex { edge, vertex } => {
                write!(f, "edge {edge} references undeclared vertex {vertex}")
            }
            Violation::UnknownCellEdge { cell, edge } => {
                write!(f, "cell {cell} references unknown edge {edge}")
            }
            Violation::CellNotCircuit { cell } => {
                write!(f, "cell {cell} is not a directed circuit")
            }
            Violation::CellNotElementary { cell } => {
                write!(f, "cell {cell} is not an elementary circuit")
            }
            Violation::CellWrongLength { cell, len, k } => {
                write!(f, "cell {cell} has length {len}, expected {k}")
            }
            Violation::RegularityTooSmall { k } => write!(f, "regularity k = {k} is below 2"),
            Violation::UnknownBoundaryEdge { edge } => {
                write!(f, "boundary references unknown edge {edge}")
            }
            Violation::BoundaryEdgeNotInCell { edge } => {
                write!(f, "boundary edge {edge} belongs to no cell")
            }
            Violation::NuNotOnBoundary { vertex } => {
                write!(f, "base vertex {vertex} is not an endpoint of a boundary edge")
            }
            Violation::CellsShareMultipleEdges { first, second } => {
                write!(f, "cells {first} and {second} share more than one edge")
            }
            Violation::EdgeInNoCell { edge } => write!(f, "edge {edge} belongs to no cell"),
            Violation::DisconnectedEdgeGraph => {
                write!(f, "the undirected edge graph is not connected")
            }
        }
    }
}

/// Violations are data, not failures: an empty violation list means valid.
/// Notes carry informational findings that are not validity requirements.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
    pub notes: Vec<String>,
}

impl ValidationReport {
    pub fn is_valid(&self) -> bool {
        self.violations.is_empty()
    }
}

impl fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for v in &self.violations {
            writeln!(f, "violation: {v}")?;
        }
        for n in &self.notes {
            writeln!(f, "note: {n}")?;
        }
        Ok(())
    }
}

/// Check every structural invariant and report each violation with its
/// offending identifiers.
pub fn validate(p: &Polycell) -> ValidationReport {
    let mut report = ValidationReport::default();
    let g = p.graph();
    let rep = &mut report.violations;

    if p.k() < 2 {
        rep.push(Violation::RegularityTooSmall { k: p.k() });
    }

    // graph simplicity
    let mut seen: BTreeMap<(VertexId, VertexId), EdgeId> = BTreeMap::new();
    for (e, &(s, t)) in g.edges().iter().enumerate() {
        if s == t {
            rep.push(Violation::LoopEdge { edge: e });
        }
        for v in [s, t] {
            if !g.contains_vertex(v) {
                rep.push(Violation::DanglingEdgeVertex { edge: e, vertex: v });
            }
        }
        if let Some(&first) = seen.get(&(s, t)) {
            rep.push(Violation::DuplicateEdgePair { first, second: e });
        } else if let Some(&first) = seen.get(&(t, s)) {
            rep.push(Violation::AntiParallelEdgePair { first, second: e });
        }
        seen.entry((s, t)).or_insert(e);
    }

    // cells are elementary circuits of length k
    for (ci, cell) in p.cells().iter().enumerate() {
        let mut ok = true;
        for &e in cell.edges() {
            if g.edge(e).is_none() {
                rep.push(Violation::UnknownCellEdge { cell: ci, edge: e });
                ok = false;
            }
        }
        if !ok {
            continue;
        }
        if cell.len() != p.k() {
            rep.push(Violation::CellWrongLength { cell: ci, len: cell.len(), k: p.k() });
        }
        let n = cell.len();
        let mut circuit = n > 0;
        for i in 0..n {
            let (_, t) = g.edge(cell.edges()[i]).unwrap();
            let (s_next, _) = g.edge(cell.edges()[(i + 1) % n]).unwrap();
            if t != s_next {
                circuit = false;
            }
        }
        if !circuit {
            rep.push(Violation::CellNotCircuit { cell: ci });
        } else {
            let mut sources = BTreeSet::new();
            let elementary = cell.edges().iter().all(|&e| sources.insert(g.edge(e).unwrap().0));
            if !elementary {
                rep.push(Violation::CellNotElementary { cell: ci });
            }
        }
    }

    // boundary edges exist and belong to some cell
    for &e in p.boundary() {
        if g.edge(e).is_none() {
            rep.push(Violation::UnknownBoundaryEdge { edge: e });
        } else if p.cells_of_edge(e).is_empty() {
            rep.push(Violation::BoundaryEdgeNotInCell { edge: e });
        }
    }

    // every edge must come from a cell
    for e in 0..g.edge_count() {
        if p.cells_of_edge(e).is_empty() && !p.boundary().contains(&e) {
            rep.push(Violation::EdgeInNoCell { edge: e });
        }
    }

    // nu on the boundary (vacuous for the empty polycell)
    if (g.edge_count() > 0 || !p.cells().is_empty()) && !p.is_boundary_vertex(p.nu()) {
        rep.push(Violation::NuNotOnBoundary { vertex: p.nu() });
    }

    // any two distinct cells share at most one interior edge; a shared
    // boundary edge on top of that is harmless since tiles are labeled by
    // interior edges only
    let mut shared: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    for e in 0..g.edge_count() {
        if p.is_boundary_edge(e) {
            continue;
        }
        let cs = p.cells_of_edge(e);
        for i in 0..cs.len() {
            for j in i + 1..cs.len() {
                let key = (cs[i].min(cs[j]), cs[i].max(cs[j]));
                *shared.entry(key).or_insert(0) += 1;
            }
        }
    }
    for (&(a, b), &count) in &shared {
        if count > 1 {
            rep.push(Violation::CellsShareMultipleEdges { first: a, second: b });
        }
    }

    // connected undirected edge graph (declared isolated vertices count too)
    if !is_connected(p) {
        rep.push(Violation::DisconnectedEdgeGraph);
    }

    if report.is_valid() && !p.cells().is_empty() && cells_span_cycle_space(p) {
        let z = cell_lattice_z_spans(p);
        report.notes.push(format!("cell lattice Z-spans the integer cycle lattice: {z}"));
    }

    report
}

fn is_connected(p: &Polycell) -> bool {
    let g = p.graph();
    if g.vertex_count() <= 1 {
        return true;
    }
    let start = g.vertices()[0];
    let mut seen = BTreeSet::new();
    seen.insert(start);
    let mut queue = VecDeque::from([start]);
    while let Some(v) = queue.pop_front() {
        for &(e, _) in p.incident_edges(v) {
            let (s, t) = g.edge(e).unwrap();
            let w = if s == v { t } else { s };
            if seen.insert(w) {
                queue.push_back(w);
            }
        }
    }
    g.vertices().iter().all(|v| seen.contains(v))
}

/// Potential propagation over a subset of edges: breadth-first from each
/// component root in ascending vertex-id then edge-id order. Returns the
/// potentials and the first edge whose value contradicts them, if any.
pub(crate) fn propagate_potential<F>(
    p: &Polycell,
    edges: &BTreeSet<EdgeId>,
    value: F,
    preferred_root: Option<VertexId>,
) -> (BTreeMap<VertexId, i64>, Option<EdgeId>)
where
    F: Fn(EdgeId) -> i64,
{
    let g = p.graph();
    let mut touched: BTreeSet<VertexId> = BTreeSet::new();
    for &e in edges {
        if let Some((s, t)) = g.edge(e) {
            touched.insert(s);
            touched.insert(t);
        }
    }
    let mut pot: BTreeMap<VertexId, i64> = BTreeMap::new();
    let mut conflict = None;
    let roots: Vec<VertexId> = match preferred_root {
        Some(r) if touched.contains(&r) => std::iter::once(r)
            .chain(touched.iter().copied().filter(|&v| v != r))
            .collect(),
        _ => touched.iter().copied().collect(),
    };
    for root in roots {
        if pot.contains_key(&root) {
            continue;
        }
        pot.insert(root, 0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let pv = pot[&v];
            for &(e, dir) in p.incident_edges(v) {
                if !edges.contains(&e) {
                    continue;
                }
                let (s, t) = g.edge(e).unwrap();
                let w = if s == v { t } else { s };
                let pw = match dir {
                    StepDir::Forward => pv + value(e),
                    StepDir::Backward => pv - value(e),
                };
                match pot.get(&w) {
                    None => {
                        pot.insert(w, pw);
                        queue.push_back(w);
                    }
                    Some(&existing) => {
                        if existing != pw && conflict.is_none() {
                            conflict = Some(e);
                        }
                    }
                }
            }
        }
    }
    (pot, conflict)
}

/// Every closed travel along boundary edges has flux 0 under the all-ones
/// flow, checked via potential propagation over the boundary subgraph.
pub fn is_balanced_boundary(p: &Polycell) -> bool {
    let (_, conflict) = propagate_potential(p, p.boundary(), |_| 1, Some(p.nu()));
    conflict.is_none()
}

/// Whether the flow has zero flux on every closed travel of the polycell.
///
/// The flow must be total on the edges of `p`.
pub fn is_tension(p: &Polycell, flow: &Flow) -> bool {
    debug_assert!(flow.len() >= p.graph().edge_count(), "flow not total on the edge set");
    let all: BTreeSet<EdgeId> = (0..p.graph().edge_count()).collect();
    let (_, conflict) = propagate_potential(p, &all, |e| flow.get(e).unwrap_or(0), Some(p.nu()));
    conflict.is_none()
}

fn cell_matrix(p: &Polycell) -> Vec<Vec<BigInt>> {
    let ne = p.graph().edge_count();
    p.cells()
        .iter()
        .map(|cell| {
            let mut row = vec![BigInt::zero(); ne];
            for &e in cell.edges() {
                row[e] = BigInt::one();
            }
            row
        })
        .collect()
}

fn cycle_space_dimension(p: &Polycell) -> usize {
    let used = p.used_vertices();
    if used.is_empty() {
        return 0;
    }
    // component count of the undirected edge graph restricted to used vertices
    let mut seen: BTreeSet<VertexId> = BTreeSet::new();
    let mut components = 0;
    for &root in &used {
        if seen.contains(&root) {
            continue;
        }
        components += 1;
        seen.insert(root);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            for &(e, _) in p.incident_edges(v) {
                let (s, t) = p.graph().edge(e).unwrap();
                let w = if s == v { t } else { s };
                if seen.insert(w) {
                    queue.push_back(w);
                }
            }
        }
    }
    p.graph().edge_count() + components - used.len()
}

pub(crate) fn cells_span_cycle_space(p: &Polycell) -> bool {
    linalg::rational_rank(cell_matrix(p)) == cycle_space_dimension(p)
}

/// Balanced boundary, and the cell circuits span the cycle space over the
/// rationals (exact fraction-free rank, no floating point).
pub fn is_contractible(p: &Polycell) -> bool {
    is_balanced_boundary(p) && cells_span_cycle_space(p)
}

/// Fundamental cycles of a deterministic spanning forest, as signed edge
/// vectors (+1 when the tree path crosses an edge forward).
fn fundamental_cycles(p: &Polycell) -> Vec<Vec<BigInt>> {
    let g = p.graph();
    let ne = g.edge_count();
    let used = p.used_vertices();
    // parent[v] = (edge, dir from parent to v)
    let mut parent: BTreeMap<VertexId, (EdgeId, StepDir)> = BTreeMap::new();
    let mut depth: BTreeMap<VertexId, usize> = BTreeMap::new();
    let mut tree_edges: BTreeSet<EdgeId> = BTreeSet::new();
    for &root in &used {
        if depth.contains_key(&root) {
            continue;
        }
        depth.insert(root, 0);
        let mut queue = VecDeque::from([root]);
        while let Some(v) = queue.pop_front() {
            let dv = depth[&v];
            for &(e, dir) in p.incident_edges(v) {
                let (s, t) = g.edge(e).unwrap();
                let w = if s == v { t } else { s };
                if let std::collections::btree_map::Entry::Vacant(slot) = depth.entry(w) {
                    slot.insert(dv + 1);
                    parent.insert(w, (e, dir));
                    tree_edges.insert(e);
                    queue.push_back(w);
                }
            }
        }
    }
    let mut cycles = Vec::new();
    for e in 0..ne {
        if tree_edges.contains(&e) {
            continue;
        }
        let (s, t) = g.edge(e).unwrap();
        let mut row = vec![BigInt::zero(); ne];
        row[e] = BigInt::one();
        // walk t up and s up to their common ancestor, closing the circuit
        let (mut a, mut b) = (t, s);
        // sign convention: the cycle runs s -> t via e, then t -> s in the tree
        while a != b {
            let (da, db) = (depth[&a], depth[&b]);
            if da >= db {
                let (pe, dir) = parent[&a];
                // dir is parent->a; walking a->parent crosses it reversed
                row[pe] += match dir {
                    StepDir::Forward => -BigInt::one(),
                    StepDir::Backward => BigInt::one(),
                };
                let (ps, pt) = g.edge(pe).unwrap();
                a = if pt == a { ps } else { pt };
            } else {
                let (pe, dir) = parent[&b];
                // walking parent->b is the tail of the t -> s path
                row[pe] += match dir {
                    StepDir::Forward => BigInt::one(),
                    StepDir::Backward => -BigInt::one(),
                };
                let (ps, pt) = g.edge(pe).unwrap();
                b = if pt == b { ps } else { pt };
            }
        }
        cycles.push(row);
    }
    cycles
}

/// Whether the cell circuits generate the full integer cycle lattice, not
/// just its rational span. Informational: contractibility uses the rational
/// rank only.
pub fn cell_lattice_z_spans(p: &Polycell) -> bool {
    if !cells_span_cycle_space(p) {
        return false;
    }
    let basis = linalg::hermite_basis(cell_matrix(p));
    fundamental_cycles(p).iter().all(|c| linalg::lattice_contains(&basis, c))
}

/// One tile per interior edge.
pub fn tiles(p: &Polycell) -> Vec<Tile> {
    p.interior_edges()
        .map(|e| Tile { anchor: e, cells: p.cells_of_edge(e).to_vec() })
        .collect()
}
