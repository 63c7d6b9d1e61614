//! Reductions of concrete tiling problems to polycells: dominoes on
//! polyominoes (planar 2-dual-colorable case) and codimension-one rhombus
//! tilings in d dimensions, with decoders back to geometric placements.

use std::collections::{BTreeMap, BTreeSet};

use crate::error::Error;
use crate::graph::{DirectedGraph, EdgeId};
use crate::polycell::{Cell, Polycell};
use crate::tiling::{is_valid_tiling, Tiling};

pub const DEFAULT_MAX_DIMENSION: usize = 6;

/// A set of unit squares given by their (column, row) min-corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyominoRegion {
    squares: BTreeSet<(i64, i64)>,
}

impl PolyominoRegion {
    pub fn new(squares: BTreeSet<(i64, i64)>) -> Result<Self, Error> {
        if squares.is_empty() {
            return Err(Error::InvalidRegion("polyomino region is empty".into()));
        }
        Ok(PolyominoRegion { squares })
    }

    pub fn squares(&self) -> &BTreeSet<(i64, i64)> {
        &self.squares
    }

    pub fn len(&self) -> usize {
        self.squares.len()
    }

    pub fn is_empty(&self) -> bool {
        self.squares.is_empty()
    }
}

/// A set of unit hypercubes in Z^d given by their min-corners.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RhombusRegion {
    dimension: usize,
    hypercubes: BTreeSet<Vec<i64>>,
}

impl RhombusRegion {
    pub fn new(dimension: usize, hypercubes: BTreeSet<Vec<i64>>) -> Result<Self, Error> {
        if dimension < 2 {
            return Err(Error::InvalidRegion(format!(
                "rhombus dimension must be at least 2, got {dimension}"
            )));
        }
        if hypercubes.is_empty() {
            return Err(Error::InvalidRegion("rhombus region is empty".into()));
        }
        if let Some(bad) = hypercubes.iter().find(|p| p.len() != dimension) {
            return Err(Error::InvalidRegion(format!(
                "point {bad:?} does not have {dimension} coordinates"
            )));
        }
        Ok(RhombusRegion { dimension, hypercubes })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn hypercubes(&self) -> &BTreeSet<Vec<i64>> {
        &self.hypercubes
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub enum TileKind {
    DominoHorizontal,
    DominoVertical,
    /// The zonotope missing the alpha-th generator, 1 <= alpha <= d+1.
    Rhombus(usize),
}

impl std::fmt::Display for TileKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            TileKind::DominoHorizontal => write!(f, "domino-h"),
            TileKind::DominoVertical => write!(f, "domino-v"),
            TileKind::Rhombus(alpha) => write!(f, "rhombus-{alpha}"),
        }
    }
}

/// A geometric tile placement decoded from a tiling edge.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord)]
pub struct TilePlacement {
    pub kind: TileKind,
    pub position: Vec<i64>,
}

/// Assembles a polycell from geometric cells (circuits of lattice points),
/// assigning dense ids in sorted point order. An edge is on the boundary
/// when it belongs to fewer than `full_count` cells.
pub(crate) struct GeometricEncoding {
    pub point_ids: BTreeMap<Vec<i64>, usize>,
    pub polycell: Polycell,
}

pub(crate) fn build_from_circuits(
    circuits: &[Vec<Vec<i64>>],
    k: usize,
    full_count: usize,
) -> GeometricEncoding {
    let mut points: BTreeSet<Vec<i64>> = BTreeSet::new();
    for circuit in circuits {
        for pt in circuit {
            points.insert(pt.clone());
        }
    }
    let point_ids: BTreeMap<Vec<i64>, usize> =
        points.into_iter().enumerate().map(|(i, p)| (p, i)).collect();

    let mut pairs: BTreeSet<(usize, usize)> = BTreeSet::new();
    for circuit in circuits {
        let n = circuit.len();
        for i in 0..n {
            let s = point_ids[&circuit[i]];
            let t = point_ids[&circuit[(i + 1) % n]];
            pairs.insert((s, t));
        }
    }
    let edge_ids: BTreeMap<(usize, usize), EdgeId> =
        pairs.into_iter().enumerate().map(|(i, p)| (p, i)).collect();

    let edges: Vec<(usize, usize)> = {
        let mut v: Vec<((usize, usize), EdgeId)> =
            edge_ids.iter().map(|(&p, &i)| (p, i)).collect();
        v.sort_by_key(|&(_, i)| i);
        v.into_iter().map(|(p, _)| p).collect()
    };
    let vertices: Vec<usize> = (0..point_ids.len()).collect();
    let graph = DirectedGraph::new(vertices, edges);

    let cells: Vec<Cell> = circuits
        .iter()
        .map(|circuit| {
            let n = circuit.len();
            Cell::new(
                (0..n)
                    .map(|i| {
                        let s = point_ids[&circuit[i]];
                        let t = point_ids[&circuit[(i + 1) % n]];
                        edge_ids[&(s, t)]
                    })
                    .collect(),
            )
        })
        .collect();

    let mut cell_count = vec![0usize; graph.edge_count()];
    for cell in &cells {
        for &e in cell.edges() {
            cell_count[e] += 1;
        }
    }
    let boundary: BTreeSet<EdgeId> =
        (0..graph.edge_count()).filter(|&e| cell_count[e] < full_count).collect();

    let nu = boundary
        .iter()
        .flat_map(|&e| {
            let (s, t) = graph.edge(e).unwrap();
            [s, t]
        })
        .min()
        .unwrap_or(0);

    let polycell = Polycell::new(graph, cells, k, boundary, nu);
    GeometricEncoding { point_ids, polycell }
}

fn points_by_id(enc: &GeometricEncoding) -> Vec<Vec<i64>> {
    let mut points = vec![Vec::new(); enc.point_ids.len()];
    for (p, &i) in &enc.point_ids {
        points[i] = p.clone();
    }
    points
}

/// `encode_polyomino` plus the lattice point of every vertex id, for
/// geometric output such as rendering.
pub fn polyomino_geometry(region: &PolyominoRegion) -> (Polycell, Vec<Vec<i64>>) {
    let enc = build_from_circuits(&polyomino_circuits(region), 4, 2);
    let points = points_by_id(&enc);
    (enc.polycell, points)
}

/// `encode_rhombus` plus the lattice point of every vertex id.
pub fn rhombus_geometry(region: &RhombusRegion) -> Result<(Polycell, Vec<Vec<i64>>), Error> {
    let d = region.dimension();
    if d > DEFAULT_MAX_DIMENSION {
        return Err(Error::DimensionCap { d, cap: DEFAULT_MAX_DIMENSION });
    }
    let enc = build_from_circuits(&rhombus_circuits(region), d + 1, (1..=d).product());
    let points = points_by_id(&enc);
    Ok((enc.polycell, points))
}

fn polyomino_circuits(region: &PolyominoRegion) -> Vec<Vec<Vec<i64>>> {
    region
        .squares()
        .iter()
        .map(|&(c, r)| {
            // chessboard convention: (col+row) even is white, traveled
            // clockwise; black squares are traveled counterclockwise
            if (c + r).rem_euclid(2) == 0 {
                vec![vec![c, r], vec![c, r + 1], vec![c + 1, r + 1], vec![c + 1, r]]
            } else {
                vec![vec![c, r], vec![c + 1, r], vec![c + 1, r + 1], vec![c, r + 1]]
            }
        })
        .collect()
}

/// Encode a polyomino as a 4-regular polycell: one cell per square, shared
/// edges oriented consistently by the chessboard coloring, boundary = edges
/// belonging to exactly one cell.
pub fn encode_polyomino(region: &PolyominoRegion) -> Polycell {
    build_from_circuits(&polyomino_circuits(region), 4, 2).polycell
}

/// Decode a tiling of `encode_polyomino(region)` into domino placements.
pub fn decode_dominoes(
    region: &PolyominoRegion,
    p: &Polycell,
    q: &Tiling,
) -> Result<Vec<TilePlacement>, Error> {
    if !is_valid_tiling(p, q) {
        return Err(Error::InvalidTiling("not a valid tiling of the encoding".into()));
    }
    let squares: Vec<(i64, i64)> = region.squares().iter().copied().collect();
    let mut placements = Vec::new();
    for &e in q.edges() {
        let cells = p.cells_of_edge(e);
        if cells.len() != 2 {
            return Err(Error::InvalidTiling(format!(
                "tiling edge {e} does not separate two squares"
            )));
        }
        let a = squares[cells[0]];
        let b = squares[cells[1]];
        let (min, max) = if a <= b { (a, b) } else { (b, a) };
        let kind = if (max.0 - min.0, max.1 - min.1) == (1, 0) {
            TileKind::DominoHorizontal
        } else if (max.0 - min.0, max.1 - min.1) == (0, 1) {
            TileKind::DominoVertical
        } else {
            return Err(Error::InvalidTiling(format!(
                "tiling edge {e} joins non-adjacent squares"
            )));
        };
        placements.push(TilePlacement { kind, position: vec![min.0, min.1] });
    }
    placements.sort();
    Ok(placements)
}

fn permutations(d: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut items: Vec<usize> = (0..d).collect();
    permute(&mut items, 0, &mut out);
    out.sort();
    out
}

fn permute(items: &mut Vec<usize>, at: usize, out: &mut Vec<Vec<usize>>) {
    if at == items.len() {
        out.push(items.clone());
        return;
    }
    for i in at..items.len() {
        items.swap(at, i);
        permute(items, at + 1, out);
        items.swap(at, i);
    }
}

pub(crate) fn rhombus_circuits(region: &RhombusRegion) -> Vec<Vec<Vec<i64>>> {
    let d = region.dimension();
    let perms = permutations(d);
    let mut circuits = Vec::new();
    for base in region.hypercubes() {
        for perm in &perms {
            // step through the basis vectors in permutation order, then come
            // back along the diagonal edge (top corner -> base)
            let mut circuit = Vec::with_capacity(d + 1);
            let mut at = base.clone();
            circuit.push(at.clone());
            for &j in perm {
                at[j] += 1;
                circuit.push(at.clone());
            }
            // the last point is the top corner; it closes back to the base
            // along the diagonal edge
            circuits.push(circuit);
        }
    }
    circuits
}

/// Encode a d-dimensional hypercube region as a (d+1)-regular polycell whose
/// cells are the d! circuits of each hypercube; boundary = edges belonging to
/// fewer than d! cells.
pub fn encode_rhombus(region: &RhombusRegion) -> Result<Polycell, Error> {
    encode_rhombus_with_max_dim(region, DEFAULT_MAX_DIMENSION)
}

pub fn encode_rhombus_with_max_dim(
    region: &RhombusRegion,
    max_dimension: usize,
) -> Result<Polycell, Error> {
    let d = region.dimension();
    if d > max_dimension {
        return Err(Error::DimensionCap { d, cap: max_dimension });
    }
    let full: usize = (1..=d).product();
    Ok(build_from_circuits(&rhombus_circuits(region), d + 1, full).polycell)
}

/// Decode a tiling of `encode_rhombus(region)` into zonotope placements:
/// an edge along the j-th basis vector yields alpha = j, a diagonal edge
/// yields alpha = d+1; anchors are the edge source points.
pub fn decode_rhombus(
    region: &RhombusRegion,
    p: &Polycell,
    q: &Tiling,
) -> Result<Vec<TilePlacement>, Error> {
    if !is_valid_tiling(p, q) {
        return Err(Error::InvalidTiling("not a valid tiling of the encoding".into()));
    }
    let d = region.dimension();
    let enc = build_from_circuits(
        &rhombus_circuits(region),
        d + 1,
        (1..=d).product(),
    );
    let points: Vec<&Vec<i64>> = {
        let mut v: Vec<(&Vec<i64>, usize)> =
            enc.point_ids.iter().map(|(p, &i)| (p, i)).collect();
        v.sort_by_key(|&(_, i)| i);
        v.into_iter().map(|(p, _)| p).collect()
    };
    let mut placements = Vec::new();
    for &e in q.edges() {
        let (s, t) = p.graph().edge(e).ok_or(Error::UnknownEdge(e))?;
        let (ps, pt) = (points[s], points[t]);
        let delta: Vec<i64> = pt.iter().zip(ps.iter()).map(|(a, b)| a - b).collect();
        let alpha = if delta.iter().all(|&x| x == -1) {
            d + 1
        } else {
            match delta.iter().position(|&x| x == 1) {
                Some(j) if delta.iter().filter(|&&x| x != 0).count() == 1 => j + 1,
                _ => {
                    return Err(Error::InvalidTiling(format!(
                        "edge {e} is not a grid or diagonal edge"
                    )))
                }
            }
        };
        placements.push(TilePlacement { kind: TileKind::Rhombus(alpha), position: ps.clone() });
    }
    placements.sort();
    Ok(placements)
}
