//! Constructive polynomial-time tilability for full k-regular contractible
//! polycells: compute the boundary heights, then repeatedly place the tiles
//! forced at the maximal-height frontier vertices and peel the covered cells.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::graph::{EdgeId, StepDir, VertexId};
use crate::polycell::{cells_span_cycle_space, propagate_potential, validate, Polycell};
use crate::tiling::{is_boundary_connected, Tiling};

/// Why the algorithm concluded the polycell has no tiling.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum UntilableReason {
    /// An edge was forced to two different tension values.
    TensionConflict { edge: EdgeId },
    /// A vertex was forced to two different heights.
    HeightConflict { vertex: VertexId },
    /// A cell was forced to carry more than one tiling edge.
    MultipleTilingEdges { cell: usize },
    /// No placement was forced although cells remain.
    Stuck,
}

impl std::fmt::Display for UntilableReason {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            UntilableReason::TensionConflict { edge } => {
                write!(f, "conflicting tension on edge {edge}")
            }
            UntilableReason::HeightConflict { vertex } => {
                write!(f, "conflicting height on vertex {vertex}")
            }
            UntilableReason::MultipleTilingEdges { cell } => {
                write!(f, "cell {cell} forced to carry more than one tiling edge")
            }
            UntilableReason::Stuck => write!(f, "no tile placement is forced"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TilingOutcome {
    Tiled(Tiling),
    Untilable(UntilableReason),
}

impl TilingOutcome {
    pub fn tiling(&self) -> Option<&Tiling> {
        match self {
            TilingOutcome::Tiled(q) => Some(q),
            TilingOutcome::Untilable(_) => None,
        }
    }
}

/// Tie-break order among equal-minimal-height frontier vertices. The output
/// is the same either way; the option exists to test that.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum FrontierOrder {
    #[default]
    Ascending,
    Descending,
}

/// Operation counts, for the polynomial-work check.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct TilabilityStats {
    pub iterations: usize,
    pub tension_writes: usize,
    pub height_writes: usize,
}

pub fn maximal_tiling(p: &Polycell) -> Result<TilingOutcome, Error> {
    maximal_tiling_with(p, FrontierOrder::Ascending).map(|(o, _)| o)
}

pub fn is_tilable(p: &Polycell) -> Result<bool, Error> {
    Ok(matches!(maximal_tiling(p)?, TilingOutcome::Tiled(_)))
}

pub fn maximal_tiling_with(
    p: &Polycell,
    order: FrontierOrder,
) -> Result<(TilingOutcome, TilabilityStats), Error> {
    let report = validate(p);
    if !report.is_valid() {
        return Err(Error::InvalidPolycell(report.violations[0].to_string()));
    }
    if p.cells().is_empty() {
        // vacuous partition
        return Ok((TilingOutcome::Tiled(Tiling::new(BTreeSet::new())), TilabilityStats::default()));
    }
    if !p.boundary_vertices().contains(&p.nu()) || !is_boundary_connected(p) {
        return Err(Error::NotFull);
    }
    if !cells_span_cycle_space(p) {
        return Err(Error::NotContractible);
    }
    // An unbalanced boundary surfaces here as a height conflict: the
    // constant-1 boundary flow admits no potential, so no tiling exists.
    let (boundary_heights, conflict) = propagate_potential(p, p.boundary(), |_| 1, Some(p.nu()));
    if let Some(e) = conflict {
        let (_, t) = p.graph().edge(e).unwrap();
        return Ok((
            TilingOutcome::Untilable(UntilableReason::HeightConflict { vertex: t }),
            TilabilityStats::default(),
        ));
    }

    let k = p.k() as i64;
    let ne = p.graph().edge_count();
    let vb = p.graph().vertex_bound();
    let mut tension: Vec<Option<i64>> = vec![None; ne];
    let mut height: Vec<Option<i64>> = vec![None; vb];
    let mut alive = vec![true; p.cells().len()];
    let mut alive_count = p.cells().len();
    let mut stats = TilabilityStats::default();

    for &e in p.boundary() {
        tension[e] = Some(1);
        stats.tension_writes += 1;
    }
    for (&v, &h) in &boundary_heights {
        height[v] = Some(h);
        stats.height_writes += 1;
    }

    let edge_alive = |alive: &[bool], e: EdgeId, p: &Polycell| -> bool {
        p.cells_of_edge(e).iter().any(|&c| alive[c])
    };

    while alive_count > 0 {
        stats.iterations += 1;

        // frontier: vertices of the remaining sub-polycell with a height
        let mut frontier: Vec<(i64, VertexId)> = Vec::new();
        let mut seen: BTreeSet<VertexId> = BTreeSet::new();
        for (ci, cell) in p.cells().iter().enumerate() {
            if !alive[ci] {
                continue;
            }
            for &e in cell.edges() {
                let (s, t) = p.graph().edge(e).unwrap();
                for v in [s, t] {
                    if seen.insert(v) {
                        if let Some(h) = height[v] {
                            frontier.push((h, v));
                        }
                    }
                }
            }
        }
        if frontier.is_empty() {
            return Ok((TilingOutcome::Untilable(UntilableReason::Stuck), stats));
        }
        let max_h = frontier.iter().map(|&(h, _)| h).max().unwrap();
        let mut maximal: Vec<VertexId> =
            frontier.into_iter().filter(|&(h, _)| h == max_h).map(|(_, v)| v).collect();
        maximal.sort_unstable();
        if order == FrontierOrder::Descending {
            maximal.reverse();
        }

        let mut newly_assigned: Vec<EdgeId> = Vec::new();
        for &v in &maximal {
            for &(e, dir) in p.incident_edges(v) {
                if dir != StepDir::Forward || !edge_alive(&alive, e, p) {
                    continue;
                }
                // outgoing edge of a maximal frontier vertex is a tiling edge
                match tension[e] {
                    Some(t) if t == 1 - k => {}
                    Some(_) => {
                        return Ok((
                            TilingOutcome::Untilable(UntilableReason::TensionConflict { edge: e }),
                            stats,
                        ));
                    }
                    None => {
                        // a second tiling edge in a live cell is a dead end
                        for &c in p.cells_of_edge(e) {
                            if alive[c]
                                && p.cells()[c]
                                    .edges()
                                    .iter()
                                    .any(|&e2| e2 != e && tension[e2] == Some(1 - k))
                            {
                                return Ok((
                                    TilingOutcome::Untilable(
                                        UntilableReason::MultipleTilingEdges { cell: c },
                                    ),
                                    stats,
                                ));
                            }
                        }
                        tension[e] = Some(1 - k);
                        stats.tension_writes += 1;
                        newly_assigned.push(e);
                        for &c in p.cells_of_edge(e) {
                            if !alive[c] {
                                continue;
                            }
                            for &e2 in p.cells()[c].edges() {
                                if tension[e2].is_none() {
                                    tension[e2] = Some(1);
                                    stats.tension_writes += 1;
                                    newly_assigned.push(e2);
                                }
                            }
                        }
                    }
                }
            }
        }

        if newly_assigned.is_empty() {
            return Ok((TilingOutcome::Untilable(UntilableReason::Stuck), stats));
        }

        // propagate heights across assigned tensions to a fixpoint
        let mut work: Vec<EdgeId> = newly_assigned.clone();
        while let Some(e) = work.pop() {
            let c = tension[e].unwrap();
            let (s, t) = p.graph().edge(e).unwrap();
            match (height[s], height[t]) {
                (Some(hs), Some(ht)) => {
                    if ht - hs != c {
                        return Ok((
                            TilingOutcome::Untilable(UntilableReason::HeightConflict { vertex: t }),
                            stats,
                        ));
                    }
                }
                (Some(hs), None) => {
                    height[t] = Some(hs + c);
                    stats.height_writes += 1;
                    for &(e2, _) in p.incident_edges(t) {
                        if tension[e2].is_some() {
                            work.push(e2);
                        }
                    }
                }
                (None, Some(ht)) => {
                    height[s] = Some(ht - c);
                    stats.height_writes += 1;
                    for &(e2, _) in p.incident_edges(s) {
                        if tension[e2].is_some() {
                            work.push(e2);
                        }
                    }
                }
                (None, None) => {}
            }
        }

        // peel every cell containing a negative edge; it must carry exactly one
        for (ci, cell) in p.cells().iter().enumerate() {
            if !alive[ci] {
                continue;
            }
            let negatives =
                cell.edges().iter().filter(|&&e| tension[e] == Some(1 - k)).count();
            match negatives {
                0 => {}
                1 => {
                    alive[ci] = false;
                    alive_count -= 1;
                }
                _ => {
                    return Ok((
                        TilingOutcome::Untilable(UntilableReason::MultipleTilingEdges {
                            cell: ci,
                        }),
                        stats,
                    ));
                }
            }
        }
    }

    let q = Tiling::new((0..ne).filter(|&e| tension[e] == Some(1 - k)).collect());
    if !crate::tiling::is_valid_tiling(p, &q) {
        // boundary tiling edges or uncovered cells slipped through
        return Ok((TilingOutcome::Untilable(UntilableReason::Stuck), stats));
    }
    Ok((TilingOutcome::Tiled(q), stats))
}
