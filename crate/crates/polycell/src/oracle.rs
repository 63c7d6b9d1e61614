//! Exhaustive enumeration of all tilings by backtracking over cells; the
//! ground truth the faster algorithms are checked against.

use std::collections::BTreeSet;

use crate::error::Error;
use crate::graph::EdgeId;
use crate::polycell::Polycell;
use crate::tiling::Tiling;

pub const DEFAULT_CELL_CAP: usize = 64;

/// All tilings of a polycell, in canonical (sorted edge set) order.
///
/// Backtracking: cover the lowest-id uncovered cell by one of its interior
/// edges; choosing an edge covers every cell of its tile, so the branches
/// are disjoint and each tiling is produced exactly once.
pub fn brute_force_tilings(p: &Polycell) -> Result<Vec<Tiling>, Error> {
    brute_force_tilings_capped(p, DEFAULT_CELL_CAP)
}

pub fn brute_force_tilings_capped(p: &Polycell, cap: usize) -> Result<Vec<Tiling>, Error> {
    if p.cells().len() > cap {
        return Err(Error::CellCapExceeded { cells: p.cells().len(), cap });
    }
    let n = p.cells().len();
    let mut covered = vec![false; n];
    let mut chosen: Vec<EdgeId> = Vec::new();
    let mut found: Vec<Tiling> = Vec::new();
    search(p, &mut covered, &mut chosen, &mut found);
    found.sort();
    Ok(found)
}

fn search(p: &Polycell, covered: &mut [bool], chosen: &mut Vec<EdgeId>, found: &mut Vec<Tiling>) {
    let cell = match covered.iter().position(|&c| !c) {
        None => {
            found.push(Tiling::new(chosen.iter().copied().collect()));
            return;
        }
        Some(c) => c,
    };
    let candidates: Vec<EdgeId> = p.cells()[cell]
        .edges()
        .iter()
        .copied()
        .filter(|&e| !p.is_boundary_edge(e))
        .collect();
    for e in candidates {
        let tile: Vec<usize> = p.cells_of_edge(e).to_vec();
        if tile.iter().any(|&c| covered[c]) {
            continue;
        }
        for &c in &tile {
            covered[c] = true;
        }
        chosen.push(e);
        search(p, covered, chosen, found);
        chosen.pop();
        for &c in &tile {
            covered[c] = false;
        }
    }
}

/// Independent cross-check for tiny instances: filter all subsets of the
/// interior edges. Quadratic blowup; refuses more than 20 interior edges.
pub fn subset_filter_tilings(p: &Polycell) -> Result<Vec<Tiling>, Error> {
    let interior: Vec<EdgeId> = p.interior_edges().collect();
    if interior.len() > 20 {
        return Err(Error::CellCapExceeded { cells: interior.len(), cap: 20 });
    }
    let mut found = Vec::new();
    for mask in 0u32..(1u32 << interior.len()) {
        let edges: BTreeSet<EdgeId> = interior
            .iter()
            .enumerate()
            .filter(|&(i, _)| mask & (1 << i) != 0)
            .map(|(_, &e)| e)
            .collect();
        let q = Tiling::new(edges);
        if crate::tiling::is_valid_tiling(p, &q) {
            found.push(q);
        }
    }
    found.sort();
    Ok(found)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{rectangle, ring_3x3};

    #[test]
    fn the_cell_cap_is_enforced() {
        let p = rectangle(2, 2);
        assert!(matches!(
            brute_force_tilings_capped(&p, 3),
            Err(Error::CellCapExceeded { cells: 4, cap: 3 })
        ));
    }

    #[test]
    fn the_subset_filter_refuses_large_interiors() {
        // 4x4 has 24 interior edges, past the exponential-method cutoff
        assert!(matches!(
            subset_filter_tilings(&rectangle(4, 4)),
            Err(Error::CellCapExceeded { cells: 24, cap: 20 })
        ));
    }

    #[test]
    fn tilings_come_out_sorted_and_distinct() {
        for p in [rectangle(2, 4), rectangle(3, 4), ring_3x3()] {
            let all = brute_force_tilings(&p).unwrap();
            assert!(all.windows(2).all(|w| w[0] < w[1]));
            for q in &all {
                assert!(crate::tiling::is_valid_tiling(&p, q));
                assert_eq!(q.len(), p.cells().len() / 2);
            }
        }
    }
}
