//! Flip dynamics: maximal vertices, flips, flip-terminal tilings, the
//! flip-accessibility graph, component counting, lattice meet/join and the
//! edge-firing-game orientation.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use crate::error::Error;
use crate::graph::{Flow, StepDir, VertexId};
use crate::polycell::Polycell;
use crate::tiling::{height_function, tension_to_tiling, tiling_to_tension, Tiling};
#[cfg(test)]
use crate::tiling::HeightFunction;

/// Directed graph on tilings; `(i, j)` means tiling `i` transforms to tiling
/// `j` by one flip.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FlipGraph {
    pub tilings: Vec<Tiling>,
    pub edges: BTreeSet<(usize, usize)>,
}

impl FlipGraph {
    pub fn node_count(&self) -> usize {
        self.tilings.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Connected components of the undirected version, as sorted node lists.
    pub fn undirected_components(&self) -> Vec<Vec<usize>> {
        let n = self.tilings.len();
        let mut adj = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        let mut comp = vec![usize::MAX; n];
        let mut components = Vec::new();
        for start in 0..n {
            if comp[start] != usize::MAX {
                continue;
            }
            let id = components.len();
            let mut members = vec![start];
            comp[start] = id;
            let mut stack = vec![start];
            while let Some(v) = stack.pop() {
                for &w in &adj[v] {
                    if comp[w] == usize::MAX {
                        comp[w] = id;
                        members.push(w);
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            components.push(members);
        }
        components
    }

    /// Whether the directed graph has a directed cycle.
    pub fn is_acyclic(&self) -> bool {
        let n = self.tilings.len();
        let mut indeg = vec![0usize; n];
        let mut out = vec![Vec::new(); n];
        for &(i, j) in &self.edges {
            indeg[j] += 1;
            out[i].push(j);
        }
        let mut queue: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
        let mut seen = 0;
        while let Some(v) = queue.pop() {
            seen += 1;
            for &w in &out[v] {
                indeg[w] -= 1;
                if indeg[w] == 0 {
                    queue.push(w);
                }
            }
        }
        seen == n
    }
}

/// An orientation of the undirected edge graph, keyed by the unordered
/// vertex pair and valued by the chosen (from, to) direction.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Orientation {
    pub direction: BTreeMap<(VertexId, VertexId), (VertexId, VertexId)>,
}

impl Orientation {
    /// Vertices whose incident edges are all incoming.
    pub fn sinks(&self) -> BTreeSet<VertexId> {
        let mut has_out: BTreeMap<VertexId, bool> = BTreeMap::new();
        for &(from, to) in self.direction.values() {
            has_out.entry(from).or_insert(false);
            has_out.entry(to).or_insert(false);
            has_out.insert(from, true);
        }
        has_out.into_iter().filter(|&(_, o)| !o).map(|(v, _)| v).collect()
    }
}

/// Interior vertices whose height is strictly greater than every undirected
/// neighbor's; equivalently, whose outgoing edges are all tiling edges while
/// no incoming edge is. The edge characterization is used directly so that
/// flip dynamics also work where heights are unavailable (non-contractible
/// polycells such as the ring polyomino).
pub fn maximal_vertices(p: &Polycell, q: &Tiling) -> Result<BTreeSet<VertexId>, Error> {
    if !crate::tiling::is_valid_tiling(p, q) {
        // reuse the defect description from the bijection path
        return tiling_to_tension(p, q).map(|_| unreachable!());
    }
    Ok(p.used_vertices()
        .into_iter()
        .filter(|&v| !p.is_boundary_vertex(v) && is_edge_maximal(p, q, v))
        .collect())
}

fn is_edge_maximal(p: &Polycell, q: &Tiling, v: VertexId) -> bool {
    let incident = p.incident_edges(v);
    !incident.is_empty()
        && incident.iter().all(|&(e, dir)| match dir {
            StepDir::Forward => q.contains(e),
            StepDir::Backward => !q.contains(e),
        })
}

#[cfg(test)]
pub(crate) fn maximal_vertices_of_heights(p: &Polycell, phi: &HeightFunction) -> BTreeSet<VertexId> {
    p.used_vertices()
        .into_iter()
        .filter(|&v| !p.is_boundary_vertex(v) && is_local_max(p, phi, v))
        .collect()
}

#[cfg(test)]
fn is_local_max(p: &Polycell, phi: &HeightFunction, v: VertexId) -> bool {
    let hv = match phi.get(v) {
        Some(h) => h,
        None => return false,
    };
    let mut has_neighbor = false;
    for &(e, _) in p.incident_edges(v) {
        let (s, t) = p.graph().edge(e).unwrap();
        let w = if s == v { t } else { s };
        has_neighbor = true;
        match phi.get(w) {
            Some(hw) if hw < hv => {}
            _ => return false,
        }
    }
    has_neighbor
}

/// Flip around a maximal vertex: its height drops by `k`, nothing else moves.
/// On the tiling edges this swaps the roles of the edges incident to `x`:
/// the outgoing tiling edges become ordinary and the incoming edges become
/// tiling edges.
pub fn flip(p: &Polycell, q: &Tiling, x: VertexId) -> Result<Tiling, Error> {
    let maxima = maximal_vertices(p, q)?;
    if !maxima.contains(&x) {
        return Err(Error::NotMaximalVertex { vertex: x });
    }
    Ok(flip_unchecked(p, q, x))
}

fn flip_unchecked(p: &Polycell, q: &Tiling, x: VertexId) -> Tiling {
    let mut edges = q.edges().clone();
    for &(e, dir) in p.incident_edges(x) {
        match dir {
            StepDir::Forward => {
                edges.remove(&e);
            }
            StepDir::Backward => {
                edges.insert(e);
            }
        }
    }
    Tiling::new(edges)
}

/// Repeatedly flip at the smallest maximal vertex until none remain. The
/// result is order-independent: the unique flip-terminal tiling of the
/// component.
pub fn flip_terminal(p: &Polycell, q: &Tiling) -> Result<Tiling, Error> {
    flip_terminal_with_order(p, q, false)
}

/// Same, selecting the flip vertex in descending id order; used to check
/// order-independence.
pub fn flip_terminal_with_order(
    p: &Polycell,
    q: &Tiling,
    descending: bool,
) -> Result<Tiling, Error> {
    let mut current = q.clone();
    loop {
        let maxima = maximal_vertices(p, &current)?;
        let pick = if descending {
            maxima.iter().next_back().copied()
        } else {
            maxima.iter().next().copied()
        };
        match pick {
            None => return Ok(current),
            Some(x) => current = flip_unchecked(p, &current, x),
        }
    }
}

/// Build the directed flip-accessibility graph over a complete tiling set.
pub fn flip_graph(p: &Polycell, all_tilings: &[Tiling]) -> Result<FlipGraph, Error> {
    let mut tilings = all_tilings.to_vec();
    tilings.sort();
    tilings.dedup();
    let index: HashMap<&Tiling, usize> =
        tilings.iter().enumerate().map(|(i, t)| (t, i)).collect();
    let mut edges = BTreeSet::new();
    for (i, q) in tilings.iter().enumerate() {
        for x in maximal_vertices(p, q)? {
            let q2 = flip_unchecked(p, q, x);
            let j = *index
                .get(&q2)
                .ok_or_else(|| Error::InvalidTiling("flip left the supplied tiling set".into()))?;
            edges.insert((i, j));
        }
    }
    Ok(FlipGraph { tilings, edges })
}

/// Number of flip-terminal tilings; equals the undirected component count of
/// the flip graph.
pub fn count_components(p: &Polycell, all_tilings: &[Tiling]) -> Result<usize, Error> {
    let mut unique: Vec<&Tiling> = all_tilings.iter().collect();
    unique.sort();
    unique.dedup();
    let mut n = 0;
    for q in unique {
        if maximal_vertices(p, q)?.is_empty() {
            n += 1;
        }
    }
    Ok(n)
}

fn combine_heights(
    p: &Polycell,
    q: &Tiling,
    q2: &Tiling,
    take_min: bool,
) -> Result<Tiling, Error> {
    // heights may not exist at all on a non-contractible polycell; there the
    // lattice structure is only per-component and no common refinement exists
    let no_heights = |e| match e {
        Error::NotATension { .. } => Error::NotInCommonComponent,
        other => other,
    };
    let a = height_function(p, q).map_err(no_heights)?;
    let b = height_function(p, q2).map_err(no_heights)?;
    let k = p.k() as i64;
    let pick = |v: VertexId| -> Option<i64> {
        let (x, y) = (a.get(v)?, b.get(v)?);
        Some(if take_min { x.min(y) } else { x.max(y) })
    };
    let ne = p.graph().edge_count();
    let mut values = vec![0i64; ne];
    for (e, value) in values.iter_mut().enumerate() {
        let (s, t) = p.graph().edge(e).unwrap();
        let c = match (pick(s), pick(t)) {
            (Some(hs), Some(ht)) => ht - hs,
            _ => return Err(Error::NotInCommonComponent),
        };
        if c != 1 && c != 1 - k {
            return Err(Error::NotInCommonComponent);
        }
        *value = c;
    }
    tension_to_tiling(p, &Flow::new(values)).map_err(|_| Error::NotInCommonComponent)
}

/// Tiling whose height function is the pointwise minimum of the two.
pub fn meet(p: &Polycell, q: &Tiling, q2: &Tiling) -> Result<Tiling, Error> {
    combine_heights(p, q, q2, true)
}

/// Tiling whose height function is the pointwise maximum of the two.
pub fn join(p: &Polycell, q: &Tiling, q2: &Tiling) -> Result<Tiling, Error> {
    combine_heights(p, q, q2, false)
}

/// Orient every undirected edge toward its higher endpoint.
pub fn efg_orientation(p: &Polycell, q: &Tiling) -> Result<Orientation, Error> {
    let phi = height_function(p, q)?;
    let _ = tiling_to_tension(p, q)?;
    let mut direction = BTreeMap::new();
    for e in 0..p.graph().edge_count() {
        let (s, t) = p.graph().edge(e).unwrap();
        let (hs, ht) = (phi.get(s).unwrap(), phi.get(t).unwrap());
        let key = (s.min(t), s.max(t));
        // heights across an edge always differ
        let value = if ht > hs { (s, t) } else { (t, s) };
        direction.insert(key, value);
    }
    Ok(Orientation { direction })
}

/// Interior sinks of the orientation; by construction these are exactly the
/// maximal vertices.
pub fn interior_sinks(p: &Polycell, o: &Orientation) -> BTreeSet<VertexId> {
    o.sinks().into_iter().filter(|&v| !p.is_boundary_vertex(v)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures::{hexagon, rectangle, ring_3x3};
    use crate::oracle::brute_force_tilings;

    #[test]
    fn edge_and_height_characterizations_of_maximal_vertices_agree() {
        for p in [rectangle(2, 3), rectangle(3, 4), hexagon(2)] {
            for q in brute_force_tilings(&p).unwrap() {
                let phi = height_function(&p, &q).unwrap();
                assert_eq!(
                    maximal_vertices(&p, &q).unwrap(),
                    maximal_vertices_of_heights(&p, &phi)
                );
            }
        }
    }

    #[test]
    fn the_2x2_square_flips_between_its_two_tilings_at_the_center() {
        let p = rectangle(2, 2);
        let all = brute_force_tilings(&p).unwrap();
        assert_eq!(all.len(), 2);
        let maxima: Vec<_> =
            all.iter().map(|q| maximal_vertices(&p, q).unwrap()).collect();
        // one tiling is flippable at the single interior vertex, the other is terminal
        let (upper, lower) = if maxima[0].len() == 1 { (0, 1) } else { (1, 0) };
        assert_eq!(maxima[upper].len(), 1);
        assert!(maxima[lower].is_empty());
        let &x = maxima[upper].iter().next().unwrap();
        assert!(!p.is_boundary_vertex(x));
        assert_eq!(flip(&p, &all[upper], x).unwrap(), all[lower]);
    }

    #[test]
    fn a_flip_lowers_exactly_one_height_by_k() {
        let p = rectangle(3, 4);
        let k = p.k() as i64;
        for q in brute_force_tilings(&p).unwrap() {
            for x in maximal_vertices(&p, &q).unwrap() {
                let q2 = flip(&p, &q, x).unwrap();
                assert!(crate::tiling::is_valid_tiling(&p, &q2));
                let a = height_function(&p, &q).unwrap();
                let b = height_function(&p, &q2).unwrap();
                assert_eq!(b.sum(), a.sum() - k);
                for (&v, &h) in a.heights() {
                    let want = if v == x { h - k } else { h };
                    assert_eq!(b.get(v), Some(want));
                }
            }
        }
    }

    #[test]
    fn flips_at_distinct_maximal_vertices_commute() {
        let mut checked = 0;
        for p in [rectangle(3, 4), hexagon(2)] {
            for q in brute_force_tilings(&p).unwrap() {
                let maxima: Vec<_> =
                    maximal_vertices(&p, &q).unwrap().into_iter().collect();
                for (i, &x) in maxima.iter().enumerate() {
                    for &y in &maxima[i + 1..] {
                        let a = flip(&p, &flip(&p, &q, x).unwrap(), y).unwrap();
                        let b = flip(&p, &flip(&p, &q, y).unwrap(), x).unwrap();
                        assert_eq!(a, b);
                        checked += 1;
                    }
                }
            }
        }
        assert!(checked > 0);
    }

    #[test]
    fn flipping_a_non_maximal_vertex_is_an_error() {
        let p = rectangle(2, 2);
        let q = &brute_force_tilings(&p).unwrap()[0];
        let boundary = *p.boundary_vertices().iter().next().unwrap();
        assert!(matches!(
            flip(&p, q, boundary),
            Err(Error::NotMaximalVertex { .. })
        ));
    }

    #[test]
    fn flip_terminal_is_an_order_independent_fixpoint() {
        let p = rectangle(3, 4);
        let all = brute_force_tilings(&p).unwrap();
        let mut terminal = None;
        for q in &all {
            let asc = flip_terminal(&p, q).unwrap();
            assert_eq!(flip_terminal_with_order(&p, q, true).unwrap(), asc);
            assert!(maximal_vertices(&p, &asc).unwrap().is_empty());
            assert_eq!(flip_terminal(&p, &asc).unwrap(), asc);
            match &terminal {
                None => terminal = Some(asc),
                Some(t) => assert_eq!(&asc, t),
            }
        }
    }

    #[test]
    fn the_terminal_tiling_is_the_pointwise_height_minimum() {
        let p = rectangle(2, 4);
        let all = brute_force_tilings(&p).unwrap();
        let m = flip_terminal(&p, &all[0]).unwrap();
        let phi_m = height_function(&p, &m).unwrap();
        for q in &all {
            let phi = height_function(&p, q).unwrap();
            for (&v, &h) in phi_m.heights() {
                assert!(h <= phi.get(v).unwrap());
            }
        }
    }

    #[test]
    fn flip_graphs_of_the_small_examples() {
        let cases: [(Polycell, usize, usize, usize); 3] = [
            (rectangle(2, 1), 1, 0, 1),
            (rectangle(2, 2), 2, 1, 1),
            (ring_3x3(), 2, 0, 2),
        ];
        for (p, nodes, edges, comps) in cases {
            let all = brute_force_tilings(&p).unwrap();
            let g = flip_graph(&p, &all).unwrap();
            assert_eq!(g.node_count(), nodes);
            assert_eq!(g.edge_count(), edges);
            assert_eq!(g.undirected_components().len(), comps);
            assert!(g.is_acyclic());
            assert_eq!(count_components(&p, &all).unwrap(), comps);
        }
    }

    #[test]
    fn flip_graphs_are_acyclic_and_connected_on_full_fixtures() {
        for p in [rectangle(2, 4), rectangle(3, 4), hexagon(2)] {
            let all = brute_force_tilings(&p).unwrap();
            let g = flip_graph(&p, &all).unwrap();
            assert!(g.is_acyclic());
            assert_eq!(g.undirected_components().len(), 1);
            assert_eq!(count_components(&p, &all).unwrap(), 1);
        }
    }

    #[test]
    fn an_empty_tiling_set_has_zero_components() {
        let p = rectangle(2, 2);
        assert_eq!(count_components(&p, &[]).unwrap(), 0);
    }

    #[test]
    fn meet_and_join_are_idempotent_absorbing_lattice_members() {
        let p = rectangle(2, 3);
        let all = brute_force_tilings(&p).unwrap();
        for q in &all {
            assert_eq!(&meet(&p, q, q).unwrap(), q);
            assert_eq!(&join(&p, q, q).unwrap(), q);
        }
        for q in &all {
            for q2 in &all {
                let m = meet(&p, q, q2).unwrap();
                let j = join(&p, q, q2).unwrap();
                assert!(all.contains(&m));
                assert!(all.contains(&j));
                assert_eq!(meet(&p, q, &j).unwrap(), *q);
                assert_eq!(join(&p, q, &m).unwrap(), *q);
            }
        }
    }

    #[test]
    fn meet_across_ring_components_is_rejected() {
        let p = ring_3x3();
        let all = brute_force_tilings(&p).unwrap();
        assert!(matches!(
            meet(&p, &all[0], &all[1]),
            Err(Error::NotInCommonComponent)
        ));
    }

    #[test]
    fn orientation_sinks_are_the_maximal_vertices() {
        let p = rectangle(3, 4);
        for q in brute_force_tilings(&p).unwrap() {
            let o = efg_orientation(&p, &q).unwrap();
            assert_eq!(interior_sinks(&p, &o), maximal_vertices(&p, &q).unwrap());
        }
    }

    #[test]
    fn a_flip_reverses_exactly_the_edges_at_its_vertex() {
        let p = rectangle(2, 3);
        for q in brute_force_tilings(&p).unwrap() {
            for x in maximal_vertices(&p, &q).unwrap() {
                let before = efg_orientation(&p, &q).unwrap();
                let after = efg_orientation(&p, &flip(&p, &q, x).unwrap()).unwrap();
                for (key, dir) in &before.direction {
                    let touches_x = key.0 == x || key.1 == x;
                    let new_dir = after.direction[key];
                    if touches_x {
                        assert_eq!(new_dir, (dir.1, dir.0));
                    } else {
                        assert_eq!(new_dir, *dir);
                    }
                }
            }
        }
    }
}
