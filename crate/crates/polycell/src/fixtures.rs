//! Small standard instances used by the tests, benches and docs.

use std::collections::BTreeSet;

use crate::encoders::{build_from_circuits, encode_polyomino, PolyominoRegion};
use crate::polycell::Polycell;

/// A w x h rectangle of unit squares, encoded for domino tilings.
pub fn rectangle(w: i64, h: i64) -> Polycell {
    let squares: BTreeSet<(i64, i64)> =
        (0..w).flat_map(|c| (0..h).map(move |r| (c, r))).collect();
    encode_polyomino(&PolyominoRegion::new(squares).unwrap())
}

/// The Aztec diamond of the given order: squares (i, j) with
/// |2i+1| + |2j+1| <= 2 * order.
pub fn aztec_diamond(order: i64) -> Polycell {
    let squares: BTreeSet<(i64, i64)> = (-order..order)
        .flat_map(|i| (-order..order).map(move |j| (i, j)))
        .filter(|&(i, j)| (2 * i + 1).abs() + (2 * j + 1).abs() <= 2 * order)
        .collect();
    encode_polyomino(&PolyominoRegion::new(squares).unwrap())
}

/// The 3 x 3 square with its center removed.
pub fn ring_3x3() -> Polycell {
    let squares: BTreeSet<(i64, i64)> = (0..3)
        .flat_map(|c| (0..3).map(move |r| (c, r)))
        .filter(|&s| s != (1, 1))
        .collect();
    encode_polyomino(&PolyominoRegion::new(squares).unwrap())
}

/// The hexagon of side a for lozenge tilings: the triangulated squares of a
/// 2a x 2a board with |i - j| < a, plus the upper triangle of the squares on
/// the diagonal i - j = a and the lower triangle of those on j - i = a.
pub fn hexagon(a: i64) -> Polycell {
    assert!(a >= 1);
    let mut circuits: Vec<Vec<Vec<i64>>> = Vec::new();
    for i in 0..2 * a {
        for j in 0..2 * a {
            let lower = vec![vec![i, j], vec![i + 1, j], vec![i + 1, j + 1]];
            let upper = vec![vec![i, j], vec![i, j + 1], vec![i + 1, j + 1]];
            if (i - j).abs() < a {
                circuits.push(lower);
                circuits.push(upper);
            } else if i - j == a {
                circuits.push(upper);
            } else if j - i == a {
                circuits.push(lower);
            }
        }
    }
    build_from_circuits(&circuits, 3, 2).polycell
}
