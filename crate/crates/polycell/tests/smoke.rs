//! End-to-end sanity checks on the standard fixtures.

use polycell::fixtures::{aztec_diamond, hexagon, rectangle, ring_3x3};
use polycell::{
    brute_force_tilings, count_components, is_tilable, maximal_tiling, subset_filter_tilings,
    validate, TilingOutcome,
};

#[test]
fn rectangle_counts_match_the_fibonacci_pattern() {
    let expected = [1usize, 2, 3, 5, 8, 13];
    for (n, &want) in (1..=6).zip(&expected) {
        let p = rectangle(2, n);
        assert!(validate(&p).is_valid());
        assert_eq!(brute_force_tilings(&p).unwrap().len(), want, "2x{n}");
    }
}

#[test]
fn larger_rectangles() {
    assert_eq!(brute_force_tilings(&rectangle(3, 4)).unwrap().len(), 11);
    assert_eq!(brute_force_tilings(&rectangle(4, 4)).unwrap().len(), 36);
}

#[test]
fn odd_area_has_no_tiling() {
    let p = rectangle(1, 3);
    assert_eq!(brute_force_tilings(&p).unwrap().len(), 0);
    assert!(!is_tilable(&p).unwrap());
}

#[test]
fn aztec_diamond_order_two() {
    let p = aztec_diamond(2);
    assert!(validate(&p).is_valid());
    assert_eq!(brute_force_tilings(&p).unwrap().len(), 8);
}

#[test]
fn ring_has_two_tilings() {
    let p = ring_3x3();
    assert!(validate(&p).is_valid());
    assert_eq!(brute_force_tilings(&p).unwrap().len(), 2);
}

#[test]
fn hexagon_counts_match_boxed_plane_partitions() {
    for (a, want) in [(1, 2usize), (2, 20), (3, 980)] {
        let p = hexagon(a);
        assert!(validate(&p).is_valid(), "hexagon {a}: {:?}", validate(&p).violations);
        assert_eq!(brute_force_tilings(&p).unwrap().len(), want, "hexagon {a}");
    }
}

#[test]
fn the_two_enumerators_agree_on_small_instances() {
    for p in [rectangle(2, 2), rectangle(2, 3), ring_3x3(), hexagon(1)] {
        assert_eq!(
            brute_force_tilings(&p).unwrap(),
            subset_filter_tilings(&p).unwrap()
        );
    }
}

#[test]
fn the_constructive_algorithm_finds_a_tiling_when_one_exists() {
    for p in [
        rectangle(2, 3),
        rectangle(3, 4),
        rectangle(4, 4),
        aztec_diamond(2),
        hexagon(2),
    ] {
        let all = brute_force_tilings(&p).unwrap();
        match maximal_tiling(&p).unwrap() {
            TilingOutcome::Tiled(q) => assert!(all.contains(&q)),
            TilingOutcome::Untilable(r) => panic!("untilable: {r}"),
        }
    }
}

#[test]
fn full_simply_connected_regions_have_one_component() {
    for p in [rectangle(2, 3), rectangle(3, 4), aztec_diamond(2), hexagon(2)] {
        let all = brute_force_tilings(&p).unwrap();
        assert_eq!(count_components(&p, &all).unwrap(), 1);
    }
}
