mod common;

use std::collections::BTreeSet;

use common::shape;
use tangram_core::canon::colored_count;
use tangram_core::solver::count_partitions;
use tangram_core::{dedupe, enumerate_partitions, tan_set, CountMode, TanName, TanSetKind, Transform, TriCell};

const COUNTS: [usize; 16] = [34, 38, 43, 61, 19, 72, 3, 21, 23, 21, 16, 4, 32, 24, 60, 60];

#[test]
fn canonical_counts_per_shape() {
    let jp = tan_set(TanSetKind::Japanese);
    let got: Vec<usize> = (1..=16).map(|n| count_partitions(&shape(n), &jp, CountMode::Canonical).unwrap()).collect();
    assert_eq!(got, COUNTS);
    assert_eq!(got.iter().sum::<usize>(), 531);
}

#[test]
fn labeled_counts_of_the_strips() {
    let jp = tan_set(TanSetKind::Japanese);
    let got: Vec<usize> =
        [7, 14, 15, 16].iter().map(|&n| count_partitions(&shape(n), &jp, CountMode::Labeled).unwrap()).collect();
    assert_eq!(got, vec![24, 96, 120, 120]);
}

#[test]
fn colored_doubles_canonical_for_japanese_set() {
    let jp = tan_set(TanSetKind::Japanese);
    for n in 1..=16 {
        let r = shape(n);
        let classes = dedupe(&enumerate_partitions(&r, &jp, true).unwrap(), &r);
        assert_eq!(colored_count(&classes, &r), 2 * classes.len(), "shape {n}");
    }
}

#[test]
fn chinese_square_colored_ratio_bounded() {
    let cn = tan_set(TanSetKind::Chinese);
    let r = shape(7);
    let mono = count_partitions(&r, &cn, CountMode::Canonical).unwrap();
    let colored = count_partitions(&r, &cn, CountMode::Colored).unwrap();
    assert!(mono >= 1);
    // Two pairs of identical pieces: at most four colourings per class.
    assert!(colored >= mono && colored <= 4 * mono);
}

#[test]
fn uncoverable_shapes_have_no_partitions() {
    let jp = tan_set(TanSetKind::Japanese);
    let cn = tan_set(TanSetKind::Chinese);
    for n in 17..=20 {
        assert!(enumerate_partitions(&shape(n), &jp, true).unwrap().is_empty());
    }
    for n in 14..=20 {
        assert!(enumerate_partitions(&shape(n), &cn, true).unwrap().is_empty());
    }
}

/// Cells of one piece in a solution moved by `g`.
fn piece(sol: &tangram_core::Solution, tan: TanName, g: Transform) -> Vec<TriCell> {
    let p = sol.placements.iter().find(|p| p.tan == tan).unwrap();
    let mut v: Vec<TriCell> = p.cells.iter().map(|&c| g.apply_cell(c)).collect();
    v.sort();
    v
}

#[test]
fn square_partitions_share_the_endgame() {
    let jp = tan_set(TanSetKind::Japanese);
    let r = shape(7);
    let classes = dedupe(&enumerate_partitions(&r, &jp, true).unwrap(), &r);
    assert_eq!(classes.len(), 3);
    // Move every class so its Tr sits where the first class has it.
    let tr0 = piece(&classes[0].representative, TanName::Tr, Transform::IDENTITY);
    let mut layouts = Vec::new();
    for c in &classes {
        let sol = &c.representative;
        assert_eq!(sol.tan_names().len(), 7);
        let images: Vec<Transform> =
            r.symmetries().iter().copied().filter(|&g| piece(sol, TanName::Tr, g) == tr0).collect();
        assert_eq!(images.len(), 1, "one Tr position up to symmetry");
        let g = images[0];
        let tz = piece(sol, TanName::Tz, g);
        let adjacent = tr0.iter().flat_map(|c| c.neighbours()).any(|n| tz.contains(&n));
        assert!(adjacent, "Tr and Tz touch in {}", c.key);
        layouts.push((tz, piece(sol, TanName::S, g), piece(sol, TanName::P, g)));
    }
    let tz: BTreeSet<_> = layouts.iter().map(|l| l.0.clone()).collect();
    assert_eq!(tz.len(), 2, "two Tz positions next to Tr");
    let mut per_tz: Vec<usize> = tz.iter().map(|t| layouts.iter().filter(|l| &l.0 == t).count()).collect();
    per_tz.sort();
    assert_eq!(per_tz, vec![1, 2]);
    for t in &tz {
        let same: Vec<_> = layouts.iter().filter(|l| &l.0 == t).collect();
        // S is forced by Tr and Tz; the two completions differ in P.
        assert!(same.iter().all(|l| l.1 == same[0].1));
        let ps: BTreeSet<_> = same.iter().map(|l| l.2.clone()).collect();
        assert_eq!(ps.len(), same.len());
    }
}
