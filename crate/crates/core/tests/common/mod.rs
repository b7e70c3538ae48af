//! Oracles that share no search code with the library.

#![allow(dead_code)]

use std::collections::BTreeSet;

use tangram_core::catalog::ShapeDescriptor;
use tangram_core::trigrid::rasterize_polygon;
use tangram_core::{Catalog, Point, Region, TanName, TriCell};

/// Linear map of the dihedral group on doubled coordinates: mirror in x
/// first, then `rot` quarter turns counterclockwise.
pub fn euclid(rot: u8, mirror: bool, x: i32, y: i32) -> (i32, i32) {
    let (mut x, mut y) = if mirror { (-x, y) } else { (x, y) };
    for _ in 0..rot {
        (x, y) = (-y, x);
    }
    (x, y)
}

/// Every distinct orientation of a tan, obtained by moving its outline and
/// rasterizing again.
pub fn oracle_orientations(tan: TanName) -> BTreeSet<Vec<TriCell>> {
    let mut out = BTreeSet::new();
    for mirror in [false, true] {
        for rot in 0..4 {
            let mut poly: Vec<Point> = tan
                .polygon()
                .iter()
                .map(|p| {
                    let (x, y) = euclid(rot, mirror, p.x2, p.y2);
                    Point::from_doubled(x, y)
                })
                .collect();
            if mirror {
                poly.reverse();
            }
            let cells = rasterize_polygon(&poly).expect("moved outline is a lattice polygon");
            out.insert(normalize(cells.into_iter()));
        }
    }
    out
}

pub fn normalize(cells: impl Iterator<Item = TriCell>) -> Vec<TriCell> {
    let cells: Vec<TriCell> = cells.collect();
    let x0 = cells.iter().map(|c| c.x).min().unwrap();
    let y0 = cells.iter().map(|c| c.y).min().unwrap();
    let mut v: Vec<TriCell> = cells.iter().map(|c| TriCell::new(c.x - x0, c.y - y0, c.q)).collect();
    v.sort();
    v
}

/// A partition as a set of (tan, cells) with identical pieces unordered.
pub type Cover = BTreeSet<(TanName, Vec<TriCell>)>;

/// Plain backtracking in fixed piece order over u128 cell masks. Every
/// ordering of identical pieces is found, so results are collected as sets.
pub fn brute_force(region: &Region, pieces: &[TanName]) -> BTreeSet<Cover> {
    let cells: Vec<TriCell> = region.cells().to_vec();
    assert!(cells.len() <= 128);
    let pos = |c: &TriCell| cells.iter().position(|d| d == c);
    let mut options: Vec<Vec<(u128, Vec<TriCell>)>> = Vec::new();
    for &tan in pieces {
        let mut list = Vec::new();
        for shape in oracle_orientations(tan) {
            for &anchor in &cells {
                let (dx, dy) = (anchor.x - shape[0].x, anchor.y - shape[0].y);
                if anchor.q != shape[0].q {
                    continue;
                }
                let placed: Vec<TriCell> = shape.iter().map(|c| TriCell::new(c.x + dx, c.y + dy, c.q)).collect();
                let idx: Option<Vec<usize>> = placed.iter().map(pos).collect();
                if let Some(idx) = idx {
                    list.push((idx.iter().fold(0u128, |m, &i| m | 1 << i), placed));
                }
            }
        }
        options.push(list);
    }
    let full: u128 = if cells.len() == 128 { u128::MAX } else { (1 << cells.len()) - 1 };
    let mut out = BTreeSet::new();
    let mut stack: Vec<(TanName, Vec<TriCell>)> = Vec::new();
    fn go(
        k: usize,
        used: u128,
        full: u128,
        pieces: &[TanName],
        options: &[Vec<(u128, Vec<TriCell>)>],
        stack: &mut Vec<(TanName, Vec<TriCell>)>,
        out: &mut BTreeSet<Cover>,
    ) {
        if k == pieces.len() {
            if used == full {
                out.insert(stack.iter().cloned().collect());
            }
            return;
        }
        for (m, cells) in &options[k] {
            if used & m == 0 {
                stack.push((pieces[k], cells.clone()));
                go(k + 1, used | m, full, pieces, options, stack, out);
                stack.pop();
            }
        }
    }
    go(0, 0, full, pieces, &options, &mut stack, &mut out);
    out
}

/// Images of a cover under the eight point-group elements that map the
/// region onto itself.
pub fn cover_orbit(cover: &Cover, region: &Region) -> BTreeSet<Cover> {
    let target: BTreeSet<TriCell> = region.cells().iter().copied().collect();
    let mut out = BTreeSet::new();
    for mirror in [false, true] {
        for rot in 0..4 {
            let img = |c: &TriCell| {
                // Move the centroid and find the cell that contains it.
                let (cx, cy) = c.centroid6();
                let (x, y) = euclid(rot, mirror, cx, cy);
                TriCell::containing(x, y).unwrap()
            };
            let moved: Vec<TriCell> = target.iter().map(img).collect();
            let dx = target.iter().map(|c| c.x).min().unwrap() - moved.iter().map(|c| c.x).min().unwrap();
            let dy = target.iter().map(|c| c.y).min().unwrap() - moved.iter().map(|c| c.y).min().unwrap();
            let shifted: BTreeSet<TriCell> = moved.iter().map(|c| TriCell::new(c.x + dx, c.y + dy, c.q)).collect();
            if shifted != target {
                continue;
            }
            let image: Cover = cover
                .iter()
                .map(|(t, cells)| {
                    let mut v: Vec<TriCell> =
                        cells.iter().map(img).map(|c| TriCell::new(c.x + dx, c.y + dy, c.q)).collect();
                    v.sort();
                    (*t, v)
                })
                .collect();
            out.insert(image);
        }
    }
    out
}

/// Number of symmetry classes among a set of covers.
pub fn class_count(covers: &BTreeSet<Cover>, region: &Region) -> usize {
    let mut seen: BTreeSet<Cover> = BTreeSet::new();
    let mut classes = 0;
    for c in covers {
        if seen.contains(c) {
            continue;
        }
        classes += 1;
        seen.extend(cover_orbit(c, region));
    }
    classes
}

pub fn japanese_pieces() -> Vec<TanName> {
    use TanName::*;
    vec![Ts, S, P, Tm, Tm, Tr, Tz]
}

pub fn chinese_pieces() -> Vec<TanName> {
    use TanName::*;
    vec![Ts, Ts, S, P, Tm, Tb, Tb]
}

pub fn strip() -> Region {
    ShapeDescriptor { width: 8, height: 1, cuts: [0; 4] }.region().unwrap()
}

pub fn catalog() -> Catalog {
    Catalog::with_default_numbering().unwrap()
}

pub fn shape(n: u8) -> Region {
    catalog().shape_by_number(n).unwrap().region.clone()
}
