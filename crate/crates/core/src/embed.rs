//! Oriented variants of each tan and their placements inside a region.

use std::collections::BTreeSet;

use crate::catalog::TanName;
use crate::trigrid::{Bounds, Region, Transform, TriCell, MAX_BOX_CELLS};

const MASK_WORDS: usize = MAX_BOX_CELLS / 64;

/// Fixed-width bit set over cell indices of a bounding box.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct CellMask([u64; MASK_WORDS]);

impl CellMask {
    pub const EMPTY: CellMask = CellMask([0; MASK_WORDS]);

    pub fn insert(&mut self, index: usize) {
        self.0[index / 64] |= 1 << (index % 64);
    }

    pub fn contains(&self, index: usize) -> bool {
        self.0[index / 64] >> (index % 64) & 1 == 1
    }

    pub fn intersects(&self, other: &CellMask) -> bool {
        self.0.iter().zip(&other.0).any(|(a, b)| a & b != 0)
    }

    pub fn union(&self, other: &CellMask) -> CellMask {
        let mut out = *self;
        for (o, b) in out.0.iter_mut().zip(&other.0) {
            *o |= b;
        }
        out
    }

    pub fn len(&self) -> usize {
        self.0.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.0.iter().all(|&w| w == 0)
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().enumerate().flat_map(|(i, &w)| {
            (0..64).filter(move |b| w >> b & 1 == 1).map(move |b| i * 64 + b)
        })
    }
}

/// One orientation of a tan, translated so its bounding box starts at the origin.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OrientedVariant {
    pub tan: TanName,
    pub transform: Transform,
    /// Sorted ascending.
    pub cells: Vec<TriCell>,
}

/// Translates a cell set so its bounding box starts at the origin; output sorted.
pub fn normalize_cells(cells: impl IntoIterator<Item = TriCell>) -> Vec<TriCell> {
    let cells: Vec<TriCell> = cells.into_iter().collect();
    let Some(b) = Bounds::of_cells(&cells) else {
        return Vec::new();
    };
    let mut out: Vec<TriCell> = cells.iter().map(|c| c.translated(-b.x0, -b.y0)).collect();
    out.sort();
    out
}

/// The distinct orientations of a tan under the eight point-group elements,
/// or the four rotations when reflection is disallowed.
pub fn orientations(tan: TanName, allow_reflection: bool) -> Vec<OrientedVariant> {
    let base = tan.cells();
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for g in Transform::point_group() {
        if g.mirror && !allow_reflection {
            continue;
        }
        let cells = normalize_cells(base.iter().map(|&c| g.apply_cell(c)));
        if seen.insert(cells.clone()) {
            out.push(OrientedVariant { tan, transform: g, cells });
        }
    }
    out
}

/// One placement of one tan inside a region.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding {
    pub tan: TanName,
    /// Index into the tan's variant list.
    pub variant: usize,
    /// Sorted ascending.
    pub cells: Vec<TriCell>,
    /// Bits at the region's bounding-box cell indices.
    pub mask: CellMask,
}

impl Embedding {
    pub fn new(tan: TanName, variant: usize, mut cells: Vec<TriCell>, bounds: &Bounds) -> Embedding {
        cells.sort();
        let mut mask = CellMask::EMPTY;
        for &c in &cells {
            mask.insert(bounds.cell_index(c).expect("embedding lies inside the region box"));
        }
        Embedding { tan, variant, cells, mask }
    }
}

/// Every placement of every variant of `tan` that fits inside `region`.
///
/// Ordered by variant, then by the region cell the variant's first cell lands on.
pub fn embeddings(tan: TanName, region: &Region, allow_reflection: bool) -> Vec<Embedding> {
    let bounds = region.bounds();
    let mut out = Vec::new();
    for (vi, variant) in orientations(tan, allow_reflection).iter().enumerate() {
        let anchor = variant.cells[0];
        for &target in region.cells() {
            if target.q != anchor.q {
                continue;
            }
            let (dx, dy) = (target.x - anchor.x, target.y - anchor.y);
            let placed: Vec<TriCell> = variant.cells.iter().map(|c| c.translated(dx, dy)).collect();
            if placed.iter().all(|&c| region.contains(c)) {
                out.push(Embedding::new(tan, vi, placed, &bounds));
            }
        }
    }
    out
}

/// All placements of a set of tan shapes plus, per region cell, the
/// placements covering it.
#[derive(Debug, Clone)]
pub struct CoverIndex {
    pub embeddings: Vec<Embedding>,
    /// Indexed by position in [`Region::cells`]; values index `embeddings`.
    pub per_cell: Vec<Vec<usize>>,
}

impl CoverIndex {
    /// Cells of the region no placement can reach.
    pub fn uncoverable_cells<'a>(&'a self, region: &'a Region) -> impl Iterator<Item = TriCell> + 'a {
        self.per_cell
            .iter()
            .zip(region.cells())
            .filter(|(list, _)| list.is_empty())
            .map(|(_, &c)| c)
    }

    /// Reorders every candidate list by a permutation of embedding ids.
    /// Used to check that results do not depend on candidate order.
    pub fn reorder_candidates(&mut self, rank: &[usize]) {
        for list in &mut self.per_cell {
            list.sort_by_key(|&e| rank[e]);
        }
    }
}

pub fn build_cover_index(embeddings: Vec<Embedding>, region: &Region) -> CoverIndex {
    let mut per_cell = vec![Vec::new(); region.len()];
    for (ei, e) in embeddings.iter().enumerate() {
        for &c in &e.cells {
            let li = region.local_index(c).expect("embedding lies inside the region");
            per_cell[li].push(ei);
        }
    }
    CoverIndex { embeddings, per_cell }
}
