//! Canonical forms of regions and partitions.
//!
//! Two string formats are produced here; both are stable and documented in
//! `docs/FORMATS.md`.
//!
//! A *region key* is the smallest raster serialization of the region over the
//! eight point-group images, each translated to the origin:
//! `"<W>x<H>:"` followed by `H` rows (bottom row first) separated by `/`, one
//! hex digit per unit square whose bits mark the present quadrants
//! (`N=1, E=2, S=4, W=8`).
//!
//! A *solution key* is the smallest serialization over the region's symmetry
//! group of the entries `<tan>:<i>,<j>,...`, one per placement, where the
//! indices are bounding-box cell indices in ascending order. Entries are
//! sorted by tan (order Ts, S, P, Tm, Tb, Tr, Tz) and then by index list, and
//! joined with `;`. Instance ids are erased, so swapping two identical pieces
//! does not change the key. Keys compare byte-wise.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::catalog::{TanName, TanSet};
use crate::solver::{validate_solution, Placement, Solution, ValidationError};
use crate::trigrid::{Bounds, Quadrant, Region, Transform, TriCell};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CanonError {
    #[error("invalid solution: {0}")]
    Invalid(#[from] ValidationError),
    #[error("malformed region key `{0}`")]
    BadRegionKey(String),
}

fn raster(cells: &[TriCell]) -> String {
    let b = Bounds::of_cells(cells).expect("nonempty");
    let (w, h) = (b.width as usize, b.height as usize);
    let mut squares = vec![0u8; w * h];
    for c in cells {
        let i = (c.y - b.y0) as usize * w + (c.x - b.x0) as usize;
        squares[i] |= 1 << c.q.index();
    }
    let rows: Vec<String> = squares
        .chunks(w)
        .map(|row| row.iter().map(|&v| char::from_digit(v as u32, 16).unwrap()).collect())
        .collect();
    format!("{w}x{h}:{}", rows.join("/"))
}

/// Congruence-invariant key of a region.
pub fn region_key(region: &Region) -> String {
    Transform::point_group()
        .into_iter()
        .map(|g| {
            let image: Vec<TriCell> = region.cells().iter().map(|&c| g.apply_cell(c)).collect();
            raster(&image)
        })
        .min()
        .expect("eight candidates")
}

/// Rebuilds the region a key describes, anchored at the origin.
pub fn parse_region_key(key: &str) -> Result<Region, CanonError> {
    let bad = || CanonError::BadRegionKey(key.to_string());
    let (dims, body) = key.split_once(':').ok_or_else(bad)?;
    let (w, h) = dims.split_once('x').ok_or_else(bad)?;
    let w: usize = w.parse().map_err(|_| bad())?;
    let h: usize = h.parse().map_err(|_| bad())?;
    let rows: Vec<&str> = body.split('/').collect();
    if rows.len() != h || w == 0 {
        return Err(bad());
    }
    let mut cells = Vec::new();
    for (y, row) in rows.iter().enumerate() {
        if row.chars().count() != w {
            return Err(bad());
        }
        for (x, ch) in row.chars().enumerate() {
            let bits = ch.to_digit(16).ok_or_else(bad)?;
            if ch.is_ascii_uppercase() {
                return Err(bad());
            }
            for q in Quadrant::ALL {
                if bits >> q.index() & 1 == 1 {
                    cells.push(TriCell::new(x as i32, y as i32, q));
                }
            }
        }
    }
    Region::new(cells).map_err(|_| bad())
}

fn entry_indices(cells: &[TriCell], t: Transform, bounds: &Bounds) -> Vec<usize> {
    let mut idx: Vec<usize> = cells
        .iter()
        .map(|&c| bounds.cell_index(t.apply_cell(c)).expect("symmetry keeps cells in the box"))
        .collect();
    idx.sort_unstable();
    idx
}

fn serialize(entries: &[(TanName, Option<u8>, Vec<usize>)]) -> String {
    let mut out = String::new();
    for (i, (tan, instance, idx)) in entries.iter().enumerate() {
        if i > 0 {
            out.push(';');
        }
        out.push_str(tan.as_str());
        if let Some(k) = instance {
            out.push('#');
            out.push_str(&k.to_string());
        }
        out.push(':');
        let nums: Vec<String> = idx.iter().map(usize::to_string).collect();
        out.push_str(&nums.join(","));
    }
    out
}

/// Serialization of `g(sol)`; with `colored` the instance ids are kept.
fn image_key(sol: &Solution, g: Transform, bounds: &Bounds, colored: bool) -> String {
    let mut entries: Vec<(TanName, Option<u8>, Vec<usize>)> = sol
        .placements
        .iter()
        .map(|p| (p.tan, colored.then_some(p.instance), entry_indices(&p.cells, g, bounds)))
        .collect();
    entries.sort();
    serialize(&entries)
}

fn transform_solution(sol: &Solution, g: Transform) -> Solution {
    Solution::from_pieces(
        sol.placements
            .iter()
            .map(|p| (p.tan, p.cells.iter().map(|&c| g.apply_cell(c)).collect())),
    )
}

/// Orbit representative of a partition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalSolution {
    pub key: String,
    /// The orbit member whose serialization is the key.
    pub representative: Solution,
    /// Distinct partitions (identical pieces unordered) in the symmetry orbit.
    pub orbit_size: usize,
    /// How many deduplicated inputs fell into this class.
    pub labeled_count: usize,
}

/// Key and orbit data without validating the input.
fn canonical_parts(sol: &Solution, region: &Region) -> (String, Transform, usize) {
    let bounds = region.bounds();
    let mut images: BTreeSet<String> = BTreeSet::new();
    let mut best: Option<(String, Transform)> = None;
    for &g in region.symmetries() {
        let k = image_key(sol, g, &bounds, false);
        if best.as_ref().is_none_or(|(b, _)| &k < b) {
            best = Some((k.clone(), g));
        }
        images.insert(k);
    }
    let (key, g) = best.expect("symmetry group contains the identity");
    (key, g, images.len())
}

/// Canonical key of a partition, invariant under region symmetries and under
/// swaps of identical pieces.
pub fn solution_key(sol: &Solution, region: &Region) -> String {
    canonical_parts(sol, region).0
}

pub fn canonicalize(sol: &Solution, region: &Region) -> Result<CanonicalSolution, CanonError> {
    let tans = TanSet::custom(&sol.placements.iter().map(|p| (p.tan, 1)).collect::<Vec<_>>());
    validate_solution(sol, region, &tans)?;
    let (key, g, orbit_size) = canonical_parts(sol, region);
    Ok(CanonicalSolution { key, representative: transform_solution(sol, g), orbit_size, labeled_count: 1 })
}

/// One entry per distinct key, sorted by key.
pub fn dedupe(solutions: &[Solution], region: &Region) -> Vec<CanonicalSolution> {
    let mut classes: BTreeMap<String, CanonicalSolution> = BTreeMap::new();
    for sol in solutions {
        let (key, g, orbit_size) = canonical_parts(sol, region);
        classes
            .entry(key.clone())
            .and_modify(|c| c.labeled_count += 1)
            .or_insert_with(|| CanonicalSolution {
                key,
                representative: transform_solution(sol, g),
                orbit_size,
                labeled_count: 1,
            });
    }
    classes.into_values().collect()
}

/// Key of a partition whose identical pieces are told apart.
pub fn colored_key(sol: &Solution, region: &Region) -> String {
    let bounds = region.bounds();
    region
        .symmetries()
        .iter()
        .map(|&g| image_key(sol, g, &bounds, true))
        .min()
        .expect("symmetry group contains the identity")
}

fn permutations(n: usize) -> Vec<Vec<u8>> {
    if n == 0 {
        return vec![Vec::new()];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for pos in 0..=p.len() {
            let mut q = p.clone();
            q.insert(pos, (n - 1) as u8);
            out.push(q);
        }
    }
    out
}

/// Every way of numbering identical pieces of a partition.
pub fn relabelings(sol: &Solution) -> Vec<Solution> {
    let mut out = vec![Vec::<Placement>::new()];
    for name in TanName::ALL {
        let group: Vec<&Placement> = sol.placements.iter().filter(|p| p.tan == name).collect();
        if group.is_empty() {
            continue;
        }
        let perms = permutations(group.len());
        let mut next = Vec::with_capacity(out.len() * perms.len());
        for prefix in &out {
            for perm in &perms {
                let mut v = prefix.clone();
                v.extend(group.iter().zip(perm).map(|(p, &k)| Placement { instance: k, ..(*p).clone() }));
                next.push(v);
            }
        }
        out = next;
    }
    out.into_iter()
        .map(|mut placements| {
            placements.sort();
            Solution { placements }
        })
        .collect()
}

/// Number of partitions when identical pieces are distinguishable, up to
/// region symmetry.
pub fn colored_count(canonicals: &[CanonicalSolution], region: &Region) -> usize {
    colored_classes(canonicals, region).iter().map(Vec::len).sum()
}

/// For each canonical partition, its distinct colored representatives.
pub fn colored_classes(canonicals: &[CanonicalSolution], region: &Region) -> Vec<Vec<Solution>> {
    canonicals
        .iter()
        .map(|c| {
            let mut seen = BTreeMap::new();
            for s in relabelings(&c.representative) {
                seen.entry(colored_key(&s, region)).or_insert(s);
            }
            seen.into_values().collect()
        })
        .collect()
}
