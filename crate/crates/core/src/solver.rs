//! Backtracking exact-cover search over tan placements.
//!
//! The search always extends the lowest-index uncovered cell of the region and
//! branches over the placements covering it that are disjoint from what is
//! already placed. Identical pieces share one placement list, so every
//! unordered arrangement of, say, the two medium triangles is found exactly
//! once.

use std::collections::BTreeSet;
use std::ops::ControlFlow;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon;
use crate::catalog::{TanName, TanSet};
use crate::embed::{build_cover_index, embeddings, CellMask, CoverIndex};
use crate::trigrid::{Region, TriCell};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SolveError {
    #[error("region has {region} cells but the tan set covers {tans}")]
    AreaMismatch { region: usize, tans: usize },
}

/// One placed piece of a solution.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Placement {
    pub tan: TanName,
    /// Distinguishes pieces of the same shape, counting from 0.
    pub instance: u8,
    /// Sorted ascending.
    pub cells: Vec<TriCell>,
}

/// A complete disjoint cover of a region. Placements are sorted by
/// `(tan, instance)`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Solution {
    pub placements: Vec<Placement>,
}

impl Solution {
    /// Builds a solution from unlabeled pieces; instances of the same tan are
    /// numbered in ascending order of their cell lists.
    pub fn from_pieces(pieces: impl IntoIterator<Item = (TanName, Vec<TriCell>)>) -> Solution {
        let mut raw: Vec<(TanName, Vec<TriCell>)> = pieces
            .into_iter()
            .map(|(t, mut c)| {
                c.sort();
                (t, c)
            })
            .collect();
        raw.sort();
        let mut placements: Vec<Placement> = Vec::with_capacity(raw.len());
        for (tan, cells) in raw {
            let instance = placements.iter().filter(|p| p.tan == tan).count() as u8;
            placements.push(Placement { tan, instance, cells });
        }
        Solution { placements }
    }

    pub fn tan_names(&self) -> Vec<TanName> {
        self.placements.iter().map(|p| p.tan).collect()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("pieces {found:?} do not match the tan set {expected:?}")]
    WrongPieces { expected: Vec<TanName>, found: Vec<TanName> },
    #[error("{tan} instance {instance} is not congruent to the {tan} tan")]
    WrongShape { tan: TanName, instance: u8 },
    #[error("cell {0} lies outside the region")]
    OutsideRegion(TriCell),
    #[error("cell {0} is covered twice")]
    Overlap(TriCell),
    #[error("{0} region cells are left uncovered")]
    Uncovered(usize),
    #[error("instance numbering of {0} is not 0, 1, ...")]
    BadInstances(TanName),
}

/// Checks that a solution is a disjoint exact cover of the region by the tan
/// set. Uses only plain set operations and region congruence, nothing from
/// the search itself.
pub fn validate_solution(sol: &Solution, region: &Region, tans: &TanSet) -> Result<(), ValidationError> {
    let mut found = sol.tan_names();
    found.sort();
    let expected = tans.pieces();
    if found != expected {
        return Err(ValidationError::WrongPieces { expected, found });
    }
    for name in TanName::ALL {
        let mut ids: Vec<u8> = sol.placements.iter().filter(|p| p.tan == name).map(|p| p.instance).collect();
        ids.sort();
        if ids.iter().enumerate().any(|(i, &id)| id as usize != i) {
            return Err(ValidationError::BadInstances(name));
        }
    }
    let mut covered = BTreeSet::new();
    for p in &sol.placements {
        let piece = Region::new(p.cells.iter().copied())
            .map_err(|_| ValidationError::WrongShape { tan: p.tan, instance: p.instance })?;
        let model = Region::new(p.tan.cells()).expect("tan raster is nonempty");
        if piece.len() != p.cells.len() || model.congruence_to(&piece).is_none() {
            return Err(ValidationError::WrongShape { tan: p.tan, instance: p.instance });
        }
        for &c in &p.cells {
            if !region.contains(c) {
                return Err(ValidationError::OutsideRegion(c));
            }
            if !covered.insert(c) {
                return Err(ValidationError::Overlap(c));
            }
        }
    }
    if covered.len() != region.len() {
        return Err(ValidationError::Uncovered(region.len() - covered.len()));
    }
    Ok(())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SearchOptions {
    /// Whether pieces may be turned over.
    pub allow_reflection: bool,
    /// Reject branches that leave an uncovered pocket no remaining pieces can fill.
    pub prune: bool,
    /// Split the top-level branches across threads.
    pub parallel: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions { allow_reflection: true, prune: true, parallel: true }
    }
}

/// A prepared search: placements indexed by region cell.
#[derive(Debug, Clone)]
pub struct Problem {
    region: Region,
    tans: TanSet,
    options: SearchOptions,
    index: CoverIndex,
    // Per embedding: tan slot and mask over region-local cell positions.
    slots: Vec<usize>,
    local_masks: Vec<CellMask>,
    neighbours: Vec<Vec<usize>>,
}

impl Problem {
    pub fn new(region: &Region, tans: &TanSet, options: SearchOptions) -> Result<Problem, SolveError> {
        if region.len() != tans.total_area_ts() {
            return Err(SolveError::AreaMismatch { region: region.len(), tans: tans.total_area_ts() });
        }
        let all = tans
            .tans
            .iter()
            .flat_map(|t| embeddings(t.name, region, options.allow_reflection))
            .collect();
        let index = build_cover_index(all, region);
        Ok(Problem::from_index(region, tans, options, index))
    }

    /// A problem over an explicit placement index.
    pub fn from_index(region: &Region, tans: &TanSet, options: SearchOptions, index: CoverIndex) -> Problem {
        let slots = index
            .embeddings
            .iter()
            .map(|e| tans.tans.iter().position(|t| t.name == e.tan).expect("embedding of a set tan"))
            .collect();
        let local_masks = index
            .embeddings
            .iter()
            .map(|e| {
                let mut m = CellMask::EMPTY;
                for &c in &e.cells {
                    m.insert(region.local_index(c).expect("embedding inside region"));
                }
                m
            })
            .collect();
        let neighbours = region
            .cells()
            .iter()
            .map(|c| c.neighbours().iter().filter_map(|&n| region.local_index(n)).collect())
            .collect();
        Problem {
            region: region.clone(),
            tans: tans.clone(),
            options,
            index,
            slots,
            local_masks,
            neighbours,
        }
    }

    pub fn region(&self) -> &Region {
        &self.region
    }

    pub fn index(&self) -> &CoverIndex {
        &self.index
    }

    /// Mutable access, e.g. to permute candidate order.
    pub fn index_mut(&mut self) -> &mut CoverIndex {
        &mut self.index
    }

    fn initial_remaining(&self) -> Vec<usize> {
        self.tans.tans.iter().map(|t| t.multiplicity).collect()
    }

    fn first_uncovered(&self, covered: &CellMask) -> Option<usize> {
        (0..self.region.len()).find(|&i| !covered.contains(i))
    }

    /// Every uncovered pocket must be fillable by a sub-multiset of the
    /// remaining pieces, judged by area alone.
    fn pockets_fillable(&self, covered: &CellMask, remaining: &[usize]) -> bool {
        let n = self.region.len();
        let mut reachable = vec![false; n + 1];
        reachable[0] = true;
        for (slot, &count) in remaining.iter().enumerate() {
            let area = self.tans.tans[slot].area_ts();
            for _ in 0..count {
                for s in (area..=n).rev() {
                    reachable[s] |= reachable[s - area];
                }
            }
        }
        let mut seen = *covered;
        let mut stack = Vec::new();
        for start in 0..n {
            if seen.contains(start) {
                continue;
            }
            seen.insert(start);
            stack.push(start);
            let mut size = 0;
            while let Some(i) = stack.pop() {
                size += 1;
                for &j in &self.neighbours[i] {
                    if !seen.contains(j) {
                        seen.insert(j);
                        stack.push(j);
                    }
                }
            }
            if !reachable[size] {
                return false;
            }
        }
        true
    }

    fn candidates<'a>(
        &'a self,
        covered: &'a CellMask,
        remaining: &'a [usize],
        cell: usize,
    ) -> impl Iterator<Item = usize> + 'a {
        self.index.per_cell[cell]
            .iter()
            .copied()
            .filter(move |&e| remaining[self.slots[e]] > 0 && !self.local_masks[e].intersects(covered))
    }

    fn search<F>(&self, covered: CellMask, remaining: &mut [usize], stack: &mut Vec<usize>, visit: &mut F) -> ControlFlow<()>
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let Some(cell) = self.first_uncovered(&covered) else {
            return visit(stack);
        };
        let options: Vec<usize> = self.candidates(&covered, remaining, cell).collect();
        for e in options {
            let next = covered.union(&self.local_masks[e]);
            let slot = self.slots[e];
            remaining[slot] -= 1;
            if !self.options.prune || self.pockets_fillable(&next, remaining) {
                stack.push(e);
                let flow = self.search(next, remaining, stack, visit);
                stack.pop();
                if flow.is_break() {
                    remaining[slot] += 1;
                    return flow;
                }
            }
            remaining[slot] += 1;
        }
        ControlFlow::Continue(())
    }

    /// Walks every complete cover in traversal order; `visit` receives the
    /// embedding ids in placement order and may stop the walk.
    pub fn visit<F>(&self, mut visit: F)
    where
        F: FnMut(&[usize]) -> ControlFlow<()>,
    {
        let mut remaining = self.initial_remaining();
        let _ = self.search(CellMask::EMPTY, &mut remaining, &mut Vec::new(), &mut visit);
    }

    fn to_solution(&self, ids: &[usize]) -> Solution {
        Solution::from_pieces(ids.iter().map(|&e| {
            let emb = &self.index.embeddings[e];
            (emb.tan, emb.cells.clone())
        }))
    }

    /// All labeled solutions in traversal order.
    pub fn solve(&self) -> Vec<Solution> {
        if !self.options.parallel {
            let mut out = Vec::new();
            self.visit(|ids| {
                out.push(self.to_solution(ids));
                ControlFlow::Continue(())
            });
            return out;
        }
        let Some(first) = self.first_uncovered(&CellMask::EMPTY) else {
            return vec![Solution { placements: Vec::new() }];
        };
        let init = self.initial_remaining();
        let top: Vec<usize> = self.candidates(&CellMask::EMPTY, &init, first).collect();
        top.par_iter()
            .map(|&e| {
                let mut remaining = init.clone();
                remaining[self.slots[e]] -= 1;
                let covered = self.local_masks[e];
                let mut out = Vec::new();
                if !self.options.prune || self.pockets_fillable(&covered, &remaining) {
                    let mut stack = vec![e];
                    let _ = self.search(covered, &mut remaining, &mut stack, &mut |ids: &[usize]| {
                        out.push(self.to_solution(ids));
                        ControlFlow::Continue(())
                    });
                }
                out
            })
            .collect::<Vec<_>>()
            .into_iter()
            .flatten()
            .collect()
    }

    pub fn exists(&self) -> bool {
        let mut found = false;
        self.visit(|_| {
            found = true;
            ControlFlow::Break(())
        });
        found
    }

    pub fn count(&self) -> usize {
        let mut n = 0;
        self.visit(|_| {
            n += 1;
            ControlFlow::Continue(())
        });
        n
    }
}

/// All labeled partitions of `region` by `tans`.
pub fn enumerate_partitions(region: &Region, tans: &TanSet, allow_reflection: bool) -> Result<Vec<Solution>, SolveError> {
    let options = SearchOptions { allow_reflection, ..SearchOptions::default() };
    Ok(Problem::new(region, tans, options)?.solve())
}

/// Whether any partition exists; stops at the first one.
pub fn exists_partition(region: &Region, tans: &TanSet) -> Result<bool, SolveError> {
    Ok(Problem::new(region, tans, SearchOptions::default())?.exists())
}

/// How to count partitions.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum CountMode {
    /// Raw search output: distinct placements, identical pieces unordered.
    Labeled,
    /// Up to region symmetry with identical pieces interchangeable.
    Canonical,
    /// Up to region symmetry with identical pieces told apart.
    Colored,
}

impl CountMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CountMode::Labeled => "labeled",
            CountMode::Canonical => "canonical",
            CountMode::Colored => "colored",
        }
    }
}

pub fn count_partitions(region: &Region, tans: &TanSet, mode: CountMode) -> Result<usize, SolveError> {
    let labeled = enumerate_partitions(region, tans, true)?;
    Ok(match mode {
        CountMode::Labeled => labeled.len(),
        CountMode::Canonical => canon::dedupe(&labeled, region).len(),
        CountMode::Colored => canon::colored_count(&canon::dedupe(&labeled, region), region),
    })
}
