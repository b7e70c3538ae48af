//! Structure of the one-unit-tall strip partitions.
//!
//! In a partition of the 1x8 rectangle every piece spans the full height, so
//! the pieces sit in a row and each joint between neighbours is a straight
//! bottom-to-top segment: vertical (length 1) or skew (length √2). Cutting
//! at a joint and swapping the two halves relates the partitions of the three
//! strips:
//!
//! * at the vertical joint the halves reassemble into another rectangle
//!   partition, its *twin*;
//! * at a skew joint they reassemble, as they are or with one half turned
//!   upside down, into a partition of the parallelogram strip and one of the
//!   isosceles trapezium strip.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::Serialize;
use thiserror::Error;

use crate::canon::{dedupe, CanonicalSolution};
use crate::catalog::{tan_set, Catalog, ShapeDescriptor, TanName, TanSetKind};
use crate::solver::{enumerate_partitions, validate_solution, Placement, SolveError, Solution};
use crate::trigrid::{Quadrant, Region, Transform, TriCell};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StripError {
    #[error("region is not a 1-tall rectangle strip")]
    NotAStrip,
    #[error("partition has {0} vertical cut edges, expected exactly one")]
    VerticalCuts(usize),
    #[error("cut edge at {0} is not skew")]
    NotSkew(i32),
    #[error("cut edge at {0} does not separate the partition")]
    NotACut(i32),
    #[error("reassembled strip is neither the trapezium nor the parallelogram strip")]
    UnknownReassembly,
    #[error("reassembled strips have the same shape")]
    SameShape,
    #[error("reassembled partition is invalid: {0}")]
    Invalid(String),
    #[error(transparent)]
    Solve(#[from] SolveError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum CutKind {
    Vertical,
    Skew,
}

/// A straight bottom-to-top segment of a strip lying on piece boundaries.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CutEdge {
    /// Leftmost x the segment touches.
    pub position: i32,
    pub kind: CutKind,
    /// x where the segment meets the bottom edge (y = 0).
    pub bottom_x: i32,
    /// x where the segment meets the top edge (y = 1).
    pub top_x: i32,
}

impl CutEdge {
    fn vertical(x: i32) -> CutEdge {
        CutEdge { position: x, kind: CutKind::Vertical, bottom_x: x, top_x: x }
    }

    fn skew(bottom_x: i32, top_x: i32) -> CutEdge {
        CutEdge { position: bottom_x.min(top_x), kind: CutKind::Skew, bottom_x, top_x }
    }

    /// Whether a cell of the strip row lies left of the segment.
    pub fn is_left(&self, c: TriCell) -> bool {
        match self.kind {
            CutKind::Vertical => c.x < self.bottom_x,
            CutKind::Skew => {
                let k = self.position;
                if c.x != k {
                    return c.x < k;
                }
                if self.top_x > self.bottom_x {
                    // Runs along the square's rising diagonal.
                    matches!(c.q, Quadrant::W | Quadrant::N)
                } else {
                    matches!(c.q, Quadrant::W | Quadrant::S)
                }
            }
        }
    }
}

impl fmt::Display for CutEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.kind {
            CutKind::Vertical => "vertical",
            CutKind::Skew => "skew",
        };
        write!(f, "{kind} ({},0)-({},1)", self.bottom_x, self.top_x)
    }
}

/// Width of a region that is a full `width x 1` rectangle anchored at the origin.
fn strip_width(region: &Region) -> Result<i32, StripError> {
    let b = region.bounds();
    if b.height != 1 || b.x0 != 0 || b.y0 != 0 || region.len() != 4 * b.width as usize {
        return Err(StripError::NotAStrip);
    }
    Ok(b.width)
}

fn separates(cut: &CutEdge, placements: &[Placement]) -> bool {
    placements.iter().all(|p| {
        let left = p.cells.iter().filter(|&&c| cut.is_left(c)).count();
        left == 0 || left == p.cells.len()
    })
}

/// Every full-height segment of a rectangle strip that no piece crosses,
/// sorted by position.
pub fn cut_edges(placements: &[Placement], region: &Region) -> Result<Vec<CutEdge>, StripError> {
    let width = strip_width(region)?;
    let mut candidates = Vec::new();
    for k in 0..width {
        if k > 0 {
            candidates.push(CutEdge::vertical(k));
        }
        candidates.push(CutEdge::skew(k, k + 1));
        candidates.push(CutEdge::skew(k + 1, k));
    }
    let mut out: Vec<CutEdge> = candidates.into_iter().filter(|c| separates(c, placements)).collect();
    out.sort();
    Ok(out)
}

fn split(sol: &Solution, cut: &CutEdge) -> Result<(Vec<Placement>, Vec<Placement>), StripError> {
    let (left, right): (Vec<Placement>, Vec<Placement>) =
        sol.placements.iter().cloned().partition(|p| cut.is_left(p.cells[0]));
    if !separates(cut, &sol.placements) || left.is_empty() || right.is_empty() {
        return Err(StripError::NotACut(cut.position));
    }
    Ok((left, right))
}

fn moved(placements: &[Placement], t: Transform) -> Vec<(TanName, Vec<TriCell>)> {
    placements
        .iter()
        .map(|p| (p.tan, p.cells.iter().map(|&c| t.apply_cell(c)).collect()))
        .collect()
}

fn max_x(placements: &[Placement]) -> i32 {
    placements.iter().flat_map(|p| p.cells.iter().map(|c| c.x)).max().unwrap_or(0)
}

fn min_x(placements: &[Placement]) -> i32 {
    placements.iter().flat_map(|p| p.cells.iter().map(|c| c.x)).min().unwrap_or(0)
}

/// Swaps the two halves: the right half moves to the origin, the left half
/// (optionally turned upside down) is glued to its right end.
fn reassemble(left: &[Placement], right: &[Placement], flip_left: bool) -> Solution {
    let right_shift = Transform::translation(-min_x(right), 0);
    let right_end = max_x(right) - min_x(right);
    let base = if flip_left { Transform::flip_vertical().then_translate(0, 1) } else { Transform::IDENTITY };
    let left_shift = base.then_translate(right_end + 1 - min_x(left), 0);
    Solution::from_pieces(moved(right, right_shift).into_iter().chain(moved(left, left_shift)))
}

/// The rectangle partition obtained by cutting at the vertical joint and
/// swapping the halves.
pub fn twin_of(sol: &CanonicalSolution, region: &Region) -> Result<CanonicalSolution, StripError> {
    let rep = &sol.representative;
    let verticals: Vec<CutEdge> = cut_edges(&rep.placements, region)?
        .into_iter()
        .filter(|c| c.kind == CutKind::Vertical)
        .collect();
    let [cut] = verticals[..] else {
        return Err(StripError::VerticalCuts(verticals.len()));
    };
    let (left, right) = split(rep, &cut)?;
    let swapped = reassemble(&left, &right, false);
    validate_solution(&swapped, region, &tan_set(TanSetKind::Japanese))
        .map_err(|e| StripError::Invalid(e.to_string()))?;
    let mut out = dedupe(&[swapped], region);
    Ok(out.remove(0))
}

/// The catalog strips a skew cut-and-paste can produce.
#[derive(Debug, Clone)]
pub struct StripTargets {
    pub rectangle: Region,
    pub trapezium: Region,
    pub parallelogram: Region,
}

impl StripTargets {
    pub fn from_catalog(catalog: &Catalog) -> StripTargets {
        // Catalog regions are stored in key orientation, which stands strips upright.
        let get = |n| {
            let r = &catalog.shape_by_number(n).expect("pinned strip shapes").region;
            if r.bounds().height == 1 {
                r.clone()
            } else {
                r.transformed(Transform::rotation(1)).normalized()
            }
        };
        StripTargets { rectangle: get(14), trapezium: get(15), parallelogram: get(16) }
    }

    /// The three strips built directly from their outlines.
    pub fn standard() -> StripTargets {
        let d = |width, cuts| ShapeDescriptor { width, height: 1, cuts }.region().expect("strip outline");
        StripTargets { rectangle: d(8, [0; 4]), trapezium: d(9, [0, 0, 1, 1]), parallelogram: d(9, [1, 0, 1, 0]) }
    }
}

/// Moves a partition onto a congruent target region.
fn map_onto(sol: &Solution, target: &Region) -> Option<Solution> {
    let covered = Region::new(sol.placements.iter().flat_map(|p| p.cells.iter().copied())).ok()?;
    let g = covered.congruence_to(target)?;
    Some(Solution::from_pieces(moved(&sol.placements, g)))
}

/// Cuts a rectangle partition at a skew joint and reassembles the halves in
/// swapped order both ways. Returns `(trapezium partition, parallelogram
/// partition)`, each canonical on its target region.
pub fn cut_and_paste(
    sol: &CanonicalSolution,
    cut: &CutEdge,
    targets: &StripTargets,
) -> Result<(CanonicalSolution, CanonicalSolution), StripError> {
    if cut.kind != CutKind::Skew {
        return Err(StripError::NotSkew(cut.position));
    }
    strip_width(&targets.rectangle)?;
    let (left, right) = split(&sol.representative, cut)?;
    let mut trapezium = None;
    let mut parallelogram = None;
    for flip in [false, true] {
        let joined = reassemble(&left, &right, flip);
        let (slot, target) = if let Some(s) = map_onto(&joined, &targets.trapezium) {
            (&mut trapezium, (s, &targets.trapezium))
        } else if let Some(s) = map_onto(&joined, &targets.parallelogram) {
            (&mut parallelogram, (s, &targets.parallelogram))
        } else {
            return Err(StripError::UnknownReassembly);
        };
        let (mapped, region) = target;
        validate_solution(&mapped, region, &tan_set(TanSetKind::Japanese))
            .map_err(|e| StripError::Invalid(e.to_string()))?;
        if slot.is_some() {
            return Err(StripError::SameShape);
        }
        *slot = Some(dedupe(&[mapped], region).remove(0));
    }
    match (trapezium, parallelogram) {
        (Some(t), Some(p)) => Ok((t, p)),
        _ => Err(StripError::SameShape),
    }
}

/// Summary of the strip cut-and-paste check.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct StripReport {
    pub rectangle_partitions: usize,
    /// Rectangle partitions whose joints are not exactly 1 vertical + 5 skew.
    pub irregular_joints: usize,
    /// Rectangle partitions whose vertical joint is not a side of the square.
    pub vertical_joint_off_square: usize,
    pub twin_pairs: usize,
    pub self_twins: usize,
    pub twin_is_involution: bool,
    /// Pairs of twins whose cut-and-paste results disagree.
    pub twin_disagreements: usize,
    pub generated_trapezium: usize,
    pub enumerated_trapezium: usize,
    pub trapezium_sets_equal: bool,
    pub generated_parallelogram: usize,
    pub enumerated_parallelogram: usize,
    pub parallelogram_sets_equal: bool,
    /// (pair, skew cut) -> outputs is one-to-one.
    pub injective: bool,
    pub pass: bool,
}

impl fmt::Display for StripReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "rectangle strip partitions: {}", self.rectangle_partitions)?;
        writeln!(f, "  irregular joint structure: {}", self.irregular_joints)?;
        writeln!(f, "  vertical joint off the square: {}", self.vertical_joint_off_square)?;
        writeln!(
            f,
            "twin pairs: {} (self-twins {}, involution {})",
            self.twin_pairs, self.self_twins, self.twin_is_involution
        )?;
        writeln!(f, "  twins disagreeing after cut-and-paste: {}", self.twin_disagreements)?;
        writeln!(
            f,
            "trapezium strip: generated {} = enumerated {}: {}",
            self.generated_trapezium, self.enumerated_trapezium, self.trapezium_sets_equal
        )?;
        writeln!(
            f,
            "parallelogram strip: generated {} = enumerated {}: {}",
            self.generated_parallelogram, self.enumerated_parallelogram, self.parallelogram_sets_equal
        )?;
        writeln!(f, "injective: {}", self.injective)?;
        write!(f, "result: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

fn vertical_joint_on_square(sol: &Solution, region: &Region) -> bool {
    let Ok(cuts) = cut_edges(&sol.placements, region) else {
        return false;
    };
    let Some(v) = cuts.iter().find(|c| c.kind == CutKind::Vertical) else {
        return false;
    };
    sol.placements
        .iter()
        .filter(|p| p.tan == TanName::S)
        .any(|p| p.cells.iter().any(|c| c.x == v.bottom_x || c.x == v.bottom_x - 1))
}

/// Enumerates the three strips and checks that cut-and-paste of the
/// rectangle partitions generates exactly the other two strips' partitions.
pub fn verify_strip_theorem(targets: &StripTargets) -> Result<StripReport, StripError> {
    let jp = tan_set(TanSetKind::Japanese);
    let rect = dedupe(&enumerate_partitions(&targets.rectangle, &jp, true)?, &targets.rectangle);
    let trap: BTreeSet<String> = dedupe(&enumerate_partitions(&targets.trapezium, &jp, true)?, &targets.trapezium)
        .into_iter()
        .map(|c| c.key)
        .collect();
    let para: BTreeSet<String> =
        dedupe(&enumerate_partitions(&targets.parallelogram, &jp, true)?, &targets.parallelogram)
            .into_iter()
            .map(|c| c.key)
            .collect();

    let mut irregular_joints = 0;
    let mut off_square = 0;
    let mut twin: BTreeMap<String, String> = BTreeMap::new();
    for sol in &rect {
        let cuts = cut_edges(&sol.representative.placements, &targets.rectangle)?;
        let vertical = cuts.iter().filter(|c| c.kind == CutKind::Vertical).count();
        if cuts.len() != 6 || vertical != 1 {
            irregular_joints += 1;
        }
        if !vertical_joint_on_square(&sol.representative, &targets.rectangle) {
            off_square += 1;
        }
        twin.insert(sol.key.clone(), twin_of(sol, &targets.rectangle)?.key);
    }
    let twin_is_involution = twin.iter().all(|(k, t)| twin.get(t) == Some(k));
    let self_twins = twin.iter().filter(|(k, t)| k == t).count();
    let pair_reps: Vec<&CanonicalSolution> = rect.iter().filter(|s| s.key <= twin[&s.key]).collect();
    let twin_pairs = pair_reps.iter().filter(|s| s.key != twin[&s.key]).count();

    let mut generated_trap = BTreeSet::new();
    let mut generated_para = BTreeSet::new();
    let mut domain_points = 0;
    let mut outputs = BTreeSet::new();
    let mut twin_disagreements = 0;
    let by_key: BTreeMap<&str, &CanonicalSolution> = rect.iter().map(|s| (s.key.as_str(), s)).collect();
    for rep in &pair_reps {
        let results = skew_results(rep, targets)?;
        let partner = by_key[twin[&rep.key].as_str()];
        let partner_results = skew_results(partner, targets)?;
        let as_set = |v: &[(String, String)]| v.iter().cloned().collect::<BTreeSet<_>>();
        if as_set(&results) != as_set(&partner_results) {
            twin_disagreements += 1;
        }
        for (t, p) in results {
            domain_points += 1;
            generated_trap.insert(t.clone());
            generated_para.insert(p.clone());
            outputs.insert((t, p));
        }
    }
    let injective = outputs.len() == domain_points
        && generated_trap.len() == domain_points
        && generated_para.len() == domain_points;

    let mut report = StripReport {
        rectangle_partitions: rect.len(),
        irregular_joints,
        vertical_joint_off_square: off_square,
        twin_pairs,
        self_twins,
        twin_is_involution,
        twin_disagreements,
        generated_trapezium: generated_trap.len(),
        enumerated_trapezium: trap.len(),
        trapezium_sets_equal: generated_trap == trap,
        generated_parallelogram: generated_para.len(),
        enumerated_parallelogram: para.len(),
        parallelogram_sets_equal: generated_para == para,
        injective,
        pass: false,
    };
    report.pass = report.irregular_joints == 0
        && report.self_twins == 0
        && report.twin_is_involution
        && report.twin_pairs * 2 == report.rectangle_partitions
        && report.twin_disagreements == 0
        && report.trapezium_sets_equal
        && report.parallelogram_sets_equal
        && report.injective;
    Ok(report)
}

/// Keys of `(trapezium, parallelogram)` partitions for every skew joint.
pub fn skew_results(sol: &CanonicalSolution, targets: &StripTargets) -> Result<Vec<(String, String)>, StripError> {
    cut_edges(&sol.representative.placements, &targets.rectangle)?
        .iter()
        .filter(|c| c.kind == CutKind::Skew)
        .map(|c| cut_and_paste(sol, c, targets).map(|(t, p)| (t.key, p.key)))
        .collect()
}
