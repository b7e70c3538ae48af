//! The quarter-square triangle lattice.
//!
//! Every unit square `(x, y)` is split by both of its diagonals into four
//! triangles, tagged by the side of the square they touch:
//!
//! ```text
//!   (x,y+1) +-------+ (x+1,y+1)
//!           |\  N  /|
//!           | \   / |
//!           |W  c  E|
//!           | /   \ |
//!           |/  S  \|
//!     (x,y) +-------+ (x+1,y)
//! ```
//!
//! One such triangle is the atomic area unit: the smallest tan is two of them
//! and a full set of seven tans covers exactly 32.

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised by lattice geometry.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeometryError {
    #[error("polygon needs at least 3 vertices, got {0}")]
    TooFewVertices(usize),
    #[error("vertex {0} is not a lattice vertex (integer point or square centre)")]
    OffLatticeVertex(Point),
    #[error("edge {0} -> {1} does not lie on the triangle lattice")]
    OffLatticeEdge(Point, Point),
    #[error("polygon is not positively oriented")]
    NotCounterClockwise,
    #[error("polygon is not simple: rasterised {cells} cells for area {expected}")]
    NotSimple { cells: usize, expected: usize },
    #[error("region has no cells")]
    EmptyRegion,
    #[error("cell {0} is outside the bounding box")]
    OutOfBounds(TriCell),
    #[error("bounding box {width}x{height} exceeds the supported {max} cells")]
    TooLarge { width: i32, height: i32, max: usize },
}

/// Which quarter of its unit square a [`TriCell`] occupies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Quadrant {
    N,
    E,
    S,
    W,
}

impl Quadrant {
    pub const ALL: [Quadrant; 4] = [Quadrant::N, Quadrant::E, Quadrant::S, Quadrant::W];

    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Option<Quadrant> {
        Quadrant::ALL.get(i).copied()
    }

    /// Image under a quarter turn counterclockwise.
    fn rotated(self) -> Quadrant {
        match self {
            Quadrant::N => Quadrant::W,
            Quadrant::W => Quadrant::S,
            Quadrant::S => Quadrant::E,
            Quadrant::E => Quadrant::N,
        }
    }

    /// Image under reflection across a vertical line.
    fn mirrored(self) -> Quadrant {
        match self {
            Quadrant::E => Quadrant::W,
            Quadrant::W => Quadrant::E,
            q => q,
        }
    }

    pub fn as_char(self) -> char {
        match self {
            Quadrant::N => 'N',
            Quadrant::E => 'E',
            Quadrant::S => 'S',
            Quadrant::W => 'W',
        }
    }

    pub fn from_char(c: char) -> Option<Quadrant> {
        match c {
            'N' => Some(Quadrant::N),
            'E' => Some(Quadrant::E),
            'S' => Some(Quadrant::S),
            'W' => Some(Quadrant::W),
            _ => None,
        }
    }
}

/// A point with half-integer coordinates, stored doubled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Point {
    pub x2: i32,
    pub y2: i32,
}

impl Point {
    /// Integer lattice point.
    pub const fn new(x: i32, y: i32) -> Point {
        Point { x2: 2 * x, y2: 2 * y }
    }

    /// Point from doubled coordinates, so `(1, 1)` is `(1/2, 1/2)`.
    pub const fn from_doubled(x2: i32, y2: i32) -> Point {
        Point { x2, y2 }
    }

    /// Integer points and square centres are the vertices of the lattice.
    pub fn is_lattice_vertex(self) -> bool {
        (self.x2 - self.y2).rem_euclid(2) == 0
    }
}

impl fmt::Display for Point {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let half = |v: i32| f64::from(v) / 2.0;
        write!(f, "({}, {})", half(self.x2), half(self.y2))
    }
}

/// One quarter-square triangle.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct TriCell {
    pub x: i32,
    pub y: i32,
    pub q: Quadrant,
}

impl TriCell {
    pub const fn new(x: i32, y: i32, q: Quadrant) -> TriCell {
        TriCell { x, y, q }
    }

    /// Corners in counterclockwise order, as doubled coordinates.
    pub fn corners(self) -> [Point; 3] {
        let (x, y) = (2 * self.x, 2 * self.y);
        let c = Point::from_doubled(x + 1, y + 1);
        let bl = Point::from_doubled(x, y);
        let br = Point::from_doubled(x + 2, y);
        let tr = Point::from_doubled(x + 2, y + 2);
        let tl = Point::from_doubled(x, y + 2);
        match self.q {
            Quadrant::N => [tr, tl, c],
            Quadrant::E => [br, tr, c],
            Quadrant::S => [bl, br, c],
            Quadrant::W => [tl, bl, c],
        }
    }

    /// Centroid in sixfold coordinates; always integral.
    pub fn centroid6(self) -> (i32, i32) {
        let (bx, by) = (6 * self.x, 6 * self.y);
        match self.q {
            Quadrant::N => (bx + 3, by + 5),
            Quadrant::E => (bx + 5, by + 3),
            Quadrant::S => (bx + 3, by + 1),
            Quadrant::W => (bx + 1, by + 3),
        }
    }

    /// The cell whose interior contains the given point (sixfold coordinates).
    ///
    /// Returns `None` when the point lies on a lattice line.
    pub fn containing(px6: i32, py6: i32) -> Option<TriCell> {
        if px6.rem_euclid(6) == 0 || py6.rem_euclid(6) == 0 {
            return None;
        }
        let x = px6.div_euclid(6);
        let y = py6.div_euclid(6);
        let (lx, ly) = (px6 - 6 * x, py6 - 6 * y);
        // Diagonals of the local square: ly = lx and ly = 6 - lx.
        let above_main = ly.cmp(&lx);
        let above_anti = ly.cmp(&(6 - lx));
        let q = match (above_main, above_anti) {
            (Ordering::Greater, Ordering::Greater) => Quadrant::N,
            (Ordering::Less, Ordering::Greater) => Quadrant::E,
            (Ordering::Less, Ordering::Less) => Quadrant::S,
            (Ordering::Greater, Ordering::Less) => Quadrant::W,
            _ => return None,
        };
        Some(TriCell::new(x, y, q))
    }

    /// Edge-adjacent cells (always three).
    pub fn neighbours(self) -> [TriCell; 3] {
        let TriCell { x, y, q } = self;
        let (inside_a, inside_b, across) = match q {
            Quadrant::N => (Quadrant::E, Quadrant::W, TriCell::new(x, y + 1, Quadrant::S)),
            Quadrant::E => (Quadrant::N, Quadrant::S, TriCell::new(x + 1, y, Quadrant::W)),
            Quadrant::S => (Quadrant::E, Quadrant::W, TriCell::new(x, y - 1, Quadrant::N)),
            Quadrant::W => (Quadrant::N, Quadrant::S, TriCell::new(x - 1, y, Quadrant::E)),
        };
        [TriCell::new(x, y, inside_a), TriCell::new(x, y, inside_b), across]
    }

    pub fn translated(self, dx: i32, dy: i32) -> TriCell {
        TriCell::new(self.x + dx, self.y + dy, self.q)
    }
}

// Row-major by (y, x), then quadrant: the same order as `cell_index`.
impl Ord for TriCell {
    fn cmp(&self, other: &Self) -> Ordering {
        (self.y, self.x, self.q).cmp(&(other.y, other.x, other.q))
    }
}

impl PartialOrd for TriCell {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for TriCell {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{})", self.x, self.y, self.q.as_char())
    }
}

/// A congruence of the plane: reflect across the vertical axis (optional),
/// rotate by `rot` quarter turns counterclockwise about the origin, then
/// translate by `(dx, dy)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Transform {
    pub rot: u8,
    pub mirror: bool,
    pub dx: i32,
    pub dy: i32,
}

type Mat2 = [[i32; 2]; 2];

fn mat_mul(a: Mat2, b: Mat2) -> Mat2 {
    [
        [a[0][0] * b[0][0] + a[0][1] * b[1][0], a[0][0] * b[0][1] + a[0][1] * b[1][1]],
        [a[1][0] * b[0][0] + a[1][1] * b[1][0], a[1][0] * b[0][1] + a[1][1] * b[1][1]],
    ]
}

fn mat_apply(a: Mat2, x: i32, y: i32) -> (i32, i32) {
    (a[0][0] * x + a[0][1] * y, a[1][0] * x + a[1][1] * y)
}

impl Transform {
    pub const IDENTITY: Transform = Transform { rot: 0, mirror: false, dx: 0, dy: 0 };

    pub fn new(rot: u8, mirror: bool, dx: i32, dy: i32) -> Transform {
        Transform { rot: rot % 4, mirror, dx, dy }
    }

    /// The eight elements of the dihedral group of the square, untranslated.
    /// Order: the four rotations, then the four rotations after a mirror.
    pub fn point_group() -> [Transform; 8] {
        let mut out = [Transform::IDENTITY; 8];
        for (i, t) in out.iter_mut().enumerate() {
            *t = Transform::new((i % 4) as u8, i >= 4, 0, 0);
        }
        out
    }

    pub fn rotation(rot: u8) -> Transform {
        Transform::new(rot, false, 0, 0)
    }

    /// Reflection across the horizontal axis.
    pub fn flip_vertical() -> Transform {
        Transform::new(2, true, 0, 0)
    }

    pub fn translation(dx: i32, dy: i32) -> Transform {
        Transform::new(0, false, dx, dy)
    }

    pub fn then_translate(self, dx: i32, dy: i32) -> Transform {
        Transform { dx: self.dx + dx, dy: self.dy + dy, ..self }
    }

    pub fn linear_part(self) -> Transform {
        Transform { dx: 0, dy: 0, ..self }
    }

    fn matrix(self) -> Mat2 {
        let mut m: Mat2 = if self.mirror { [[-1, 0], [0, 1]] } else { [[1, 0], [0, 1]] };
        for _ in 0..self.rot {
            m = mat_mul([[0, -1], [1, 0]], m);
        }
        m
    }

    fn from_matrix(m: Mat2, dx: i32, dy: i32) -> Transform {
        let det = m[0][0] * m[1][1] - m[0][1] * m[1][0];
        let mirror = det < 0;
        // Undo the mirror on the right to isolate the rotation.
        let r = if mirror { mat_mul(m, [[-1, 0], [0, 1]]) } else { m };
        let rot = match (r[0][0], r[1][0]) {
            (1, 0) => 0,
            (0, 1) => 1,
            (-1, 0) => 2,
            (0, -1) => 3,
            _ => unreachable!("not an orthogonal lattice matrix: {m:?}"),
        };
        Transform { rot, mirror, dx, dy }
    }

    pub fn apply_point(self, p: Point) -> Point {
        let (x, y) = mat_apply(self.matrix(), p.x2, p.y2);
        Point::from_doubled(x + 2 * self.dx, y + 2 * self.dy)
    }

    pub fn apply_cell(self, cell: TriCell) -> TriCell {
        let TriCell { mut x, mut y, mut q } = cell;
        if self.mirror {
            x = -x - 1;
            q = q.mirrored();
        }
        for _ in 0..self.rot {
            (x, y) = (-y - 1, x);
            q = q.rotated();
        }
        TriCell::new(x + self.dx, y + self.dy, q)
    }

    /// `self ∘ other`: apply `other` first.
    pub fn compose(self, other: Transform) -> Transform {
        let a = self.matrix();
        let (tx, ty) = mat_apply(a, other.dx, other.dy);
        Transform::from_matrix(mat_mul(a, other.matrix()), tx + self.dx, ty + self.dy)
    }

    pub fn inverse(self) -> Transform {
        let a = self.matrix();
        let at = [[a[0][0], a[1][0]], [a[0][1], a[1][1]]];
        let (tx, ty) = mat_apply(at, -self.dx, -self.dy);
        Transform::from_matrix(at, tx, ty)
    }
}

impl fmt::Display for Transform {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}rot{} + ({}, {})",
            if self.mirror { "mirror, " } else { "" },
            self.rot * 90,
            self.dx,
            self.dy
        )
    }
}

/// Image of a cell under a transform.
pub fn apply_transform(t: Transform, cell: TriCell) -> TriCell {
    t.apply_cell(cell)
}

/// Largest bounding box (in cells) supported by [`CellMask`](crate::embed::CellMask).
pub const MAX_BOX_CELLS: usize = 512;

/// An axis-aligned box of unit squares.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct Bounds {
    pub x0: i32,
    pub y0: i32,
    pub width: i32,
    pub height: i32,
}

impl Bounds {
    pub fn of_cells<'a>(cells: impl IntoIterator<Item = &'a TriCell>) -> Option<Bounds> {
        let mut it = cells.into_iter();
        let first = it.next()?;
        let (mut x0, mut y0, mut x1, mut y1) = (first.x, first.y, first.x, first.y);
        for c in it {
            x0 = x0.min(c.x);
            y0 = y0.min(c.y);
            x1 = x1.max(c.x);
            y1 = y1.max(c.y);
        }
        Some(Bounds { x0, y0, width: x1 - x0 + 1, height: y1 - y0 + 1 })
    }

    /// Number of cells in the box, `4 * width * height`.
    pub fn cell_count(&self) -> usize {
        4 * (self.width as usize) * (self.height as usize)
    }

    pub fn contains(&self, cell: TriCell) -> bool {
        cell.x >= self.x0
            && cell.y >= self.y0
            && cell.x < self.x0 + self.width
            && cell.y < self.y0 + self.height
    }

    pub fn cell_index(&self, cell: TriCell) -> Result<usize, GeometryError> {
        if !self.contains(cell) {
            return Err(GeometryError::OutOfBounds(cell));
        }
        let row = (cell.y - self.y0) as usize;
        let col = (cell.x - self.x0) as usize;
        Ok((row * self.width as usize + col) * 4 + cell.q.index())
    }

    pub fn cell_at(&self, index: usize) -> Option<TriCell> {
        if index >= self.cell_count() {
            return None;
        }
        let square = index / 4;
        let q = Quadrant::from_index(index % 4)?;
        let w = self.width as usize;
        Some(TriCell::new(self.x0 + (square % w) as i32, self.y0 + (square / w) as i32, q))
    }
}

/// Row-major index of a cell inside a bounding box, quadrants in N, E, S, W order.
pub fn cell_index(cell: TriCell, bounds: &Bounds) -> Result<usize, GeometryError> {
    bounds.cell_index(cell)
}

/// Twice the signed area of a polygon given in doubled coordinates, i.e.
/// eight times the area in square units.
fn shoelace8(vertices: &[Point]) -> i64 {
    let n = vertices.len();
    (0..n)
        .map(|i| {
            let (a, b) = (vertices[i], vertices[(i + 1) % n]);
            a.x2 as i64 * b.y2 as i64 - b.x2 as i64 * a.y2 as i64
        })
        .sum()
}

fn edge_on_lattice(a: Point, b: Point) -> bool {
    let (dx, dy) = (b.x2 - a.x2, b.y2 - a.y2);
    if dx == 0 && dy == 0 {
        return false;
    }
    if dy == 0 {
        a.y2 % 2 == 0
    } else if dx == 0 {
        a.x2 % 2 == 0
    } else if dx.abs() == dy.abs() {
        // Diagonals x - y = k or x + y = k with integer k; with both endpoints
        // on lattice vertices this always holds.
        true
    } else {
        false
    }
}

/// Strict point-in-polygon by crossing number. The query point (sixfold
/// coordinates) must not lie on the boundary.
fn inside6(vertices6: &[(i64, i64)], px: i64, py: i64) -> bool {
    let n = vertices6.len();
    let mut inside = false;
    for i in 0..n {
        let (ax, ay) = vertices6[i];
        let (bx, by) = vertices6[(i + 1) % n];
        if (ay <= py) != (by <= py) {
            // x-coordinate of the edge at height py, compared without division.
            let lhs = (px - ax) * (by - ay);
            let rhs = (bx - ax) * (py - ay);
            if (by > ay && lhs < rhs) || (by < ay && lhs > rhs) {
                inside = !inside;
            }
        }
    }
    inside
}

/// Cells whose centroids lie inside a lattice polygon.
///
/// The polygon must be simple and counterclockwise, with vertices on lattice
/// vertices and every edge along a lattice line.
pub fn rasterize_polygon(vertices: &[Point]) -> Result<BTreeSet<TriCell>, GeometryError> {
    if vertices.len() < 3 {
        return Err(GeometryError::TooFewVertices(vertices.len()));
    }
    if let Some(&v) = vertices.iter().find(|v| !v.is_lattice_vertex()) {
        return Err(GeometryError::OffLatticeVertex(v));
    }
    for i in 0..vertices.len() {
        let (a, b) = (vertices[i], vertices[(i + 1) % vertices.len()]);
        if !edge_on_lattice(a, b) {
            return Err(GeometryError::OffLatticeEdge(a, b));
        }
    }
    let area8 = shoelace8(vertices);
    if area8 <= 0 {
        return Err(GeometryError::NotCounterClockwise);
    }
    let expected = (area8 / 2) as usize;

    let v6: Vec<(i64, i64)> = vertices.iter().map(|p| (3 * p.x2 as i64, 3 * p.y2 as i64)).collect();
    let min_x = vertices.iter().map(|p| p.x2).min().unwrap_or(0).div_euclid(2);
    let max_x = vertices.iter().map(|p| p.x2).max().unwrap_or(0).div_euclid(2);
    let min_y = vertices.iter().map(|p| p.y2).min().unwrap_or(0).div_euclid(2);
    let max_y = vertices.iter().map(|p| p.y2).max().unwrap_or(0).div_euclid(2);

    let mut cells = BTreeSet::new();
    for y in min_y..=max_y {
        for x in min_x..=max_x {
            for q in Quadrant::ALL {
                let cell = TriCell::new(x, y, q);
                let (cx, cy) = cell.centroid6();
                if inside6(&v6, cx as i64, cy as i64) {
                    cells.insert(cell);
                }
            }
        }
    }
    if cells.len() != expected {
        return Err(GeometryError::NotSimple { cells: cells.len(), expected });
    }
    Ok(cells)
}

/// Every congruence (point-group element plus the unique compatible
/// translation) mapping the cell set onto itself. The identity comes first.
pub fn region_symmetries(cells: &BTreeSet<TriCell>) -> Vec<Transform> {
    let Some(bounds) = Bounds::of_cells(cells) else {
        return vec![Transform::IDENTITY];
    };
    Transform::point_group()
        .into_iter()
        .filter_map(|g| {
            let image: Vec<TriCell> = cells.iter().map(|&c| g.apply_cell(c)).collect();
            let ib = Bounds::of_cells(&image)?;
            let t = g.then_translate(bounds.x0 - ib.x0, bounds.y0 - ib.y0);
            image
                .iter()
                .all(|&c| cells.contains(&c.translated(t.dx - g.dx, t.dy - g.dy)))
                .then_some(t)
        })
        .collect()
}

/// A target shape: a finite cell set with its symmetry group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Region {
    cells: Vec<TriCell>,
    bounds: Bounds,
    symmetries: Vec<Transform>,
    name: Option<String>,
}

impl Region {
    pub fn new(cells: impl IntoIterator<Item = TriCell>) -> Result<Region, GeometryError> {
        let set: BTreeSet<TriCell> = cells.into_iter().collect();
        let bounds = Bounds::of_cells(&set).ok_or(GeometryError::EmptyRegion)?;
        if bounds.cell_count() > MAX_BOX_CELLS {
            return Err(GeometryError::TooLarge {
                width: bounds.width,
                height: bounds.height,
                max: MAX_BOX_CELLS,
            });
        }
        let symmetries = region_symmetries(&set);
        Ok(Region { cells: set.into_iter().collect(), bounds, symmetries, name: None })
    }

    pub fn from_polygon(vertices: &[Point]) -> Result<Region, GeometryError> {
        Region::new(rasterize_polygon(vertices)?)
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Region {
        self.name = Some(name.into());
        self
    }

    pub fn name(&self) -> Option<&str> {
        self.name.as_deref()
    }

    /// Cells in ascending index order.
    pub fn cells(&self) -> &[TriCell] {
        &self.cells
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn bounds(&self) -> Bounds {
        self.bounds
    }

    pub fn symmetries(&self) -> &[Transform] {
        &self.symmetries
    }

    pub fn contains(&self, cell: TriCell) -> bool {
        self.cells.binary_search(&cell).is_ok()
    }

    /// Position of a cell in [`Region::cells`].
    pub fn local_index(&self, cell: TriCell) -> Option<usize> {
        self.cells.binary_search(&cell).ok()
    }

    pub fn transformed(&self, t: Transform) -> Region {
        let mut r = Region::new(self.cells.iter().map(|&c| t.apply_cell(c)))
            .expect("image of a nonempty region is nonempty");
        r.name = self.name.clone();
        r
    }

    /// Translated so the bounding box starts at the origin.
    pub fn normalized(&self) -> Region {
        self.transformed(Transform::translation(-self.bounds.x0, -self.bounds.y0))
    }

    /// True when every cell can reach every other through shared edges.
    pub fn is_connected(&self) -> bool {
        let mut seen = vec![false; self.cells.len()];
        let mut stack = vec![0usize];
        seen[0] = true;
        while let Some(i) = stack.pop() {
            for n in self.cells[i].neighbours() {
                if let Some(j) = self.local_index(n) {
                    if !seen[j] {
                        seen[j] = true;
                        stack.push(j);
                    }
                }
            }
        }
        seen.into_iter().all(|s| s)
    }

    /// A congruence taking `self` onto `other`, if one exists.
    pub fn congruence_to(&self, other: &Region) -> Option<Transform> {
        if self.len() != other.len() {
            return None;
        }
        Transform::point_group().into_iter().find_map(|g| {
            let image: Vec<TriCell> = self.cells.iter().map(|&c| g.apply_cell(c)).collect();
            let ib = Bounds::of_cells(&image)?;
            let (dx, dy) = (other.bounds.x0 - ib.x0, other.bounds.y0 - ib.y0);
            image
                .iter()
                .all(|&c| other.contains(c.translated(dx, dy)))
                .then(|| g.then_translate(dx, dy))
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Quadrant::*;

    fn cells(v: &[(i32, i32, Quadrant)]) -> BTreeSet<TriCell> {
        v.iter().map(|&(x, y, q)| TriCell::new(x, y, q)).collect()
    }

    #[test]
    fn identity_fixes_cells() {
        let c = TriCell::new(3, 2, N);
        assert_eq!(apply_transform(Transform::IDENTITY, c), c);
    }

    #[test]
    fn quarter_turn_of_south_cell() {
        let t = Transform::rotation(1);
        assert_eq!(apply_transform(t, TriCell::new(0, 0, S)), TriCell::new(-1, 0, E));
    }

    #[test]
    fn four_quarter_turns_is_identity() {
        let t = Transform::rotation(1);
        for q in Quadrant::ALL {
            let c = TriCell::new(5, -2, q);
            let mut d = c;
            for _ in 0..4 {
                d = t.apply_cell(d);
            }
            assert_eq!(c, d);
        }
    }

    #[test]
    fn unit_square_rasterizes_to_four_cells() {
        let sq = [Point::new(0, 0), Point::new(1, 0), Point::new(1, 1), Point::new(0, 1)];
        assert_eq!(rasterize_polygon(&sq).unwrap(), cells(&[(0, 0, N), (0, 0, E), (0, 0, S), (0, 0, W)]));
    }

    #[test]
    fn half_square_triangle() {
        let tri = [Point::new(0, 0), Point::new(1, 0), Point::new(1, 1)];
        assert_eq!(rasterize_polygon(&tri).unwrap(), cells(&[(0, 0, S), (0, 0, E)]));
    }

    #[test]
    fn trapezium_has_eight_cells() {
        let tz = [Point::new(0, 0), Point::new(3, 0), Point::new(2, 1), Point::new(1, 1)];
        assert_eq!(rasterize_polygon(&tz).unwrap().len(), 8);
    }

    #[test]
    fn rasterize_rejects_bad_polygons() {
        let off_angle = [Point::new(0, 0), Point::new(2, 0), Point::new(0, 1)];
        assert!(matches!(rasterize_polygon(&off_angle), Err(GeometryError::OffLatticeEdge(..))));
        // Horizontal edge at height 1/2 runs through cell interiors.
        let mid = [
            Point::from_doubled(1, 1),
            Point::from_doubled(5, 1),
            Point::from_doubled(3, 3),
        ];
        assert!(matches!(rasterize_polygon(&mid), Err(GeometryError::OffLatticeEdge(..))));
        let off_vertex = [Point::from_doubled(0, 0), Point::from_doubled(1, 0), Point::from_doubled(0, 1)];
        assert!(matches!(rasterize_polygon(&off_vertex), Err(GeometryError::OffLatticeVertex(_))));
        let cw = [Point::new(0, 0), Point::new(0, 1), Point::new(1, 1), Point::new(1, 0)];
        assert_eq!(rasterize_polygon(&cw), Err(GeometryError::NotCounterClockwise));
        assert_eq!(rasterize_polygon(&cw[..2]), Err(GeometryError::TooFewVertices(2)));
    }

    #[test]
    fn centred_diamond_rasterizes() {
        // Diamond through four square centres: vertices at half-integers.
        let d = [
            Point::from_doubled(1, -1),
            Point::from_doubled(3, 1),
            Point::from_doubled(1, 3),
            Point::from_doubled(-1, 1),
        ];
        assert_eq!(rasterize_polygon(&d).unwrap().len(), 8);
    }

    #[test]
    fn cell_index_examples() {
        let nine = Bounds { x0: 0, y0: 0, width: 9, height: 1 };
        assert_eq!(cell_index(TriCell::new(0, 0, N), &nine).unwrap(), 0);
        assert_eq!(cell_index(TriCell::new(1, 0, N), &nine).unwrap(), 4);
        assert!(matches!(cell_index(TriCell::new(9, 0, N), &nine), Err(GeometryError::OutOfBounds(_))));

        let eight = Bounds { x0: 0, y0: 0, width: 8, height: 1 };
        for i in 0..32 {
            let c = eight.cell_at(i).unwrap();
            assert_eq!(eight.cell_index(c).unwrap(), i);
        }
        assert_eq!(eight.cell_at(32), None);
    }

    fn rect(w: i32, h: i32) -> Region {
        Region::from_polygon(&[Point::new(0, 0), Point::new(w, 0), Point::new(w, h), Point::new(0, h)])
            .unwrap()
    }

    #[test]
    fn symmetry_group_sizes() {
        assert_eq!(rect(8, 1).symmetries().len(), 4);
        let tilted = Region::from_polygon(&[Point::new(2, 0), Point::new(4, 2), Point::new(2, 4), Point::new(0, 2)])
            .unwrap();
        assert_eq!(tilted.len(), 32);
        assert_eq!(tilted.symmetries().len(), 8);
        let para = Region::from_polygon(&[Point::new(0, 0), Point::new(8, 0), Point::new(9, 1), Point::new(1, 1)])
            .unwrap();
        assert_eq!(para.symmetries().len(), 2);
        assert_eq!(rect(8, 1).symmetries()[0], Transform::IDENTITY);
    }

    #[test]
    fn congruence_between_rotated_rectangles() {
        let a = rect(8, 1);
        let b = rect(1, 8);
        let t = a.congruence_to(&b).expect("congruent");
        assert_eq!(a.transformed(t).cells(), b.cells());
        assert!(rect(4, 2).congruence_to(&rect(8, 1)).is_none());
    }

    #[test]
    fn connectivity() {
        assert!(rect(3, 2).is_connected());
        let split = Region::new([TriCell::new(0, 0, N), TriCell::new(2, 0, N)]).unwrap();
        assert!(!split.is_connected());
    }

    #[test]
    fn empty_and_oversized_regions_rejected() {
        assert_eq!(Region::new([]), Err(GeometryError::EmptyRegion));
        let far = Region::new([TriCell::new(0, 0, N), TriCell::new(100, 100, N)]);
        assert!(matches!(far, Err(GeometryError::TooLarge { .. })));
    }

    #[test]
    fn point_display() {
        assert_eq!(Point::from_doubled(3, -1).to_string(), "(1.5, -0.5)");
        assert_eq!(Point::new(2, 0).to_string(), "(2, 0)");
    }
}
