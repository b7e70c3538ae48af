//! Tan sets and the census of convex target shapes.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::canon::{parse_region_key, region_key};
use crate::solver::{exists_partition, SolveError};
use crate::trigrid::{rasterize_polygon, GeometryError, Point, Region, TriCell};

/// The seven tan shapes, in the fixed alphabet order used by canonical keys.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum TanName {
    Ts,
    S,
    P,
    Tm,
    Tb,
    Tr,
    Tz,
}

impl TanName {
    pub const ALL: [TanName; 7] =
        [TanName::Ts, TanName::S, TanName::P, TanName::Tm, TanName::Tb, TanName::Tr, TanName::Tz];

    pub fn as_str(self) -> &'static str {
        match self {
            TanName::Ts => "Ts",
            TanName::S => "S",
            TanName::P => "P",
            TanName::Tm => "Tm",
            TanName::Tb => "Tb",
            TanName::Tr => "Tr",
            TanName::Tz => "Tz",
        }
    }

    /// Area in quarter-square cells.
    pub fn area_ts(self) -> usize {
        match self {
            TanName::Ts => 2,
            TanName::S | TanName::P | TanName::Tm => 4,
            TanName::Tr => 6,
            TanName::Tb | TanName::Tz => 8,
        }
    }

    /// Outline with legs axis-aligned, anchored at the origin, counterclockwise.
    pub fn polygon(self) -> Vec<Point> {
        let p = Point::new;
        match self {
            TanName::Ts => vec![p(0, 0), p(1, 0), p(0, 1)],
            TanName::S => vec![p(0, 0), p(1, 0), p(1, 1), p(0, 1)],
            TanName::P => vec![p(0, 0), p(1, 0), p(2, 1), p(1, 1)],
            TanName::Tm => vec![p(0, 0), p(2, 0), p(1, 1)],
            TanName::Tb => vec![p(0, 0), p(2, 0), p(0, 2)],
            TanName::Tr => vec![p(0, 0), p(2, 0), p(2, 1), p(1, 1)],
            TanName::Tz => vec![p(0, 0), p(3, 0), p(2, 1), p(1, 1)],
        }
    }

    pub fn cells(self) -> BTreeSet<TriCell> {
        rasterize_polygon(&self.polygon()).expect("catalog polygons are lattice polygons")
    }
}

impl fmt::Display for TanName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("unknown tan name `{0}`")]
pub struct UnknownTan(pub String);

impl FromStr for TanName {
    type Err = UnknownTan;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TanName::ALL
            .into_iter()
            .find(|t| t.as_str() == s)
            .ok_or_else(|| UnknownTan(s.to_string()))
    }
}

/// A puzzle piece with its multiplicity in a set.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tan {
    pub name: TanName,
    pub multiplicity: usize,
}

impl Tan {
    pub fn area_ts(&self) -> usize {
        self.name.area_ts()
    }

    pub fn polygon(&self) -> Vec<Point> {
        self.name.polygon()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum TanSetKind {
    Chinese,
    Japanese,
}

impl TanSetKind {
    pub fn as_str(self) -> &'static str {
        match self {
            TanSetKind::Chinese => "chinese",
            TanSetKind::Japanese => "japanese",
        }
    }
}

impl fmt::Display for TanSetKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// A multiset of tans, ordered by tan name.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TanSet {
    pub kind: Option<TanSetKind>,
    pub tans: Vec<Tan>,
}

impl TanSet {
    /// A custom multiset, e.g. a single piece for tests.
    pub fn custom(counts: &[(TanName, usize)]) -> TanSet {
        let mut map = BTreeMap::new();
        for &(name, n) in counts {
            *map.entry(name).or_insert(0) += n;
        }
        let tans = map
            .into_iter()
            .filter(|&(_, n)| n > 0)
            .map(|(name, multiplicity)| Tan { name, multiplicity })
            .collect();
        TanSet { kind: None, tans }
    }

    pub fn total_area_ts(&self) -> usize {
        self.tans.iter().map(|t| t.area_ts() * t.multiplicity).sum()
    }

    pub fn piece_count(&self) -> usize {
        self.tans.iter().map(|t| t.multiplicity).sum()
    }

    pub fn multiplicity(&self, name: TanName) -> usize {
        self.tans.iter().find(|t| t.name == name).map_or(0, |t| t.multiplicity)
    }

    /// One entry per physical piece, sorted.
    pub fn pieces(&self) -> Vec<TanName> {
        self.tans
            .iter()
            .flat_map(|t| std::iter::repeat_n(t.name, t.multiplicity))
            .collect()
    }
}

/// The seven-piece set of the given kind.
pub fn tan_set(kind: TanSetKind) -> TanSet {
    use TanName::*;
    let counts: &[(TanName, usize)] = match kind {
        TanSetKind::Chinese => &[(Ts, 2), (S, 1), (P, 1), (Tm, 1), (Tb, 2)],
        TanSetKind::Japanese => &[(Ts, 1), (S, 1), (P, 1), (Tm, 2), (Tr, 1), (Tz, 1)],
    };
    TanSet { kind: Some(kind), ..TanSet::custom(counts) }
}

/// A rectangle with 45° cuts at its corners. Cut legs run counterclockwise
/// from the bottom-left corner: `[bottom_left, bottom_right, top_right, top_left]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct ShapeDescriptor {
    pub width: i32,
    pub height: i32,
    pub cuts: [i32; 4],
}

impl ShapeDescriptor {
    pub fn is_valid(&self) -> bool {
        let [a, b, c, d] = self.cuts;
        self.width >= 1
            && self.height >= 1
            && self.cuts.iter().all(|&k| k >= 0)
            && a + b <= self.width
            && c + d <= self.width
            && b + c <= self.height
            && d + a <= self.height
    }

    /// Area in quarter-square cells.
    pub fn area_ts(&self) -> i32 {
        let cut: i32 = self.cuts.iter().map(|k| k * k).sum();
        4 * self.width * self.height - 2 * cut
    }

    /// Counterclockwise outline without repeated or collinear vertices.
    pub fn polygon(&self) -> Vec<Point> {
        let (w, h) = (self.width, self.height);
        let [a, b, c, d] = self.cuts;
        let raw = [
            Point::new(a, 0),
            Point::new(w - b, 0),
            Point::new(w, b),
            Point::new(w, h - c),
            Point::new(w - c, h),
            Point::new(d, h),
            Point::new(0, h - d),
            Point::new(0, a),
        ];
        simplify_polygon(&raw)
    }

    pub fn region(&self) -> Result<Region, GeometryError> {
        Region::from_polygon(&self.polygon())
    }
}

impl fmt::Display for ShapeDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let [a, b, c, d] = self.cuts;
        write!(f, "{}x{} cuts {},{},{},{}", self.width, self.height, a, b, c, d)
    }
}

/// Drops repeated vertices and vertices in the middle of a straight run.
pub fn simplify_polygon(points: &[Point]) -> Vec<Point> {
    let mut pts: Vec<Point> = Vec::with_capacity(points.len());
    for &p in points {
        if pts.last() != Some(&p) {
            pts.push(p);
        }
    }
    while pts.len() > 1 && pts.first() == pts.last() {
        pts.pop();
    }
    loop {
        let n = pts.len();
        if n < 3 {
            return pts;
        }
        let collinear = (0..n).find(|&i| {
            let (a, b, c) = (pts[(i + n - 1) % n], pts[i], pts[(i + 1) % n]);
            let cross = (b.x2 - a.x2) as i64 * (c.y2 - b.y2) as i64
                - (b.y2 - a.y2) as i64 * (c.x2 - b.x2) as i64;
            cross == 0
        });
        match collinear {
            Some(i) => {
                pts.remove(i);
            }
            None => return pts,
        }
    }
}

/// One convex target shape of the census.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeEntry {
    /// Number in the classical table of convex tangrams, when known.
    pub number: Option<u8>,
    pub descriptor: ShapeDescriptor,
    /// In key orientation: exactly the region `parse_region_key(key)` builds.
    pub region: Region,
    /// Canonical raster key of the region; stable identity of the shape.
    pub key: String,
}

impl ShapeEntry {
    pub fn label(&self) -> String {
        match self.number {
            Some(n) => format!("J{n:02}"),
            None => self.key.clone(),
        }
    }
}

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("census produced {0} shapes, expected 20")]
    CensusSize(usize),
    #[error(transparent)]
    Geometry(#[from] GeometryError),
    #[error("numbering file line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("numbering file assigns shape {0} twice")]
    DuplicateNumber(u8),
    #[error("numbering file lists key `{0}` twice")]
    DuplicateKey(String),
    #[error("numbering file key `{key}` (shape {number}) is not a census shape")]
    UnknownKey { number: u8, key: String },
    #[error("numbering file is missing shape {0}")]
    MissingNumber(u8),
    #[error("shape {number} must be the {what}, but the numbering file maps it elsewhere")]
    PinViolation { number: u8, what: &'static str },
    #[error("no shape numbered {0}")]
    UnknownShape(u8),
}

/// Largest census box side. Area 8 with non-negative cuts keeps every convex
/// candidate well inside this.
pub const CENSUS_MAX_SIDE: i32 = 10;

/// Every convex shape of area 8 (32 cells) whose edges run in the eight
/// lattice directions, up to congruence. Sorted by canonical key; no shape
/// numbers attached.
pub fn enumerate_convex_shapes() -> Result<Vec<ShapeEntry>, CatalogError> {
    let mut seen: BTreeMap<String, ShapeEntry> = BTreeMap::new();
    for width in 1..=CENSUS_MAX_SIDE {
        for height in 1..=CENSUS_MAX_SIDE {
            let max_cut = width.min(height);
            for a in 0..=max_cut {
                for b in 0..=max_cut {
                    for c in 0..=max_cut {
                        for d in 0..=max_cut {
                            let descriptor = ShapeDescriptor { width, height, cuts: [a, b, c, d] };
                            if !descriptor.is_valid() || descriptor.area_ts() != 32 {
                                continue;
                            }
                            let key = region_key(&descriptor.region()?);
                            // Stored in key orientation so documents and keys share one frame.
                            let region = parse_region_key(&key).expect("a region key parses back");
                            seen.entry(key.clone()).or_insert(ShapeEntry {
                                number: None,
                                descriptor,
                                region,
                                key,
                            });
                        }
                    }
                }
            }
        }
    }
    let shapes: Vec<ShapeEntry> = seen.into_values().collect();
    if shapes.len() != 20 {
        return Err(CatalogError::CensusSize(shapes.len()));
    }
    Ok(shapes)
}

/// Whether a shape admits at least one complete partition by the tan set.
pub fn classify_coverability(shape: &ShapeEntry, kind: TanSetKind) -> Result<bool, SolveError> {
    exists_partition(&shape.region, &tan_set(kind))
}

/// Coverability flags for one shape.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Coverage {
    pub japanese: bool,
    pub chinese: bool,
}

pub fn coverage(shape: &ShapeEntry) -> Result<Coverage, SolveError> {
    Ok(Coverage {
        japanese: classify_coverability(shape, TanSetKind::Japanese)?,
        chinese: classify_coverability(shape, TanSetKind::Chinese)?,
    })
}

/// Shapes whose identity is fixed geometrically rather than by audit.
pub fn pinned_shapes() -> Vec<(u8, &'static str, ShapeDescriptor)> {
    let d = |width, height, cuts| ShapeDescriptor { width, height, cuts };
    vec![
        (7, "area-8 square", d(4, 4, [2, 2, 2, 2])),
        (14, "1x8 rectangle", d(8, 1, [0, 0, 0, 0])),
        (15, "9/7 isosceles trapezium strip", d(9, 1, [0, 0, 1, 1])),
        (16, "parallelogram strip", d(9, 1, [1, 0, 1, 0])),
    ]
}

/// The audited numbering shipped with the crate.
pub const DEFAULT_NUMBERING: &str = include_str!("../data/shape_numbers.txt");

/// Paper numbers keyed by canonical region key.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ShapeNumbering {
    by_number: BTreeMap<u8, String>,
}

impl ShapeNumbering {
    /// Parses `<n> <canonical-region-key>` lines; `#` starts a comment.
    pub fn parse(text: &str) -> Result<ShapeNumbering, CatalogError> {
        let mut by_number = BTreeMap::new();
        let mut keys = BTreeSet::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let parse_err = |msg: &str| CatalogError::Parse { line: i + 1, msg: msg.to_string() };
            let mut parts = line.split_whitespace();
            let (Some(n), Some(key), None) = (parts.next(), parts.next(), parts.next()) else {
                return Err(parse_err("expected `<number> <key>`"));
            };
            let n: u8 = n.parse().map_err(|_| parse_err("shape number is not an integer"))?;
            if !(1..=20).contains(&n) {
                return Err(parse_err("shape number out of range 1..20"));
            }
            if !keys.insert(key.to_string()) {
                return Err(CatalogError::DuplicateKey(key.to_string()));
            }
            if by_number.insert(n, key.to_string()).is_some() {
                return Err(CatalogError::DuplicateNumber(n));
            }
        }
        Ok(ShapeNumbering { by_number })
    }

    pub fn key_of(&self, number: u8) -> Option<&str> {
        self.by_number.get(&number).map(String::as_str)
    }

    pub fn number_of(&self, key: &str) -> Option<u8> {
        self.by_number.iter().find(|(_, k)| k.as_str() == key).map(|(&n, _)| n)
    }

    pub fn entries(&self) -> impl Iterator<Item = (u8, &str)> {
        self.by_number.iter().map(|(&n, k)| (n, k.as_str()))
    }

    /// Checks the numbering against a census: numbers 1..=16 all present,
    /// every key a census shape, pinned shapes in place.
    pub fn validate(&self, census: &[ShapeEntry]) -> Result<(), CatalogError> {
        for (n, key) in self.entries() {
            if !census.iter().any(|s| s.key == key) {
                return Err(CatalogError::UnknownKey { number: n, key: key.to_string() });
            }
        }
        for n in 1..=16 {
            if self.key_of(n).is_none() {
                return Err(CatalogError::MissingNumber(n));
            }
        }
        for (number, what, descriptor) in pinned_shapes() {
            let key = region_key(&descriptor.region()?);
            if self.key_of(number) != Some(key.as_str()) {
                return Err(CatalogError::PinViolation { number, what });
            }
        }
        Ok(())
    }
}

/// The census with shape numbers attached, sorted by number (unnumbered
/// shapes last, by key).
#[derive(Debug, Clone)]
pub struct Catalog {
    shapes: Vec<ShapeEntry>,
}

impl Catalog {
    pub fn new(numbering: &ShapeNumbering) -> Result<Catalog, CatalogError> {
        let mut shapes = enumerate_convex_shapes()?;
        numbering.validate(&shapes)?;
        for s in &mut shapes {
            s.number = numbering.number_of(&s.key);
            s.region = s.region.clone().with_name(s.label());
        }
        shapes.sort_by(|a, b| {
            (a.number.is_none(), a.number, &a.key).cmp(&(
                b.number.is_none(),
                b.number,
                &b.key,
            ))
        });
        Ok(Catalog { shapes })
    }

    pub fn with_default_numbering() -> Result<Catalog, CatalogError> {
        Catalog::new(&ShapeNumbering::parse(DEFAULT_NUMBERING)?)
    }

    pub fn shapes(&self) -> &[ShapeEntry] {
        &self.shapes
    }

    pub fn shape_by_number(&self, n: u8) -> Result<&ShapeEntry, CatalogError> {
        self.shapes
            .iter()
            .find(|s| s.number == Some(n))
            .ok_or(CatalogError::UnknownShape(n))
    }

    pub fn shape_by_key(&self, key: &str) -> Option<&ShapeEntry> {
        self.shapes.iter().find(|s| s.key == key)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tan_areas_match_rasters() {
        for name in TanName::ALL {
            assert_eq!(name.cells().len(), name.area_ts(), "{name}");
        }
    }

    #[test]
    fn japanese_set_areas() {
        let set = tan_set(TanSetKind::Japanese);
        let mut areas: Vec<usize> = set.pieces().iter().map(|t| t.area_ts()).collect();
        areas.sort();
        assert_eq!(areas, vec![2, 4, 4, 4, 4, 6, 8]);
        assert_eq!(set.total_area_ts(), 32);
        assert_eq!(set.piece_count(), 7);
    }

    #[test]
    fn chinese_set_areas() {
        let set = tan_set(TanSetKind::Chinese);
        let mut areas: Vec<usize> = set.pieces().iter().map(|t| t.area_ts()).collect();
        areas.sort();
        assert_eq!(areas, vec![2, 2, 4, 4, 4, 8, 8]);
        assert_eq!(set.total_area_ts(), 32);
        assert_eq!(set.multiplicity(TanName::Tb), 2);
        assert_eq!(set.multiplicity(TanName::Tm), 1);
    }

    #[test]
    fn shared_tans_are_identical() {
        let jp = tan_set(TanSetKind::Japanese);
        let cn = tan_set(TanSetKind::Chinese);
        for name in [TanName::Ts, TanName::S, TanName::P, TanName::Tm] {
            let a = jp.tans.iter().find(|t| t.name == name).unwrap();
            let b = cn.tans.iter().find(|t| t.name == name).unwrap();
            assert_eq!(a.polygon(), b.polygon());
        }
    }

    #[test]
    fn trapezia_decompose() {
        use crate::trigrid::Quadrant::{E, S as South, W};
        // Tr = Ts + S, Tz = Tr + Ts, as cell sets.
        let tr = TanName::Tr.cells();
        let square: BTreeSet<TriCell> = TanName::S.cells().iter().map(|c| c.translated(1, 0)).collect();
        let left: BTreeSet<TriCell> = [TriCell::new(0, 0, South), TriCell::new(0, 0, E)].into();
        assert!(square.is_disjoint(&left));
        assert_eq!(tr, square.union(&left).copied().collect());

        let right: BTreeSet<TriCell> = [TriCell::new(2, 0, South), TriCell::new(2, 0, W)].into();
        assert!(tr.is_disjoint(&right));
        assert_eq!(TanName::Tz.cells(), tr.union(&right).copied().collect());
    }

    #[test]
    fn tan_name_round_trip() {
        for name in TanName::ALL {
            assert_eq!(name.as_str().parse::<TanName>().unwrap(), name);
        }
        assert!("Tq".parse::<TanName>().is_err());
    }

    #[test]
    fn descriptor_polygons() {
        let strip = ShapeDescriptor { width: 8, height: 1, cuts: [0; 4] };
        assert_eq!(strip.polygon().len(), 4);
        let tri = ShapeDescriptor { width: 4, height: 4, cuts: [0, 0, 4, 0] };
        assert_eq!(tri.polygon().len(), 3);
        assert_eq!(tri.area_ts(), 32);
        assert!(!ShapeDescriptor { width: 2, height: 2, cuts: [2, 1, 0, 0] }.is_valid());
    }

    #[test]
    fn numbering_parse_errors() {
        assert!(matches!(ShapeNumbering::parse("x abc"), Err(CatalogError::Parse { line: 1, .. })));
        assert!(matches!(ShapeNumbering::parse("1 a\n1 b"), Err(CatalogError::DuplicateNumber(1))));
        assert!(matches!(ShapeNumbering::parse("1 a\n2 a"), Err(CatalogError::DuplicateKey(_))));
        assert!(matches!(ShapeNumbering::parse("21 a"), Err(CatalogError::Parse { .. })));
        assert!(matches!(ShapeNumbering::parse("1 a b"), Err(CatalogError::Parse { .. })));
        let ok = ShapeNumbering::parse("# header\n\n3 k3  # trailing\n").unwrap();
        assert_eq!(ok.key_of(3), Some("k3"));
        assert_eq!(ok.number_of("k3"), Some(3));
    }
}
