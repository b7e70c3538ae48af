//! Deterministic SVG drawings of partitions and shapes.
//!
//! Coordinates are written exactly: every lattice point lands on a multiple
//! of half the scale, printed as an integer or with a single `.5`.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::catalog::{simplify_polygon, Coverage, ShapeEntry, TanName, TanSet};
use crate::solver::{validate_solution, Placement, Solution};
use crate::trigrid::{Bounds, Point, Region, Transform, TriCell};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RenderError {
    #[error("solution does not cover the region: {0}")]
    Invalid(String),
    #[error("nothing to render")]
    Empty,
    #[error("sheet needs at least one column")]
    NoColumns,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RenderStyle {
    /// Pixels per lattice unit.
    pub scale: u32,
    pub margin: u32,
    pub stroke_width: u32,
    pub grid: bool,
    pub labels: bool,
    /// Give each of two identical pieces its own colour.
    pub colored: bool,
}

impl Default for RenderStyle {
    fn default() -> Self {
        RenderStyle { scale: 40, margin: 10, stroke_width: 2, grid: false, labels: true, colored: false }
    }
}

impl RenderStyle {
    pub fn fill(&self, tan: TanName, instance: u8) -> &'static str {
        if self.colored && instance > 0 {
            return match tan {
                TanName::Ts => "#f9a66c",
                TanName::Tm => "#7fc8a9",
                TanName::Tb => "#c39bd3",
                _ => "#bbbbbb",
            };
        }
        match tan {
            TanName::Ts => "#e4572e",
            TanName::S => "#ffc914",
            TanName::P => "#2e86ab",
            TanName::Tm => "#3a7d44",
            TanName::Tb => "#6c3483",
            TanName::Tr => "#f18f01",
            TanName::Tz => "#a23b72",
        }
    }
}

/// Counterclockwise boundary loops of a cell set, in doubled coordinates,
/// with collinear vertices removed.
pub fn outline(cells: &[TriCell]) -> Vec<Vec<Point>> {
    let mut edges: BTreeMap<Point, Vec<Point>> = BTreeMap::new();
    let mut count: BTreeMap<(Point, Point), i32> = BTreeMap::new();
    for c in cells {
        let k = c.corners();
        for i in 0..3 {
            let (a, b) = (k[i], k[(i + 1) % 3]);
            if let Some(n) = count.get_mut(&(b, a)) {
                *n -= 1;
                if *n == 0 {
                    count.remove(&(b, a));
                }
            } else {
                *count.entry((a, b)).or_insert(0) += 1;
            }
        }
    }
    for &(a, b) in count.keys() {
        edges.entry(a).or_default().push(b);
    }
    let mut loops = Vec::new();
    while let Some((&start, _)) = edges.iter().find(|(_, v)| !v.is_empty()) {
        let mut ring = vec![start];
        let mut at = start;
        loop {
            let next = edges.get_mut(&at).and_then(|v| if v.is_empty() { None } else { Some(v.remove(0)) });
            match next {
                Some(n) if n == start => break,
                Some(n) => {
                    ring.push(n);
                    at = n;
                }
                None => break,
            }
        }
        loops.push(simplify_polygon(&ring));
    }
    loops
}

/// Twice the signed area of a loop in doubled coordinates, i.e. 8x the area.
pub fn loop_area8(points: &[Point]) -> i64 {
    let n = points.len();
    (0..n)
        .map(|i| {
            let (a, b) = (points[i], points[(i + 1) % n]);
            a.x2 as i64 * b.y2 as i64 - b.x2 as i64 * a.y2 as i64
        })
        .sum()
}

/// `v / 2` printed exactly.
fn half(v: i64) -> String {
    if v % 2 == 0 {
        format!("{}", v / 2)
    } else {
        let sign = if v < 0 { "-" } else { "" };
        format!("{sign}{}.5", v.abs() / 2)
    }
}

/// Maps doubled lattice coordinates into a panel with y pointing down.
struct Frame {
    bounds: Bounds,
    scale: i64,
    margin: i64,
}

impl Frame {
    fn new(bounds: Bounds, style: &RenderStyle) -> Frame {
        Frame { bounds, scale: style.scale as i64, margin: style.margin as i64 }
    }

    // Doubled pixel coordinates.
    fn px2(&self, p: Point) -> (i64, i64) {
        let top = 2 * (self.bounds.y0 + self.bounds.height) as i64;
        (
            (p.x2 as i64 - 2 * self.bounds.x0 as i64) * self.scale + 2 * self.margin,
            (top - p.y2 as i64) * self.scale + 2 * self.margin,
        )
    }

    fn path(&self, loops: &[Vec<Point>]) -> String {
        let mut d = String::new();
        for ring in loops {
            for (i, &p) in ring.iter().enumerate() {
                let (x, y) = self.px2(p);
                let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, half(x), half(y));
            }
            d.push('Z');
        }
        d
    }

    fn width(&self) -> i64 {
        self.bounds.width as i64 * self.scale + 2 * self.margin
    }

    fn height(&self) -> i64 {
        self.bounds.height as i64 * self.scale + 2 * self.margin
    }
}

fn header(out: &mut String, width: i64, height: i64) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" version="1.1" width="{width}" height="{height}" viewBox="0 0 {width} {height}">"#
    );
    let _ = writeln!(out, r#"<rect class="background" x="0" y="0" width="{width}" height="{height}" fill="white"/>"#);
}

fn pieces(out: &mut String, sol: &Solution, frame: &Frame, style: &RenderStyle, indent: &str) {
    for p in &sol.placements {
        let d = frame.path(&outline(&p.cells));
        let _ = writeln!(
            out,
            r##"{indent}<path class="piece" data-tan="{}" data-instance="{}" d="{d}" fill="{}" stroke="#222222" stroke-width="{}" stroke-linejoin="round"/>"##,
            p.tan,
            p.instance,
            style.fill(p.tan, p.instance),
            style.stroke_width
        );
    }
}

fn grid(out: &mut String, frame: &Frame, indent: &str) {
    let b = frame.bounds;
    let _ = writeln!(out, r##"{indent}<g class="grid" stroke="#dddddd" stroke-width="1">"##);
    for x in b.x0..=b.x0 + b.width {
        let (px, top) = frame.px2(Point::new(x, b.y0 + b.height));
        let (_, bottom) = frame.px2(Point::new(x, b.y0));
        let _ = writeln!(out, r#"{indent}  <line x1="{0}" y1="{1}" x2="{0}" y2="{2}"/>"#, half(px), half(top), half(bottom));
    }
    for y in b.y0..=b.y0 + b.height {
        let (left, py) = frame.px2(Point::new(b.x0, y));
        let (right, _) = frame.px2(Point::new(b.x0 + b.width, y));
        let _ = writeln!(out, r#"{indent}  <line x1="{1}" y1="{0}" x2="{2}" y2="{0}"/>"#, half(py), half(left), half(right));
    }
    let _ = writeln!(out, "{indent}</g>");
}

/// Regions taller than wide are drawn lying down, so strips are one unit tall.
fn display_transform(region: &Region) -> Transform {
    let b = region.bounds();
    if b.height > b.width {
        Transform::rotation(1)
    } else {
        Transform::IDENTITY
    }
}

fn laid_out(sol: &Solution, g: Transform) -> Solution {
    let placements = sol
        .placements
        .iter()
        .map(|p| {
            let mut cells: Vec<TriCell> = p.cells.iter().map(|&c| g.apply_cell(c)).collect();
            cells.sort();
            Placement { cells, ..p.clone() }
        })
        .collect();
    Solution { placements }
}

fn check(sol: &Solution, region: &Region) -> Result<(), RenderError> {
    let tans = TanSet::custom(&sol.placements.iter().map(|p| (p.tan, 1)).collect::<Vec<_>>());
    validate_solution(sol, region, &tans).map_err(|e| RenderError::Invalid(e.to_string()))
}

/// One partition, one closed path per piece.
pub fn render_solution_svg(sol: &Solution, region: &Region, style: &RenderStyle) -> Result<String, RenderError> {
    check(sol, region)?;
    let g = display_transform(region);
    let sol = &laid_out(sol, g);
    let frame = Frame::new(region.transformed(g).bounds(), style);
    let mut out = String::new();
    header(&mut out, frame.width(), frame.height());
    if style.grid {
        grid(&mut out, &frame, "");
    }
    pieces(&mut out, sol, &frame, style, "");
    out.push_str("</svg>\n");
    Ok(out)
}

const LABEL_BAND: i64 = 20;

/// Size of one sheet panel including its label band.
pub fn panel_size(region: &Region, style: &RenderStyle) -> (i64, i64) {
    let frame = Frame::new(region.transformed(display_transform(region)).bounds(), style);
    (frame.width(), frame.height() + LABEL_BAND)
}

/// A grid of partitions, row-major in the given order, labelled from 1.
pub fn render_sheet_svg(
    solutions: &[Solution],
    region: &Region,
    columns: usize,
    style: &RenderStyle,
) -> Result<String, RenderError> {
    if solutions.is_empty() {
        return Err(RenderError::Empty);
    }
    if columns == 0 {
        return Err(RenderError::NoColumns);
    }
    for s in solutions {
        check(s, region)?;
    }
    let g = display_transform(region);
    let frame = Frame::new(region.transformed(g).bounds(), style);
    let (pw, ph) = panel_size(region, style);
    let cols = columns.min(solutions.len());
    let rows = solutions.len().div_ceil(cols);
    let mut out = String::new();
    header(&mut out, pw * cols as i64, ph * rows as i64);
    for (i, sol) in solutions.iter().enumerate() {
        let (col, row) = ((i % cols) as i64, (i / cols) as i64);
        let _ = writeln!(out, r#"<g class="panel" transform="translate({},{})">"#, col * pw, row * ph);
        if style.labels {
            let _ = writeln!(
                out,
                r#"  <text class="label" x="{}" y="{}" font-family="sans-serif" font-size="14">{}</text>"#,
                style.margin,
                LABEL_BAND - 4,
                i + 1
            );
        }
        let _ = writeln!(out, r#"  <g transform="translate(0,{LABEL_BAND})">"#);
        if style.grid {
            grid(&mut out, &frame, "    ");
        }
        pieces(&mut out, &laid_out(sol, g), &frame, style, "    ");
        out.push_str("  </g>\n</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}

/// All census shapes with their keys, numbers and coverability badges.
pub fn render_shape_catalog(
    entries: &[ShapeEntry],
    coverage: &[Coverage],
    style: &RenderStyle,
) -> Result<String, RenderError> {
    if entries.is_empty() {
        return Err(RenderError::Empty);
    }
    let scale = style.scale as i64;
    let margin = style.margin as i64;
    // Every panel is sized for the largest box so the sheet stays a grid.
    let side = entries
        .iter()
        .map(|e| e.region.bounds())
        .map(|b| b.width.max(b.height) as i64)
        .max()
        .unwrap_or(1);
    let pw = side * scale + 2 * margin;
    let ph = pw + 3 * LABEL_BAND;
    let cols = 5usize.min(entries.len());
    let rows = entries.len().div_ceil(cols);
    let mut out = String::new();
    header(&mut out, pw * cols as i64, ph * rows as i64);
    for (i, e) in entries.iter().enumerate() {
        let (col, row) = ((i % cols) as i64, (i / cols) as i64);
        let region = e.region.transformed(display_transform(&e.region));
        let frame = Frame::new(region.bounds(), style);
        let title = match e.number {
            Some(n) => format!("J{n:02}"),
            None => "unnumbered".to_string(),
        };
        let badges = coverage.get(i).map_or(String::new(), |c| {
            let mut b = Vec::new();
            if c.japanese {
                b.push("J");
            }
            if c.chinese {
                b.push("C");
            }
            b.join(" ")
        });
        let _ = writeln!(out, r#"<g class="panel" transform="translate({},{})">"#, col * pw, row * ph);
        let _ = writeln!(
            out,
            r#"  <text class="label" x="{margin}" y="{}" font-family="sans-serif" font-size="14">{title}</text>"#,
            LABEL_BAND - 4
        );
        if !badges.is_empty() {
            let _ = writeln!(
                out,
                r#"  <text class="badge" x="{}" y="{}" font-family="sans-serif" font-size="14" text-anchor="end">{badges}</text>"#,
                pw - margin,
                LABEL_BAND - 4
            );
        }
        let _ = writeln!(
            out,
            r#"  <text class="key" x="{margin}" y="{}" font-family="monospace" font-size="7">{}</text>"#,
            ph - LABEL_BAND,
            e.key
        );
        let _ = writeln!(out, r#"  <g transform="translate(0,{LABEL_BAND})">"#);
        let _ = writeln!(
            out,
            r##"    <path class="shape" data-key="{}" d="{}" fill="#cfe2f3" stroke="#222222" stroke-width="{}"/>"##,
            e.key,
            frame.path(&outline(region.cells())),
            style.stroke_width
        );
        out.push_str("  </g>\n</g>\n");
    }
    out.push_str("</svg>\n");
    Ok(out)
}
