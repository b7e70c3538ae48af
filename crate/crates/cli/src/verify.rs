//! The full self-check: per-shape counts, census, strips.

use std::fmt;

use rayon::prelude::*;
use serde::Serialize;
use tangram_core::catalog::coverage;
use tangram_core::strips::{verify_strip_theorem, StripReport, StripTargets};
use tangram_core::{dedupe, enumerate_partitions, tan_set, CanonicalSolution, Catalog, TanSetKind};

use crate::error::CliError;

/// Essentially different Japanese-set partitions of shapes 1 to 16.
pub const EXPECTED_COUNTS: [usize; 16] = [34, 38, 43, 61, 19, 72, 3, 21, 23, 21, 16, 4, 32, 24, 60, 60];

pub const EXPECTED_SHAPES: usize = 20;
pub const EXPECTED_JAPANESE_COVERABLE: usize = 16;
pub const EXPECTED_CHINESE_COVERABLE: usize = 13;

pub fn expected_total() -> usize {
    EXPECTED_COUNTS.iter().sum()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ShapeResult {
    pub number: u8,
    pub key: String,
    pub expected: usize,
    pub actual: usize,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CensusReport {
    pub shapes: usize,
    pub pairwise_non_congruent: bool,
    pub japanese_coverable: usize,
    pub chinese_coverable: usize,
    /// Shape numbers with no Japanese-set partition.
    pub japanese_uncoverable: Vec<u8>,
    /// Shape numbers with no Chinese-set partition.
    pub chinese_uncoverable: Vec<u8>,
    /// Full enumeration of every uncoverable (shape, set) pair found nothing.
    pub uncoverable_enumerate_empty: bool,
    pub pass: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub shapes: Vec<ShapeResult>,
    pub matched: usize,
    pub total_expected: usize,
    pub total_actual: usize,
    pub census: CensusReport,
    pub strips: StripReport,
    pub pass: bool,
}

impl VerifyReport {
    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

impl fmt::Display for VerifyReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "shape  expected  actual")?;
        for s in &self.shapes {
            writeln!(
                f,
                "J{:02}   {:>8}  {:>6}  {}",
                s.number,
                s.expected,
                s.actual,
                if s.pass { "ok" } else { "MISMATCH" }
            )?;
        }
        writeln!(
            f,
            "counts: {}/{} match, total {} (expected {})",
            self.matched,
            self.shapes.len(),
            self.total_actual,
            self.total_expected
        )?;
        let c = &self.census;
        writeln!(
            f,
            "census: {} shapes (pairwise non-congruent: {}), {} japanese-coverable, {} chinese-coverable",
            c.shapes, c.pairwise_non_congruent, c.japanese_coverable, c.chinese_coverable
        )?;
        writeln!(f, "  no japanese partition: {:?}", c.japanese_uncoverable)?;
        writeln!(f, "  no chinese partition: {:?}", c.chinese_uncoverable)?;
        writeln!(f, "  enumeration empty for all of these: {}", c.uncoverable_enumerate_empty)?;
        writeln!(f, "strips:")?;
        for line in self.strips.to_string().lines() {
            writeln!(f, "  {line}")?;
        }
        write!(f, "verify: {}", if self.pass { "PASS" } else { "FAIL" })
    }
}

/// Canonical partitions of one numbered shape, for sheets.
pub struct ShapeSolutions {
    pub number: u8,
    pub solutions: Vec<CanonicalSolution>,
}

fn census_report(catalog: &Catalog) -> Result<CensusReport, CliError> {
    let shapes = catalog.shapes();
    let pairwise_non_congruent = shapes
        .iter()
        .enumerate()
        .all(|(i, a)| shapes[i + 1..].iter().all(|b| a.region.congruence_to(&b.region).is_none()));
    let cov = shapes.par_iter().map(coverage).collect::<Result<Vec<_>, _>>()?;
    let number = |i: usize| shapes[i].number.unwrap_or(0);
    let japanese_uncoverable: Vec<u8> = (0..shapes.len()).filter(|&i| !cov[i].japanese).map(number).collect();
    let chinese_uncoverable: Vec<u8> = (0..shapes.len()).filter(|&i| !cov[i].chinese).map(number).collect();
    // Negative check by full enumeration rather than the early-exit search.
    let negatives: Vec<(usize, TanSetKind)> = (0..shapes.len())
        .flat_map(|i| {
            let mut v = Vec::new();
            if !cov[i].japanese {
                v.push((i, TanSetKind::Japanese));
            }
            if !cov[i].chinese {
                v.push((i, TanSetKind::Chinese));
            }
            v
        })
        .collect();
    let empties = negatives
        .par_iter()
        .map(|&(i, kind)| enumerate_partitions(&shapes[i].region, &tan_set(kind), true).map(|s| s.is_empty()))
        .collect::<Result<Vec<bool>, _>>()?;
    let uncoverable_enumerate_empty = empties.iter().all(|&e| e);
    let japanese_coverable = shapes.len() - japanese_uncoverable.len();
    let chinese_coverable = shapes.len() - chinese_uncoverable.len();
    let pass = shapes.len() == EXPECTED_SHAPES
        && pairwise_non_congruent
        && japanese_coverable == EXPECTED_JAPANESE_COVERABLE
        && chinese_coverable == EXPECTED_CHINESE_COVERABLE
        && uncoverable_enumerate_empty;
    Ok(CensusReport {
        shapes: shapes.len(),
        pairwise_non_congruent,
        japanese_coverable,
        chinese_coverable,
        japanese_uncoverable,
        chinese_uncoverable,
        uncoverable_enumerate_empty,
        pass,
    })
}

/// Runs every check. Shapes are solved in parallel; the report is in shape order.
pub fn run_verify(catalog: &Catalog) -> Result<(VerifyReport, Vec<ShapeSolutions>), CliError> {
    let jp = tan_set(TanSetKind::Japanese);
    let solved = (1..=EXPECTED_COUNTS.len() as u8)
        .into_par_iter()
        .map(|n| {
            let shape = catalog.shape_by_number(n)?;
            let all = enumerate_partitions(&shape.region, &jp, true)?;
            Ok(ShapeSolutions { number: n, solutions: dedupe(&all, &shape.region) })
        })
        .collect::<Result<Vec<_>, CliError>>()?;
    let shapes: Vec<ShapeResult> = solved
        .iter()
        .map(|s| {
            let expected = EXPECTED_COUNTS[s.number as usize - 1];
            let actual = s.solutions.len();
            let key = catalog.shape_by_number(s.number).map(|e| e.key.clone()).unwrap_or_default();
            ShapeResult { number: s.number, key, expected, actual, pass: expected == actual }
        })
        .collect();
    let census = census_report(catalog)?;
    let strips = verify_strip_theorem(&StripTargets::from_catalog(catalog))?;
    let matched = shapes.iter().filter(|s| s.pass).count();
    let total_actual = shapes.iter().map(|s| s.actual).sum();
    let pass = matched == shapes.len() && total_actual == expected_total() && census.pass && strips.pass;
    let report = VerifyReport {
        schema_version: 1,
        shapes,
        matched,
        total_expected: expected_total(),
        total_actual,
        census,
        strips,
        pass,
    };
    Ok((report, solved))
}
