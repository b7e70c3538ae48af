//! The JSON solution document.

use serde::{Deserialize, Serialize};
use tangram_core::canon::{colored_classes, colored_key, parse_region_key, CanonError};
use tangram_core::solver::{validate_solution, ValidationError};
use tangram_core::{
    dedupe, enumerate_partitions, region_key, solution_key, tan_set, CountMode, Placement, Quadrant, Region,
    Solution, SolveError, TanName, TanSetKind, TriCell,
};
use thiserror::Error;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error("malformed document: {0}")]
    Json(#[from] serde_json::Error),
    #[error("unsupported schema version {0}")]
    Version(u32),
    #[error(transparent)]
    Key(#[from] CanonError),
    #[error("solution {index} is not a partition of the shape: {source}")]
    Invalid { index: usize, source: ValidationError },
    #[error("solution {index} has key {found}, expected {expected}")]
    WrongKey { index: usize, expected: String, found: String },
    #[error("document lists {listed} solutions but its {mode} count is {count}")]
    CountMismatch { listed: usize, count: usize, mode: &'static str },
    #[error("solutions are not in key order or repeat")]
    Order,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ShapeRef {
    pub number: Option<u8>,
    pub key: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Counts {
    pub labeled: usize,
    pub canonical: usize,
    pub colored: usize,
}

impl Counts {
    pub fn get(&self, mode: CountMode) -> usize {
        match mode {
            CountMode::Labeled => self.labeled,
            CountMode::Canonical => self.canonical,
            CountMode::Colored => self.colored,
        }
    }
}

/// A cell written as `[x, y, "N"]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CellRecord(pub i32, pub i32, pub Quadrant);

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct PlacementRecord {
    pub tan: TanName,
    pub instance: u8,
    pub cells: Vec<CellRecord>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionRecord {
    /// Canonical key in canonical and labeled mode, colored key in colored mode.
    pub key: String,
    pub placements: Vec<PlacementRecord>,
}

impl SolutionRecord {
    fn new(key: String, sol: &Solution) -> SolutionRecord {
        let placements = sol
            .placements
            .iter()
            .map(|p| PlacementRecord {
                tan: p.tan,
                instance: p.instance,
                cells: p.cells.iter().map(|c| CellRecord(c.x, c.y, c.q)).collect(),
            })
            .collect();
        SolutionRecord { key, placements }
    }

    pub fn solution(&self) -> Solution {
        let mut placements: Vec<Placement> = self
            .placements
            .iter()
            .map(|p| {
                let mut cells: Vec<TriCell> = p.cells.iter().map(|c| TriCell::new(c.0, c.1, c.2)).collect();
                cells.sort();
                Placement { tan: p.tan, instance: p.instance, cells }
            })
            .collect();
        placements.sort();
        Solution { placements }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SolutionDocument {
    pub schema_version: u32,
    pub shape: ShapeRef,
    pub tan_set: TanSetKind,
    pub mode: CountMode,
    pub counts: Counts,
    pub solutions: Vec<SolutionRecord>,
}

fn record_key(mode: CountMode, sol: &Solution, region: &Region) -> String {
    match mode {
        CountMode::Colored => colored_key(sol, region),
        _ => solution_key(sol, region),
    }
}

impl SolutionDocument {
    /// Enumerates a shape and lists its partitions for `mode`: one
    /// representative per class, or every labeled partition. The region may
    /// be given in any position; cells are written in key orientation.
    pub fn build(
        number: Option<u8>,
        region: &Region,
        kind: TanSetKind,
        mode: CountMode,
    ) -> Result<SolutionDocument, SolveError> {
        // Cells are recorded in the frame the key describes.
        let key = region_key(region);
        let region = &parse_region_key(&key).expect("a region key parses back");
        let labeled = enumerate_partitions(region, &tan_set(kind), true)?;
        let canonical = dedupe(&labeled, region);
        let colored = colored_classes(&canonical, region);
        let counts = Counts {
            labeled: labeled.len(),
            canonical: canonical.len(),
            colored: colored.iter().map(Vec::len).sum(),
        };
        let mut records: Vec<SolutionRecord> = match mode {
            CountMode::Canonical => {
                canonical.iter().map(|c| SolutionRecord::new(c.key.clone(), &c.representative)).collect()
            }
            CountMode::Labeled => labeled.iter().map(|s| SolutionRecord::new(solution_key(s, region), s)).collect(),
            CountMode::Colored => {
                colored.iter().flatten().map(|s| SolutionRecord::new(colored_key(s, region), s)).collect()
            }
        };
        records.sort_by_cached_key(|r| (r.key.clone(), r.solution()));
        Ok(SolutionDocument {
            schema_version: SCHEMA_VERSION,
            shape: ShapeRef { number, key },
            tan_set: kind,
            mode,
            counts,
            solutions: records,
        })
    }

    pub fn region(&self) -> Result<Region, DocumentError> {
        Ok(parse_region_key(&self.shape.key)?)
    }

    pub fn solutions(&self) -> Vec<Solution> {
        self.solutions.iter().map(SolutionRecord::solution).collect()
    }

    /// Checks every listed solution against the shape, its stored key and the
    /// stored count for the document's mode.
    pub fn validate(&self) -> Result<(), DocumentError> {
        if self.schema_version != SCHEMA_VERSION {
            return Err(DocumentError::Version(self.schema_version));
        }
        let region = self.region()?;
        let tans = tan_set(self.tan_set);
        for (index, rec) in self.solutions.iter().enumerate() {
            let sol = rec.solution();
            validate_solution(&sol, &region, &tans).map_err(|source| DocumentError::Invalid { index, source })?;
            let expected = record_key(self.mode, &sol, &region);
            if expected != rec.key {
                return Err(DocumentError::WrongKey { index, expected, found: rec.key.clone() });
            }
        }
        let count = self.counts.get(self.mode);
        if count != self.solutions.len() {
            return Err(DocumentError::CountMismatch { listed: self.solutions.len(), count, mode: self.mode.as_str() });
        }
        let strictly_sorted = self.solutions.windows(2).all(|w| {
            (&w[0].key, w[0].solution()) < (&w[1].key, w[1].solution())
        });
        if !strictly_sorted {
            return Err(DocumentError::Order);
        }
        Ok(())
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("document serializes");
        s.push('\n');
        s
    }

    /// Parses and validates.
    pub fn from_json(text: &str) -> Result<SolutionDocument, DocumentError> {
        let doc: SolutionDocument = serde_json::from_str(text)?;
        doc.validate()?;
        Ok(doc)
    }
}
