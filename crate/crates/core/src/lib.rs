//! Enumeration of the essentially different tangram partitions of convex
//! shapes.
//!
//! Shapes and pieces live on the quarter-square triangle lattice
//! ([`trigrid`]). The [`catalog`] holds the Chinese and Japanese tan sets and
//! the census of the twenty convex shapes a full set could cover; [`embed`]
//! and [`solver`] enumerate every exact cover; [`canon`] reduces covers to
//! classes under shape symmetry and identical-piece swaps; [`strips`] checks
//! the cut-and-paste structure of the three one-unit-tall strips; [`render`]
//! draws partitions as SVG.

pub mod canon;
pub mod catalog;
pub mod embed;
pub mod solver;
pub mod render;
pub mod strips;
pub mod trigrid;

pub use canon::{canonicalize, dedupe, region_key, solution_key, CanonicalSolution};
pub use catalog::{tan_set, Catalog, ShapeEntry, TanName, TanSet, TanSetKind};
pub use solver::{enumerate_partitions, exists_partition, CountMode, Placement, Solution, SolveError};
pub use trigrid::{Point, Quadrant, Region, Transform, TriCell};
