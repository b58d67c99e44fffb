//! Multi-robot coverage path planning on occupancy grids.
//!
//! The pipeline divides the free area between robots (DARP, optionally seeded
//! with obstacle-aware path distances), covers each robot's share with a
//! spanning-tree loop, and grafts Up-First spikes onto the loops to reach
//! free subcells that the 2×2 mega-cell grid hides.
//!
//! ```
//! use darpcov::{parse_map, plan, PlanConfig};
//!
//! let grid = parse_map("0...\n....\n....\n...1\n").unwrap();
//! let plan = plan(&grid, &PlanConfig::default()).unwrap();
//! assert!(plan.partition.converged);
//! assert_eq!(plan.fleet.coverage_rate, 1.0);
//! ```

pub mod darp;
pub mod distance;
mod edt;
pub mod fixtures;
pub mod grid;
pub mod metrics;
pub mod pipeline;
pub mod render;
pub mod report;
pub mod stc;
pub mod up_first;

pub use darp::{partition, PartitionConfig, PartitionResult, SeedMode};
pub use grid::{build_mega, parse_map, parse_map_json, small_cells, CellCoord, GridMap, MegaGrid};
pub use metrics::TimeModel;
pub use pipeline::{plan, CoverageMode, Plan, PlanConfig, PlanError, Variant};
pub use render::render_svg;
pub use report::{compare, CompareResult, RunReport};
