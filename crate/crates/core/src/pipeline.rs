//! End-to-end planning: map → mega-grid → partition → per-robot spanning-tree
//! loop → optional Up-First spikes → scores.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::darp::{partition, PartitionConfig, PartitionError, PartitionResult, SeedMode};
use crate::grid::{
    build_mega, small_cells, CellCoord, GridMap, MegaGrid, SmallCellSet, StartError,
};
use crate::metrics::{
    fleet_report, score_path, FleetSummary, MetricsError, RobotMetrics, TimeModel,
};
use crate::stc::{build_mst, circumnavigate, CoveragePath, StcError};
use crate::up_first::{plan_fleet_uf, ClaimTable};

/// Single-robot coverage strategy.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum CoverageMode {
    #[serde(rename = "stc")]
    Stc,
    #[serde(rename = "uf-stc")]
    UfStc,
}

impl CoverageMode {
    pub fn as_str(self) -> &'static str {
        match self {
            CoverageMode::Stc => "stc",
            CoverageMode::UfStc => "uf-stc",
        }
    }
}

impl fmt::Display for CoverageMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for CoverageMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "stc" => Ok(CoverageMode::Stc),
            "uf-stc" | "ufstc" => Ok(CoverageMode::UfStc),
            other => Err(format!(
                "unknown coverage {other:?}, expected stc or uf-stc"
            )),
        }
    }
}

/// A partitioning mode paired with a coverage mode, written `MODE:COV`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Variant {
    pub mode: SeedMode,
    pub coverage: CoverageMode,
}

impl fmt::Display for Variant {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}", self.mode, self.coverage)
    }
}

impl FromStr for Variant {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let (mode, coverage) = s.split_once(':').ok_or_else(|| {
            format!("variant {s:?} must look like MODE:COV, e.g. astar-darp:uf-stc")
        })?;
        Ok(Variant {
            mode: mode.parse()?,
            coverage: coverage.parse()?,
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PlanConfig {
    pub mode: SeedMode,
    pub coverage: CoverageMode,
    pub partition: PartitionConfig,
    pub time: TimeModel,
}

impl Default for PlanConfig {
    fn default() -> Self {
        Self {
            mode: SeedMode::AStar,
            coverage: CoverageMode::UfStc,
            partition: PartitionConfig::default(),
            time: TimeModel::default(),
        }
    }
}

impl PlanConfig {
    pub fn variant(&self) -> Variant {
        Variant {
            mode: self.mode,
            coverage: self.coverage,
        }
    }

    pub fn with_variant(mut self, v: Variant) -> Self {
        self.mode = v.mode;
        self.coverage = v.coverage;
        self
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PlanError {
    #[error(transparent)]
    Start(#[from] StartError),
    #[error(transparent)]
    Partition(#[from] PartitionError),
    #[error("robot {robot}: {source}")]
    Tree { robot: usize, source: StcError },
    #[error(transparent)]
    Metrics(#[from] MetricsError),
}

/// Everything one planning run produced.
#[derive(Clone, Debug)]
pub struct Plan {
    pub config: PlanConfig,
    pub grid: GridMap,
    pub mega: MegaGrid,
    pub small: SmallCellSet,
    pub partition: PartitionResult,
    /// Spike-free spanning-tree loops, one per robot.
    pub loops: Vec<CoveragePath>,
    /// Final paths (equal to `loops` under plain STC).
    pub paths: Vec<CoveragePath>,
    pub claims: ClaimTable,
    pub metrics: Vec<RobotMetrics>,
    pub fleet: FleetSummary,
}

impl Plan {
    pub fn total_turns(&self) -> usize {
        self.metrics.iter().map(|m| m.turn_moves).sum()
    }
}

pub fn plan(grid: &GridMap, config: &PlanConfig) -> Result<Plan, PlanError> {
    let mega = build_mega(grid);
    let robot_cells = mega.robot_cells(grid)?;
    let part = partition(&mega, &robot_cells, config.mode, &config.partition)?;
    let small = small_cells(grid, &mega);

    let loops = grid
        .starts()
        .iter()
        .enumerate()
        .map(|(robot, &start)| {
            let anchor = robot_cells[robot];
            // a non-converged partition may leave detached fragments; only the
            // start-connected part can carry a tree
            let mask = part.assignment.connected_mask(robot, anchor);
            let region: BTreeSet<CellCoord> = mask
                .iter()
                .enumerate()
                .filter(|(_, &m)| m)
                .map(|(i, _)| mega.coord(i))
                .collect();
            build_mst(&region, anchor)
                .and_then(|tree| circumnavigate(&tree, start, robot))
                .map_err(|source| PlanError::Tree { robot, source })
        })
        .collect::<Result<Vec<_>, _>>()?;

    let (paths, claims) = match config.coverage {
        CoverageMode::Stc => (loops.clone(), ClaimTable::new()),
        CoverageMode::UfStc => plan_fleet_uf(&loops, &small),
    };

    let metrics = paths
        .iter()
        .map(|p| score_path(p, &config.time))
        .collect::<Result<Vec<_>, _>>()?;
    let covered: Vec<BTreeSet<CellCoord>> = paths.iter().map(CoveragePath::covered).collect();
    let fleet = fleet_report(&metrics, grid, &covered)?;

    Ok(Plan {
        config: *config,
        grid: grid.clone(),
        mega,
        small,
        partition: part,
        loops,
        paths,
        claims,
        metrics,
        fleet,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_map;

    #[test]
    fn variant_parsing() {
        let v: Variant = "astar-darp:uf-stc".parse().unwrap();
        assert_eq!(v.mode, SeedMode::AStar);
        assert_eq!(v.coverage, CoverageMode::UfStc);
        assert_eq!(v.to_string(), "astar-darp:uf-stc");
        assert!("darp".parse::<Variant>().is_err());
        assert!("darp:zigzag".parse::<Variant>().is_err());
    }

    #[test]
    fn single_robot_free_four_by_four() {
        let grid = parse_map("0...\n....\n....\n....\n").unwrap();
        let p = plan(&grid, &PlanConfig::default()).unwrap();
        assert_eq!(p.paths[0].move_count(), 16);
        assert_eq!(p.fleet.ratio, Some(1.0));
        assert_eq!(p.fleet.coverage_rate, 1.0);
    }

    #[test]
    fn infeasible_start_is_reported() {
        let grid = parse_map("0#..\n....\n").unwrap();
        assert!(matches!(
            plan(&grid, &PlanConfig::default()),
            Err(PlanError::Start(StartError::BlockedMegaCell { .. }))
        ));
    }
}
