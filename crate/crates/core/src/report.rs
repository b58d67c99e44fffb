//! JSON run reports and variant comparisons.
//!
//! A report carries enough of the map, partition and paths to re-render the
//! run without the original map file.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::darp::{AssignmentMatrix, SeedMode};
use crate::grid::{CellCoord, GridMap, MapError};
use crate::pipeline::{plan, CoverageMode, Plan, PlanConfig, PlanError, Variant};
use crate::stc::{CoveragePath, StepKind};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    pub map: MapSection,
    pub config: ConfigSection,
    pub partition: PartitionSection,
    pub robots: Vec<RobotSection>,
    pub fleet: FleetSection,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MapSection {
    pub height: usize,
    pub width: usize,
    pub obstacle_ratio: f64,
    pub obstacles: Vec<CellCoord>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ConfigSection {
    pub mode: SeedMode,
    pub coverage: CoverageMode,
    pub eta: f64,
    pub gamma: f64,
    pub max_iter: usize,
    pub ts: f64,
    pub tt: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionSection {
    pub sizes: Vec<usize>,
    #[serde(rename = "J")]
    pub j: f64,
    pub iterations: usize,
    pub converged: bool,
    pub excluded: Vec<CellCoord>,
    pub fair_share: f64,
    /// Owner of each mega-cell by row, `-1` where unassigned.
    pub assignment: Vec<Vec<i64>>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobotSection {
    pub id: usize,
    pub start: CellCoord,
    pub n_moves: usize,
    pub straight: usize,
    pub turns: usize,
    pub time: f64,
    pub path: Vec<CellCoord>,
    /// Indices into `path` of positions added by small-cell compensation.
    pub spikes: Vec<usize>,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FleetSection {
    pub max: f64,
    pub min: f64,
    pub ave: f64,
    pub ratio: Option<f64>,
    pub coverage_rate: f64,
    pub uncovered: Vec<CellCoord>,
}

impl RunReport {
    pub fn from_plan(plan: &Plan) -> Self {
        let grid = &plan.grid;
        let part = &plan.partition;
        let assignment = (0..part.assignment.height())
            .map(|r| {
                (0..part.assignment.width())
                    .map(|c| {
                        part.assignment
                            .get(CellCoord::new(r, c))
                            .map_or(-1, |o| o as i64)
                    })
                    .collect()
            })
            .collect();
        let robots = plan
            .paths
            .iter()
            .zip(&plan.metrics)
            .map(|(path, m)| RobotSection {
                id: path.robot,
                start: grid.starts()[path.robot],
                n_moves: path.move_count(),
                straight: m.straight_moves,
                turns: m.turn_moves,
                time: m.time,
                path: path.moves.clone(),
                spikes: path
                    .kinds
                    .iter()
                    .enumerate()
                    .filter(|(_, k)| **k == StepKind::Spike)
                    .map(|(i, _)| i)
                    .collect(),
            })
            .collect();
        RunReport {
            map: MapSection {
                height: grid.height(),
                width: grid.width(),
                obstacle_ratio: grid.obstacle_ratio(),
                obstacles: grid.obstacle_list(),
            },
            config: ConfigSection {
                mode: plan.config.mode,
                coverage: plan.config.coverage,
                eta: plan.config.partition.eta,
                gamma: plan.config.partition.gamma,
                max_iter: plan.config.partition.max_iter,
                ts: plan.config.time.straight,
                tt: plan.config.time.turn,
            },
            partition: PartitionSection {
                sizes: part.region_sizes.clone(),
                j: part.final_j,
                iterations: part.iterations,
                converged: part.converged,
                excluded: part.excluded_cells.clone(),
                fair_share: part.fair_share,
                assignment,
            },
            robots,
            fleet: FleetSection {
                max: plan.fleet.max,
                min: plan.fleet.min,
                ave: plan.fleet.ave,
                ratio: plan.fleet.ratio,
                coverage_rate: plan.fleet.coverage_rate,
                uncovered: plan.fleet.uncovered.clone(),
            },
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }

    pub fn from_json(text: &str) -> Result<Self, serde_json::Error> {
        serde_json::from_str(text)
    }

    pub fn total_turns(&self) -> usize {
        self.robots.iter().map(|r| r.turns).sum()
    }

    /// Rebuilds the map, mega-level assignment and paths for rendering.
    pub fn scene(&self) -> Result<(GridMap, AssignmentMatrix, Vec<CoveragePath>), MapError> {
        let starts = self.robots.iter().map(|r| r.start).collect();
        let grid = GridMap::from_obstacle_list(
            self.map.height,
            self.map.width,
            &self.map.obstacles,
            starts,
        )?;
        let height = self.partition.assignment.len();
        let width = self.partition.assignment.first().map_or(0, Vec::len);
        let owners = self
            .partition
            .assignment
            .iter()
            .flatten()
            .map(|&o| usize::try_from(o).ok())
            .collect();
        let assignment = AssignmentMatrix::from_owners(height, width, owners);
        let paths = self
            .robots
            .iter()
            .map(|r| {
                let mut kinds = vec![StepKind::Loop; r.path.len()];
                for &i in &r.spikes {
                    if let Some(k) = kinds.get_mut(i) {
                        *k = StepKind::Spike;
                    }
                }
                CoveragePath {
                    robot: r.id,
                    moves: r.path.clone(),
                    kinds,
                }
            })
            .collect();
        Ok((grid, assignment, paths))
    }
}

/// Differences `b − a` of the headline indicators.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Deltas {
    pub max: f64,
    pub min: f64,
    pub ave: f64,
    pub ratio: Option<f64>,
    pub coverage_rate: f64,
    pub turns: i64,
    #[serde(rename = "J")]
    pub j: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompareResult {
    pub a_variant: String,
    pub b_variant: String,
    pub a: RunReport,
    pub b: RunReport,
    pub deltas: Deltas,
}

impl CompareResult {
    pub fn new(a_variant: Variant, a: RunReport, b_variant: Variant, b: RunReport) -> Self {
        let deltas = Deltas {
            max: b.fleet.max - a.fleet.max,
            min: b.fleet.min - a.fleet.min,
            ave: b.fleet.ave - a.fleet.ave,
            ratio: a.fleet.ratio.zip(b.fleet.ratio).map(|(ra, rb)| rb - ra),
            coverage_rate: b.fleet.coverage_rate - a.fleet.coverage_rate,
            turns: b.total_turns() as i64 - a.total_turns() as i64,
            j: b.partition.j - a.partition.j,
        };
        Self {
            a_variant: a_variant.to_string(),
            b_variant: b_variant.to_string(),
            a,
            b,
            deltas,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("comparison serializes")
    }

    /// Side-by-side text table.
    pub fn table(&self) -> String {
        fn opt(v: Option<f64>) -> String {
            v.map_or_else(|| "n/a".to_string(), |x| format!("{x:.2}"))
        }
        let rows: [(&str, String, String, String); 8] = [
            (
                "Max",
                format!("{:.2}", self.a.fleet.max),
                format!("{:.2}", self.b.fleet.max),
                format!("{:+.2}", self.deltas.max),
            ),
            (
                "Min",
                format!("{:.2}", self.a.fleet.min),
                format!("{:.2}", self.b.fleet.min),
                format!("{:+.2}", self.deltas.min),
            ),
            (
                "Ave",
                format!("{:.2}", self.a.fleet.ave),
                format!("{:.2}", self.b.fleet.ave),
                format!("{:+.2}", self.deltas.ave),
            ),
            (
                "Ratio",
                opt(self.a.fleet.ratio),
                opt(self.b.fleet.ratio),
                self.deltas
                    .ratio
                    .map_or("n/a".into(), |d| format!("{d:+.2}")),
            ),
            (
                "Coverage",
                format!("{:.2}%", 100.0 * self.a.fleet.coverage_rate),
                format!("{:.2}%", 100.0 * self.b.fleet.coverage_rate),
                format!("{:+.2}%", 100.0 * self.deltas.coverage_rate),
            ),
            (
                "Turns",
                self.a.total_turns().to_string(),
                self.b.total_turns().to_string(),
                format!("{:+}", self.deltas.turns),
            ),
            (
                "J",
                format!("{:.2}", self.a.partition.j),
                format!("{:.2}", self.b.partition.j),
                format!("{:+.2}", self.deltas.j),
            ),
            (
                "Converged",
                self.a.partition.converged.to_string(),
                self.b.partition.converged.to_string(),
                String::new(),
            ),
        ];
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<10} {:>22} {:>22} {:>10}",
            "indicator", self.a_variant, self.b_variant, "delta"
        );
        for (name, a, b, d) in rows {
            let _ = writeln!(out, "{name:<10} {a:>22} {b:>22} {d:>10}");
        }
        out
    }
}

/// Plans the same map under two variants with otherwise identical settings.
pub fn compare(
    grid: &GridMap,
    base: &PlanConfig,
    a: Variant,
    b: Variant,
) -> Result<(Plan, Plan, CompareResult), PlanError> {
    let plan_a = plan(grid, &base.with_variant(a))?;
    let plan_b = plan(grid, &base.with_variant(b))?;
    let result = CompareResult::new(
        a,
        RunReport::from_plan(&plan_a),
        b,
        RunReport::from_plan(&plan_b),
    );
    Ok((plan_a, plan_b, result))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::parse_map;

    #[test]
    fn report_uses_the_stable_keys() {
        let grid = parse_map("0...\n....\n....\n...1\n").unwrap();
        let p = plan(&grid, &PlanConfig::default()).unwrap();
        let v: serde_json::Value =
            serde_json::from_str(&RunReport::from_plan(&p).to_json()).unwrap();
        for key in ["height", "width", "obstacle_ratio"] {
            assert!(v["map"].get(key).is_some(), "map.{key}");
        }
        for key in ["sizes", "J", "iterations", "converged", "excluded"] {
            assert!(v["partition"].get(key).is_some(), "partition.{key}");
        }
        for key in [
            "id", "start", "n_moves", "straight", "turns", "time", "path",
        ] {
            assert!(v["robots"][0].get(key).is_some(), "robots[0].{key}");
        }
        for key in ["max", "min", "ave", "ratio", "coverage_rate", "uncovered"] {
            assert!(v["fleet"].get(key).is_some(), "fleet.{key}");
        }
        assert_eq!(v["config"]["mode"], "astar-darp");
        assert_eq!(v["robots"][0]["path"][0], serde_json::json!([0, 0]));
    }

    #[test]
    fn same_variant_twice_has_zero_deltas() {
        let grid = parse_map("0...\n....\n....\n...1\n").unwrap();
        let v: Variant = "darp:stc".parse().unwrap();
        let (_, _, cmp) = compare(&grid, &PlanConfig::default(), v, v).unwrap();
        let d = &cmp.deltas;
        assert_eq!(
            (d.max, d.min, d.ave, d.coverage_rate, d.turns, d.j),
            (0.0, 0.0, 0.0, 0.0, 0, 0.0)
        );
        assert_eq!(d.ratio, Some(0.0));
        assert!(cmp.table().contains("darp:stc"));
    }

    #[test]
    fn scene_rebuilds_paths() {
        let grid = parse_map("0..#\n....\n").unwrap();
        let p = plan(&grid, &PlanConfig::default()).unwrap();
        let report = RunReport::from_plan(&p);
        let (g, a, paths) = report.scene().unwrap();
        assert_eq!(g, grid);
        assert_eq!(a, p.partition.assignment);
        assert_eq!(paths, p.paths);
    }
}
