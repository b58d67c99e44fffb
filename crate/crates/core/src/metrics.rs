//! Completion-time scoring (`T = n·t_s + m·t_t`) and fleet statistics.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{CellCoord, Direction, GridMap};
use crate::stc::CoveragePath;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MetricsError {
    #[error("path has no moves")]
    EmptyPath,
    #[error("positions {index} and {next} are not 4-adjacent", next = index + 1)]
    NotAdjacent { index: usize },
    #[error("no robots to report on")]
    NoRobots,
    #[error("time model needs positive times, got t_s={straight} t_t={turn}")]
    InvalidTimeModel { straight: String, turn: String },
}

/// Time per straight move and per turning move.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct TimeModel {
    pub straight: f64,
    pub turn: f64,
}

impl Default for TimeModel {
    fn default() -> Self {
        Self {
            straight: 1.0,
            turn: 1.5,
        }
    }
}

impl TimeModel {
    pub fn new(straight: f64, turn: f64) -> Result<Self, MetricsError> {
        if straight > 0.0 && turn > 0.0 && straight.is_finite() && turn.is_finite() {
            Ok(Self { straight, turn })
        } else {
            Err(MetricsError::InvalidTimeModel {
                straight: straight.to_string(),
                turn: turn.to_string(),
            })
        }
    }

    pub fn time(&self, straight_moves: usize, turn_moves: usize) -> f64 {
        straight_moves as f64 * self.straight + turn_moves as f64 * self.turn
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct RobotMetrics {
    pub robot: usize,
    pub straight_moves: usize,
    pub turn_moves: usize,
    pub time: f64,
    pub covered_subcells: usize,
}

impl RobotMetrics {
    pub fn total_moves(&self) -> usize {
        self.straight_moves + self.turn_moves
    }
}

/// Splits a position sequence into straight and turning moves.
///
/// A move turns when its direction differs from the previous move's,
/// reversals included. The first move has no predecessor and counts as
/// straight.
pub fn count_moves(positions: &[CellCoord]) -> Result<(usize, usize), MetricsError> {
    if positions.len() < 2 {
        return Err(MetricsError::EmptyPath);
    }
    let mut straight = 0;
    let mut turns = 0;
    let mut prev: Option<Direction> = None;
    for (index, w) in positions.windows(2).enumerate() {
        let dir = w[0]
            .direction_to(w[1])
            .ok_or(MetricsError::NotAdjacent { index })?;
        match prev {
            Some(p) if p != dir => turns += 1,
            _ => straight += 1,
        }
        prev = Some(dir);
    }
    Ok((straight, turns))
}

pub fn score_path(path: &CoveragePath, model: &TimeModel) -> Result<RobotMetrics, MetricsError> {
    let (straight, turns) = count_moves(&path.moves)?;
    Ok(RobotMetrics {
        robot: path.robot,
        straight_moves: straight,
        turn_moves: turns,
        time: model.time(straight, turns),
        covered_subcells: path.covered().len(),
    })
}

/// Fleet-level statistics over per-robot completion times.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct FleetSummary {
    pub max: f64,
    pub min: f64,
    pub ave: f64,
    /// `max / min`; `None` when the fastest robot needs no time at all.
    pub ratio: Option<f64>,
    pub coverage_rate: f64,
    pub uncovered: Vec<CellCoord>,
}

/// Max/Min/Ave/Ratio over completion times plus the share of the map's
/// free subcells covered by the union of `covered`.
pub fn fleet_report(
    metrics: &[RobotMetrics],
    grid: &GridMap,
    covered: &[BTreeSet<CellCoord>],
) -> Result<FleetSummary, MetricsError> {
    if metrics.is_empty() {
        return Err(MetricsError::NoRobots);
    }
    let times: Vec<f64> = metrics.iter().map(|m| m.time).collect();
    let max = times.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let min = times.iter().copied().fold(f64::INFINITY, f64::min);
    let ave = times.iter().sum::<f64>() / times.len() as f64;
    let ratio = (min > 0.0).then(|| max / min);

    let union: BTreeSet<CellCoord> = covered.iter().flatten().copied().collect();
    let mut free = 0usize;
    let mut hit = 0usize;
    let mut uncovered = Vec::new();
    for c in grid.free_cells() {
        free += 1;
        if union.contains(&c) {
            hit += 1;
        } else {
            uncovered.push(c);
        }
    }
    let coverage_rate = if free == 0 {
        1.0
    } else {
        hit as f64 / free as f64
    };
    Ok(FleetSummary {
        max,
        min,
        ave,
        ratio,
        coverage_rate,
        uncovered,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::stc::StepKind;

    fn c(row: usize, col: usize) -> CellCoord {
        CellCoord::new(row, col)
    }

    fn path(moves: Vec<CellCoord>) -> CoveragePath {
        let kinds = vec![StepKind::Loop; moves.len()];
        CoveragePath {
            robot: 0,
            moves,
            kinds,
        }
    }

    fn metrics(time: f64) -> RobotMetrics {
        RobotMetrics {
            robot: 0,
            straight_moves: 0,
            turn_moves: 0,
            time,
            covered_subcells: 0,
        }
    }

    #[test]
    fn ten_straight_four_turns() {
        // runs of 5, 3, 2, 2, 2 moves: four direction changes
        let mut moves = vec![c(3, 0)];
        let mut cur = c(3, 0);
        let dirs = [
            (Direction::Right, 5),
            (Direction::Down, 3),
            (Direction::Left, 2),
            (Direction::Up, 2),
            (Direction::Right, 2),
        ];
        for (d, n) in dirs {
            for _ in 0..n {
                cur = cur.step(d).unwrap();
                moves.push(cur);
            }
        }
        let m = score_path(&path(moves), &TimeModel::default()).unwrap();
        assert_eq!((m.straight_moves, m.turn_moves), (10, 4));
        assert_eq!(m.time, 16.0);
    }

    #[test]
    fn straight_corridor() {
        let moves: Vec<_> = (0..6).map(|i| c(0, i)).collect();
        let m = score_path(&path(moves), &TimeModel::default()).unwrap();
        assert_eq!((m.straight_moves, m.turn_moves, m.time), (5, 0, 5.0));
    }

    #[test]
    fn square_loop_has_three_turns() {
        let moves = vec![c(0, 0), c(1, 0), c(1, 1), c(0, 1), c(0, 0)];
        let m = score_path(&path(moves), &TimeModel::default()).unwrap();
        assert_eq!(m.turn_moves, 3);
        assert_eq!(m.time, 5.5);
    }

    #[test]
    fn reversal_is_a_turn() {
        assert_eq!(count_moves(&[c(0, 0), c(0, 1), c(0, 0)]).unwrap(), (1, 1));
    }

    #[test]
    fn bad_paths() {
        assert_eq!(count_moves(&[c(0, 0)]), Err(MetricsError::EmptyPath));
        assert_eq!(
            count_moves(&[c(0, 0), c(1, 1)]),
            Err(MetricsError::NotAdjacent { index: 0 })
        );
        assert!(TimeModel::new(0.0, 1.5).is_err());
    }

    #[test]
    fn fleet_statistics() {
        let grid = crate::grid::parse_map("0.\n..\n").unwrap();
        let ms: Vec<_> = [155.0, 143.0, 133.0].into_iter().map(metrics).collect();
        let r = fleet_report(&ms, &grid, &[]).unwrap();
        assert_eq!((r.max, r.min), (155.0, 133.0));
        assert!((r.ave - 143.67).abs() < 0.005);
        assert!((r.ratio.unwrap() - 1.17).abs() < 0.005);
        assert_eq!(r.coverage_rate, 0.0);
        assert_eq!(r.uncovered.len(), 4);
    }

    #[test]
    fn single_robot_full_coverage() {
        let grid = crate::grid::parse_map("0.\n..\n").unwrap();
        let covered = BTreeSet::from([c(0, 0), c(0, 1), c(1, 0), c(1, 1)]);
        let r = fleet_report(&[metrics(5.5)], &grid, &[covered]).unwrap();
        assert_eq!((r.max, r.min, r.ave), (5.5, 5.5, 5.5));
        assert_eq!(r.ratio, Some(1.0));
        assert_eq!(r.coverage_rate, 1.0);
        assert!(r.uncovered.is_empty());
    }

    #[test]
    fn zero_time_ratio_is_undefined() {
        let grid = crate::grid::parse_map("0.\n..\n").unwrap();
        let r = fleet_report(&[metrics(0.0), metrics(3.0)], &grid, &[]).unwrap();
        assert_eq!(r.ratio, None);
        assert_eq!(fleet_report(&[], &grid, &[]), Err(MetricsError::NoRobots));
    }
}
