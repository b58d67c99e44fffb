//! Area division between robots by iterative rescaling of per-robot
//! evaluation matrices (DARP), seeded either with Euclidean distances or with
//! obstacle-aware shortest-path distances (A*-DARP).
//!
//! Each iteration assigns every claimable mega-cell to the robot with the
//! cheapest evaluation, then
//!
//! * scales each robot's matrix by a correction factor `m_i` that grows while
//!   the robot holds more than its fair share `f` and shrinks otherwise, and
//! * multiplies in a connectivity table that rewards cells near the robot's
//!   start-connected component and penalises cells near its detached
//!   fragments.
//!
//! The loop stops once every region is 4-connected and every region size is
//! within one cell of `f`.

use std::collections::VecDeque;
use std::fmt;
use std::str::FromStr;

use rand_chacha::rand_core::{RngCore, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::distance::{euclidean_field, path_distance_field};
use crate::edt::distance_to_set;
use crate::grid::{CellCoord, MegaGrid};

/// How the initial evaluation matrices are built.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum SeedMode {
    /// Straight-line distance from the robot (plain DARP).
    #[serde(rename = "darp")]
    Euclidean,
    /// Shortest 4-connected path length from the robot (A*-DARP).
    #[serde(rename = "astar-darp")]
    AStar,
}

impl SeedMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SeedMode::Euclidean => "darp",
            SeedMode::AStar => "astar-darp",
        }
    }
}

impl fmt::Display for SeedMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SeedMode {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "darp" | "euclidean" => Ok(SeedMode::Euclidean),
            "astar-darp" | "astar" => Ok(SeedMode::AStar),
            other => Err(format!(
                "unknown mode {other:?}, expected darp or astar-darp"
            )),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum PartitionError {
    #[error("no robots to partition for")]
    NoRobots,
    #[error("the map has no free mega-cells")]
    NoFreeCells,
    #[error("robot {robot} starts on blocked mega-cell {cell}")]
    BlockedStart { robot: usize, cell: CellCoord },
    #[error("robots {first} and {second} share mega-cell {cell}")]
    SharedStart {
        first: usize,
        second: usize,
        cell: CellCoord,
    },
    #[error("invalid partition config: {0}")]
    Config(String),
}

/// Per-robot cost table. `None` marks cells the robot may never claim.
#[derive(Clone, Debug, PartialEq)]
pub struct EvaluationMatrix {
    pub robot: usize,
    height: usize,
    width: usize,
    values: Vec<Option<f64>>,
}

impl EvaluationMatrix {
    pub fn new(robot: usize, height: usize, width: usize, values: Vec<Option<f64>>) -> Self {
        assert_eq!(values.len(), height * width, "evaluation table size");
        Self {
            robot,
            height,
            width,
            values,
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, c: CellCoord) -> Option<f64> {
        self.values[c.row * self.width + c.col]
    }

    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }

    /// The same matrix with every finite entry multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            values: self.values.iter().map(|v| v.map(|x| x * factor)).collect(),
            ..self.clone()
        }
    }
}

/// Owner of every mega-cell; `None` for blocked or unclaimable cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssignmentMatrix {
    height: usize,
    width: usize,
    owners: Vec<Option<usize>>,
}

impl AssignmentMatrix {
    /// Builds a matrix from row-major owners.
    pub fn from_owners(height: usize, width: usize, owners: Vec<Option<usize>>) -> Self {
        assert_eq!(owners.len(), height * width, "assignment table size");
        Self {
            height,
            width,
            owners,
        }
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn get(&self, c: CellCoord) -> Option<usize> {
        if c.row < self.height && c.col < self.width {
            self.owners[c.row * self.width + c.col]
        } else {
            None
        }
    }

    /// Row-major owners.
    pub fn owners(&self) -> &[Option<usize>] {
        &self.owners
    }

    /// Cells held by each of `robots` robots.
    pub fn sizes(&self, robots: usize) -> Vec<usize> {
        let mut k = vec![0; robots];
        for &r in self.owners.iter().flatten() {
            if r < robots {
                k[r] += 1;
            }
        }
        k
    }

    /// Cells owned by `robot`, row-major.
    pub fn region(&self, robot: usize) -> Vec<CellCoord> {
        self.owners
            .iter()
            .enumerate()
            .filter(|(_, o)| **o == Some(robot))
            .map(|(i, _)| CellCoord::new(i / self.width, i % self.width))
            .collect()
    }

    /// Mask of `robot`'s cells 4-connected to `anchor` through its own cells.
    pub fn connected_mask(&self, robot: usize, anchor: CellCoord) -> Vec<bool> {
        let mut seen = vec![false; self.owners.len()];
        if self.get(anchor) != Some(robot) {
            return seen;
        }
        let idx = |c: CellCoord| c.row * self.width + c.col;
        let mut queue = VecDeque::from([anchor]);
        seen[idx(anchor)] = true;
        while let Some(here) = queue.pop_front() {
            for d in crate::grid::Direction::PRIORITY {
                if let Some(n) = here.step(d) {
                    if self.get(n) == Some(robot) && !seen[idx(n)] {
                        seen[idx(n)] = true;
                        queue.push_back(n);
                    }
                }
            }
        }
        seen
    }

    /// True when every cell of `robot` is reachable from `anchor` inside the
    /// region and `anchor` belongs to it.
    pub fn is_connected(&self, robot: usize, anchor: CellCoord) -> bool {
        let mask = self.connected_mask(robot, anchor);
        let reached = mask.iter().filter(|&&m| m).count();
        reached > 0 && reached == self.owners.iter().filter(|&&o| o == Some(robot)).count()
    }
}

/// Correction factors `m_i`, one per robot, all strictly positive.
#[derive(Clone, Debug, PartialEq)]
pub struct CorrectionFactors(Vec<f64>);

impl CorrectionFactors {
    pub fn ones(robots: usize) -> Self {
        Self(vec![1.0; robots])
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.0
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PartitionConfig {
    /// Step size of the correction-factor update.
    pub eta: f64,
    /// Half-width of the connectivity multiplier range `[1-γ, 1+γ]`.
    pub gamma: f64,
    pub max_iter: usize,
}

impl Default for PartitionConfig {
    fn default() -> Self {
        Self {
            eta: 0.1,
            gamma: 0.01,
            max_iter: 2000,
        }
    }
}

impl PartitionConfig {
    pub fn validate(&self) -> Result<(), PartitionError> {
        if !(self.eta.is_finite() && self.eta > 0.0) {
            return Err(PartitionError::Config(format!(
                "eta must be positive, got {}",
                self.eta
            )));
        }
        if !(self.gamma.is_finite() && self.gamma > 0.0 && self.gamma < 1.0) {
            return Err(PartitionError::Config(format!(
                "gamma must lie in (0, 1), got {}",
                self.gamma
            )));
        }
        if self.max_iter == 0 {
            return Err(PartitionError::Config("max_iter must be at least 1".into()));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct PartitionResult {
    pub assignment: AssignmentMatrix,
    /// Mega-cell holding each robot's start.
    pub robot_cells: Vec<CellCoord>,
    pub region_sizes: Vec<usize>,
    pub fair_share: f64,
    pub final_j: f64,
    pub iterations: usize,
    pub converged: bool,
    /// Free mega-cells no robot can reach.
    pub excluded_cells: Vec<CellCoord>,
    pub correction: CorrectionFactors,
}

impl PartitionResult {
    pub fn robot_count(&self) -> usize {
        self.robot_cells.len()
    }

    pub fn all_connected(&self) -> bool {
        self.robot_cells
            .iter()
            .enumerate()
            .all(|(i, &s)| self.assignment.is_connected(i, s))
    }
}

/// Initial evaluation matrices, one per robot.
pub fn seed_evaluation(
    mega: &MegaGrid,
    starts: &[CellCoord],
    mode: SeedMode,
) -> Result<Vec<EvaluationMatrix>, PartitionError> {
    check_starts(mega, starts)?;
    starts
        .iter()
        .enumerate()
        .map(|(robot, &s)| {
            let field = match mode {
                SeedMode::Euclidean => euclidean_field(mega, s),
                SeedMode::AStar => path_distance_field(mega, s),
            }
            .map_err(|_| PartitionError::BlockedStart { robot, cell: s })?;
            Ok(EvaluationMatrix::new(
                robot,
                mega.height(),
                mega.width(),
                field.values().to_vec(),
            ))
        })
        .collect()
}

fn check_starts(mega: &MegaGrid, starts: &[CellCoord]) -> Result<(), PartitionError> {
    if starts.is_empty() {
        return Err(PartitionError::NoRobots);
    }
    for (robot, &cell) in starts.iter().enumerate() {
        if mega.is_obstacle(cell) {
            return Err(PartitionError::BlockedStart { robot, cell });
        }
        if let Some(first) = starts[..robot].iter().position(|&s| s == cell) {
            return Err(PartitionError::SharedStart {
                first,
                second: robot,
                cell,
            });
        }
    }
    Ok(())
}

/// Cell-wise argmin over robots. Ties go to the lowest robot index; cells no
/// robot may claim stay unassigned.
pub fn assign(evals: &[EvaluationMatrix]) -> AssignmentMatrix {
    let (height, width) = evals.first().map_or((0, 0), |e| (e.height, e.width));
    assert!(
        evals.iter().all(|e| e.height == height && e.width == width),
        "evaluation matrices differ in shape"
    );
    let owners = (0..height * width)
        .map(|i| {
            let mut best: Option<(usize, f64)> = None;
            for (robot, e) in evals.iter().enumerate() {
                if let Some(v) = e.values[i] {
                    if best.is_none_or(|(_, b)| v < b) {
                        best = Some((robot, v));
                    }
                }
            }
            best.map(|(r, _)| r)
        })
        .collect();
    AssignmentMatrix {
        height,
        width,
        owners,
    }
}

/// `J = ½ Σ (k_i − f)²`.
pub fn fairness(sizes: &[usize], fair_share: f64) -> f64 {
    0.5 * sizes
        .iter()
        .map(|&k| {
            let d = k as f64 - fair_share;
            d * d
        })
        .sum::<f64>()
}

/// Multiplicative connectivity table for one robot.
#[derive(Clone, Debug, PartialEq)]
pub struct ConnectivityMatrix {
    height: usize,
    width: usize,
    values: Vec<f64>,
}

impl ConnectivityMatrix {
    pub fn get(&self, c: CellCoord) -> f64 {
        self.values[c.row * self.width + c.col]
    }

    pub fn values(&self) -> &[f64] {
        &self.values
    }

    pub fn is_identity(&self) -> bool {
        self.values.iter().all(|&v| v == 1.0)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }
}

/// Connectivity multipliers for `robot`.
///
/// `R` is the part of the robot's region 4-connected to `anchor`, `Q` the
/// rest of its region. Each free cell gets `dist(cell, R) − dist(cell, Q)`
/// (Euclidean point-set distances), rescaled affinely onto `[1−γ, 1+γ]`. A
/// connected region yields all ones.
pub fn connectivity_matrix(
    mega: &MegaGrid,
    assignment: &AssignmentMatrix,
    robot: usize,
    anchor: CellCoord,
    gamma: f64,
) -> ConnectivityMatrix {
    let (height, width) = (mega.height(), mega.width());
    let r_mask = assignment.connected_mask(robot, anchor);
    let q_mask: Vec<bool> = assignment
        .owners
        .iter()
        .zip(&r_mask)
        .map(|(&o, &in_r)| o == Some(robot) && !in_r)
        .collect();
    let ones = ConnectivityMatrix {
        height,
        width,
        values: vec![1.0; height * width],
    };
    if !q_mask.iter().any(|&q| q) || !r_mask.iter().any(|&r| r) {
        return ones;
    }
    let to_r = distance_to_set(height, width, &r_mask);
    let to_q = distance_to_set(height, width, &q_mask);
    let raw: Vec<f64> = to_r.iter().zip(&to_q).map(|(r, q)| r - q).collect();

    let (lo, hi) = mega
        .cells()
        .filter(|&c| mega.is_free(c))
        .map(|c| raw[mega.index(c)])
        .fold((f64::INFINITY, f64::NEG_INFINITY), |(lo, hi), v| {
            (lo.min(v), hi.max(v))
        });
    if hi <= lo {
        return ones;
    }
    let values = raw
        .iter()
        .map(|&v| (1.0 - gamma) + 2.0 * gamma * (v - lo) / (hi - lo))
        .collect();
    ConnectivityMatrix {
        height,
        width,
        values,
    }
}

/// Relative amplitude of the fixed tie-breaking perturbation.
const TIE_BREAK_LEVEL: f64 = 1e-4;
const TIE_BREAK_SEED: u64 = 0x5eed_da49;
const MIN_CORRECTION: f64 = 1e-6;

/// Runs the full area-division loop.
///
/// Cells that no robot can reach by a 4-connected path are excluded before the
/// fair share is computed. When the loop does not converge within
/// `max_iter` iterations the best iterate seen is returned with
/// `converged = false` (connected iterates beat disconnected ones, then
/// lower `J` wins).
pub fn partition(
    mega: &MegaGrid,
    starts: &[CellCoord],
    mode: SeedMode,
    config: &PartitionConfig,
) -> Result<PartitionResult, PartitionError> {
    config.validate()?;
    check_starts(mega, starts)?;
    if mega.free_cells().next().is_none() {
        return Err(PartitionError::NoFreeCells);
    }
    let robots = starts.len();
    let cells = mega.len();

    // claimable = reachable from at least one start
    let mut claimable = vec![false; cells];
    for &s in starts {
        let field = path_distance_field(mega, s).map_err(|_| PartitionError::NoFreeCells)?;
        for (slot, v) in claimable.iter_mut().zip(field.values()) {
            *slot |= v.is_some();
        }
    }
    let excluded_cells: Vec<CellCoord> = mega
        .free_cells()
        .filter(|&c| !claimable[mega.index(c)])
        .collect();
    let claimable_count = claimable.iter().filter(|&&c| c).count();
    let fair_share = claimable_count as f64 / robots as f64;

    let seeds: Vec<Vec<Option<f64>>> = seed_evaluation(mega, starts, mode)?
        .into_iter()
        .map(|e| {
            e.values
                .iter()
                .zip(&claimable)
                .map(|(v, &ok)| if ok { *v } else { None })
                .collect()
        })
        .collect();

    let mut rng = ChaCha8Rng::seed_from_u64(TIE_BREAK_SEED);
    let jitter: Vec<Vec<f64>> = (0..robots)
        .map(|_| {
            (0..cells)
                .map(|_| {
                    let u = (rng.next_u64() >> 11) as f64 / (1u64 << 53) as f64;
                    1.0 - TIE_BREAK_LEVEL + 2.0 * TIE_BREAK_LEVEL * u
                })
                .collect()
        })
        .collect();

    let mut m = vec![1.0f64; robots];
    let mut step = vec![config.eta; robots];
    let mut last_sign = vec![0i8; robots];
    let mut connect_mult: Vec<Vec<f64>> = vec![vec![1.0; cells]; robots];
    let mut best: Option<(bool, f64, usize, AssignmentMatrix, Vec<f64>)> = None;

    for iteration in 1..=config.max_iter {
        let evals: Vec<EvaluationMatrix> = (0..robots)
            .map(|i| {
                let values = (0..cells)
                    .map(|c| seeds[i][c].map(|e| connect_mult[i][c] * m[i] * e * jitter[i][c]))
                    .collect();
                EvaluationMatrix::new(i, mega.height(), mega.width(), values)
            })
            .collect();
        let assignment = assign(&evals);
        let sizes = assignment.sizes(robots);
        let j = fairness(&sizes, fair_share);
        let connected: Vec<bool> = (0..robots)
            .map(|i| assignment.is_connected(i, starts[i]))
            .collect();
        let all_connected = connected.iter().all(|&c| c);
        let balanced = sizes.iter().all(|&k| (k as f64 - fair_share).abs() < 1.0);

        if all_connected && balanced {
            return Ok(PartitionResult {
                assignment,
                robot_cells: starts.to_vec(),
                region_sizes: sizes,
                fair_share,
                final_j: j,
                iterations: iteration,
                converged: true,
                excluded_cells,
                correction: CorrectionFactors(m),
            });
        }

        let better = match &best {
            None => true,
            Some((bc, bj, ..)) => (all_connected && !bc) || (all_connected == *bc && j < *bj),
        };
        if better {
            best = Some((all_connected, j, iteration, assignment.clone(), m.clone()));
        }

        for i in 0..robots {
            if !connected[i] {
                let c = connectivity_matrix(mega, &assignment, i, starts[i], config.gamma);
                for (acc, v) in connect_mult[i].iter_mut().zip(c.values()) {
                    *acc *= v;
                }
            }
            let err = sizes[i] as f64 - fair_share;
            let sign = if err.abs() < 1.0 {
                0
            } else {
                err.signum() as i8
            };
            if sign != 0 {
                if last_sign[i] == -sign {
                    step[i] *= 0.5;
                } else if last_sign[i] == sign {
                    step[i] = (step[i] * 1.2).min(config.eta);
                }
                last_sign[i] = sign;
            }
            m[i] = (m[i] * (1.0 + step[i] * err / fair_share)).max(MIN_CORRECTION);
        }
    }

    let (_, j, _, assignment, m) = best.expect("at least one iteration ran");
    Ok(PartitionResult {
        region_sizes: assignment.sizes(robots),
        assignment,
        robot_cells: starts.to_vec(),
        fair_share,
        final_j: j,
        iterations: config.max_iter,
        converged: false,
        excluded_cells,
        correction: CorrectionFactors(m),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_mega, GridMap};

    fn c(row: usize, col: usize) -> CellCoord {
        CellCoord::new(row, col)
    }

    fn free_mega(h: usize, w: usize) -> MegaGrid {
        let grid = GridMap::new(2 * h, 2 * w, vec![false; 4 * h * w], vec![c(0, 0)]).unwrap();
        build_mega(&grid)
    }

    #[test]
    fn seeds_on_free_two_by_two() {
        let m = free_mega(2, 2);
        let a = seed_evaluation(&m, &[c(0, 0)], SeedMode::AStar).unwrap();
        assert_eq!(a[0].values(), &[Some(0.0), Some(1.0), Some(1.0), Some(2.0)]);
        let e = seed_evaluation(&m, &[c(0, 0)], SeedMode::Euclidean).unwrap();
        assert_eq!(
            e[0].values(),
            &[Some(0.0), Some(1.0), Some(1.0), Some(2f64.sqrt())]
        );
    }

    #[test]
    fn seed_rejects_bad_starts() {
        let m = free_mega(2, 2);
        assert_eq!(
            seed_evaluation(&m, &[c(0, 0), c(0, 0)], SeedMode::AStar),
            Err(PartitionError::SharedStart {
                first: 0,
                second: 1,
                cell: c(0, 0)
            })
        );
        assert_eq!(
            seed_evaluation(&m, &[c(5, 5)], SeedMode::AStar),
            Err(PartitionError::BlockedStart {
                robot: 0,
                cell: c(5, 5)
            })
        );
    }

    #[test]
    fn assign_single_robot_takes_everything() {
        let m = free_mega(3, 3);
        let e = seed_evaluation(&m, &[c(1, 1)], SeedMode::AStar).unwrap();
        let a = assign(&e);
        assert_eq!(a.sizes(1), vec![9]);
    }

    #[test]
    fn assign_corridor_splits_evenly() {
        let m = free_mega(1, 4);
        let e = seed_evaluation(&m, &[c(0, 0), c(0, 3)], SeedMode::Euclidean).unwrap();
        let a = assign(&e);
        assert_eq!(a.sizes(2), vec![2, 2]);
        assert_eq!(a.region(0), vec![c(0, 0), c(0, 1)]);
    }

    #[test]
    fn assign_ties_go_to_lowest_index() {
        let e0 = EvaluationMatrix::new(0, 1, 2, vec![Some(1.0), Some(2.0)]);
        let e1 = EvaluationMatrix::new(1, 1, 2, vec![Some(1.0), Some(1.0)]);
        let a = assign(&[e0, e1]);
        assert_eq!(a.owners(), &[Some(0), Some(1)]);
        let none = EvaluationMatrix::new(0, 1, 2, vec![None, Some(1.0)]);
        assert_eq!(assign(&[none]).owners(), &[None, Some(0)]);
    }

    #[test]
    fn fairness_arithmetic() {
        assert_eq!(fairness(&[10, 10], 10.0), 0.0);
        assert_eq!(fairness(&[12, 8], 10.0), 4.0);
        assert_eq!(fairness(&[17], 17.0), 0.0);
    }

    #[test]
    fn connectivity_identity_for_connected_region() {
        let m = free_mega(2, 3);
        let e = seed_evaluation(&m, &[c(0, 0), c(1, 2)], SeedMode::AStar).unwrap();
        let a = assign(&e);
        assert!(connectivity_matrix(&m, &a, 0, c(0, 0), 0.01).is_identity());
    }

    #[test]
    fn connectivity_penalises_detached_fragment() {
        let m = free_mega(1, 5);
        // robot 0 owns columns 0 and 3-4, robot 1 owns column 1-2
        let e0 = EvaluationMatrix::new(
            0,
            1,
            5,
            vec![Some(0.0), Some(9.0), Some(9.0), Some(0.5), Some(0.5)],
        );
        let e1 = EvaluationMatrix::new(
            1,
            1,
            5,
            vec![Some(9.0), Some(0.0), Some(1.0), Some(2.0), Some(3.0)],
        );
        let a = assign(&[e0, e1]);
        assert!(!a.is_connected(0, c(0, 0)));
        let gamma = 0.01;
        let cm = connectivity_matrix(&m, &a, 0, c(0, 0), gamma);
        assert!(cm.get(c(0, 0)) < cm.get(c(0, 3)));
        let lo = cm.values().iter().cloned().fold(f64::INFINITY, f64::min);
        let hi = cm
            .values()
            .iter()
            .cloned()
            .fold(f64::NEG_INFINITY, f64::max);
        assert!((lo - (1.0 - gamma)).abs() < 1e-12);
        assert!((hi - (1.0 + gamma)).abs() < 1e-12);
    }

    #[test]
    fn single_robot_converges_immediately() {
        let m = free_mega(3, 4);
        let r = partition(&m, &[c(2, 1)], SeedMode::AStar, &PartitionConfig::default()).unwrap();
        assert!(r.converged);
        assert_eq!(r.iterations, 1);
        assert_eq!(r.region_sizes, vec![12]);
        assert_eq!(r.final_j, 0.0);
    }

    #[test]
    fn mirror_starts_split_four_by_four() {
        let m = free_mega(4, 4);
        for mode in [SeedMode::Euclidean, SeedMode::AStar] {
            let r = partition(&m, &[c(0, 0), c(3, 3)], mode, &PartitionConfig::default()).unwrap();
            assert!(r.converged, "{mode}");
            assert_eq!(r.region_sizes, vec![8, 8]);
            assert!(r.all_connected());
        }
    }

    #[test]
    fn unreachable_cells_are_excluded() {
        // mega picture: robot pocket on the left, sealed room on the right
        let text = "\
0...##..
....##..
";
        let grid = crate::grid::parse_map(text).unwrap();
        let m = build_mega(&grid);
        let r = partition(
            &m,
            &[c(0, 0)],
            SeedMode::Euclidean,
            &PartitionConfig::default(),
        )
        .unwrap();
        assert_eq!(r.excluded_cells, vec![c(0, 3)]);
        assert_eq!(r.region_sizes, vec![2]);
        assert!(r.assignment.get(c(0, 3)).is_none());
    }

    #[test]
    fn rejects_bad_config() {
        let m = free_mega(2, 2);
        let bad = PartitionConfig {
            gamma: 1.5,
            ..PartitionConfig::default()
        };
        assert!(matches!(
            partition(&m, &[c(0, 0)], SeedMode::AStar, &bad),
            Err(PartitionError::Config(_))
        ));
    }

    #[test]
    fn mode_names_round_trip() {
        for mode in [SeedMode::Euclidean, SeedMode::AStar] {
            assert_eq!(mode.as_str().parse::<SeedMode>().unwrap(), mode);
        }
        assert!("nope".parse::<SeedMode>().is_err());
    }
}
