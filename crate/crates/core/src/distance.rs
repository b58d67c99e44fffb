//! Per-robot distance fields on the mega-grid.
//!
//! Path-distance fields count 4-connected unit steps around obstacles;
//! Euclidean fields ignore obstacles between source and target. Blocked and
//! unreachable cells hold `None` rather than a large number.

use std::cmp::Reverse;
use std::collections::{BinaryHeap, VecDeque};

use thiserror::Error;

use crate::grid::{CellCoord, MegaGrid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DistanceError {
    #[error("source {0} is not a free mega-cell")]
    BlockedSource(CellCoord),
}

/// Exact Manhattan distance, the A* heuristic.
pub fn manhattan(a: CellCoord, b: CellCoord) -> usize {
    a.row.abs_diff(b.row) + a.col.abs_diff(b.col)
}

/// Distance from one source to every mega-cell.
#[derive(Clone, Debug, PartialEq)]
pub struct DistanceField {
    source: CellCoord,
    height: usize,
    width: usize,
    values: Vec<Option<f64>>,
}

impl DistanceField {
    pub fn source(&self) -> CellCoord {
        self.source
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// `None` for blocked, unreachable or out-of-bounds cells.
    pub fn get(&self, c: CellCoord) -> Option<f64> {
        if c.row < self.height && c.col < self.width {
            self.values[c.row * self.width + c.col]
        } else {
            None
        }
    }

    pub fn is_reachable(&self, c: CellCoord) -> bool {
        self.get(c).is_some()
    }

    /// Row-major values.
    pub fn values(&self) -> &[Option<f64>] {
        &self.values
    }
}

/// An obstacle-free 4-connected walk from start to goal.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PathTrace {
    pub waypoints: Vec<CellCoord>,
}

impl PathTrace {
    /// Number of unit steps.
    pub fn len(&self) -> usize {
        self.waypoints.len().saturating_sub(1)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }
}

/// Shortest 4-connected path with unit step cost and the Manhattan heuristic.
///
/// Open-set ties on `f` go to the lower `g`, then to the earlier insertion;
/// neighbours are expanded up, left, down, right. Returns `None` when start
/// or goal is blocked or the goal lies in another component.
pub fn astar_path(mega: &MegaGrid, start: CellCoord, goal: CellCoord) -> Option<PathTrace> {
    if mega.is_obstacle(start) || mega.is_obstacle(goal) {
        return None;
    }
    let n = mega.len();
    let mut g_score: Vec<Option<usize>> = vec![None; n];
    let mut parent: Vec<Option<usize>> = vec![None; n];
    let mut closed = vec![false; n];
    let mut open = BinaryHeap::new();
    let mut seq = 0usize;

    let s = mega.index(start);
    g_score[s] = Some(0);
    open.push(Reverse((manhattan(start, goal), 0usize, seq, s)));

    while let Some(Reverse((_, g, _, idx))) = open.pop() {
        if closed[idx] {
            continue;
        }
        closed[idx] = true;
        let here = mega.coord(idx);
        if here == goal {
            let mut waypoints = vec![here];
            let mut cur = idx;
            while let Some(p) = parent[cur] {
                waypoints.push(mega.coord(p));
                cur = p;
            }
            waypoints.reverse();
            return Some(PathTrace { waypoints });
        }
        for next in mega.free_neighbors(here) {
            let ni = mega.index(next);
            if closed[ni] {
                continue;
            }
            let tentative = g + 1;
            if g_score[ni].is_none_or(|old| tentative < old) {
                g_score[ni] = Some(tentative);
                parent[ni] = Some(idx);
                seq += 1;
                open.push(Reverse((
                    tentative + manhattan(next, goal),
                    tentative,
                    seq,
                    ni,
                )));
            }
        }
    }
    None
}

/// Single-source shortest path lengths to every free cell.
///
/// With unit step costs a breadth-first sweep settles cells in the same
/// order A* with an admissible heuristic would, so one sweep replaces a
/// per-target A* run.
pub fn path_distance_field(
    mega: &MegaGrid,
    source: CellCoord,
) -> Result<DistanceField, DistanceError> {
    if mega.is_obstacle(source) {
        return Err(DistanceError::BlockedSource(source));
    }
    let mut values = vec![None; mega.len()];
    let mut queue = VecDeque::new();
    values[mega.index(source)] = Some(0.0);
    queue.push_back((source, 0usize));
    while let Some((here, d)) = queue.pop_front() {
        for next in mega.free_neighbors(here) {
            let slot = &mut values[mega.index(next)];
            if slot.is_none() {
                *slot = Some((d + 1) as f64);
                queue.push_back((next, d + 1));
            }
        }
    }
    Ok(DistanceField {
        source,
        height: mega.height(),
        width: mega.width(),
        values,
    })
}

/// Straight-line distance to every free cell, ignoring walls in between.
pub fn euclidean_field(mega: &MegaGrid, source: CellCoord) -> Result<DistanceField, DistanceError> {
    if mega.is_obstacle(source) {
        return Err(DistanceError::BlockedSource(source));
    }
    let values = mega
        .cells()
        .map(|c| {
            mega.is_free(c).then(|| {
                let dr = c.row as f64 - source.row as f64;
                let dc = c.col as f64 - source.col as f64;
                dr.hypot(dc)
            })
        })
        .collect();
    Ok(DistanceField {
        source,
        height: mega.height(),
        width: mega.width(),
        values,
    })
}
