//! Up-First compensation: spikes grafted onto a spanning-tree loop so the
//! free subcells hidden inside blocked mega-cells get covered too.
//!
//! At every position along the loop the robot scans its four neighbours in
//! the order up, left, down, right. An unclaimed small cell is entered and
//! the scan repeats from there; when nothing is left (a dead zone) the robot
//! steps back the way it came, scanning again at every step, until it is
//! back on the loop cell it departed from.

use std::collections::BTreeMap;

use crate::grid::{CellCoord, Direction, SmallCellSet};
use crate::stc::{CoveragePath, StepKind};

/// Small cells already taken, and by which robot.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ClaimTable {
    owners: BTreeMap<CellCoord, usize>,
}

impl ClaimTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn owner(&self, c: CellCoord) -> Option<usize> {
        self.owners.get(&c).copied()
    }

    pub fn is_claimed(&self, c: CellCoord) -> bool {
        self.owners.contains_key(&c)
    }

    /// Records a claim; returns false when the cell was already taken.
    pub fn claim(&mut self, c: CellCoord, robot: usize) -> bool {
        match self.owners.entry(c) {
            std::collections::btree_map::Entry::Occupied(_) => false,
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(robot);
                true
            }
        }
    }

    pub fn len(&self) -> usize {
        self.owners.len()
    }

    pub fn is_empty(&self) -> bool {
        self.owners.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (CellCoord, usize)> + '_ {
        self.owners.iter().map(|(&c, &r)| (c, r))
    }
}

fn first_open_neighbor(
    cur: CellCoord,
    small: &SmallCellSet,
    claims: &ClaimTable,
) -> Option<CellCoord> {
    Direction::PRIORITY
        .into_iter()
        .filter_map(|d| cur.step(d))
        .find(|&n| small.contains(n) && !claims.is_claimed(n))
}

/// Inserts Up-First spikes into `path` for `robot`, claiming every small
/// cell it enters. Positions inherited from `path` keep their kind; every
/// inserted position, including the final step back onto the loop, is a
/// [`StepKind::Spike`].
pub fn uf_augment(
    path: &CoveragePath,
    small: &SmallCellSet,
    claims: &mut ClaimTable,
    robot: usize,
) -> CoveragePath {
    let mut moves = Vec::with_capacity(path.moves.len());
    let mut kinds = Vec::with_capacity(path.moves.len());

    for (&pos, &kind) in path.moves.iter().zip(&path.kinds) {
        moves.push(pos);
        kinds.push(kind);
        if small.is_empty() {
            continue;
        }
        let mut trail = vec![pos];
        while let Some(&cur) = trail.last() {
            match first_open_neighbor(cur, small, claims) {
                Some(next) => {
                    claims.claim(next, robot);
                    moves.push(next);
                    kinds.push(StepKind::Spike);
                    trail.push(next);
                }
                None => {
                    trail.pop();
                    if let Some(&back) = trail.last() {
                        moves.push(back);
                        kinds.push(StepKind::Spike);
                    }
                }
            }
        }
    }
    CoveragePath {
        robot,
        moves,
        kinds,
    }
}

/// Augments every robot's loop in ascending robot order with a shared claim
/// table, so no small cell is covered by two robots.
pub fn plan_fleet_uf(
    paths: &[CoveragePath],
    small: &SmallCellSet,
) -> (Vec<CoveragePath>, ClaimTable) {
    let mut order: Vec<&CoveragePath> = paths.iter().collect();
    order.sort_by_key(|p| p.robot);
    let mut claims = ClaimTable::new();
    let mut out: Vec<CoveragePath> = order
        .into_iter()
        .map(|p| uf_augment(p, small, &mut claims, p.robot))
        .collect();
    // restore caller order
    out.sort_by_key(|p| paths.iter().position(|q| q.robot == p.robot));
    (out, claims)
}

/// Drops every spike position, leaving the underlying loop.
pub fn strip_spikes(path: &CoveragePath) -> CoveragePath {
    let moves = path.loop_positions();
    let kinds = vec![StepKind::Loop; moves.len()];
    CoveragePath {
        robot: path.robot,
        moves,
        kinds,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::grid::{build_mega, parse_map, small_cells};
    use crate::stc::{build_mst, circumnavigate};
    use std::collections::BTreeSet;

    fn c(row: usize, col: usize) -> CellCoord {
        CellCoord::new(row, col)
    }

    fn loop_for(text: &str) -> (CoveragePath, SmallCellSet, usize) {
        let grid = parse_map(text).unwrap();
        let mega = build_mega(&grid);
        let region: BTreeSet<_> = mega.free_cells().collect();
        let start = grid.starts()[0];
        let tree = build_mst(&region, crate::grid::MegaGrid::parent(start)).unwrap();
        let path = circumnavigate(&tree, start, 0).unwrap();
        (path, small_cells(&grid, &mega), grid.free_count())
    }

    #[test]
    fn no_small_cells_leaves_loop_untouched() {
        let (path, small, _) = loop_for("0...\n....\n");
        let mut claims = ClaimTable::new();
        assert_eq!(uf_augment(&path, &small, &mut claims, 0), path);
        assert!(claims.is_empty());
    }

    #[test]
    fn three_small_cells_in_one_mega_cell() {
        // right-hand mega-cell has one obstacle subcell
        let (path, small, free) = loop_for("0..#\n....\n");
        assert_eq!(small.len(), 3);
        let mut claims = ClaimTable::new();
        let out = uf_augment(&path, &small, &mut claims, 0);
        assert_eq!(out.covered().len(), free);
        assert_eq!(strip_spikes(&out), path);
        // loop is (0,0) (1,0) (1,1) (0,1) (0,0); the spike leaves from (1,1)
        let spike: Vec<_> = out.moves[2..9].to_vec();
        assert_eq!(
            spike,
            vec![
                c(1, 1),
                c(1, 2),
                c(0, 2),
                c(1, 2),
                c(1, 3),
                c(1, 2),
                c(1, 1)
            ]
        );
    }

    #[test]
    fn corridor_spike_goes_out_and_back() {
        let text = "\
0.##
..##
#...
####
";
        let (path, small, free) = loop_for(text);
        let mut claims = ClaimTable::new();
        let out = uf_augment(&path, &small, &mut claims, 0);
        assert_eq!(out.covered().len(), free);
        // spike from (1,1): down (2,1), right (2,2), right (2,3), back x3
        let at = out.moves.iter().position(|&p| p == c(2, 1)).unwrap();
        assert_eq!(
            out.moves[at - 1..at + 6].to_vec(),
            vec![
                c(1, 1),
                c(2, 1),
                c(2, 2),
                c(2, 3),
                c(2, 2),
                c(2, 1),
                c(1, 1)
            ]
        );
    }

    #[test]
    fn lower_robot_claims_shared_small_cells() {
        let grid = parse_map("0.#.1.\n......\n").unwrap();
        let mega = build_mega(&grid);
        let small = small_cells(&grid, &mega);
        let p0 = circumnavigate(
            &build_mst(&BTreeSet::from([c(0, 0)]), c(0, 0)).unwrap(),
            c(0, 0),
            0,
        )
        .unwrap();
        let p1 = circumnavigate(
            &build_mst(&BTreeSet::from([c(0, 2)]), c(0, 2)).unwrap(),
            c(0, 4),
            1,
        )
        .unwrap();
        let (out, claims) = plan_fleet_uf(&[p1.clone(), p0.clone()], &small);
        assert_eq!(out[0].robot, 1);
        assert_eq!(claims.len(), 3);
        assert_eq!(claims.owner(c(0, 3)), Some(0));
        assert!(claims.iter().all(|(_, r)| r == 0));
        assert_eq!(out[0], p1);
    }
}
