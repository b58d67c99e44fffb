//! Spanning-tree coverage: a Kruskal spanning tree over a robot's mega-cells,
//! circumnavigated at subcell resolution.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::grid::{CellCoord, Direction, MegaGrid};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StcError {
    #[error("region is empty")]
    EmptyRegion,
    #[error("anchor {0} is not part of the region")]
    AnchorOutsideRegion(CellCoord),
    #[error("region is not 4-connected ({components} components)")]
    Disconnected { components: usize },
    #[error("start subcell {0} is not inside the tree")]
    StartOutsideTree(CellCoord),
}

/// Disjoint-set forest with path compression and union by rank.
#[derive(Clone, Debug)]
pub struct UnionFind {
    parent: Vec<usize>,
    rank: Vec<u8>,
    sets: usize,
}

impl UnionFind {
    pub fn new(n: usize) -> Self {
        Self {
            parent: (0..n).collect(),
            rank: vec![0; n],
            sets: n,
        }
    }

    pub fn find(&mut self, x: usize) -> usize {
        let mut root = x;
        while self.parent[root] != root {
            root = self.parent[root];
        }
        let mut cur = x;
        while self.parent[cur] != root {
            let next = self.parent[cur];
            self.parent[cur] = root;
            cur = next;
        }
        root
    }

    /// Merges the sets holding `a` and `b`; false if they were already one.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        match self.rank[ra].cmp(&self.rank[rb]) {
            std::cmp::Ordering::Less => self.parent[ra] = rb,
            std::cmp::Ordering::Greater => self.parent[rb] = ra,
            std::cmp::Ordering::Equal => {
                self.parent[rb] = ra;
                self.rank[ra] += 1;
            }
        }
        self.sets -= 1;
        true
    }

    pub fn set_count(&self) -> usize {
        self.sets
    }
}

/// Spanning tree over a set of mega-cells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SpanningTree {
    nodes: BTreeSet<CellCoord>,
    /// Each edge stored with its smaller endpoint first.
    edges: Vec<(CellCoord, CellCoord)>,
}

impl SpanningTree {
    pub fn nodes(&self) -> &BTreeSet<CellCoord> {
        &self.nodes
    }

    pub fn edges(&self) -> &[(CellCoord, CellCoord)] {
        &self.edges
    }

    /// Per node, whether a tree edge leaves it up, left, down, right.
    fn links(&self) -> BTreeMap<CellCoord, [bool; 4]> {
        let mut links: BTreeMap<CellCoord, [bool; 4]> =
            self.nodes.iter().map(|&n| (n, [false; 4])).collect();
        for &(a, b) in &self.edges {
            if let Some(d) = a.direction_to(b) {
                links.entry(a).or_default()[dir_slot(d)] = true;
                links.entry(b).or_default()[dir_slot(d.opposite())] = true;
            }
        }
        links
    }
}

fn dir_slot(d: Direction) -> usize {
    match d {
        Direction::Up => 0,
        Direction::Left => 1,
        Direction::Down => 2,
        Direction::Right => 3,
    }
}

/// Kruskal over the 4-adjacency graph of `region` with unit weights.
///
/// Candidate edges are taken row-major by their smaller endpoint, the
/// horizontal edge before the vertical one.
pub fn build_mst(
    region: &BTreeSet<CellCoord>,
    anchor: CellCoord,
) -> Result<SpanningTree, StcError> {
    if region.is_empty() {
        return Err(StcError::EmptyRegion);
    }
    if !region.contains(&anchor) {
        return Err(StcError::AnchorOutsideRegion(anchor));
    }
    let index: BTreeMap<CellCoord, usize> =
        region.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut uf = UnionFind::new(region.len());
    let mut edges = Vec::with_capacity(region.len() - 1);
    for (&cell, &i) in &index {
        for d in [Direction::Right, Direction::Down] {
            let Some(next) = cell.step(d) else { continue };
            if let Some(&j) = index.get(&next) {
                if uf.union(i, j) {
                    edges.push((cell, next));
                }
            }
        }
    }
    if uf.set_count() != 1 {
        return Err(StcError::Disconnected {
            components: uf.set_count(),
        });
    }
    Ok(SpanningTree {
        nodes: region.clone(),
        edges,
    })
}

/// Role of one position in a coverage path.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum StepKind {
    /// On the spanning-tree circumnavigation loop.
    Loop,
    /// Added by small-cell compensation.
    Spike,
}

/// Subcell walk for one robot. `moves[i]` is the robot's position after
/// `i` unit moves; `kinds[i]` says where that position came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoveragePath {
    pub robot: usize,
    pub moves: Vec<CellCoord>,
    pub kinds: Vec<StepKind>,
}

impl CoveragePath {
    /// Number of unit moves.
    pub fn move_count(&self) -> usize {
        self.moves.len().saturating_sub(1)
    }

    /// Positions flagged as loop positions, in order.
    pub fn loop_positions(&self) -> Vec<CellCoord> {
        self.moves
            .iter()
            .zip(&self.kinds)
            .filter(|(_, k)| **k == StepKind::Loop)
            .map(|(c, _)| *c)
            .collect()
    }

    pub fn covered(&self) -> BTreeSet<CellCoord> {
        self.moves.iter().copied().collect()
    }

    /// Indices `i` such that the move from `moves[i-1]` to `moves[i]` belongs
    /// to a spike.
    pub fn spike_moves(&self) -> Vec<usize> {
        (1..self.moves.len())
            .filter(|&i| self.kinds[i] == StepKind::Spike)
            .collect()
    }
}

/// Next subcell when walking around the tree counterclockwise (tree on the
/// left-hand side).
fn next_subcell(links: &BTreeMap<CellCoord, [bool; 4]>, sub: CellCoord) -> CellCoord {
    let mega = MegaGrid::parent(sub);
    let l = links[&mega];
    let (top, left) = (sub.row.is_multiple_of(2), sub.col.is_multiple_of(2));
    let step = |d: Direction| sub.step(d).expect("tree walk stays in the grid");
    match (top, left) {
        (true, true) if l[dir_slot(Direction::Left)] => step(Direction::Left),
        (true, true) => step(Direction::Down),
        (false, true) if l[dir_slot(Direction::Down)] => step(Direction::Down),
        (false, true) => step(Direction::Right),
        (false, false) if l[dir_slot(Direction::Right)] => step(Direction::Right),
        (false, false) => step(Direction::Up),
        (true, false) if l[dir_slot(Direction::Up)] => step(Direction::Up),
        (true, false) => step(Direction::Left),
    }
}

/// Closed counterclockwise loop around `tree`, starting and ending at
/// `start`. Every subcell of every tree node appears exactly once, plus the
/// closing return to `start`.
pub fn circumnavigate(
    tree: &SpanningTree,
    start: CellCoord,
    robot: usize,
) -> Result<CoveragePath, StcError> {
    if !tree.nodes.contains(&MegaGrid::parent(start)) {
        return Err(StcError::StartOutsideTree(start));
    }
    let links = tree.links();
    let total = tree.nodes.len() * 4;
    let mut moves = Vec::with_capacity(total + 1);
    moves.push(start);
    let mut cur = next_subcell(&links, start);
    while cur != start && moves.len() <= total {
        moves.push(cur);
        cur = next_subcell(&links, cur);
    }
    debug_assert_eq!(moves.len(), total, "loop must visit every subcell once");
    moves.push(start);
    let kinds = vec![StepKind::Loop; moves.len()];
    Ok(CoveragePath {
        robot,
        moves,
        kinds,
    })
}
