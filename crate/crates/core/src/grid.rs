//! Occupancy grids at robot (subcell) resolution and the 2×2 mega-cell grid
//! derived from them.
//!
//! A [`GridMap`] is the "real" map: one cell per robot footprint. Partitioning
//! and spanning-tree construction work on the coarser [`MegaGrid`], where
//! every mega-cell is a 2×2 block of subcells and is blocked as soon as one
//! of its subcells is. Free subcells hidden under blocked mega-cells are the
//! [`SmallCellSet`].

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Maximum number of robots the text map format can express (digits 0-9).
pub const MAX_TEXT_ROBOTS: usize = 10;

/// A `(row, col)` grid index. Rows grow downwards.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct CellCoord {
    pub row: usize,
    pub col: usize,
}

impl CellCoord {
    pub const fn new(row: usize, col: usize) -> Self {
        Self { row, col }
    }

    /// Neighbour one step in `dir`, or `None` when that would leave the
    /// non-negative quadrant.
    pub fn step(self, dir: Direction) -> Option<CellCoord> {
        let (dr, dc) = dir.delta();
        let row = self.row.checked_add_signed(dr)?;
        let col = self.col.checked_add_signed(dc)?;
        Some(CellCoord { row, col })
    }

    /// Direction of a unit move from `self` to `other`, if they are 4-adjacent.
    pub fn direction_to(self, other: CellCoord) -> Option<Direction> {
        Direction::PRIORITY
            .into_iter()
            .find(|&d| self.step(d) == Some(other))
    }

    pub fn is_adjacent(self, other: CellCoord) -> bool {
        self.direction_to(other).is_some()
    }
}

impl From<[usize; 2]> for CellCoord {
    fn from([row, col]: [usize; 2]) -> Self {
        Self { row, col }
    }
}

impl From<CellCoord> for [usize; 2] {
    fn from(c: CellCoord) -> Self {
        [c.row, c.col]
    }
}

impl fmt::Display for CellCoord {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({}, {})", self.row, self.col)
    }
}

/// Absolute map directions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Direction {
    Up,
    Left,
    Down,
    Right,
}

impl Direction {
    /// Up-first scan order, shared by the small-cell walk and A* neighbour
    /// expansion.
    pub const PRIORITY: [Direction; 4] = [
        Direction::Up,
        Direction::Left,
        Direction::Down,
        Direction::Right,
    ];

    pub fn delta(self) -> (isize, isize) {
        match self {
            Direction::Up => (-1, 0),
            Direction::Left => (0, -1),
            Direction::Down => (1, 0),
            Direction::Right => (0, 1),
        }
    }

    pub fn opposite(self) -> Direction {
        match self {
            Direction::Up => Direction::Down,
            Direction::Left => Direction::Right,
            Direction::Down => Direction::Up,
            Direction::Right => Direction::Left,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("map must be at least 2x2, got {height}x{width}")]
    TooSmall { height: usize, width: usize },
    #[error("occupancy table has {found} entries, expected {expected}")]
    SizeMismatch { expected: usize, found: usize },
    #[error("obstacle {cell} lies outside the {height}x{width} map")]
    ObstacleOutOfBounds {
        cell: CellCoord,
        height: usize,
        width: usize,
    },
    #[error("map has no robots")]
    NoRobots,
    #[error("robot {robot} starts at {cell}, outside the map")]
    StartOutOfBounds { robot: usize, cell: CellCoord },
    #[error("robot {robot} starts on obstacle {cell}")]
    StartOnObstacle { robot: usize, cell: CellCoord },
    #[error("robots {first} and {second} share start {cell}")]
    DuplicateStart {
        first: usize,
        second: usize,
        cell: CellCoord,
    },
    #[error("text maps hold at most {MAX_TEXT_ROBOTS} robots, this one has {0}")]
    TooManyRobotsForText(usize),
}

/// Errors from the text and JSON map readers. Line and column numbers are
/// 1-based.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: expected {expected} cells, found {found}")]
    RaggedLine {
        line: usize,
        expected: usize,
        found: usize,
    },
    #[error("line {line}, column {column}: unknown character {ch:?}")]
    UnknownChar {
        line: usize,
        column: usize,
        ch: char,
    },
    #[error("line {line}, column {column}: robot {digit} already placed")]
    DuplicateRobot {
        line: usize,
        column: usize,
        digit: u32,
    },
    #[error("robot labels must be 0..n without gaps; robot {0} is missing")]
    MissingRobot(u32),
    #[error("map has no robots")]
    NoRobots,
    #[error("map must be at least 2x2, got {height}x{width}")]
    TooSmall { height: usize, width: usize },
    #[error("robot {robot} starts on obstacle {cell}")]
    StartOnObstacle { robot: usize, cell: CellCoord },
    #[error("invalid JSON map: {0}")]
    Json(String),
    #[error(transparent)]
    Invalid(MapError),
}

impl From<MapError> for ParseError {
    fn from(e: MapError) -> Self {
        match e {
            MapError::NoRobots => ParseError::NoRobots,
            MapError::TooSmall { height, width } => ParseError::TooSmall { height, width },
            MapError::StartOnObstacle { robot, cell } => {
                ParseError::StartOnObstacle { robot, cell }
            }
            other => ParseError::Invalid(other),
        }
    }
}

/// Subcell occupancy grid with robot start positions.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GridMap {
    height: usize,
    width: usize,
    obstacles: Vec<bool>,
    starts: Vec<CellCoord>,
}

impl GridMap {
    /// Builds a map from a row-major obstacle table (`true` = obstacle).
    pub fn new(
        height: usize,
        width: usize,
        obstacles: Vec<bool>,
        starts: Vec<CellCoord>,
    ) -> Result<Self, MapError> {
        if height < 2 || width < 2 {
            return Err(MapError::TooSmall { height, width });
        }
        if obstacles.len() != height * width {
            return Err(MapError::SizeMismatch {
                expected: height * width,
                found: obstacles.len(),
            });
        }
        if starts.is_empty() {
            return Err(MapError::NoRobots);
        }
        for (robot, &cell) in starts.iter().enumerate() {
            if cell.row >= height || cell.col >= width {
                return Err(MapError::StartOutOfBounds { robot, cell });
            }
            if obstacles[cell.row * width + cell.col] {
                return Err(MapError::StartOnObstacle { robot, cell });
            }
            if let Some(first) = starts[..robot].iter().position(|&s| s == cell) {
                return Err(MapError::DuplicateStart {
                    first,
                    second: robot,
                    cell,
                });
            }
        }
        Ok(Self {
            height,
            width,
            obstacles,
            starts,
        })
    }

    /// Builds a map from a sparse obstacle list.
    pub fn from_obstacle_list(
        height: usize,
        width: usize,
        obstacles: &[CellCoord],
        starts: Vec<CellCoord>,
    ) -> Result<Self, MapError> {
        if height < 2 || width < 2 {
            return Err(MapError::TooSmall { height, width });
        }
        let mut table = vec![false; height * width];
        for &cell in obstacles {
            if cell.row >= height || cell.col >= width {
                return Err(MapError::ObstacleOutOfBounds {
                    cell,
                    height,
                    width,
                });
            }
            table[cell.row * width + cell.col] = true;
        }
        Self::new(height, width, table, starts)
    }

    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn starts(&self) -> &[CellCoord] {
        &self.starts
    }

    pub fn robot_count(&self) -> usize {
        self.starts.len()
    }

    pub fn contains(&self, c: CellCoord) -> bool {
        c.row < self.height && c.col < self.width
    }

    /// Out-of-bounds cells count as obstacles.
    pub fn is_obstacle(&self, c: CellCoord) -> bool {
        !self.contains(c) || self.obstacles[c.row * self.width + c.col]
    }

    pub fn is_free(&self, c: CellCoord) -> bool {
        !self.is_obstacle(c)
    }

    pub fn cells(&self) -> impl Iterator<Item = CellCoord> + '_ {
        (0..self.height).flat_map(move |row| (0..self.width).map(move |col| CellCoord { row, col }))
    }

    pub fn free_cells(&self) -> impl Iterator<Item = CellCoord> + '_ {
        self.cells().filter(move |&c| self.is_free(c))
    }

    pub fn obstacle_count(&self) -> usize {
        self.obstacles.iter().filter(|&&o| o).count()
    }

    pub fn free_count(&self) -> usize {
        self.obstacles.len() - self.obstacle_count()
    }

    /// Obstacles over total subcells.
    pub fn obstacle_ratio(&self) -> f64 {
        self.obstacle_count() as f64 / (self.height * self.width) as f64
    }

    /// Obstacle subcells in row-major order.
    pub fn obstacle_list(&self) -> Vec<CellCoord> {
        self.cells().filter(|&c| self.is_obstacle(c)).collect()
    }

    /// Renders the map in the text format accepted by [`parse_map`].
    pub fn to_text(&self) -> Result<String, MapError> {
        if self.starts.len() > MAX_TEXT_ROBOTS {
            return Err(MapError::TooManyRobotsForText(self.starts.len()));
        }
        let mut out = String::with_capacity((self.width + 1) * self.height);
        for row in 0..self.height {
            for col in 0..self.width {
                let c = CellCoord { row, col };
                let ch = match self.starts.iter().position(|&s| s == c) {
                    Some(robot) => char::from_digit(robot as u32, 10).unwrap_or('?'),
                    None if self.is_obstacle(c) => '#',
                    None => '.',
                };
                out.push(ch);
            }
            out.push('\n');
        }
        Ok(out)
    }

    pub fn to_json(&self) -> MapJson {
        MapJson {
            height: self.height,
            width: self.width,
            obstacles: self.obstacle_list(),
            starts: self.starts.clone(),
        }
    }
}

/// JSON map document: `{height, width, obstacles: [[r,c],...], starts: [[r,c],...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MapJson {
    pub height: usize,
    pub width: usize,
    pub obstacles: Vec<CellCoord>,
    pub starts: Vec<CellCoord>,
}

impl TryFrom<MapJson> for GridMap {
    type Error = MapError;

    fn try_from(doc: MapJson) -> Result<Self, MapError> {
        GridMap::from_obstacle_list(doc.height, doc.width, &doc.obstacles, doc.starts)
    }
}

/// Parses the text map format.
///
/// One character per subcell: `.` free, `#` obstacle, `0`-`9` a robot start on
/// a free subcell. Blank lines and lines starting with `;` are skipped.
/// Robot labels must run from 0 without gaps.
pub fn parse_map(text: &str) -> Result<GridMap, ParseError> {
    let mut width = None;
    let mut obstacles = Vec::new();
    let mut labelled: [Option<CellCoord>; MAX_TEXT_ROBOTS] = [None; MAX_TEXT_ROBOTS];
    let mut height = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.strip_suffix('\r').unwrap_or(raw);
        if line.trim().is_empty() || line.starts_with(';') {
            continue;
        }
        let found = line.chars().count();
        let expected = *width.get_or_insert(found);
        if found != expected {
            return Err(ParseError::RaggedLine {
                line: line_no,
                expected,
                found,
            });
        }
        for (col, ch) in line.chars().enumerate() {
            match ch {
                '.' => obstacles.push(false),
                '#' => obstacles.push(true),
                '0'..='9' => {
                    let digit = ch.to_digit(10).unwrap_or_default();
                    let slot = &mut labelled[digit as usize];
                    if slot.is_some() {
                        return Err(ParseError::DuplicateRobot {
                            line: line_no,
                            column: col + 1,
                            digit,
                        });
                    }
                    *slot = Some(CellCoord::new(height, col));
                    obstacles.push(false);
                }
                other => {
                    return Err(ParseError::UnknownChar {
                        line: line_no,
                        column: col + 1,
                        ch: other,
                    })
                }
            }
        }
        height += 1;
    }

    let width = width.unwrap_or(0);
    if height < 2 || width < 2 {
        return Err(ParseError::TooSmall { height, width });
    }
    let count = labelled
        .iter()
        .rposition(Option::is_some)
        .map_or(0, |p| p + 1);
    if count == 0 {
        return Err(ParseError::NoRobots);
    }
    let mut starts = Vec::with_capacity(count);
    for (digit, slot) in labelled[..count].iter().enumerate() {
        match slot {
            Some(c) => starts.push(*c),
            None => return Err(ParseError::MissingRobot(digit as u32)),
        }
    }
    Ok(GridMap::new(height, width, obstacles, starts)?)
}

/// Parses a JSON map document.
pub fn parse_map_json(text: &str) -> Result<GridMap, ParseError> {
    let doc: MapJson = serde_json::from_str(text).map_err(|e| ParseError::Json(e.to_string()))?;
    Ok(GridMap::try_from(doc)?)
}

/// The 2×2-merged grid. Odd map dimensions are padded on the bottom/right
/// with virtual obstacle subcells.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MegaGrid {
    height: usize,
    width: usize,
    obstacles: Vec<bool>,
}

impl MegaGrid {
    pub fn height(&self) -> usize {
        self.height
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn len(&self) -> usize {
        self.height * self.width
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn contains(&self, c: CellCoord) -> bool {
        c.row < self.height && c.col < self.width
    }

    pub fn index(&self, c: CellCoord) -> usize {
        c.row * self.width + c.col
    }

    pub fn coord(&self, index: usize) -> CellCoord {
        CellCoord::new(index / self.width, index % self.width)
    }

    pub fn is_obstacle(&self, c: CellCoord) -> bool {
        !self.contains(c) || self.obstacles[self.index(c)]
    }

    pub fn is_free(&self, c: CellCoord) -> bool {
        !self.is_obstacle(c)
    }

    pub fn cells(&self) -> impl Iterator<Item = CellCoord> + '_ {
        (0..self.len()).map(move |i| self.coord(i))
    }

    pub fn free_cells(&self) -> impl Iterator<Item = CellCoord> + '_ {
        self.cells().filter(move |&c| self.is_free(c))
    }

    /// In-bounds free 4-neighbours in up, left, down, right order.
    pub fn free_neighbors(&self, c: CellCoord) -> impl Iterator<Item = CellCoord> + '_ {
        Direction::PRIORITY
            .into_iter()
            .filter_map(move |d| c.step(d))
            .filter(move |&n| self.is_free(n))
    }

    /// Mega-cell enclosing a subcell.
    pub fn parent(sub: CellCoord) -> CellCoord {
        CellCoord::new(sub.row / 2, sub.col / 2)
    }

    /// The four subcells of a mega-cell as `[top-left, top-right,
    /// bottom-left, bottom-right]`. Padding subcells are included.
    pub fn subcells(mega: CellCoord) -> [CellCoord; 4] {
        let (r, c) = (mega.row * 2, mega.col * 2);
        [
            CellCoord::new(r, c),
            CellCoord::new(r, c + 1),
            CellCoord::new(r + 1, c),
            CellCoord::new(r + 1, c + 1),
        ]
    }

    /// Mega-cells holding each robot's start.
    ///
    /// Fails when a start sits in a blocked mega-cell or two robots share one.
    pub fn robot_cells(&self, grid: &GridMap) -> Result<Vec<CellCoord>, StartError> {
        let mut out: Vec<CellCoord> = Vec::with_capacity(grid.robot_count());
        for (robot, &start) in grid.starts().iter().enumerate() {
            let mega = Self::parent(start);
            if self.is_obstacle(mega) {
                return Err(StartError::BlockedMegaCell { robot, start, mega });
            }
            if let Some(first) = out.iter().position(|&m| m == mega) {
                return Err(StartError::SharedMegaCell {
                    first,
                    second: robot,
                    mega,
                });
            }
            out.push(mega);
        }
        Ok(out)
    }
}

/// Start placements the planner cannot work with.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum StartError {
    #[error("robot {robot} at {start} lies in mega-cell {mega}, which is blocked")]
    BlockedMegaCell {
        robot: usize,
        start: CellCoord,
        mega: CellCoord,
    },
    #[error("robots {first} and {second} share mega-cell {mega}")]
    SharedMegaCell {
        first: usize,
        second: usize,
        mega: CellCoord,
    },
}

/// Merges 2×2 subcell blocks. A mega-cell is blocked if any of its subcells
/// is an obstacle or padding.
pub fn build_mega(grid: &GridMap) -> MegaGrid {
    let height = grid.height().div_ceil(2);
    let width = grid.width().div_ceil(2);
    let obstacles = (0..height * width)
        .map(|i| {
            let mega = CellCoord::new(i / width, i % width);
            MegaGrid::subcells(mega)
                .iter()
                .any(|&s| grid.is_obstacle(s))
        })
        .collect();
    MegaGrid {
        height,
        width,
        obstacles,
    }
}

/// Free subcells whose mega-cell is blocked.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SmallCellSet {
    cells: BTreeSet<CellCoord>,
}

impl SmallCellSet {
    pub fn contains(&self, c: CellCoord) -> bool {
        self.cells.contains(&c)
    }

    pub fn len(&self) -> usize {
        self.cells.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cells.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = CellCoord> + '_ {
        self.cells.iter().copied()
    }
}

pub fn small_cells(grid: &GridMap, mega: &MegaGrid) -> SmallCellSet {
    let cells = grid
        .free_cells()
        .filter(|&c| mega.is_obstacle(MegaGrid::parent(c)))
        .collect();
    SmallCellSet { cells }
}
