//! Bundled benchmark maps.
//!
//! `small_d`, `small_e` and `map_a`..`map_c` come from `scripts/gen_fixtures.py`.

pub const OPEN: &str = include_str!("../fixtures/open.map");
pub const SINGLE: &str = include_str!("../fixtures/single.map");
pub const FIG1_WALL: &str = include_str!("../fixtures/fig1_wall.map");
/// 32×32, 13.8 % obstacles, unaligned to the mega-grid.
pub const SMALL_D: &str = include_str!("../fixtures/small_d.map");
/// 32×32, 22.3 % obstacles, unaligned to the mega-grid.
pub const SMALL_E: &str = include_str!("../fixtures/small_e.map");
/// 64×64, 10.1 % obstacles.
pub const MAP_A: &str = include_str!("../fixtures/map_a.map");
/// 64×64, 29.6 % obstacles.
pub const MAP_B: &str = include_str!("../fixtures/map_b.map");
/// 64×64, 43.5 % obstacles.
pub const MAP_C: &str = include_str!("../fixtures/map_c.map");

/// `(name, text)` for every bundled map.
pub const ALL: &[(&str, &str)] = &[
    ("open", OPEN),
    ("single", SINGLE),
    ("fig1_wall", FIG1_WALL),
    ("small_d", SMALL_D),
    ("small_e", SMALL_E),
    ("map_a", MAP_A),
    ("map_b", MAP_B),
    ("map_c", MAP_C),
];

/// The maps whose obstacles leave small cells behind.
pub const SMALL_CELL: &[&str] = &["small_d", "small_e"];

pub fn get(name: &str) -> Option<&'static str> {
    ALL.iter().find(|(n, _)| *n == name).map(|(_, t)| *t)
}

/// Parses a bundled map; panics if `name` is unknown.
pub fn load(name: &str) -> crate::GridMap {
    let text = get(name).unwrap_or_else(|| panic!("no bundled map named {name}"));
    crate::parse_map(text).expect("bundled maps parse")
}
