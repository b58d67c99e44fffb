//! SVG rendering of a map, its partition and the robots' paths.

use std::fmt::Write as _;

use crate::darp::AssignmentMatrix;
use crate::grid::{CellCoord, GridMap, MegaGrid};
use crate::stc::{CoveragePath, StepKind};

const CELL: usize = 12;

const PALETTE: [&str; 10] = [
    "#e6194b", "#3cb44b", "#4363d8", "#f58231", "#911eb4", "#42d4f4", "#f032e6", "#9a6324",
    "#469990", "#808000",
];

pub fn robot_color(robot: usize) -> &'static str {
    PALETTE[robot % PALETTE.len()]
}

fn center(c: CellCoord) -> (usize, usize) {
    (c.col * CELL + CELL / 2, c.row * CELL + CELL / 2)
}

/// Renders one `<rect>` per subcell (obstacles black, free cells white or
/// tinted by the owner of their mega-cell), one `<polyline>` per robot path,
/// a dashed `<line>` per spike move and a circle on every start.
pub fn render_svg(grid: &GridMap, assignment: &AssignmentMatrix, paths: &[CoveragePath]) -> String {
    let (w, h) = (grid.width() * CELL, grid.height() * CELL);
    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );

    let _ = writeln!(
        out,
        r##"<g id="cells" stroke="#d0d0d0" stroke-width="0.5">"##
    );
    for c in grid.cells() {
        let (x, y) = (c.col * CELL, c.row * CELL);
        let fill = if grid.is_obstacle(c) {
            r##"fill="#000000""##.to_string()
        } else {
            match assignment.get(MegaGrid::parent(c)) {
                Some(robot) => format!(r#"fill="{}" fill-opacity="0.3""#, robot_color(robot)),
                None => r##"fill="#ffffff""##.to_string(),
            }
        };
        let _ = writeln!(
            out,
            r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" {fill}/>"#
        );
    }
    let _ = writeln!(out, "</g>");

    for path in paths {
        let color = robot_color(path.robot);
        let points = path
            .moves
            .iter()
            .map(|&c| {
                let (x, y) = center(c);
                format!("{x},{y}")
            })
            .collect::<Vec<_>>()
            .join(" ");
        let _ = writeln!(
            out,
            r#"<polyline class="path" data-robot="{}" points="{points}" fill="none" stroke="{color}" stroke-width="2" stroke-linejoin="round"/>"#,
            path.robot
        );
        for i in 1..path.moves.len() {
            if path.kinds[i] != StepKind::Spike {
                continue;
            }
            let (x1, y1) = center(path.moves[i - 1]);
            let (x2, y2) = center(path.moves[i]);
            let _ = writeln!(
                out,
                r#"<line class="spike" x1="{x1}" y1="{y1}" x2="{x2}" y2="{y2}" stroke="{color}" stroke-width="2" stroke-dasharray="3,2"/>"#
            );
        }
    }

    for (robot, &start) in grid.starts().iter().enumerate() {
        let (x, y) = center(start);
        let _ = writeln!(
            out,
            r##"<circle class="start" cx="{x}" cy="{y}" r="{}" fill="{}" stroke="#000000" stroke-width="1"/>"##,
            CELL / 3,
            robot_color(robot)
        );
    }
    out.push_str("</svg>\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pipeline::{plan, PlanConfig};

    #[test]
    fn two_by_two_single_robot() {
        let grid = crate::grid::parse_map("0.\n..\n").unwrap();
        let p = plan(&grid, &PlanConfig::default()).unwrap();
        let svg = render_svg(&grid, &p.partition.assignment, &p.paths);
        assert_eq!(svg.matches("<rect ").count(), 4);
        assert_eq!(svg.matches("<polyline ").count(), 1);
        assert_eq!(svg.matches("<circle ").count(), 1);
        assert_eq!(svg.matches("stroke-dasharray").count(), 0);
        assert_eq!(svg, render_svg(&grid, &p.partition.assignment, &p.paths));
    }
}
