//! wasm-bindgen bindings for the browser demo in `www/`.
//!
//! Every export takes map text in the `.map` format and returns a JSON
//! string, so the page needs no extra glue beyond `JSON.parse`.

use std::fmt::Write as _;

use darpcov::distance::{euclidean_field, path_distance_field};
use darpcov::{
    build_mega, compare, fixtures, parse_map, plan, render_svg, CoverageMode, PlanConfig,
    RunReport, SeedMode, Variant,
};
use serde::Serialize;
use wasm_bindgen::prelude::*;

#[derive(Serialize)]
struct PlanOutput {
    svg: String,
    report: RunReport,
    converged: bool,
    turns: usize,
}

#[derive(Serialize)]
struct CompareOutput {
    table: String,
    svg_a: String,
    svg_b: String,
}

#[derive(Serialize)]
struct FieldOutput {
    svg: String,
    /// Largest finite value, for the legend.
    max: f64,
    unreachable: usize,
}

fn to_json<T: Serialize>(value: &T) -> Result<String, String> {
    serde_json::to_string(value).map_err(|e| e.to_string())
}

pub fn plan_text(map: &str, mode: &str, coverage: &str) -> Result<String, String> {
    let grid = parse_map(map).map_err(|e| e.to_string())?;
    let config = PlanConfig {
        mode: mode.parse::<SeedMode>()?,
        coverage: coverage.parse::<CoverageMode>()?,
        ..PlanConfig::default()
    };
    let p = plan(&grid, &config).map_err(|e| e.to_string())?;
    to_json(&PlanOutput {
        svg: render_svg(&grid, &p.partition.assignment, &p.paths),
        report: RunReport::from_plan(&p),
        converged: p.partition.converged,
        turns: p.total_turns(),
    })
}

pub fn compare_text(map: &str, a: &str, b: &str) -> Result<String, String> {
    let grid = parse_map(map).map_err(|e| e.to_string())?;
    let (a, b) = (a.parse::<Variant>()?, b.parse::<Variant>()?);
    let (pa, pb, result) =
        compare(&grid, &PlanConfig::default(), a, b).map_err(|e| e.to_string())?;
    to_json(&CompareOutput {
        table: result.table(),
        svg_a: render_svg(&grid, &pa.partition.assignment, &pa.paths),
        svg_b: render_svg(&grid, &pb.partition.assignment, &pb.paths),
    })
}

/// Heatmap of one robot's seed distances on the mega-grid.
pub fn field_text(map: &str, robot: usize, mode: &str) -> Result<String, String> {
    const CELL: usize = 24;
    let grid = parse_map(map).map_err(|e| e.to_string())?;
    let mega = build_mega(&grid);
    let starts = mega.robot_cells(&grid).map_err(|e| e.to_string())?;
    let source = *starts
        .get(robot)
        .ok_or_else(|| format!("map has {} robots", starts.len()))?;
    let field = match mode.parse::<SeedMode>()? {
        SeedMode::Euclidean => euclidean_field(&mega, source),
        SeedMode::AStar => path_distance_field(&mega, source),
    }
    .map_err(|e| e.to_string())?;
    let max = field.values().iter().flatten().copied().fold(0.0, f64::max);

    let (w, h) = (mega.width() * CELL, mega.height() * CELL);
    let mut svg = String::new();
    let _ = writeln!(
        svg,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{h}" viewBox="0 0 {w} {h}">"#
    );
    let mut unreachable = 0;
    for c in mega.cells() {
        let (x, y) = (c.col * CELL, c.row * CELL);
        let fill = if mega.is_obstacle(c) {
            "#000000".to_string()
        } else {
            match field.get(c) {
                Some(v) => {
                    let t = if max > 0.0 { v / max } else { 0.0 };
                    // near = yellow, far = dark blue
                    let lerp = |a: f64, b: f64| (a + (b - a) * t).round() as u8;
                    format!(
                        "#{:02x}{:02x}{:02x}",
                        lerp(253.0, 33.0),
                        lerp(231.0, 49.0),
                        lerp(37.0, 140.0)
                    )
                }
                None => {
                    unreachable += 1;
                    "#bbbbbb".to_string()
                }
            }
        };
        let _ = write!(
            svg,
            r#"<rect x="{x}" y="{y}" width="{CELL}" height="{CELL}" fill="{fill}"/>"#
        );
        if let Some(v) = field.get(c) {
            let _ = write!(
                svg,
                r#"<text x="{}" y="{}" font-size="8" text-anchor="middle" fill="{}">{:.1}</text>"#,
                x + CELL / 2,
                y + CELL / 2 + 3,
                if max > 0.0 && v / max > 0.5 {
                    "#ffffff"
                } else {
                    "#000000"
                },
                v
            );
        }
        svg.push('\n');
    }
    let (sx, sy) = (source.col * CELL + CELL / 2, source.row * CELL + CELL / 2);
    let _ = writeln!(
        svg,
        r##"<circle cx="{sx}" cy="{sy}" r="{}" fill="none" stroke="#e6194b" stroke-width="2"/>"##,
        CELL / 2 - 2
    );
    svg.push_str("</svg>\n");
    to_json(&FieldOutput {
        svg,
        max,
        unreachable,
    })
}

pub fn fixture_list() -> Result<String, String> {
    let list: Vec<(&str, &str)> = fixtures::ALL.to_vec();
    to_json(&list)
}

#[wasm_bindgen(js_name = planMap)]
pub fn plan_map(map: &str, mode: &str, coverage: &str) -> Result<String, JsValue> {
    plan_text(map, mode, coverage).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = compareVariants)]
pub fn compare_variants(map: &str, a: &str, b: &str) -> Result<String, JsValue> {
    compare_text(map, a, b).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = distanceField)]
pub fn distance_field(map: &str, robot: usize, mode: &str) -> Result<String, JsValue> {
    field_text(map, robot, mode).map_err(|e| JsValue::from_str(&e))
}

#[wasm_bindgen(js_name = fixtures)]
pub fn fixtures_json() -> Result<String, JsValue> {
    fixture_list().map_err(|e| JsValue::from_str(&e))
}
