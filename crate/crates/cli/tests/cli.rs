use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn darpcov(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_darpcov"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn write_map(dir: &Path, name: &str, text: &str) -> String {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path.to_str().unwrap().to_owned()
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn single_robot_open_map() {
    let dir = tempfile::tempdir().unwrap();
    let map = write_map(dir.path(), "one.map", "0...\n....\n....\n....\n");
    let out = darpcov(&["plan", "--map", &map, "--coverage", "stc"]);
    assert_eq!(code(&out), 0);
    let r = json_of(&out);
    assert_eq!(r["robots"].as_array().unwrap().len(), 1);
    assert_eq!(r["robots"][0]["n_moves"], 16);
    assert_eq!(r["fleet"]["ratio"], 1.0);
    assert_eq!(r["fleet"]["coverage_rate"], 1.0);
}

#[test]
fn wall_fixture_pocket_goes_to_robot_zero() {
    let out = darpcov(&["plan", "--fixture", "fig1_wall", "--mode", "astar-darp"]);
    assert_eq!(code(&out), 0);
    let r = json_of(&out);
    assert_eq!(r["partition"]["converged"], true);
    for row in 4..6 {
        for col in 4..8 {
            assert_eq!(r["partition"]["assignment"][row][col], 0, "({row},{col})");
        }
    }
}

#[test]
fn report_keeps_every_robot() {
    for (name, robots) in [("open", 4), ("small_e", 3), ("map_c", 5)] {
        let out = darpcov(&["plan", "--fixture", name]);
        assert_eq!(
            json_of(&out)["robots"].as_array().unwrap().len(),
            robots,
            "{name}"
        );
    }
}

#[test]
fn json_map_input() {
    let dir = tempfile::tempdir().unwrap();
    let map = write_map(
        dir.path(),
        "m.json",
        r#"{"height":4,"width":4,"obstacles":[[3,0]],"starts":[[0,0],[2,2]]}"#,
    );
    let out = darpcov(&["plan", "--map", &map]);
    assert_eq!(code(&out), 0);
    let r = json_of(&out);
    assert_eq!(r["map"]["obstacles"], serde_json::json!([[3, 0]]));
    assert_eq!(r["robots"][1]["start"], serde_json::json!([2, 2]));

    let inline = darpcov(&[
        "plan",
        "--map-json",
        r#"{"height":2,"width":2,"obstacles":[],"starts":[[1,1]]}"#,
    ]);
    assert_eq!(code(&inline), 0);
}

#[test]
fn exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let bad_char = write_map(dir.path(), "bad.map", "0x\n..\n");
    assert_eq!(code(&darpcov(&["plan", "--map", &bad_char])), 2);
    let ragged = write_map(dir.path(), "ragged.map", "0..\n..\n");
    assert_eq!(code(&darpcov(&["plan", "--map", &ragged])), 2);
    assert_eq!(
        code(&darpcov(&["plan", "--fixture", "open", "--gamma", "2"])),
        2
    );

    let blocked = write_map(dir.path(), "blocked.map", "0#..\n....\n");
    assert_eq!(code(&darpcov(&["plan", "--map", &blocked])), 3);
    let shared = write_map(dir.path(), "shared.map", "01..\n....\n");
    assert_eq!(code(&darpcov(&["plan", "--map", &shared])), 3);

    let missing = dir.path().join("missing.map");
    assert_eq!(
        code(&darpcov(&["plan", "--map", missing.to_str().unwrap()])),
        5
    );
    let unwritable = dir.path().join("no/such/dir/out.json");
    assert_eq!(
        code(&darpcov(&[
            "plan",
            "--fixture",
            "single",
            "--json",
            unwritable.to_str().unwrap()
        ])),
        5
    );
}

#[test]
fn non_convergence_still_writes_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let (json, svg) = (dir.path().join("r.json"), dir.path().join("r.svg"));
    let out = darpcov(&[
        "plan",
        "--fixture",
        "map_c",
        "--max-iter",
        "2",
        "--json",
        json.to_str().unwrap(),
        "--svg",
        svg.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 4);
    let r: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(r["partition"]["converged"], false);
    assert!(fs::read_to_string(&svg).unwrap().starts_with("<svg"));
}

#[test]
fn render_reproduces_the_plan_svg() {
    let dir = tempfile::tempdir().unwrap();
    let (json, svg, again) = (
        dir.path().join("r.json"),
        dir.path().join("a.svg"),
        dir.path().join("b.svg"),
    );
    let p = |s: &Path| s.to_str().unwrap().to_owned();
    let out = darpcov(&[
        "plan",
        "--fixture",
        "small_d",
        "--json",
        &p(&json),
        "--svg",
        &p(&svg),
    ]);
    assert_eq!(code(&out), 0);
    assert!(out.stdout.is_empty());
    assert_eq!(
        code(&darpcov(&[
            "render",
            "--report",
            &p(&json),
            "--svg",
            &p(&again)
        ])),
        0
    );
    assert_eq!(fs::read(&svg).unwrap(), fs::read(&again).unwrap());

    let garbage = dir.path().join("garbage.json");
    fs::write(&garbage, "{").unwrap();
    assert_eq!(
        code(&darpcov(&[
            "render",
            "--report",
            &p(&garbage),
            "--svg",
            &p(&again)
        ])),
        2
    );
}

#[test]
fn compare_variants() {
    let dir = tempfile::tempdir().unwrap();
    let json = dir.path().join("c.json");
    let out = darpcov(&[
        "compare",
        "--fixture",
        "small_d",
        "--a",
        "astar-darp:stc",
        "--b",
        "astar-darp:uf-stc",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&out), 0);
    let table = String::from_utf8(out.stdout).unwrap();
    assert!(table.contains("Coverage") && table.contains("Ratio"));
    let c: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert!(c["a"]["fleet"]["coverage_rate"].as_f64().unwrap() < 1.0);
    assert_eq!(c["b"]["fleet"]["coverage_rate"], 1.0);
    assert!(c["deltas"]["coverage_rate"].as_f64().unwrap() > 0.0);

    let same = darpcov(&[
        "compare",
        "--fixture",
        "small_e",
        "--a",
        "darp:stc",
        "--b",
        "darp:stc",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&same), 0);
    let c: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    for (key, v) in c["deltas"].as_object().unwrap() {
        assert_eq!(v.as_f64(), Some(0.0), "delta {key}");
    }

    let open = darpcov(&[
        "compare",
        "--fixture",
        "open",
        "--a",
        "darp:stc",
        "--b",
        "astar-darp:stc",
        "--json",
        json.to_str().unwrap(),
    ]);
    assert_eq!(code(&open), 0);
    let c: Value = serde_json::from_str(&fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(c["a"]["partition"]["sizes"], c["b"]["partition"]["sizes"]);

    assert_eq!(
        code(&darpcov(&["compare", "--fixture", "open", "--a", "darp"])),
        2
    );
}
