use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use darpcov::darp::PartitionError;
use darpcov::{
    compare, fixtures, parse_map, parse_map_json, plan, render_svg, CoverageMode, GridMap,
    PartitionConfig, PlanConfig, PlanError, RunReport, SeedMode, TimeModel, Variant,
};

const EXIT_PARSE: u8 = 2;
const EXIT_INFEASIBLE: u8 = 3;
const EXIT_NOT_CONVERGED: u8 = 4;
const EXIT_IO: u8 = 5;

#[derive(Parser)]
#[command(
    name = "darpcov",
    version,
    about = "Multi-robot coverage path planning on occupancy grids"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Partition a map, plan every robot's coverage path and score the run.
    Plan {
        #[command(flatten)]
        map: MapSource,
        #[arg(long, default_value = "astar-darp")]
        mode: SeedMode,
        #[arg(long, default_value = "uf-stc")]
        coverage: CoverageMode,
        #[command(flatten)]
        tuning: Tuning,
        /// Write the JSON report here instead of stdout.
        #[arg(long)]
        json: Option<PathBuf>,
        #[arg(long)]
        svg: Option<PathBuf>,
    },
    /// Plan the same map under two MODE:COV variants and print the deltas.
    Compare {
        #[command(flatten)]
        map: MapSource,
        #[arg(long, default_value = "darp:uf-stc")]
        a: Variant,
        #[arg(long, default_value = "astar-darp:uf-stc")]
        b: Variant,
        #[command(flatten)]
        tuning: Tuning,
        /// Also write the comparison as JSON.
        #[arg(long)]
        json: Option<PathBuf>,
    },
    /// Re-render a saved JSON report as SVG.
    Render {
        #[arg(long)]
        report: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Args)]
#[group(required = true, multiple = false)]
struct MapSource {
    /// Map file; `.json` files use the JSON map format, anything else the text format.
    #[arg(long)]
    map: Option<PathBuf>,
    /// Inline JSON map.
    #[arg(long)]
    map_json: Option<String>,
    /// One of the bundled maps (open, single, fig1_wall, small_d, small_e, map_a, map_b, map_c).
    #[arg(long)]
    fixture: Option<String>,
}

#[derive(Args)]
struct Tuning {
    #[arg(long, default_value_t = PartitionConfig::default().eta)]
    eta: f64,
    #[arg(long, default_value_t = PartitionConfig::default().gamma)]
    gamma: f64,
    #[arg(long, default_value_t = PartitionConfig::default().max_iter)]
    max_iter: usize,
    /// Time per straight move.
    #[arg(long, default_value_t = TimeModel::default().straight)]
    ts: f64,
    /// Time per turning move.
    #[arg(long, default_value_t = TimeModel::default().turn)]
    tt: f64,
}

struct Failure {
    code: u8,
    error: anyhow::Error,
}

fn fail(code: u8) -> impl FnOnce(anyhow::Error) -> Failure {
    move |error| Failure { code, error }
}

fn load_map(src: &MapSource) -> Result<GridMap, Failure> {
    if let Some(path) = &src.map {
        let text = fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(fail(EXIT_IO))?;
        let parsed = if path.extension().is_some_and(|e| e == "json") {
            parse_map_json(&text)
        } else {
            parse_map(&text)
        };
        return parsed
            .with_context(|| format!("parsing {}", path.display()))
            .map_err(fail(EXIT_PARSE));
    }
    if let Some(json) = &src.map_json {
        return parse_map_json(json)
            .context("parsing --map-json")
            .map_err(fail(EXIT_PARSE));
    }
    let name = src.fixture.as_deref().unwrap_or_default();
    let text = fixtures::get(name)
        .ok_or_else(|| anyhow!("no bundled map named {name:?}"))
        .map_err(fail(EXIT_PARSE))?;
    parse_map(text)
        .context("parsing bundled map")
        .map_err(fail(EXIT_PARSE))
}

fn build_config(mode: SeedMode, coverage: CoverageMode, t: &Tuning) -> Result<PlanConfig, Failure> {
    let partition = PartitionConfig {
        eta: t.eta,
        gamma: t.gamma,
        max_iter: t.max_iter,
    };
    partition
        .validate()
        .map_err(|e| fail(EXIT_PARSE)(e.into()))?;
    let time = TimeModel::new(t.ts, t.tt).map_err(|e| fail(EXIT_PARSE)(e.into()))?;
    Ok(PlanConfig {
        mode,
        coverage,
        partition,
        time,
    })
}

fn plan_failure(e: PlanError) -> Failure {
    let code = match &e {
        PlanError::Start(_)
        | PlanError::Partition(
            PartitionError::BlockedStart { .. }
            | PartitionError::SharedStart { .. }
            | PartitionError::NoRobots,
        ) => EXIT_INFEASIBLE,
        PlanError::Partition(PartitionError::Config(_)) => EXIT_PARSE,
        _ => 1,
    };
    Failure {
        code,
        error: e.into(),
    }
}

fn write(path: &Path, contents: &str) -> Result<(), Failure> {
    fs::write(path, contents)
        .with_context(|| format!("writing {}", path.display()))
        .map_err(fail(EXIT_IO))
}

fn run(cli: Cli) -> Result<(), Failure> {
    match cli.command {
        Command::Plan {
            map,
            mode,
            coverage,
            tuning,
            json,
            svg,
        } => {
            let grid = load_map(&map)?;
            let config = build_config(mode, coverage, &tuning)?;
            let p = plan(&grid, &config).map_err(plan_failure)?;
            let report = RunReport::from_plan(&p);
            let text = report.to_json() + "\n";
            match &json {
                Some(path) => write(path, &text)?,
                None => print!("{text}"),
            }
            if let Some(path) = &svg {
                write(path, &render_svg(&grid, &p.partition.assignment, &p.paths))?;
            }
            eprintln!(
                "{}: {} robots, sizes {:?}, {} iterations, converged {}, turns {}, coverage {:.4}",
                config.variant(),
                grid.robot_count(),
                p.partition.region_sizes,
                p.partition.iterations,
                p.partition.converged,
                p.total_turns(),
                p.fleet.coverage_rate
            );
            if !p.partition.converged {
                return Err(Failure {
                    code: EXIT_NOT_CONVERGED,
                    error: anyhow!(
                        "partition did not converge in {} iterations",
                        p.partition.iterations
                    ),
                });
            }
            Ok(())
        }
        Command::Compare {
            map,
            a,
            b,
            tuning,
            json,
        } => {
            let grid = load_map(&map)?;
            let base = build_config(a.mode, a.coverage, &tuning)?;
            let (pa, pb, result) = compare(&grid, &base, a, b).map_err(plan_failure)?;
            print!("{}", result.table());
            if let Some(path) = &json {
                write(path, &(result.to_json() + "\n"))?;
            }
            if !(pa.partition.converged && pb.partition.converged) {
                return Err(Failure {
                    code: EXIT_NOT_CONVERGED,
                    error: anyhow!("at least one partition did not converge"),
                });
            }
            Ok(())
        }
        Command::Render { report, svg } => {
            let text = fs::read_to_string(&report)
                .with_context(|| format!("reading {}", report.display()))
                .map_err(fail(EXIT_IO))?;
            let parsed = RunReport::from_json(&text)
                .with_context(|| format!("parsing {}", report.display()))
                .map_err(fail(EXIT_PARSE))?;
            let (grid, assignment, paths) = parsed
                .scene()
                .context("report describes an invalid map")
                .map_err(fail(EXIT_PARSE))?;
            write(&svg, &render_svg(&grid, &assignment, &paths))
        }
    }
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure { code, error }) => {
            eprintln!("error: {error:#}");
            ExitCode::from(code)
        }
    }
}
