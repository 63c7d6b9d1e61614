//! Command-line interface: file formats, validation, tiling, enumeration,
//! sampling, flip graphs and SVG rendering. Exit codes: 0 success, 1 usage
//! or format error, 2 untilable.

use std::fmt::Write as _;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use polycell::{
    brute_force_tilings, brute_force_tilings_capped, count_components, decode_dominoes,
    decode_rhombus, derive_subseed, encode_polyomino, encode_rhombus, flip_graph, height_function,
    is_balanced_boundary, is_contractible, maximal_tiling, read_polycell,
    read_polyomino_ascii, read_rhombus_points, read_tiling, rhombus_geometry, sample_cftp,
    sample_exact, validate, write_polycell, write_tiling, Polycell, PolyominoRegion, RhombusRegion,
    SamplerConfig, TileKind, Tiling, TilingOutcome,
};

#[derive(Parser)]
#[command(name = "polycell", version, about = "Generalized tilings over polycells")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Check structural validity, boundary balance and contractibility.
    Validate { file: PathBuf },
    /// Compute the flip-terminal tiling, or report untilability (exit 2).
    Tile { file: PathBuf },
    /// Enumerate all tilings: the count, then one line of edge ids each.
    Enumerate {
        file: PathBuf,
        /// Refuse polycells with more cells than this.
        #[arg(long, default_value_t = polycell::oracle::DEFAULT_CELL_CAP)]
        max_cells: usize,
    },
    /// Number of connected components of the flip graph.
    Components { file: PathBuf },
    /// Print the height function of a tiling as `vertex value` lines.
    Heights { file: PathBuf, tiling: PathBuf },
    /// Draw uniform random tilings.
    Sample {
        file: PathBuf,
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "cftp")]
        method: String,
        /// Number of draws; each uses an independent derived sub-seed.
        #[arg(long, default_value_t = 1)]
        n: u64,
    },
    /// Write the directed flip-accessibility graph in DOT format.
    Flipgraph {
        file: PathBuf,
        #[arg(long)]
        dot: PathBuf,
    },
    /// Encode a geometric region as a polycell file.
    #[command(subcommand)]
    Encode(EncodeCommand),
    /// Render a 2-dimensional tiling to SVG.
    Render {
        /// Region file: polyomino ASCII art or rhombus points.
        region: PathBuf,
        tiling: PathBuf,
        #[arg(long)]
        svg: PathBuf,
    },
}

#[derive(Subcommand)]
enum EncodeCommand {
    /// From ASCII art: `#` occupied, `.` empty, top row first.
    Polyomino { file: PathBuf },
    /// From a points file: the dimension, then one hypercube corner per line.
    Rhombus {
        file: PathBuf,
        /// Expected dimension; must match the file when given.
        #[arg(long)]
        d: Option<usize>,
    },
}

/// Errors that should reach the user with exit code 1.
struct CliError(String);

impl<E: std::fmt::Display> From<E> for CliError {
    fn from(e: E) -> Self {
        CliError(e.to_string())
    }
}

fn read_file(path: &PathBuf) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|e| CliError(format!("{}: {e}", path.display())))
}

fn load_polycell(path: &PathBuf) -> Result<Polycell, CliError> {
    let p = read_polycell(&read_file(path)?)?;
    let report = validate(&p);
    if !report.is_valid() {
        return Err(CliError(format!(
            "{}: invalid polycell: {}",
            path.display(),
            report.violations[0]
        )));
    }
    Ok(p)
}

fn load_tiling(path: &PathBuf) -> Result<Tiling, CliError> {
    Ok(read_tiling(&read_file(path)?)?)
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            // help/version requests are successes, anything else is usage
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli.command) {
        Ok(code) => code,
        Err(CliError(message)) => {
            eprintln!("error: {message}");
            ExitCode::from(1)
        }
    }
}

fn run(command: Command) -> Result<ExitCode, CliError> {
    match command {
        Command::Validate { file } => {
            let p = read_polycell(&read_file(&file)?)?;
            let report = validate(&p);
            for v in &report.violations {
                println!("violation: {v}");
            }
            println!("valid: {}", report.is_valid());
            if !report.is_valid() {
                return Ok(ExitCode::from(1));
            }
            for note in &report.notes {
                println!("note: {note}");
            }
            let balanced = is_balanced_boundary(&p);
            let contractible = is_contractible(&p);
            println!("balanced boundary: {balanced}");
            println!("contractible: {contractible}");
            Ok(if balanced && contractible { ExitCode::SUCCESS } else { ExitCode::from(1) })
        }
        Command::Tile { file } => {
            let p = load_polycell(&file)?;
            match maximal_tiling(&p)? {
                TilingOutcome::Tiled(q) => {
                    print!("{}", write_tiling(&q));
                    Ok(ExitCode::SUCCESS)
                }
                TilingOutcome::Untilable(reason) => {
                    println!("UNTILABLE {reason}");
                    Ok(ExitCode::from(2))
                }
            }
        }
        Command::Enumerate { file, max_cells } => {
            let p = load_polycell(&file)?;
            let all = brute_force_tilings_capped(&p, max_cells)?;
            println!("{}", all.len());
            for q in &all {
                let ids: Vec<String> = q.edges().iter().map(usize::to_string).collect();
                println!("{}", ids.join(" "));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Components { file } => {
            let p = load_polycell(&file)?;
            let all = brute_force_tilings(&p)?;
            println!("{}", count_components(&p, &all)?);
            Ok(ExitCode::SUCCESS)
        }
        Command::Heights { file, tiling } => {
            let p = load_polycell(&file)?;
            let q = load_tiling(&tiling)?;
            let phi = height_function(&p, &q)?;
            for (v, h) in phi.heights() {
                println!("{v} {h}");
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Sample { file, seed, method, n } => {
            let p = load_polycell(&file)?;
            let config = SamplerConfig::default();
            let all = if method == "exact" { Some(brute_force_tilings(&p)?) } else { None };
            for i in 0..n {
                let subseed = if n == 1 { seed } else { derive_subseed(seed, i) };
                let q = match method.as_str() {
                    "exact" => sample_exact(all.as_deref().unwrap(), subseed)?,
                    "cftp" => sample_cftp(&p, subseed, config.max_doubling)?,
                    other => {
                        return Err(CliError(format!(
                            "unknown method `{other}` (expected `exact` or `cftp`)"
                        )))
                    }
                };
                print!("{}", write_tiling(&q));
            }
            Ok(ExitCode::SUCCESS)
        }
        Command::Flipgraph { file, dot } => {
            let p = load_polycell(&file)?;
            let all = brute_force_tilings(&p)?;
            let g = flip_graph(&p, &all)?;
            let mut out = String::from("digraph flipgraph {\n");
            for i in 0..g.node_count() {
                let _ = writeln!(out, "  t{i} [label=\"{i}\"];");
            }
            for &(i, j) in &g.edges {
                let _ = writeln!(out, "  t{i} -> t{j};");
            }
            out.push_str("}\n");
            fs::write(&dot, out).map_err(|e| CliError(format!("{}: {e}", dot.display())))?;
            println!("nodes {}", g.node_count());
            println!("edges {}", g.edge_count());
            Ok(ExitCode::SUCCESS)
        }
        Command::Encode(EncodeCommand::Polyomino { file }) => {
            let region = read_polyomino_ascii(&read_file(&file)?)?;
            print!("{}", write_polycell(&encode_polyomino(&region)));
            Ok(ExitCode::SUCCESS)
        }
        Command::Encode(EncodeCommand::Rhombus { file, d }) => {
            let region = read_rhombus_points(&read_file(&file)?)?;
            if let Some(d) = d {
                if d != region.dimension() {
                    return Err(CliError(format!(
                        "--d {d} does not match the file dimension {}",
                        region.dimension()
                    )));
                }
            }
            print!("{}", write_polycell(&encode_rhombus(&region)?));
            Ok(ExitCode::SUCCESS)
        }
        Command::Render { region, tiling, svg } => {
            let text = read_file(&region)?;
            let q = load_tiling(&tiling)?;
            let rendered = if looks_like_points_file(&text) {
                render_rhombus(&read_rhombus_points(&text)?, &q)?
            } else {
                render_polyomino(&read_polyomino_ascii(&text)?, &q)?
            };
            fs::write(&svg, rendered).map_err(|e| CliError(format!("{}: {e}", svg.display())))?;
            Ok(ExitCode::SUCCESS)
        }
    }
}

/// A rhombus points file starts with a bare integer dimension line.
fn looks_like_points_file(text: &str) -> bool {
    text.lines()
        .map(|l| l.split('#').next().unwrap_or("").trim())
        .find(|l| !l.is_empty())
        .is_some_and(|l| l.parse::<usize>().is_ok())
}

const PALETTE: [&str; 8] = [
    "#4e79a7", "#f28e2b", "#59a14f", "#e15759", "#b07aa1", "#edc948", "#76b7b2", "#9c755f",
];

const SCALE: f64 = 40.0;

fn svg_document(min: (f64, f64), max: (f64, f64), body: &str) -> String {
    let pad = 0.25 * SCALE;
    let (w, h) = (max.0 - min.0 + 2.0 * pad, max.1 - min.1 + 2.0 * pad);
    format!(
        "<svg xmlns=\"http://www.w3.org/2000/svg\" viewBox=\"{:.2} {:.2} {:.2} {:.2}\" \
         width=\"{:.0}\" height=\"{:.0}\">\n{body}</svg>\n",
        min.0 - pad,
        min.1 - pad,
        w,
        h,
        w,
        h
    )
}

fn render_polyomino(region: &PolyominoRegion, q: &Tiling) -> Result<String, CliError> {
    let p = encode_polyomino(region);
    let placements = decode_dominoes(region, &p, q)?;
    let max_r = region.squares().iter().map(|&(_, r)| r).max().unwrap() + 1;
    // lattice (c, r) with r growing upward maps to screen y growing downward
    let sx = |c: i64| c as f64 * SCALE;
    let sy = |r: i64| (max_r - r) as f64 * SCALE;
    let mut body = String::new();
    for (i, t) in placements.iter().enumerate() {
        let (c, r) = (t.position[0], t.position[1]);
        let (w, h) = match t.kind {
            TileKind::DominoHorizontal => (2, 1),
            TileKind::DominoVertical => (1, 2),
            TileKind::Rhombus(_) => unreachable!("polyomino decoder emits dominoes"),
        };
        let _ = writeln!(
            body,
            "  <rect x=\"{:.2}\" y=\"{:.2}\" width=\"{:.2}\" height=\"{:.2}\" \
             fill=\"{}\" stroke=\"black\" stroke-width=\"2\"/>",
            sx(c),
            sy(r + h),
            w as f64 * SCALE,
            h as f64 * SCALE,
            PALETTE[i % PALETTE.len()]
        );
    }
    let xs: Vec<f64> = region.squares().iter().flat_map(|&(c, _)| [sx(c), sx(c + 1)]).collect();
    let ys: Vec<f64> = region.squares().iter().flat_map(|&(_, r)| [sy(r), sy(r + 1)]).collect();
    let min = (xs.iter().cloned().fold(f64::MAX, f64::min), ys.iter().cloned().fold(f64::MAX, f64::min));
    let max = (xs.iter().cloned().fold(f64::MIN, f64::max), ys.iter().cloned().fold(f64::MIN, f64::max));
    Ok(svg_document(min, max, &body))
}

fn render_rhombus(region: &RhombusRegion, q: &Tiling) -> Result<String, CliError> {
    if region.dimension() != 2 {
        return Err(CliError(format!(
            "render supports 2-dimensional regions only, got d = {}",
            region.dimension()
        )));
    }
    let (p, points) = rhombus_geometry(region)?;
    // check the tiling and fix a tile index per placement for the colors
    let placements = decode_rhombus(region, &p, q)?;
    let _ = placements;
    // triangular-lattice projection of the two unit generators
    let project = |pt: &[i64]| -> (f64, f64) {
        let (x, y) = (pt[0] as f64, pt[1] as f64);
        (0.866 * (x - y) * SCALE, -0.5 * (x + y) * SCALE)
    };
    // color each cell by the tiling edge covering it
    let tiling_edges: Vec<usize> = q.edges().iter().copied().collect();
    let mut cell_tile = vec![usize::MAX; p.cells().len()];
    for (ti, &e) in tiling_edges.iter().enumerate() {
        for &c in p.cells_of_edge(e) {
            cell_tile[c] = ti;
        }
    }
    let mut body = String::new();
    for (ci, cell) in p.cells().iter().enumerate() {
        let corners: Vec<(f64, f64)> = cell
            .edges()
            .iter()
            .map(|&e| {
                let (s, _) = p.graph().edge(e).unwrap();
                project(&points[s])
            })
            .collect();
        let path: Vec<String> =
            corners.iter().map(|&(x, y)| format!("{x:.2},{y:.2}")).collect();
        let _ = writeln!(
            body,
            "  <polygon points=\"{}\" fill=\"{}\" stroke=\"none\"/>",
            path.join(" "),
            PALETTE[cell_tile[ci] % PALETTE.len()]
        );
    }
    // tile borders: every edge that is not a tiling edge
    for e in 0..p.graph().edge_count() {
        if q.contains(e) {
            continue;
        }
        let (s, t) = p.graph().edge(e).unwrap();
        let (x1, y1) = project(&points[s]);
        let (x2, y2) = project(&points[t]);
        let _ = writeln!(
            body,
            "  <line x1=\"{x1:.2}\" y1=\"{y1:.2}\" x2=\"{x2:.2}\" y2=\"{y2:.2}\" \
             stroke=\"black\" stroke-width=\"2\"/>"
        );
    }
    let projected: Vec<(f64, f64)> = points.iter().map(|pt| project(pt)).collect();
    let min = (
        projected.iter().map(|p| p.0).fold(f64::MAX, f64::min),
        projected.iter().map(|p| p.1).fold(f64::MAX, f64::min),
    );
    let max = (
        projected.iter().map(|p| p.0).fold(f64::MIN, f64::max),
        projected.iter().map(|p| p.1).fold(f64::MIN, f64::max),
    );
    Ok(svg_document(min, max, &body))
}
