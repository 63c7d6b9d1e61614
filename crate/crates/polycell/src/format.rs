//! Text formats: the polycell file, the tiling file, polyomino ASCII art and
//! rhombus point lists. Line-based, `#` comments, UTF-8, LF newlines; writes
//! are byte-deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use crate::encoders::{PolyominoRegion, RhombusRegion};
use crate::graph::{DirectedGraph, EdgeId, VertexId};
use crate::polycell::{Cell, Polycell};
use crate::tiling::Tiling;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FormatError {
    pub line: usize,
    pub message: String,
}

impl fmt::Display for FormatError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "line {}: {}", self.line, self.message)
    }
}

impl std::error::Error for FormatError {}

fn err<T>(line: usize, message: impl Into<String>) -> Result<T, FormatError> {
    Err(FormatError { line, message: message.into() })
}

/// Strip comments and keep non-empty lines with their 1-based numbers.
fn content_lines(text: &str) -> Vec<(usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
        .collect()
}

fn parse_num<T: std::str::FromStr>(line: usize, tok: &str, what: &str) -> Result<T, FormatError> {
    tok.parse().map_err(|_| FormatError {
        line,
        message: format!("expected {what}, got `{tok}`"),
    })
}

pub fn read_polycell(text: &str) -> Result<Polycell, FormatError> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    match it.next() {
        Some(&(_, "POLYCELL 1")) => {}
        Some(&(n, other)) => return err(n, format!("expected `POLYCELL 1`, got `{other}`")),
        None => return err(1, "empty file"),
    }

    let mut k: Option<usize> = None;
    let mut vertices: BTreeSet<VertexId> = BTreeSet::new();
    let mut edges: BTreeMap<EdgeId, (VertexId, VertexId)> = BTreeMap::new();
    let mut cells: BTreeMap<usize, Vec<EdgeId>> = BTreeMap::new();
    let mut boundary: Option<(usize, Vec<EdgeId>)> = None;
    let mut nu: Option<VertexId> = None;

    for &(n, line) in it {
        let mut toks = line.split_whitespace();
        let head = toks.next().unwrap();
        let rest: Vec<&str> = toks.collect();
        match head {
            "k" => {
                if rest.len() != 1 {
                    return err(n, "expected `k <int>`");
                }
                k = Some(parse_num(n, rest[0], "an integer")?);
            }
            "vertex" => {
                if rest.len() != 1 {
                    return err(n, "expected `vertex <id>`");
                }
                let v: VertexId = parse_num(n, rest[0], "a vertex id")?;
                if !vertices.insert(v) {
                    return err(n, format!("vertex {v} declared twice"));
                }
            }
            "edge" => {
                if rest.len() != 3 {
                    return err(n, "expected `edge <id> <src> <dst>`");
                }
                let e: EdgeId = parse_num(n, rest[0], "an edge id")?;
                let s: VertexId = parse_num(n, rest[1], "a vertex id")?;
                let t: VertexId = parse_num(n, rest[2], "a vertex id")?;
                if edges.insert(e, (s, t)).is_some() {
                    return err(n, format!("edge {e} declared twice"));
                }
            }
            "cell" => {
                if rest.is_empty() {
                    return err(n, "expected `cell <id> <edge-id> ...`");
                }
                let c: usize = parse_num(n, rest[0], "a cell id")?;
                let ids = rest[1..]
                    .iter()
                    .map(|t| parse_num(n, t, "an edge id"))
                    .collect::<Result<Vec<EdgeId>, _>>()?;
                if cells.insert(c, ids).is_some() {
                    return err(n, format!("cell {c} declared twice"));
                }
            }
            "boundary" => {
                if boundary.is_some() {
                    return err(n, "boundary declared twice");
                }
                let ids = rest
                    .iter()
                    .map(|t| parse_num(n, t, "an edge id"))
                    .collect::<Result<Vec<EdgeId>, _>>()?;
                boundary = Some((n, ids));
            }
            "nu" => {
                if rest.len() != 1 {
                    return err(n, "expected `nu <vertex-id>`");
                }
                nu = Some(parse_num(n, rest[0], "a vertex id")?);
            }
            other => return err(n, format!("unknown directive `{other}`")),
        }
    }

    let k = k.ok_or(FormatError { line: 0, message: "missing `k` line".into() })?;
    let (bline, bedges) = boundary.unwrap_or((0, Vec::new()));
    let nu = nu.ok_or(FormatError { line: 0, message: "missing `nu` line".into() })?;

    // dense ids, declared exactly once
    for (i, &v) in vertices.iter().enumerate() {
        if v != i {
            return err(0, format!("vertex ids are not dense: missing {i}"));
        }
    }
    for (i, &e) in edges.keys().enumerate() {
        if e != i {
            return err(0, format!("edge ids are not dense: missing {i}"));
        }
    }
    for (i, &c) in cells.keys().enumerate() {
        if c != i {
            return err(0, format!("cell ids are not dense: missing {i}"));
        }
    }
    let edge_list: Vec<(VertexId, VertexId)> = edges.values().copied().collect();
    for (e, &(s, t)) in edge_list.iter().enumerate() {
        for v in [s, t] {
            if !vertices.contains(&v) {
                return err(0, format!("edge {e} references undeclared vertex {v}"));
            }
        }
    }
    let mut cell_list = Vec::new();
    for (&c, ids) in &cells {
        if ids.len() != k {
            return err(0, format!("cell {c} has {} edges, expected k = {k}", ids.len()));
        }
        for &e in ids {
            if e >= edge_list.len() {
                return err(0, format!("cell {c} references undeclared edge {e}"));
            }
        }
        cell_list.push(Cell::new(ids.clone()));
    }
    for &e in &bedges {
        if e >= edge_list.len() {
            return err(bline, format!("boundary references undeclared edge {e}"));
        }
    }
    if !vertices.contains(&nu) {
        return err(0, format!("nu references undeclared vertex {nu}"));
    }

    let graph = DirectedGraph::new(vertices.into_iter().collect(), edge_list);
    Ok(Polycell::new(graph, cell_list, k, bedges.into_iter().collect(), nu))
}

pub fn write_polycell(p: &Polycell) -> String {
    let mut out = String::from("POLYCELL 1\n");
    out.push_str(&format!("k {}\n", p.k()));
    for &v in p.graph().vertices() {
        out.push_str(&format!("vertex {v}\n"));
    }
    for (e, &(s, t)) in p.graph().edges().iter().enumerate() {
        out.push_str(&format!("edge {e} {s} {t}\n"));
    }
    for (c, cell) in p.cells().iter().enumerate() {
        out.push_str(&format!("cell {c}"));
        for &e in cell.edges() {
            out.push_str(&format!(" {e}"));
        }
        out.push('\n');
    }
    out.push_str("boundary");
    for &e in p.boundary() {
        out.push_str(&format!(" {e}"));
    }
    out.push('\n');
    out.push_str(&format!("nu {}\n", p.nu()));
    out
}

pub fn read_tiling(text: &str) -> Result<Tiling, FormatError> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    match it.next() {
        Some(&(_, "TILING 1")) => {}
        Some(&(n, other)) => return err(n, format!("expected `TILING 1`, got `{other}`")),
        None => return err(1, "empty file"),
    }
    let mut edges: Option<BTreeSet<EdgeId>> = None;
    for &(n, line) in it {
        let mut toks = line.split_whitespace();
        match toks.next().unwrap() {
            "edges" => {
                if edges.is_some() {
                    return err(n, "edges declared twice");
                }
                edges = Some(
                    toks.map(|t| parse_num(n, t, "an edge id"))
                        .collect::<Result<BTreeSet<EdgeId>, _>>()?,
                );
            }
            other => return err(n, format!("unknown directive `{other}`")),
        }
    }
    Ok(Tiling::new(edges.unwrap_or_default()))
}

pub fn write_tiling(q: &Tiling) -> String {
    let mut out = String::from("TILING 1\nedges");
    for &e in q.edges() {
        out.push_str(&format!(" {e}"));
    }
    out.push('\n');
    out
}

/// `#` occupied, `.` empty, row-major, top row first. The bottom row is
/// row 0, so square parities match the chessboard convention.
pub fn read_polyomino_ascii(text: &str) -> Result<PolyominoRegion, FormatError> {
    let rows: Vec<(usize, &str)> = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim_end()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#') || l.contains('#'))
        .collect();
    // keep only grid rows (made of '#' and '.')
    let rows: Vec<(usize, &str)> = rows
        .into_iter()
        .filter(|(_, l)| !l.is_empty())
        .collect();
    let height = rows.len();
    let mut squares = BTreeSet::new();
    for (i, (n, line)) in rows.iter().enumerate() {
        for (c, ch) in line.chars().enumerate() {
            match ch {
                '#' => {
                    squares.insert((c as i64, (height - 1 - i) as i64));
                }
                '.' | ' ' => {}
                other => return err(*n, format!("unexpected character `{other}`")),
            }
        }
    }
    PolyominoRegion::new(squares)
        .map_err(|e| FormatError { line: 0, message: e.to_string() })
}

pub fn write_polyomino_ascii(region: &PolyominoRegion) -> String {
    let min_c = region.squares().iter().map(|&(c, _)| c).min().unwrap();
    let max_c = region.squares().iter().map(|&(c, _)| c).max().unwrap();
    let min_r = region.squares().iter().map(|&(_, r)| r).min().unwrap();
    let max_r = region.squares().iter().map(|&(_, r)| r).max().unwrap();
    let mut out = String::new();
    for r in (min_r..=max_r).rev() {
        for c in min_c..=max_c {
            out.push(if region.squares().contains(&(c, r)) { '#' } else { '.' });
        }
        out.push('\n');
    }
    out
}

/// First line: the dimension d; then one integer d-tuple per line
/// (hypercube min-corners).
pub fn read_rhombus_points(text: &str) -> Result<RhombusRegion, FormatError> {
    let lines = content_lines(text);
    let mut it = lines.iter();
    let (dn, dline) = match it.next() {
        Some(&(n, l)) => (n, l),
        None => return err(1, "empty file"),
    };
    let d: usize = parse_num(dn, dline, "the dimension")?;
    let mut points = BTreeSet::new();
    for &(n, line) in it {
        let coords = line
            .split_whitespace()
            .map(|t| parse_num(n, t, "an integer coordinate"))
            .collect::<Result<Vec<i64>, _>>()?;
        if coords.len() != d {
            return err(n, format!("expected {d} coordinates, got {}", coords.len()));
        }
        points.insert(coords);
    }
    RhombusRegion::new(d, points).map_err(|e| FormatError { line: 0, message: e.to_string() })
}

pub fn write_rhombus_points(region: &RhombusRegion) -> String {
    let mut out = format!("{}\n", region.dimension());
    for p in region.hypercubes() {
        let coords: Vec<String> = p.iter().map(i64::to_string).collect();
        out.push_str(&coords.join(" "));
        out.push('\n');
    }
    out
}
