//! Pajek `.net` and plain edge-list readers and writers.

use std::fmt::Write as _;
use std::fs;
use std::path::Path;

use super::DirectedGraph;
use crate::error::{Error, Result};

#[derive(Clone, Copy, PartialEq, Eq)]
enum Section {
    Preamble,
    Vertices,
    Arcs,
    Edges,
    ArcsList,
    EdgesList,
    Ignored,
}

/// Parses a Pajek network.
///
/// Section keywords are case-insensitive. `*Edges` lines are expanded into two
/// arcs, endpoints are 1-based, trailing weights are ignored, `%` starts a
/// comment line. Self-loops and duplicate arcs are dropped.
pub fn parse_pajek(text: &str) -> Result<DirectedGraph> {
    let mut n: Option<usize> = None;
    let mut section = Section::Preamble;
    let mut arcs = Vec::new();

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if line.is_empty() || line.starts_with('%') {
            continue;
        }
        if let Some(keyword) = line.strip_prefix('*') {
            let mut parts = keyword.split_whitespace();
            let word = parts.next().unwrap_or("").to_ascii_lowercase();
            section = match word.as_str() {
                "vertices" => {
                    let count = parts
                        .next()
                        .ok_or_else(|| Error::parse(line_no, "*Vertices without a count"))?;
                    let count: usize = count
                        .parse()
                        .map_err(|_| Error::parse(line_no, format!("bad vertex count {count:?}")))?;
                    n = Some(count);
                    Section::Vertices
                }
                "network" => Section::Preamble,
                _ if n.is_none() => {
                    return Err(Error::parse(line_no, "section before *Vertices header"));
                }
                "arcs" => Section::Arcs,
                "edges" => Section::Edges,
                "arcslist" => Section::ArcsList,
                "edgeslist" => Section::EdgesList,
                _ => Section::Ignored,
            };
            continue;
        }
        let count = match (section, n) {
            (Section::Preamble, None) => {
                return Err(Error::parse(line_no, "missing *Vertices header"));
            }
            (Section::Vertices | Section::Ignored | Section::Preamble, _) => continue,
            (_, Some(count)) => count,
            (_, None) => unreachable!("arc sections require a vertex count"),
        };

        let mut ids = Vec::new();
        for tok in line.split_whitespace() {
            match tok.parse::<usize>() {
                Ok(v) if (1..=count).contains(&v) => ids.push(v - 1),
                Ok(v) => {
                    return Err(Error::parse(
                        line_no,
                        format!("endpoint {v} outside 1..={count}"),
                    ));
                }
                // weights or labels after the endpoints
                Err(_) if ids.len() >= 2 => break,
                Err(_) => {
                    return Err(Error::parse(line_no, format!("malformed line {line:?}")));
                }
            }
            if matches!(section, Section::Arcs | Section::Edges) && ids.len() == 2 {
                break;
            }
        }
        match section {
            Section::Arcs | Section::Edges if ids.len() < 2 => {
                return Err(Error::parse(line_no, format!("malformed line {line:?}")));
            }
            Section::ArcsList | Section::EdgesList if ids.is_empty() => {
                return Err(Error::parse(line_no, format!("malformed line {line:?}")));
            }
            _ => {}
        }
        let source = ids[0];
        let undirected = matches!(section, Section::Edges | Section::EdgesList);
        for &target in &ids[1..] {
            arcs.push((source, target));
            if undirected {
                arcs.push((target, source));
            }
        }
    }

    let n = n.ok_or_else(|| Error::parse(text.lines().count().max(1), "missing *Vertices header"))?;
    DirectedGraph::new(n, arcs.into_iter().filter(|(s, t)| s != t))
}

/// Writes `*Vertices n` and one 1-based line per arc under `*Arcs`.
pub fn write_pajek(g: &DirectedGraph) -> String {
    let mut out = String::with_capacity(16 + 12 * g.edge_count());
    let _ = writeln!(out, "*Vertices {}", g.node_count());
    out.push_str("*Arcs\n");
    for &(s, t) in g.edges() {
        let _ = writeln!(out, "{} {}", s.0 + 1, t.0 + 1);
    }
    out
}

/// Parses `src dst` lines (0-based) with `#` comments.
///
/// A `# nodes N` comment fixes the node count; otherwise it is one more than
/// the largest endpoint.
pub fn parse_edge_list(text: &str) -> Result<DirectedGraph> {
    let mut declared: Option<usize> = None;
    let mut arcs = Vec::new();
    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        let line = raw.trim();
        if let Some(comment) = line.strip_prefix('#') {
            let mut parts = comment.split_whitespace();
            if parts.next() == Some("nodes") {
                let v = parts.next().and_then(|v| v.parse().ok()).ok_or_else(|| {
                    Error::parse(line_no, format!("bad node-count directive {line:?}"))
                })?;
                declared = Some(v);
            }
            continue;
        }
        if line.is_empty() {
            continue;
        }
        let mut parts = line.split_whitespace();
        let mut next = || -> Result<usize> {
            parts
                .next()
                .and_then(|t| t.parse().ok())
                .ok_or_else(|| Error::parse(line_no, format!("malformed line {line:?}")))
        };
        let s = next()?;
        let t = next()?;
        if let Some(count) = declared {
            if s >= count || t >= count {
                return Err(Error::parse(
                    line_no,
                    format!("endpoint outside 0..{count}"),
                ));
            }
        }
        arcs.push((s, t));
    }
    let n = declared.unwrap_or_else(|| {
        arcs.iter()
            .map(|&(s, t)| s.max(t) + 1)
            .max()
            .unwrap_or(0)
    });
    if arcs.iter().any(|(s, t)| s == t) {
        DirectedGraph::with_self_loops(n, arcs)
    } else {
        DirectedGraph::new(n, arcs)
    }
}

pub fn write_edge_list(g: &DirectedGraph) -> String {
    let mut out = String::with_capacity(16 + 10 * g.edge_count());
    let _ = writeln!(out, "# nodes {}", g.node_count());
    for &(s, t) in g.edges() {
        let _ = writeln!(out, "{} {}", s.0, t.0);
    }
    out
}

/// Reads `.net` files as Pajek and anything else as an edge list.
pub fn read_graph_file(path: &Path) -> Result<DirectedGraph> {
    let text = fs::read_to_string(path)?;
    let is_pajek = path
        .extension()
        .and_then(|e| e.to_str())
        .is_some_and(|e| e.eq_ignore_ascii_case("net"));
    if is_pajek {
        parse_pajek(&text)
    } else {
        parse_edge_list(&text)
    }
}
