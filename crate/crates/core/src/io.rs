//! Edge-list text format.
//!
//! First line `n q`, then one `u v` pair per line, 0-based. Loops are
//! written `u u`. Blank lines and `#` comments are ignored.

use std::fmt::Write as _;
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::RegularGraph;

pub fn parse_edge_list(text: &str) -> Result<RegularGraph> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty());

    let (lineno, header) = lines
        .next()
        .ok_or_else(|| Error::Parse("empty input, expected header \"n q\"".into()))?;
    let [n, q] = parse_pair(header, lineno)?;

    let mut edges = Vec::new();
    for (lineno, line) in lines {
        let [u, v] = parse_pair(line, lineno)?;
        edges.push((u as usize, v as usize));
    }
    RegularGraph::new(n as usize, edges, q)
}

fn parse_pair(line: &str, lineno: usize) -> Result<[u64; 2]> {
    let fields: Vec<&str> = line.split_whitespace().collect();
    if fields.len() != 2 {
        return Err(Error::Parse(format!(
            "line {lineno}: expected two integers, got {line:?}"
        )));
    }
    let mut out = [0; 2];
    for (slot, f) in out.iter_mut().zip(&fields) {
        *slot = f.parse().map_err(|_| {
            Error::Parse(format!(
                "line {lineno}: {f:?} is not a non-negative integer"
            ))
        })?;
    }
    Ok(out)
}

pub fn write_edge_list(g: &RegularGraph) -> String {
    let mut s = format!("{} {}\n", g.n(), g.q());
    for &(u, v) in g.edges() {
        let _ = writeln!(s, "{u} {v}");
    }
    s
}

pub fn read_edge_list(path: impl AsRef<Path>) -> Result<RegularGraph> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_edge_list(&text)
}
