//! Edge-list text format.
//!
//! Line 1 is `n m` (ASCII decimal, single space, `\n`); then exactly
//! `(m - n) / 2` lines `u v` with `0 <= u < v < n`, sorted
//! lexicographically. Self-loops are implicit and never listed.

use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use crate::error::{Error, Result};
use crate::graph::Graph;

/// Render a real with 12 significant digits, the CSV convention used
/// throughout the crate.
pub(crate) fn format_real(value: f64) -> String {
    format!("{value:.11e}")
}

/// Write a graph in the edge-list format.
pub fn write_edge_list<W: Write>(graph: &Graph, mut writer: W) -> io::Result<()> {
    writeln!(writer, "{} {}", graph.node_count(), graph.arc_count())?;
    for u in 0..graph.node_count() {
        for &v in graph.neighbors(u) {
            if v > u {
                writeln!(writer, "{u} {v}")?;
            }
        }
    }
    Ok(())
}

/// Write a graph to `path` in the edge-list format.
pub fn write_edge_list_file<P: AsRef<Path>>(graph: &Graph, path: P) -> Result<()> {
    let mut writer = BufWriter::new(File::create(path)?);
    write_edge_list(graph, &mut writer)?;
    writer.flush()?;
    Ok(())
}

fn format_error(line: usize, reason: impl Into<String>) -> Error {
    Error::EdgeListFormat {
        line,
        reason: reason.into(),
    }
}

fn parse_pair(line: &str, line_no: usize) -> Result<(usize, usize)> {
    let mut parts = line.split(' ');
    let a = parts.next().unwrap_or("");
    let b = parts.next().unwrap_or("");
    if a.is_empty() || b.is_empty() || parts.next().is_some() {
        return Err(format_error(
            line_no,
            "expected two space-separated integers",
        ));
    }
    let a = a
        .parse::<usize>()
        .map_err(|_| format_error(line_no, format!("invalid integer `{a}`")))?;
    let b = b
        .parse::<usize>()
        .map_err(|_| format_error(line_no, format!("invalid integer `{b}`")))?;
    Ok((a, b))
}

/// Read a graph in the edge-list format, rejecting loops, reversed or
/// duplicate pairs, out-of-range nodes and counts inconsistent with the
/// header.
pub fn read_edge_list<R: BufRead>(reader: R) -> Result<Graph> {
    let mut lines = reader.lines();
    let header = lines
        .next()
        .ok_or_else(|| format_error(1, "missing `n m` header"))??;
    let (n, m) = parse_pair(&header, 1)?;
    if n == 0 {
        return Err(format_error(1, "node count must be at least 1"));
    }
    if m < n {
        return Err(format_error(
            1,
            format!("arc count {m} below node count {n}"),
        ));
    }
    if !(m - n).is_multiple_of(2) {
        return Err(format_error(
            1,
            format!("arc count {m} has wrong parity for {n} nodes"),
        ));
    }
    let expected_edges = (m - n) / 2;
    let mut graph = Graph::new(n)?;
    for i in 0..expected_edges {
        let line_no = i + 2;
        let line = lines.next().ok_or_else(|| {
            format_error(
                line_no,
                format!("expected {expected_edges} edge lines, got {i}"),
            )
        })??;
        let (u, v) = parse_pair(&line, line_no)?;
        if u == v {
            return Err(format_error(
                line_no,
                format!("self-loop {u} {v}: loops are implicit"),
            ));
        }
        if u > v {
            return Err(format_error(
                line_no,
                format!("pair {u} {v} not in u < v order"),
            ));
        }
        if v >= n {
            return Err(format_error(
                line_no,
                format!("node {v} out of range (n = {n})"),
            ));
        }
        graph.add_edge(u, v).map_err(|e| match e {
            Error::DuplicateEdge { u, v } => {
                format_error(line_no, format!("duplicate edge {u} {v}"))
            }
            other => other,
        })?;
    }
    if let Some(extra) = lines.next() {
        let extra = extra?;
        return Err(format_error(
            expected_edges + 2,
            format!("unexpected trailing content `{extra}`"),
        ));
    }
    Ok(graph)
}

/// Read a graph from `path` in the edge-list format.
pub fn read_edge_list_file<P: AsRef<Path>>(path: P) -> Result<Graph> {
    read_edge_list(BufReader::new(File::open(path)?))
}
