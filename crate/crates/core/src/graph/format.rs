//! Text graph format:
//!
//! ```text
//! # comment
//! vertices 3
//! edge 0 1
//! edge 1 2
//! label 1 hub
//! ```
//!
//! `write_graph` emits the canonical layout (header, edges in index order,
//! labels in vertex order); `parse_graph` of that output gives back an equal
//! graph and writing it again reproduces the text byte for byte.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use super::Graph;
use crate::error::{Error, Result};

pub fn parse_graph(text: &str) -> Result<Graph> {
    let mut vertex_count: Option<usize> = None;
    let mut edges = Vec::new();
    let mut labels = BTreeMap::new();

    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let mut words = line.split_whitespace();
        let keyword = words.next().unwrap_or_default();
        let mut index = |what: &str| -> Result<usize> {
            let word = words
                .next()
                .ok_or_else(|| Error::parse(line_no, format!("missing {what}")))?;
            word.parse()
                .map_err(|_| Error::parse(line_no, format!("bad {what} `{word}`")))
        };
        match (keyword, vertex_count) {
            ("vertices", None) => vertex_count = Some(index("vertex count")?),
            ("vertices", Some(_)) => return Err(Error::parse(line_no, "repeated `vertices` line")),
            (_, None) => {
                return Err(Error::parse(line_no, "first line must be `vertices N`"));
            }
            ("edge", Some(n)) => {
                let u = index("endpoint")?;
                let v = index("endpoint")?;
                if u >= n || v >= n {
                    return Err(Error::parse(line_no, format!("edge {u} {v} out of range")));
                }
                edges.push((u, v));
            }
            ("label", Some(n)) => {
                let u = index("vertex")?;
                if u >= n {
                    return Err(Error::parse(
                        line_no,
                        format!("label for vertex {u} out of range"),
                    ));
                }
                let name = line
                    .splitn(3, char::is_whitespace)
                    .nth(2)
                    .map(str::trim)
                    .unwrap_or("");
                if name.is_empty() {
                    return Err(Error::parse(line_no, "missing label name"));
                }
                labels.insert(u, name.to_string());
            }
            (other, Some(_)) => {
                return Err(Error::parse(
                    line_no,
                    format!("unknown directive `{other}`"),
                ));
            }
        }
        if keyword != "label" && words.next().is_some() {
            return Err(Error::parse(line_no, "trailing tokens"));
        }
    }

    let n = vertex_count.ok_or_else(|| Error::parse(1, "missing `vertices N` line"))?;
    let graph = Graph::new(n, edges).map_err(|e| Error::parse(0, e.to_string()))?;
    graph.with_labels(labels)
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = String::new();
    writeln!(out, "vertices {}", g.vertex_count()).unwrap();
    for &(u, v) in g.edges() {
        writeln!(out, "edge {u} {v}").unwrap();
    }
    for (v, name) in g.labels() {
        writeln!(out, "label {v} {name}").unwrap();
    }
    out
}
