//! Weight files:
//!
//! ```text
//! default 1/2
//! w 0 1 1/3
//! post 2 3/4
//! ```
//!
//! `w u v` is keyed by the endpoints of an edge, `post u` sets the post of a
//! base vertex (bunkbed weights only) and `default` covers everything not
//! listed. Values are exact `num/den` rationals.

use std::fmt::Write as _;

use super::{SymmetricWeight, Weight};
use crate::error::{Error, Result};
use crate::graph::Graph;
use crate::rational::{self, Rational};

struct Parsed {
    edges: Vec<Option<Rational>>,
    posts: Vec<Option<Rational>>,
    default: Option<Rational>,
}

fn parse_lines(g: &Graph, text: &str, allow_posts: bool) -> Result<Parsed> {
    let mut parsed = Parsed {
        edges: vec![None; g.edge_count()],
        posts: vec![None; g.vertex_count()],
        default: None,
    };
    for (i, raw) in text.lines().enumerate() {
        let line_no = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let words: Vec<&str> = line.split_whitespace().collect();
        let value = |word: &str| -> Result<Rational> {
            let v = rational::parse(word).map_err(|e| Error::parse(line_no, e.to_string()))?;
            if !rational::is_probability(&v) {
                return Err(Error::parse(line_no, format!("{word} is outside [0, 1]")));
            }
            Ok(v)
        };
        let vertex = |word: &str| {
            g.resolve_vertex(word)
                .map_err(|e| Error::parse(line_no, e.to_string()))
        };
        match words.as_slice() {
            ["default", v] => {
                if parsed.default.replace(value(v)?).is_some() {
                    return Err(Error::parse(line_no, "repeated default"));
                }
            }
            ["w", u, v, p] => {
                let (u, v) = (vertex(u)?, vertex(v)?);
                let e = g
                    .find_edge(u, v)
                    .ok_or_else(|| Error::parse(line_no, format!("no edge {u} {v}")))?;
                if parsed.edges[e].replace(value(p)?).is_some() {
                    return Err(Error::parse(line_no, format!("edge {u} {v} given twice")));
                }
            }
            ["post", u, p] if allow_posts => {
                let u = vertex(u)?;
                if parsed.posts[u].replace(value(p)?).is_some() {
                    return Err(Error::parse(line_no, format!("post {u} given twice")));
                }
            }
            ["post", ..] => {
                return Err(Error::parse(line_no, "`post` lines need a bunkbed weight"));
            }
            _ => return Err(Error::parse(line_no, format!("cannot parse `{line}`"))),
        }
    }
    Ok(parsed)
}

fn fill(
    values: Vec<Option<Rational>>,
    default: &Option<Rational>,
    what: &str,
) -> Result<Vec<Rational>> {
    values
        .into_iter()
        .enumerate()
        .map(|(i, v)| {
            v.or_else(|| default.clone())
                .ok_or_else(|| Error::parse(0, format!("no value for {what} {i} and no default")))
        })
        .collect()
}

/// Plain weight on the edges of `g`.
pub fn parse_weight(g: &Graph, text: &str) -> Result<Weight> {
    let parsed = parse_lines(g, text, false)?;
    let values = fill(parsed.edges, &parsed.default, "edge")?;
    Weight::new(g, values)
}

/// Symmetric weight on `BB(base)`: `w` lines set both copies.
pub fn parse_symmetric_weight(base: &Graph, text: &str) -> Result<SymmetricWeight> {
    let parsed = parse_lines(base, text, true)?;
    let edges = fill(parsed.edges, &parsed.default, "edge")?;
    let posts = fill(parsed.posts, &parsed.default, "post")?;
    SymmetricWeight::new(base, edges, posts)
}

pub fn write_weight(g: &Graph, w: &Weight) -> String {
    let mut out = String::new();
    for (e, &(u, v)) in g.edges().iter().enumerate() {
        writeln!(out, "w {u} {v} {}", rational::format(w.value(e))).unwrap();
    }
    out
}

pub fn write_symmetric_weight(base: &Graph, w: &SymmetricWeight) -> String {
    let mut out = String::new();
    for (e, &(u, v)) in base.edges().iter().enumerate() {
        writeln!(out, "w {u} {v} {}", rational::format(&w.base_values()[e])).unwrap();
    }
    for (x, p) in w.post_values().iter().enumerate() {
        writeln!(out, "post {x} {}", rational::format(p)).unwrap();
    }
    out
}
