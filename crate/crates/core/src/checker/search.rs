//! Batch checks over many candidate graphs, with violations saved as they
//! are found.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{Deserialize, Serialize};

use super::{bunkbed_delta, check_graph, BunkbedDelta, CheckOptions, CheckReport, WeightSource};
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::graph::{parse_graph, two_connected, write_graph, Graph};
use crate::percolation::{parse_symmetric_weight, write_symmetric_weight};
use crate::rational::{self, Rational};

#[derive(Clone, Debug)]
pub struct Candidate {
    pub name: String,
    pub graph: Graph,
}

impl Candidate {
    pub fn new(name: impl Into<String>, graph: Graph) -> Self {
        Candidate {
            name: name.into(),
            graph,
        }
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct SearchFilters {
    pub two_connected_only: bool,
}

#[derive(Debug)]
pub enum SearchItem {
    /// Checked; `persisted` lists the files written for its violations.
    Checked {
        report: CheckReport,
        persisted: Vec<PathBuf>,
    },
    Skipped {
        name: String,
        reason: String,
    },
    Failed {
        name: String,
        error: Error,
    },
}

/// A violation in a self-contained form: the graph and weight in their text
/// formats, so it can be reloaded and recomputed later.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ViolationRecord {
    pub graph_name: String,
    pub graph: String,
    pub weight: String,
    pub x: usize,
    pub y: usize,
    #[serde(with = "rational::serde_str")]
    pub same_layer: Rational,
    #[serde(with = "rational::serde_str")]
    pub cross_layer: Rational,
    #[serde(with = "rational::serde_str")]
    pub delta: Rational,
}

impl ViolationRecord {
    pub fn new(graph_name: &str, d: &BunkbedDelta) -> Self {
        ViolationRecord {
            graph_name: graph_name.to_string(),
            graph: write_graph(&d.base),
            weight: write_symmetric_weight(&d.base, &d.weight),
            x: d.x,
            y: d.y,
            same_layer: d.same_layer.clone(),
            cross_layer: d.cross_layer.clone(),
            delta: d.delta.clone(),
        }
    }
}

fn file_stem(name: &str) -> String {
    name.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '_' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

/// Writes `d` as JSON into `dir`, creating it if needed. Existing files are
/// never overwritten; a numeric suffix keeps names unique.
pub fn persist_violation(dir: &Path, graph_name: &str, d: &BunkbedDelta) -> Result<PathBuf> {
    fs::create_dir_all(dir)?;
    let record = ViolationRecord::new(graph_name, d);
    let text = serde_json::to_string_pretty(&record)?;
    let stem = format!("{}-{}-{}", file_stem(graph_name), d.x, d.y);
    for i in 0.. {
        let path = dir.join(format!("{stem}-{i}.json"));
        match fs::OpenOptions::new()
            .write(true)
            .create_new(true)
            .open(&path)
        {
            Ok(mut file) => {
                use std::io::Write;
                file.write_all(text.as_bytes())?;
                return Ok(path);
            }
            Err(e) if e.kind() == std::io::ErrorKind::AlreadyExists => continue,
            Err(e) => return Err(e.into()),
        }
    }
    unreachable!("an unused file name exists")
}

pub fn load_violation(path: &Path) -> Result<ViolationRecord> {
    let text = fs::read_to_string(path)?;
    Ok(serde_json::from_str(&text)?)
}

/// Recomputes a saved violation from its graph and weight alone.
pub fn recheck(record: &ViolationRecord, cfg: &EngineConfig) -> Result<BunkbedDelta> {
    let g = parse_graph(&record.graph)?;
    let w = parse_symmetric_weight(&g, &record.weight)?;
    bunkbed_delta(&g, &w, record.x, record.y, cfg)
}

/// Checks each candidate in turn. Violations are written to `persist_dir`
/// before the candidate's item is yielded, so an interrupted search keeps
/// everything it found.
pub fn search_candidates<'a, I>(
    candidates: I,
    source: &'a WeightSource,
    filters: SearchFilters,
    opts: &'a CheckOptions,
    persist_dir: Option<&'a Path>,
) -> impl Iterator<Item = SearchItem> + 'a
where
    I: IntoIterator<Item = Result<Candidate>>,
    I::IntoIter: 'a,
{
    candidates.into_iter().map(move |candidate| {
        let candidate = match candidate {
            Ok(c) => c,
            Err(error) => {
                return SearchItem::Failed {
                    name: "<unreadable>".into(),
                    error,
                }
            }
        };
        if filters.two_connected_only && !two_connected(&candidate.graph) {
            return SearchItem::Skipped {
                name: candidate.name,
                reason: "not 2-connected".into(),
            };
        }
        let opts = CheckOptions {
            name: candidate.name.clone(),
            ..opts.clone()
        };
        let report = match check_graph(&candidate.graph, source, &opts) {
            Ok(r) => r,
            Err(error) => {
                return SearchItem::Failed {
                    name: candidate.name,
                    error,
                }
            }
        };
        let mut persisted = Vec::new();
        if let Some(dir) = persist_dir {
            for d in &report.violations {
                match persist_violation(dir, &candidate.name, d) {
                    Ok(path) => persisted.push(path),
                    Err(error) => {
                        return SearchItem::Failed {
                            name: candidate.name,
                            error: Error::Io(std::io::Error::other(format!(
                                "{} violation(s) found but not saved: {error}",
                                report.violations.len()
                            ))),
                        }
                    }
                }
            }
        }
        SearchItem::Checked { report, persisted }
    })
}
