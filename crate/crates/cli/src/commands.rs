use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Duration;

use bunkbed_core::checker::{
    all_graphs, check_graph, enumerate_trees_bounded, load_violation, recheck, search_candidates,
    verify_gluing_closure, Candidate, CheckOptions, CheckReport, SearchFilters, SearchItem,
    Strategy, WeightSource, ALL_GRAPHS_BOUND, DEFAULT_TREE_BOUND,
};
use bunkbed_core::graph::{parse_graph, split_at, write_graph};
use bunkbed_core::percolation::{
    event_probability_with, parse_symmetric_weight, parse_weight, write_symmetric_weight,
};
use bunkbed_core::rational::{self, Rational};
use bunkbed_core::reduction::{collapse_side, two_point_probability_symmetric};
use bunkbed_core::{
    BunkbedGraph, BunkbedVertex, ConnectivitySpec, Engine, EngineConfig, Error, Graph, Method,
    ProbabilityReport, SymmetricWeight,
};
use serde_json::json;

/// Writes to stdout; a closed pipe ends the process quietly, as with `head`.
fn emit(args: std::fmt::Arguments<'_>) {
    use std::io::Write;
    if let Err(e) = std::io::stdout().lock().write_fmt(args) {
        if e.kind() == std::io::ErrorKind::BrokenPipe {
            std::process::exit(0);
        }
        eprintln!("error: writing output: {e}");
        std::process::exit(code::PARSE as i32);
    }
}

macro_rules! out {
    ($($arg:tt)*) => { emit(format_args!($($arg)*)) };
}

macro_rules! outln {
    () => { emit(format_args!("\n")) };
    ($($arg:tt)*) => {{ emit(format_args!($($arg)*)); emit(format_args!("\n")) }};
}

use crate::failure::{code, vertex, Context, Failure, Outcome};
use crate::{CheckStrategy, Cli, Command, Global, Output, ProbMethod, WeightArgs};

pub fn run(cli: &Cli) -> Outcome<u8> {
    let g = &cli.global;
    match &cli.command {
        Command::Prob {
            graph,
            weight,
            x,
            y,
            bunkbed,
            method,
        } => prob(g, graph, weight, x, y, *bunkbed, *method),
        Command::Reduce {
            graph,
            weight,
            cut,
            collapse,
            out_graph,
            out_weight,
        } => reduce(
            g,
            graph,
            weight,
            cut,
            collapse,
            out_graph.as_deref(),
            out_weight.as_deref(),
        ),
        Command::Check {
            graph,
            weights,
            pairs,
            all_pairs: _,
            glue,
            at,
        } => check(g, graph, weights, pairs, glue.as_deref().zip(at.as_deref())),
        Command::Search {
            graphs,
            trees,
            all_graphs,
            two_connected,
            save,
            weights,
        } => search(
            g,
            graphs,
            *trees,
            *all_graphs,
            *two_connected,
            save.as_deref(),
            weights,
        ),
        Command::Trees { n, check, weights } => trees(g, *n, *check, weights),
        Command::Recheck { file } => recheck_file(g, file),
    }
}

fn engine_config(g: &Global) -> EngineConfig {
    let mut cfg = EngineConfig::default().with_cap(g.cap);
    cfg.frontier_width = g.width;
    cfg
}

fn read(path: &Path) -> Outcome<String> {
    fs::read_to_string(path)
        .map_err(Error::from)
        .context(&path.display().to_string())
}

fn read_graph(path: &Path) -> Outcome<Graph> {
    parse_graph(&read(path)?).context(&path.display().to_string())
}

fn write_file(path: &Path, text: &str) -> Outcome {
    fs::write(path, text).map_err(|e| Failure::new(code::PARSE, format!("{}: {e}", path.display())))
}

fn print_json(value: &impl serde::Serialize, pretty: bool) -> Outcome {
    let text = if pretty {
        serde_json::to_string_pretty(value)
    } else {
        serde_json::to_string(value)
    };
    outln!("{}", text.map_err(Error::from)?);
    Ok(())
}

fn ms(d: Duration) -> u64 {
    d.as_millis().try_into().unwrap_or(u64::MAX)
}

fn prob(
    g: &Global,
    graph_path: &Path,
    weight_path: &Path,
    x: &str,
    y: &str,
    bunkbed: bool,
    method: ProbMethod,
) -> Outcome<u8> {
    let cfg = engine_config(g);
    let graph = read_graph(graph_path)?;
    let weight_text = read(weight_path)?;
    let weight_name = weight_path.display().to_string();
    let report = if bunkbed {
        let w = parse_symmetric_weight(&graph, &weight_text).context(&weight_name)?;
        let a = vertex(BunkbedVertex::resolve(&graph, x), x)?;
        let b = vertex(BunkbedVertex::resolve(&graph, y), y)?;
        match method {
            ProbMethod::Auto | ProbMethod::Decomp => {
                two_point_probability_symmetric(&graph, &w, a, b, &cfg)?
            }
            ProbMethod::Brute | ProbMethod::Frontier => {
                let bb = BunkbedGraph::new(&graph)?;
                let (i, j) = (bb.vertex(a), bb.vertex(b));
                direct(bb.total(), &w.to_weight(&bb), i, j, method, &cfg)?
            }
        }
    } else {
        if method == ProbMethod::Decomp {
            return Err(Failure::precondition("--method decomp needs --bunkbed"));
        }
        let w = parse_weight(&graph, &weight_text).context(&weight_name)?;
        let i = vertex(graph.resolve_vertex(x), x)?;
        let j = vertex(graph.resolve_vertex(y), y)?;
        direct(&graph, &w, i, j, method, &cfg)?
    };
    match g.output.unwrap_or(Output::Table) {
        Output::Table => {
            outln!("{}", rational::format(&report.value));
            outln!("approx {:.12}", rational::approx(&report.value));
            outln!("method {}", report.method.name());
            outln!("atoms {}", report.atoms_evaluated);
            outln!("elapsed_ms {}", ms(report.elapsed));
        }
        Output::Json => print_json(
            &json!({
                "x": x,
                "y": y,
                "value": rational::format(&report.value),
                "approx": rational::approx(&report.value),
                "method": report.method.name(),
                "atoms_evaluated": report.atoms_evaluated,
                "elapsed_ms": ms(report.elapsed),
            }),
            true,
        )?,
    }
    Ok(code::OK)
}

/// Whole-graph solve; `auto` is brute force within the cap and the frontier
/// engine beyond it.
fn direct(
    graph: &Graph,
    w: &bunkbed_core::Weight,
    i: usize,
    j: usize,
    method: ProbMethod,
    cfg: &EngineConfig,
) -> Outcome<ProbabilityReport> {
    if i == j {
        return Ok(ProbabilityReport {
            value: rational::one(),
            method: if method == ProbMethod::Frontier {
                Method::Frontier
            } else {
                Method::BruteForce
            },
            atoms_evaluated: 0,
            elapsed: Duration::ZERO,
        });
    }
    let spec = ConnectivitySpec::connected(i, j);
    let engine = match method {
        ProbMethod::Frontier => Engine::Frontier,
        ProbMethod::Auto if graph.edge_count() > cfg.enumeration_cap => Engine::Frontier,
        _ => Engine::BruteForce,
    };
    Ok(event_probability_with(graph, w, &spec, engine, cfg)?)
}

fn reduce(
    g: &Global,
    graph_path: &Path,
    weight_path: &Path,
    cut: &str,
    collapse: &[String],
    out_graph: Option<&Path>,
    out_weight: Option<&Path>,
) -> Outcome<u8> {
    let cfg = engine_config(g);
    let graph = read_graph(graph_path)?;
    let w = parse_symmetric_weight(&graph, &read(weight_path)?)
        .context(&weight_path.display().to_string())?;
    let v = vertex(graph.resolve_vertex(cut), cut)?;
    let components = graph.components_without(v);
    let mut selector = Vec::new();
    for token in collapse {
        let u = vertex(graph.resolve_vertex(token), token)?;
        if u == v {
            return Err(Failure::precondition(format!(
                "`{token}` is the cut vertex itself"
            )));
        }
        let c = components
            .iter()
            .position(|c| c.contains(&u))
            .expect("every other vertex lies in a component");
        if !selector.contains(&c) {
            selector.push(c);
        }
    }
    selector.sort_unstable();
    let split = split_at(&graph, v, &selector)?;
    let bb = BunkbedGraph::new(&graph)?;
    let collapsed = collapse_side(&bb, &w.to_weight(&bb), &split, &cfg)?;
    let reduced = SymmetricWeight::from_weight(&collapsed.reduced_graph, &collapsed.reduced_weight)
        .ok_or_else(|| Failure::new(code::INCONSISTENT, "reduced weight is not symmetric"))?;

    let labels: BTreeMap<usize, String> = split
        .h_vertices
        .iter()
        .enumerate()
        .filter_map(|(i, &orig)| graph.label(orig).map(|l| (i, l.to_string())))
        .collect();
    let h = split.side_h.clone().with_labels(labels)?;
    let mut graph_text =
        String::from("# reduced graph; vertex i here is vertex h[i] of the original\n");
    for (i, orig) in split.h_vertices.iter().enumerate() {
        writeln!(graph_text, "# h[{i}] = {orig}").unwrap();
    }
    graph_text.push_str(&write_graph(&h));
    let weight_text = write_symmetric_weight(&h, &reduced);
    let h_cut = split.h_cut();
    let value = &collapsed.collapsed_post_value;

    if let Some(p) = out_graph {
        write_file(p, &graph_text)?;
    }
    if let Some(p) = out_weight {
        write_file(p, &weight_text)?;
    }
    match g.output.unwrap_or(Output::Table) {
        Output::Table => {
            outln!("post {h_cut} {}", rational::format(value));
            outln!("approx {:.12}", rational::approx(value));
            for (i, orig) in split.h_vertices.iter().enumerate() {
                outln!("vertex {i} <- {orig}");
            }
            if out_graph.is_none() {
                out!("\n{graph_text}");
            }
            if out_weight.is_none() {
                out!("\n{weight_text}");
            }
        }
        Output::Json => print_json(
            &json!({
                "cut": v,
                "reduced_cut": h_cut,
                "post_value": rational::format(value),
                "approx": rational::approx(value),
                "vertex_map": split.h_vertices,
                "graph": graph_text,
                "weight": weight_text,
            }),
            true,
        )?,
    }
    Ok(code::OK)
}

fn weight_source(args: &WeightArgs, seed: u64) -> Outcome<WeightSource> {
    let spec = args.weights.trim();
    let bad = |why: &str| Failure::parse(format!("--weights `{spec}`: {why}"));
    let source = if spec == "grid" {
        WeightSource::default_grid()
    } else if let Some(values) = spec.strip_prefix("grid:") {
        let values = values
            .split(',')
            .map(|v| rational::parse(v.trim()))
            .collect::<Result<Vec<_>, _>>()
            .map_err(|e| bad(&e.to_string()))?;
        WeightSource::Grid(values)
    } else if let Some(count) = spec.strip_prefix("random:") {
        let count = count.trim().parse().map_err(|_| bad("expected random:N"))?;
        WeightSource::Random {
            count,
            denominator: args.denominator,
            seed,
        }
    } else {
        return Err(bad("expected grid, grid:V1,V2,... or random:N"));
    };
    source.validate().map_err(|e| bad(&e.to_string()))?;
    Ok(source)
}

fn check_options(g: &Global, args: &WeightArgs, name: &str) -> Outcome<CheckOptions> {
    let threshold: Rational = rational::parse(&args.threshold)
        .map_err(|e| Failure::parse(format!("--threshold: {e}")))?;
    Ok(CheckOptions {
        engine: engine_config(g),
        strategy: match args.strategy {
            CheckStrategy::Auto => Strategy::Auto,
            CheckStrategy::Sweep => Strategy::GridSweep,
            CheckStrategy::Enumeration => Strategy::Enumeration,
            CheckStrategy::Decomposition => Strategy::Decomposition,
        },
        pairs: None,
        threshold,
        name: name.to_string(),
    })
}

fn pair_of(graph: &Graph, token: &str) -> Outcome<(usize, usize)> {
    let (x, y) = token
        .split_once(',')
        .ok_or_else(|| Failure::parse(format!("pair `{token}` must be X,Y")))?;
    Ok((
        vertex(graph.resolve_vertex(x.trim()), x)?,
        vertex(graph.resolve_vertex(y.trim()), y)?,
    ))
}

fn name_of(path: &Path) -> String {
    path.file_stem().map_or_else(
        || path.display().to_string(),
        |s| s.to_string_lossy().into_owned(),
    )
}

fn report_table(r: &CheckReport) -> String {
    let mut out = String::new();
    let min = r
        .min_delta
        .as_ref()
        .map_or("-".to_string(), rational::format);
    writeln!(
        out,
        "{}: {} vertices, {} edges; {:?}; {} weights x {} pairs; min delta {}; {} violations; {} errors; {} ms",
        r.graph.name,
        r.graph.vertices,
        r.graph.edges.len(),
        r.method,
        r.weights_checked,
        r.pairs_checked,
        min,
        r.violations.len(),
        r.errors.len(),
        r.elapsed_ms
    )
    .unwrap();
    for d in &r.violations {
        writeln!(
            out,
            "  violation x={} y={} same={} cross={} delta={}",
            d.x,
            d.y,
            rational::format(&d.same_layer),
            rational::format(&d.cross_layer),
            rational::format(&d.delta)
        )
        .unwrap();
    }
    for e in &r.errors {
        writeln!(out, "  error x={} y={}: {}", e.x, e.y, e.message).unwrap();
    }
    out
}

/// 1 on a violation, 3 when some pair could not be computed, else 0.
fn report_status(r: &CheckReport) -> u8 {
    if r.has_violations() {
        code::VIOLATION
    } else if !r.errors.is_empty() {
        code::CAPACITY
    } else {
        code::OK
    }
}

fn emit_report(r: &CheckReport, output: Output, pretty: bool) -> Outcome {
    match output {
        Output::Json => print_json(r, pretty),
        Output::Table => {
            out!("{}", report_table(r));
            Ok(())
        }
    }
}

fn check(
    g: &Global,
    graph_path: &Path,
    args: &WeightArgs,
    pairs: &[String],
    glue: Option<(&Path, &str)>,
) -> Outcome<u8> {
    let graph = read_graph(graph_path)?;
    let source = weight_source(args, g.seed)?;
    let mut opts = check_options(g, args, &name_of(graph_path))?;
    let report = match glue {
        None => {
            if !pairs.is_empty() {
                opts.pairs = Some(
                    pairs
                        .iter()
                        .map(|p| pair_of(&graph, p))
                        .collect::<Outcome<_>>()?,
                );
            }
            check_graph(&graph, &source, &opts)?
        }
        Some((other_path, at)) => {
            if !pairs.is_empty() {
                return Err(Failure::precondition(
                    "--pair cannot be combined with --glue",
                ));
            }
            let other = read_graph(other_path)?;
            let (a, b) = at
                .split_once(',')
                .ok_or_else(|| Failure::parse(format!("--at `{at}` must be A,B")))?;
            let a = vertex(graph.resolve_vertex(a.trim()), a)?;
            let b = vertex(other.resolve_vertex(b.trim()), b)?;
            opts.name = format!("{}+{}", opts.name, name_of(other_path));
            verify_gluing_closure(&graph, a, &other, b, &source, &opts)?
        }
    };
    emit_report(&report, g.output.unwrap_or(Output::Json), true)?;
    Ok(report_status(&report))
}

fn search(
    g: &Global,
    files: &[PathBuf],
    trees: Option<usize>,
    graphs_on: Option<usize>,
    two_connected: bool,
    save: Option<&Path>,
    args: &WeightArgs,
) -> Outcome<u8> {
    let source = weight_source(args, g.seed)?;
    let opts = check_options(g, args, "graph")?;
    let mut candidates: Vec<Result<Candidate, Error>> = files
        .iter()
        .map(|p| {
            let text = fs::read_to_string(p).map_err(Error::from)?;
            Ok(Candidate::new(name_of(p), parse_graph(&text)?))
        })
        .collect();
    if let Some(n) = trees {
        for (i, t) in enumerate_trees_bounded(n, DEFAULT_TREE_BOUND)?
            .into_iter()
            .enumerate()
        {
            candidates.push(Ok(Candidate::new(format!("tree{n}-{i}"), t)));
        }
    }
    if let Some(n) = graphs_on {
        if n > ALL_GRAPHS_BOUND {
            return Err(Error::BoundExceeded {
                what: "graph size",
                value: n,
                bound: ALL_GRAPHS_BOUND,
            }
            .into());
        }
        for (i, h) in all_graphs(n)?.into_iter().enumerate() {
            candidates.push(Ok(Candidate::new(format!("graph{n}-{i}"), h)));
        }
    }
    if candidates.is_empty() {
        return Err(Failure::precondition(
            "nothing to search: give graph files, --trees or --all-graphs",
        ));
    }
    let names: Vec<String> = files.iter().map(|p| p.display().to_string()).collect();
    let output = g.output.unwrap_or(Output::Json);
    let mut violation = false;
    let mut first_failure: Option<u8> = None;
    let filters = SearchFilters {
        two_connected_only: two_connected,
    };
    for (i, item) in search_candidates(candidates, &source, filters, &opts, save).enumerate() {
        match item {
            SearchItem::Checked { report, persisted } => {
                violation |= report.has_violations();
                if !report.errors.is_empty() && first_failure.is_none() {
                    first_failure = Some(code::CAPACITY);
                }
                match output {
                    Output::Json => {
                        let mut value = serde_json::to_value(&report).map_err(Error::from)?;
                        value["persisted"] = json!(persisted);
                        print_json(&value, false)?;
                    }
                    Output::Table => {
                        out!("{}", report_table(&report));
                        for p in persisted {
                            outln!("  saved {}", p.display());
                        }
                    }
                }
            }
            SearchItem::Skipped { name, reason } => match output {
                Output::Json => print_json(&json!({ "skipped": name, "reason": reason }), false)?,
                Output::Table => outln!("{name}: skipped ({reason})"),
            },
            SearchItem::Failed { name, error } => {
                // unreadable files carry no name of their own
                let name = if name == "<unreadable>" {
                    names.get(i).cloned().unwrap_or(name)
                } else {
                    name
                };
                let status = crate::failure::code_of(&error);
                first_failure.get_or_insert(status);
                match output {
                    Output::Json => print_json(
                        &json!({ "failed": name, "error": error.to_string(), "code": status }),
                        false,
                    )?,
                    Output::Table => outln!("{name}: failed ({error})"),
                }
            }
        }
    }
    Ok(if violation {
        code::VIOLATION
    } else {
        first_failure.unwrap_or(code::OK)
    })
}

fn trees(g: &Global, n: usize, check: bool, args: &WeightArgs) -> Outcome<u8> {
    if n == 0 {
        return Err(Failure::precondition("a tree has at least one vertex"));
    }
    let list = enumerate_trees_bounded(n, DEFAULT_TREE_BOUND)?;
    let output = g.output.unwrap_or(Output::Table);
    if !check {
        match output {
            Output::Table => {
                for (i, t) in list.iter().enumerate() {
                    if i > 0 {
                        outln!();
                    }
                    outln!("# tree {i} of {}", list.len());
                    out!("{}", write_graph(t));
                }
            }
            Output::Json => {
                let trees: Vec<_> = list
                    .iter()
                    .map(|t| json!({ "vertices": t.vertex_count(), "edges": t.edges() }))
                    .collect();
                print_json(&trees, true)?;
            }
        }
        return Ok(code::OK);
    }
    let source = weight_source(args, g.seed)?;
    let (mut violation, mut incomplete) = (false, false);
    for (i, t) in list.iter().enumerate() {
        let opts = check_options(g, args, &format!("tree{n}-{i}"))?;
        let report = check_graph(t, &source, &opts)?;
        emit_report(&report, output, false)?;
        violation |= report.has_violations();
        incomplete |= !report.errors.is_empty();
    }
    Ok(if violation {
        code::VIOLATION
    } else if incomplete {
        code::CAPACITY
    } else {
        code::OK
    })
}

fn recheck_file(g: &Global, file: &Path) -> Outcome<u8> {
    let record = load_violation(file).context(&file.display().to_string())?;
    let d = recheck(&record, &engine_config(g))?;
    let agrees = d.same_layer == record.same_layer && d.cross_layer == record.cross_layer;
    match g.output.unwrap_or(Output::Table) {
        Output::Table => {
            outln!("{} x={} y={}", record.graph_name, d.x, d.y);
            outln!("same {}", rational::format(&d.same_layer));
            outln!("cross {}", rational::format(&d.cross_layer));
            outln!("delta {}", rational::format(&d.delta));
            outln!(
                "{}",
                if agrees {
                    "matches the saved values"
                } else {
                    "DIFFERS from the saved values"
                }
            );
        }
        Output::Json => print_json(
            &json!({
                "graph_name": record.graph_name,
                "x": d.x,
                "y": d.y,
                "same_layer": rational::format(&d.same_layer),
                "cross_layer": rational::format(&d.cross_layer),
                "delta": rational::format(&d.delta),
                "matches": agrees,
            }),
            true,
        )?,
    }
    if agrees {
        Ok(code::OK)
    } else {
        Err(Failure::new(
            code::INCONSISTENT,
            "recomputed values differ from the saved record",
        ))
    }
}
