//! Command-line surface over the `twomode` library.

use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use twomode::bipartite::{BipartiteGraph, Part};
use twomode::enumerate::{
    eigenvector_conjecture_scan, verify_bipartite_theorem, verify_star_theorem, EnumerationMode,
    EnumerationSpec, VerificationReport,
};
use twomode::extremal::{closed_form_centralization, lower_bound};
use twomode::rational::{decimal_string, ExactRational};
use twomode::report::{analyze, render, ReportFormat};
use twomode::transforms::{
    apply_flatten, audit_flatten, build_flatten_context, PreconditionedCheck,
};
use twomode::two_mode::{extremal_edge_list, TwoModeEdgeList};

#[derive(Parser)]
#[command(name = "twomode", version, about = "Closeness centralization for two-mode networks")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum PartArg {
    Left,
    Right,
}

impl From<PartArg> for Part {
    fn from(arg: PartArg) -> Part {
        match arg {
            PartArg::Left => Part::Left,
            PartArg::Right => Part::Right,
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum FormatArg {
    Table,
    Csv,
    Json,
}

impl From<FormatArg> for ReportFormat {
    fn from(arg: FormatArg) -> ReportFormat {
        match arg {
            FormatArg::Table => ReportFormat::Table,
            FormatArg::Csv => ReportFormat::Csv,
            FormatArg::Json => ReportFormat::Json,
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Closeness and centralization for one part of a two-mode edge list
    Analyze {
        file: PathBuf,
        #[arg(long, value_enum)]
        part: PartArg,
        #[arg(long, value_enum, default_value = "table")]
        format: FormatArg,
        #[arg(long, default_value_t = 5)]
        precision: usize,
    },
    /// Build the extremal tree for part sizes N0 N1
    Extremal {
        n0: usize,
        n1: usize,
        /// Write the edge list to a file instead of stdout
        #[arg(long)]
        emit: Option<PathBuf>,
    },
    /// Closed-form centralization of the extremal tree's root
    ClosedForm { n0: usize, n1: usize },
    /// Lower bound (N1-1)/(2(2*N1-1)) on the extremal centralization
    Bound { n1: usize },
    /// Exhaustive extremality checks on small instances
    Verify {
        #[command(subcommand)]
        target: VerifyTarget,
    },
    /// Informational eigenvector-centrality analog of the tree scan
    ScanEigenvector {
        n0: usize,
        n1: usize,
        #[arg(long, default_value_t = 1e-10)]
        tol: f64,
    },
    /// Apply one flatten rewrite at a root and dump the audited result
    Transform {
        file: PathBuf,
        #[arg(long)]
        root: String,
    },
}

#[derive(Subcommand)]
enum VerifyTarget {
    /// All labeled part-alternating trees on parts N0 N1
    Trees {
        n0: usize,
        n1: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// All connected labeled bipartite graphs on parts N0 N1
    Graphs {
        n0: usize,
        n1: usize,
        #[arg(long, default_value_t = 1)]
        jobs: usize,
    },
    /// All connected labeled graphs on N nodes against the star
    Star { n: usize },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(code) => code,
        Err(error) => {
            eprintln!("error: {error:#}");
            ExitCode::from(1)
        }
    }
}

fn print_verification(report: &VerificationReport) -> ExitCode {
    print!("{}", report.render());
    eprintln!("elapsed: {:?}", report.elapsed);
    if report.matches {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn run(command: Command) -> anyhow::Result<ExitCode> {
    match command {
        Command::Analyze { file, part, format, precision } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let graph = TwoModeEdgeList::parse(&text)?.to_bipartite()?;
            let report = analyze(&graph, part.into())?;
            print!("{}", render(&report, format.into(), precision));
            Ok(ExitCode::SUCCESS)
        }
        Command::Extremal { n0, n1, emit } => {
            let list = extremal_edge_list(n0, n1)?;
            let value = closed_form_centralization(n0, n1)?;
            match emit {
                Some(path) => {
                    std::fs::write(&path, list.render())
                        .with_context(|| format!("writing {}", path.display()))?;
                    eprintln!("wrote {} edges to {}", list.rows.len(), path.display());
                }
                None => print!("{}", list.render()),
            }
            eprintln!(
                "root: 0  nodes: {}  edges: {}  C1(root) = {} ({})",
                n0 + n1,
                list.rows.len(),
                value,
                decimal_string(&value, 6),
            );
            Ok(ExitCode::SUCCESS)
        }
        Command::ClosedForm { n0, n1 } => {
            let value = closed_form_centralization(n0, n1)?;
            println!("closed-form: {}", value);
            println!("closed-form-decimal: {}", decimal_string(&value, 10));
            Ok(ExitCode::SUCCESS)
        }
        Command::Bound { n1 } => {
            let value = lower_bound(n1)?;
            println!("bound: {}", value);
            println!("bound-decimal: {}", decimal_string(&value, 10));
            Ok(ExitCode::SUCCESS)
        }
        Command::Verify { target } => {
            let report = match target {
                VerifyTarget::Trees { n0, n1, jobs } => verify_bipartite_theorem(
                    &EnumerationSpec::new(n0, n1, EnumerationMode::Trees, jobs),
                )?,
                VerifyTarget::Graphs { n0, n1, jobs } => verify_bipartite_theorem(
                    &EnumerationSpec::new(n0, n1, EnumerationMode::ConnectedGraphs, jobs),
                )?,
                VerifyTarget::Star { n } => verify_star_theorem(n)?,
            };
            Ok(print_verification(&report))
        }
        Command::ScanEigenvector { n0, n1, tol } => {
            let spec = EnumerationSpec::new(n0, n1, EnumerationMode::Trees, 1);
            let report = eigenvector_conjecture_scan(&spec, tol)?;
            print!("{}", report.render());
            eprintln!("elapsed: {:?}", report.elapsed);
            Ok(ExitCode::SUCCESS)
        }
        Command::Transform { file, root } => {
            let text = std::fs::read_to_string(&file)
                .with_context(|| format!("reading {}", file.display()))?;
            let graph = TwoModeEdgeList::parse(&text)?.to_bipartite()?;
            let root_id = graph
                .node_by_label(&root)
                .ok_or(twomode::Error::UnknownLabel { label: root })?;
            print!("{}", transform_json(&graph, root_id)?);
            Ok(ExitCode::SUCCESS)
        }
    }
}

#[derive(Serialize)]
struct JsonValue {
    num: String,
    den: String,
    dec: String,
}

impl JsonValue {
    fn of(value: &ExactRational) -> Self {
        Self {
            num: value.numer().to_string(),
            den: value.denom().to_string(),
            dec: decimal_string(value, 6),
        }
    }
}

#[derive(Serialize)]
struct JsonContext {
    deep_child: String,
    donor: String,
    lift_targets: Vec<String>,
    deep_set: Vec<String>,
    branching_children: Vec<String>,
    leaf_children: Vec<String>,
    moved_leaves: Vec<String>,
    donor_rest: Vec<String>,
    outer: Vec<String>,
}

#[derive(Serialize)]
struct JsonClause {
    name: &'static str,
    holds: bool,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    failures: Vec<String>,
}

#[derive(Serialize)]
struct JsonAudit {
    clauses: Vec<JsonClause>,
    root_is_part_minimal: bool,
    deep_floor: String,
    shrink_bound: String,
}

#[derive(Serialize)]
struct JsonTransform {
    root: String,
    applied: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    note: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    context: Option<JsonContext>,
    before_edges: Vec<(String, String)>,
    after_edges: Vec<(String, String)>,
    c1_root_before: JsonValue,
    c1_root_after: JsonValue,
    increased: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    audit: Option<JsonAudit>,
}

fn render_check(check: &PreconditionedCheck, label: &dyn Fn(usize) -> String) -> String {
    match check {
        PreconditionedCheck::Holds => "holds".to_string(),
        PreconditionedCheck::PreconditionUnmet => "precondition-unmet".to_string(),
        PreconditionedCheck::Violated { node } => format!("violated at {}", label(*node)),
    }
}

fn labeled_edges(graph: &BipartiteGraph) -> Vec<(String, String)> {
    graph
        .graph()
        .edges()
        .into_iter()
        .map(|(u, v)| {
            let (l, r) = if graph.part(u) == Part::Left { (u, v) } else { (v, u) };
            (graph.graph().label(l).to_string(), graph.graph().label(r).to_string())
        })
        .collect()
}

fn transform_json(graph: &BipartiteGraph, root: usize) -> anyhow::Result<String> {
    let label = |v: usize| graph.graph().label(v).to_string();
    let labels = |vs: &[usize]| vs.iter().map(|&v| label(v)).collect::<Vec<_>>();
    let before_edges = labeled_edges(graph);
    let c1_before = twomode::centrality::centralization(graph.graph(), root)?;

    let doc = match build_flatten_context(graph, root)? {
        None => JsonTransform {
            root: label(root),
            applied: false,
            note: Some("every node is within distance 2 of the root; nothing to rewrite"),
            context: None,
            after_edges: before_edges.clone(),
            before_edges,
            c1_root_before: JsonValue::of(&c1_before),
            c1_root_after: JsonValue::of(&c1_before),
            increased: false,
            audit: None,
        },
        Some(ctx) => {
            let rewritten = apply_flatten(graph, root, &ctx)?;
            let audit = audit_flatten(graph, &rewritten, &ctx)?;
            JsonTransform {
                root: label(root),
                applied: true,
                note: None,
                context: Some(JsonContext {
                    deep_child: label(ctx.deep_child),
                    donor: label(ctx.donor),
                    lift_targets: labels(&ctx.lift_targets),
                    deep_set: labels(&ctx.deep_set),
                    branching_children: labels(&ctx.branching_children),
                    leaf_children: labels(&ctx.leaf_children),
                    moved_leaves: labels(&ctx.moved_leaves),
                    donor_rest: labels(&ctx.donor_rest),
                    outer: labels(&ctx.outer),
                }),
                before_edges,
                after_edges: labeled_edges(&rewritten),
                increased: audit.root_strictly_increased(),
                c1_root_before: JsonValue::of(&audit.c1_root_before),
                c1_root_after: JsonValue::of(&audit.c1_root_after),
                audit: Some(JsonAudit {
                    clauses: audit
                        .clauses
                        .iter()
                        .map(|c| JsonClause {
                            name: c.name,
                            holds: c.holds,
                            failures: c.failures.clone(),
                        })
                        .collect(),
                    root_is_part_minimal: audit.root_is_part_minimal,
                    deep_floor: render_check(&audit.deep_floor, &label),
                    shrink_bound: render_check(&audit.shrink_bound, &label),
                }),
            }
        }
    };
    let mut out = serde_json::to_string_pretty(&doc)?;
    out.push('\n');
    Ok(out)
}
