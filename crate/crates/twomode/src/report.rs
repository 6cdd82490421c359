//! Part-restricted centrality reports and their table/CSV/JSON forms.

use serde::Serialize;

use crate::bipartite::{BipartiteGraph, Part};
use crate::centrality::centrality_report;
use crate::error::Result;
use crate::rational::{decimal_string, ExactRational};

/// One row of an analysis report.
#[derive(Debug, Clone)]
pub struct AnalyzeRow {
    pub label: String,
    pub part: Part,
    pub total_distance: u64,
    pub closeness: ExactRational,
    pub centralization: ExactRational,
}

/// Per-node values for one part, sorted by descending centralization
/// and then ascending label, plus that part's argmax set.
#[derive(Debug, Clone)]
pub struct AnalyzeReport {
    pub part: Part,
    pub rows: Vec<AnalyzeRow>,
    pub argmax_labels: Vec<String>,
    pub argmax_value: ExactRational,
}

/// Compute closeness and centralization (over the whole graph) for
/// every node of the chosen part.
pub fn analyze(bg: &BipartiteGraph, part: Part) -> Result<AnalyzeReport> {
    let report = centrality_report(bg.graph())?;
    let mut rows: Vec<AnalyzeRow> = bg
        .nodes_in_part(part)
        .map(|v| AnalyzeRow {
            label: bg.graph().label(v).to_string(),
            part,
            total_distance: report.total_distance[v],
            closeness: report.closeness[v].clone(),
            centralization: report.centralization[v].clone(),
        })
        .collect();
    rows.sort_by(|a, b| {
        b.centralization
            .cmp(&a.centralization)
            .then_with(|| a.label.cmp(&b.label))
    });
    let argmax_value = rows[0].centralization.clone();
    let argmax_labels: Vec<String> = rows
        .iter()
        .filter(|row| row.centralization == argmax_value)
        .map(|row| row.label.clone())
        .collect();
    Ok(AnalyzeReport { part, rows, argmax_labels, argmax_value })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ReportFormat {
    Table,
    Csv,
    Json,
}

/// Render a report; all numbers come from the exact values, decimals
/// use `precision` digits. Output is deterministic and
/// newline-terminated.
pub fn render(report: &AnalyzeReport, format: ReportFormat, precision: usize) -> String {
    match format {
        ReportFormat::Table => render_table(report, precision),
        ReportFormat::Csv => render_csv(report, precision),
        ReportFormat::Json => render_json(report, precision),
    }
}

fn render_table(report: &AnalyzeReport, precision: usize) -> String {
    let header = ["label", "part", "W", "C", "C1"];
    let mut cells: Vec<[String; 5]> = vec![header.map(String::from)];
    for row in &report.rows {
        cells.push([
            row.label.clone(),
            row.part.to_string(),
            row.total_distance.to_string(),
            decimal_string(&row.closeness, precision),
            decimal_string(&row.centralization, precision),
        ]);
    }
    let widths: Vec<usize> = (0..5)
        .map(|c| cells.iter().map(|row| row[c].len()).max().unwrap())
        .collect();
    let mut out = String::new();
    for row in &cells {
        let mut line = String::new();
        for (c, cell) in row.iter().enumerate() {
            if c > 0 {
                line.push_str("  ");
            }
            if c < 3 {
                line.push_str(&format!("{cell:<width$}", width = widths[c]));
            } else {
                line.push_str(&format!("{cell:>width$}", width = widths[c]));
            }
        }
        out.push_str(line.trim_end());
        out.push('\n');
    }
    out.push_str(&format!(
        "argmax: {} ({})\n",
        report.argmax_labels.join(", "),
        decimal_string(&report.argmax_value, precision)
    ));
    out
}

fn csv_field(text: &str) -> String {
    if text.contains(',') || text.contains('"') || text.contains('\n') {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

fn render_csv(report: &AnalyzeReport, precision: usize) -> String {
    let mut out = String::from("label,part,W,C,C1\n");
    for row in &report.rows {
        out.push_str(&format!(
            "{},{},{},{},{}\n",
            csv_field(&row.label),
            row.part,
            row.total_distance,
            decimal_string(&row.closeness, precision),
            decimal_string(&row.centralization, precision),
        ));
    }
    out
}

#[derive(Serialize)]
struct JsonRational {
    num: String,
    den: String,
}

impl JsonRational {
    fn of(value: &ExactRational) -> Self {
        Self { num: value.numer().to_string(), den: value.denom().to_string() }
    }
}

#[derive(Serialize)]
struct JsonNode {
    label: String,
    part: Part,
    #[serde(rename = "W")]
    total_distance: u64,
    #[serde(rename = "C")]
    closeness: JsonRational,
    #[serde(rename = "C1")]
    centralization: JsonRational,
    #[serde(rename = "C_dec")]
    closeness_decimal: String,
    #[serde(rename = "C1_dec")]
    centralization_decimal: String,
}

#[derive(Serialize)]
struct JsonReport {
    nodes: Vec<JsonNode>,
    argmax: Vec<String>,
}

fn render_json(report: &AnalyzeReport, precision: usize) -> String {
    let doc = JsonReport {
        nodes: report
            .rows
            .iter()
            .map(|row| JsonNode {
                label: row.label.clone(),
                part: row.part,
                total_distance: row.total_distance,
                closeness: JsonRational::of(&row.closeness),
                centralization: JsonRational::of(&row.centralization),
                closeness_decimal: decimal_string(&row.closeness, precision),
                centralization_decimal: decimal_string(&row.centralization, precision),
            })
            .collect(),
        argmax: report.argmax_labels.clone(),
    };
    let mut out = serde_json::to_string_pretty(&doc).expect("report serialization cannot fail");
    out.push('\n');
    out
}
