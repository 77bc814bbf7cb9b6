//! Classification tables: every orbit of distinguished or principal pairs
//! for one algebra, verified and ready to export.

use std::fmt::Write as _;
use std::io::Write;

use rayon::prelude::*;
use serde::Serialize;
use sha2::{Digest, Sha256};

use crate::centralizer::{analyze, check_closed_form, closed_form_centralizer, CentralizerReport, ReportJson};
use crate::error::{Error, Result};
use crate::liealg::{build_pair, has_two_orbits, AlgebraSpec, OrbitSign, PairRealization, RealizationJson};
use crate::matrix::MatrixFormat;
use crate::rational::format_rational;
use crate::series::{PairKind, Series};
use crate::skewgraph::{enumerate_admissible_with_limit, render_ascii, to_json, to_text, GraphJson, SkewGraph, DEFAULT_MAX_NODES};

/// Version of the JSON document layout and of the CSV column order.
pub const SCHEMA_VERSION: u32 = 1;

pub const CSV_COLUMNS: [&str; 16] = [
    "algebra",
    "series",
    "dimv",
    "kind",
    "orbit_label",
    "components",
    "centralizer_dim",
    "rank",
    "h_centralizer_dim",
    "distinguished",
    "principal",
    "rectangular_pair",
    "cartan_h",
    "trivial_intersection",
    "closed_form_match",
    "biexponents",
];

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub spec: AlgebraSpec,
    pub graph: SkewGraph,
    pub orbit_label: String,
    pub orbit_sign: Option<OrbitSign>,
    pub kind: PairKind,
    pub report: CentralizerReport,
    /// Present for principal entries.
    pub closed_form_match: Option<bool>,
    pub realization: PairRealization,
}

impl CatalogEntry {
    pub fn algebra(&self) -> String {
        self.spec.series.algebra_name(self.spec.dimv)
    }
}

/// First 16 hex digits of SHA-256 over the canonical text form, with a `+` or
/// `-` suffix for the two orbits of a connected series-D graph.
pub fn orbit_label(graph: &SkewGraph, sign: Option<OrbitSign>) -> String {
    let digest = Sha256::digest(to_text(&graph.canonical()).as_bytes());
    let mut label = String::with_capacity(17);
    for byte in &digest[..8] {
        let _ = write!(label, "{byte:02x}");
    }
    if let Some(sign) = sign {
        label.push(sign.suffix());
    }
    label
}

fn failure(graph: &SkewGraph, reason: impl Into<String>) -> Error {
    Error::Verification {
        graph: to_text(graph),
        reason: reason.into(),
    }
}

fn build_entry(series: Series, graph: &SkewGraph, sign: Option<OrbitSign>, kind: PairKind) -> Result<CatalogEntry> {
    let realization = build_pair(series, graph, sign).map_err(|e| failure(graph, e.to_string()))?;
    let report = analyze(&realization).map_err(|e| failure(graph, e.to_string()))?;
    if !report.flags.distinguished {
        return Err(failure(graph, "pair is not distinguished"));
    }
    let closed_form_match = if kind == PairKind::Principal {
        if !report.flags.principal {
            return Err(failure(graph, "pair is not principal"));
        }
        if !report.grading.is_positive_integral() {
            return Err(failure(graph, "principal centralizer has a non-positive bi-degree"));
        }
        let form = closed_form_centralizer(series, graph).map_err(|e| failure(graph, e.to_string()))?;
        let check = check_closed_form(&form, &realization, &report)?;
        if !check.passed() {
            return Err(failure(graph, format!("closed form mismatch: {check:?}")));
        }
        Some(true)
    } else {
        None
    };
    Ok(CatalogEntry {
        spec: realization.spec.clone(),
        graph: realization.graph.clone(),
        orbit_label: orbit_label(graph, sign),
        orbit_sign: sign,
        kind,
        report,
        closed_form_match,
        realization,
    })
}

fn orbit_signs(series: Series, graph: &SkewGraph) -> Vec<Option<OrbitSign>> {
    if has_two_orbits(series, graph) {
        vec![Some(OrbitSign::Plus), Some(OrbitSign::Minus)]
    } else {
        vec![None]
    }
}

/// All orbits of `kind` pairs for the algebra of `(series, dimv)`, in
/// canonical graph order and then orbit sign, each fully verified.
pub fn classify(series: Series, dimv: usize, kind: PairKind) -> Result<Vec<CatalogEntry>> {
    classify_with_limit(series, dimv, kind, DEFAULT_MAX_NODES)
}

/// [`classify`] with an explicit bound on `dimv`.
pub fn classify_with_limit(series: Series, dimv: usize, kind: PairKind, max_nodes: usize) -> Result<Vec<CatalogEntry>> {
    let graphs = enumerate_admissible_with_limit(series, dimv, kind, max_nodes)?;
    let tasks: Vec<(SkewGraph, Option<OrbitSign>)> = graphs
        .iter()
        .flat_map(|g| orbit_signs(series, g).into_iter().map(move |s| (g.clone(), s)))
        .collect();
    tasks
        .par_iter()
        .map(|(g, s)| build_entry(series, g, *s, kind))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CountMode {
    /// Count admissible graphs only.
    #[default]
    Fast,
    /// Build and verify every entry.
    Full,
}

pub fn count_orbits(series: Series, dimv: usize, kind: PairKind, mode: CountMode) -> Result<usize> {
    count_orbits_with_limit(series, dimv, kind, mode, DEFAULT_MAX_NODES)
}

/// [`count_orbits`] with an explicit bound on `dimv`.
pub fn count_orbits_with_limit(
    series: Series,
    dimv: usize,
    kind: PairKind,
    mode: CountMode,
    max_nodes: usize,
) -> Result<usize> {
    match mode {
        CountMode::Fast => Ok(enumerate_admissible_with_limit(series, dimv, kind, max_nodes)?
            .iter()
            .map(|g| orbit_signs(series, g).len())
            .sum()),
        CountMode::Full => Ok(classify_with_limit(series, dimv, kind, max_nodes)?.len()),
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ExportFormat {
    Json,
    Csv,
    TextTable,
}

impl std::str::FromStr for ExportFormat {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "json" => Ok(Self::Json),
            "csv" => Ok(Self::Csv),
            "text-table" | "text" => Ok(Self::TextTable),
            other => Err(Error::Parse(format!("unknown export format {other:?}"))),
        }
    }
}

#[derive(Serialize)]
struct EntryJson {
    algebra: String,
    series: Series,
    dimv: usize,
    kind: PairKind,
    orbit_label: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    orbit_sign: Option<OrbitSign>,
    graph: GraphJson,
    report: ReportJson,
    #[serde(skip_serializing_if = "Option::is_none")]
    closed_form_match: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    realization: Option<RealizationJson>,
}

#[derive(Serialize)]
struct CatalogJson {
    schema_version: u32,
    entries: Vec<EntryJson>,
}

fn entry_json(e: &CatalogEntry, matrices: Option<MatrixFormat>) -> EntryJson {
    EntryJson {
        algebra: e.algebra(),
        series: e.spec.series,
        dimv: e.spec.dimv,
        kind: e.kind,
        orbit_label: e.orbit_label.clone(),
        orbit_sign: e.orbit_sign,
        graph: to_json(&e.graph),
        report: e.report.to_json(matrices),
        closed_form_match: e.closed_form_match,
        realization: matrices.map(|f| e.realization.to_json(f)),
    }
}

fn biexponent_string(report: &CentralizerReport) -> String {
    report
        .biexponents
        .iter()
        .map(|(p, q)| format!("({},{})", format_rational(p), format_rational(q)))
        .collect::<Vec<_>>()
        .join(" ")
}

fn csv_row(e: &CatalogEntry) -> Vec<String> {
    let f = &e.report.flags;
    vec![
        e.algebra(),
        e.spec.series.to_string(),
        e.spec.dimv.to_string(),
        e.kind.to_string(),
        e.orbit_label.clone(),
        e.graph.components.len().to_string(),
        e.report.dimension.to_string(),
        e.report.rank.to_string(),
        e.report.h_centralizer_dimension.to_string(),
        f.distinguished.to_string(),
        f.principal.to_string(),
        f.rectangular.to_string(),
        f.cartan_h.to_string(),
        f.trivial_intersection.to_string(),
        e.closed_form_match.map(|b| b.to_string()).unwrap_or_default(),
        biexponent_string(&e.report),
    ]
}

fn text_table(entries: &[CatalogEntry]) -> String {
    let header = ["algebra", "kind", "orbit", "dim z(e)", "rank", "princ", "rect", "bi-exponents"];
    let rows: Vec<Vec<String>> = entries
        .iter()
        .map(|e| {
            vec![
                e.algebra(),
                e.kind.to_string(),
                e.orbit_label.clone(),
                e.report.dimension.to_string(),
                e.report.rank.to_string(),
                yes_no(e.report.flags.principal),
                yes_no(e.report.flags.rectangular),
                biexponent_string(&e.report),
            ]
        })
        .collect();
    let mut widths: Vec<usize> = header.iter().map(|h| h.chars().count()).collect();
    for row in &rows {
        for (w, cell) in widths.iter_mut().zip(row) {
            *w = (*w).max(cell.chars().count());
        }
    }
    let line = |cells: &[String]| {
        cells
            .iter()
            .zip(&widths)
            .map(|(c, w)| format!("{c:<w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let header: Vec<String> = header.iter().map(|h| h.to_string()).collect();
    let mut out = line(&header).trim_end().to_string();
    out.push('\n');
    for (row, e) in rows.iter().zip(entries) {
        let fields = line(row);
        let pad = " ".repeat(fields.chars().count());
        for (i, art) in render_ascii(&e.graph).lines().enumerate() {
            let lead = if i == 0 { fields.as_str() } else { pad.as_str() };
            out.push_str(format!("{lead}  {art}").trim_end());
            out.push('\n');
        }
    }
    out
}

fn yes_no(b: bool) -> String {
    if b { "yes" } else { "no" }.to_string()
}

/// Writes `entries` to `out`. JSON carries full matrices when `matrices` is set.
pub fn export(
    entries: &[CatalogEntry],
    format: ExportFormat,
    matrices: Option<MatrixFormat>,
    out: &mut dyn Write,
) -> Result<()> {
    match format {
        ExportFormat::Json => {
            let doc = CatalogJson {
                schema_version: SCHEMA_VERSION,
                entries: entries.iter().map(|e| entry_json(e, matrices)).collect(),
            };
            serde_json::to_writer_pretty(&mut *out, &doc).map_err(|e| Error::Io(e.to_string()))?;
            writeln!(out)?;
        }
        ExportFormat::Csv => {
            let mut writer = csv::Writer::from_writer(&mut *out);
            let io = |e: csv::Error| Error::Io(e.to_string());
            writer.write_record(CSV_COLUMNS).map_err(io)?;
            for e in entries {
                writer.write_record(csv_row(e)).map_err(io)?;
            }
            writer.flush()?;
        }
        ExportFormat::TextTable => out.write_all(text_table(entries).as_bytes())?,
    }
    Ok(())
}

/// [`export`] into a string.
pub fn export_string(entries: &[CatalogEntry], format: ExportFormat, matrices: Option<MatrixFormat>) -> Result<String> {
    let mut buf = Vec::new();
    export(entries, format, matrices, &mut buf)?;
    String::from_utf8(buf).map_err(|e| Error::Internal(e.to_string()))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn a4_principal() {
        let entries = classify(Series::A, 4, PairKind::Principal).unwrap();
        assert_eq!(entries.len(), 7);
        assert!(entries.iter().all(|e| e.report.dimension == 3));
        let csv = export_string(&entries, ExportFormat::Csv, None).unwrap();
        assert_eq!(csv.lines().count(), 8);
    }

    #[test]
    fn fast_and_full_counts_agree() {
        for (series, dimv) in [(Series::A, 3), (Series::B, 5), (Series::C, 4), (Series::D, 6)] {
            for kind in [PairKind::Distinguished, PairKind::Principal] {
                assert_eq!(
                    count_orbits(series, dimv, kind, CountMode::Fast).unwrap(),
                    count_orbits(series, dimv, kind, CountMode::Full).unwrap()
                );
            }
        }
    }

    #[test]
    fn d_connected_graphs_have_two_labels() {
        let entries = classify(Series::D, 4, PairKind::Principal).unwrap();
        let plus = entries.iter().filter(|e| e.orbit_label.ends_with('+')).count();
        let minus = entries.iter().filter(|e| e.orbit_label.ends_with('-')).count();
        assert_eq!(plus, minus);
        assert!(plus > 0);
        // 2x2 square in both orbits, plus the 3-chains with a point.
        assert_eq!(entries.len(), plus + minus + 2);
    }

    #[test]
    fn empty_exports_have_headers() {
        let json = export_string(&[], ExportFormat::Json, None).unwrap();
        let value: serde_json::Value = serde_json::from_str(&json).unwrap();
        assert_eq!(value["entries"].as_array().unwrap().len(), 0);
        let csv = export_string(&[], ExportFormat::Csv, None).unwrap();
        assert_eq!(csv.trim_end(), CSV_COLUMNS.join(","));
        let text = export_string(&[], ExportFormat::TextTable, None).unwrap();
        assert!(text.starts_with("algebra"));
    }

    #[test]
    fn labels_are_stable() {
        let entries = classify(Series::B, 5, PairKind::Principal).unwrap();
        let again = classify(Series::B, 5, PairKind::Principal).unwrap();
        assert_eq!(
            export_string(&entries, ExportFormat::Json, Some(MatrixFormat::Sparse)).unwrap(),
            export_string(&again, ExportFormat::Json, Some(MatrixFormat::Sparse)).unwrap()
        );
        assert!(entries.iter().all(|e| e.orbit_label.len() == 16));
    }
}
