//! Running the full assessment and writing its outputs.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::analytics::{
    aggregate_weighted, efficiency_matrix, eligibility_filter, histogram, percentile_rank,
    productivity_ratio, AggregateScores, Eligibility, Histogram, QuadrantSummary,
    TriplePercentiles,
};
use crate::config::AssessmentConfig;
use crate::dea::evaluate_sds;
use crate::error::{Error, Result};
use crate::ingest::{AssessmentData, OutputMode};
use crate::model::{
    staff_cost, CostVector, DmuInput, EfficiencyScores, ScoreTriple, SdsDataset, SdsUnit,
};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmuRow {
    pub dmu_id: String,
    pub ss: f64,
    pub fp_years: f64,
    pub ap_years: f64,
    pub rf_years: f64,
    /// k€
    pub staff_cost: f64,
    pub productivity: f64,
    pub scores: EfficiencyScores,
    /// Rank within the subfield; absent for single-unit subfields.
    pub percentiles: Option<TriplePercentiles>,
}

impl DmuRow {
    pub fn input(&self, sds_id: &str) -> DmuInput {
        DmuInput {
            dmu_id: self.dmu_id.clone(),
            sds_id: sds_id.to_owned(),
            fp_years: self.fp_years,
            ap_years: self.ap_years,
            rf_years: self.rf_years,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreHistograms {
    pub te: Histogram,
    pub ae: Histogram,
    pub ce: Histogram,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdsReport {
    pub sds_id: String,
    pub rows: Vec<DmuRow>,
    pub histograms: ScoreHistograms,
    pub quadrants: QuadrantSummary,
}

impl SdsReport {
    pub fn row(&self, dmu_id: &str) -> Option<&DmuRow> {
        self.rows.iter().find(|r| r.dmu_id == dmu_id)
    }

    pub fn dataset(&self) -> Result<SdsDataset> {
        SdsDataset::new(
            self.sds_id.clone(),
            self.rows
                .iter()
                .map(|r| SdsUnit::new(r.input(&self.sds_id), r.ss))
                .collect(),
        )
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstitutionRow {
    pub sds_id: String,
    pub staff_cost: f64,
    pub scores: ScoreTriple,
    pub percentiles: Option<TriplePercentiles>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct InstitutionReport {
    pub dmu_id: String,
    pub rows: Vec<InstitutionRow>,
    pub aggregate: AggregateScores,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EligibilityRecord {
    pub sds_id: String,
    pub universities_active: usize,
    pub fraction_publishing: Option<f64>,
    pub eligibility: Eligibility,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AssessmentReport {
    pub census_date: Option<String>,
    pub mode: OutputMode,
    pub costs: CostVector,
    pub quadrant_threshold: f64,
    pub sds: Vec<SdsReport>,
    pub institutions: Vec<InstitutionReport>,
    pub eligibility: Vec<EligibilityRecord>,
}

impl AssessmentReport {
    pub fn sds(&self, sds_id: &str) -> Option<&SdsReport> {
        self.sds.iter().find(|s| s.sds_id == sds_id)
    }

    pub fn institution(&self, dmu_id: &str) -> Option<&InstitutionReport> {
        self.institutions.iter().find(|i| i.dmu_id == dmu_id)
    }

    pub fn unit_count(&self) -> usize {
        self.sds.iter().map(|s| s.rows.len()).sum()
    }

    /// Datasets carried by the report, at full stored precision.
    pub fn datasets(&self) -> Result<Vec<SdsDataset>> {
        self.sds.iter().map(SdsReport::dataset).collect()
    }

    /// Institution aggregates over subfields whose id starts with `area`
    /// (all subfields when `None`), ranked against every other institution
    /// under the same filter.
    pub fn institution_views(&self, area: Option<&str>) -> Result<Vec<InstitutionReport>> {
        institution_reports(&self.sds, area)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::InvalidInput(format!("report: {e}")))
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
        Self::from_json(&text)
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }
}

fn triple_percentiles(all: &[ScoreTriple], own: ScoreTriple) -> Result<Option<TriplePercentiles>> {
    if all.len() < 2 {
        return Ok(None);
    }
    let col = |pick: fn(&ScoreTriple) -> f64| all.iter().map(pick).collect::<Vec<_>>();
    Ok(Some(TriplePercentiles {
        te: percentile_rank(&col(|s| s.te), own.te)?,
        ae: percentile_rank(&col(|s| s.ae), own.ae)?,
        ce: percentile_rank(&col(|s| s.ce), own.ce)?,
    }))
}

fn sds_report(
    ds: &SdsDataset,
    scores: IndexMap<String, EfficiencyScores>,
    config: &AssessmentConfig,
) -> Result<SdsReport> {
    let triples: Vec<ScoreTriple> = scores.values().map(EfficiencyScores::triple).collect();
    let column = |pick: fn(&ScoreTriple) -> f64| triples.iter().map(pick).collect::<Vec<_>>();
    let histograms = ScoreHistograms {
        te: histogram(&column(|s| s.te))?,
        ae: histogram(&column(|s| s.ae))?,
        ce: histogram(&column(|s| s.ce))?,
    };
    let quadrants = efficiency_matrix(scores.values(), config.quadrant_threshold);
    let rows = ds
        .units
        .iter()
        .zip(scores)
        .map(|(unit, (id, s))| {
            debug_assert_eq!(unit.dmu_id(), id);
            Ok(DmuRow {
                dmu_id: id,
                ss: unit.ss,
                fp_years: unit.input.fp_years,
                ap_years: unit.input.ap_years,
                rf_years: unit.input.rf_years,
                staff_cost: staff_cost(&unit.input, &config.costs),
                productivity: productivity_ratio(unit.ss, &unit.input),
                percentiles: triple_percentiles(&triples, s.triple())?,
                scores: s,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(SdsReport {
        sds_id: ds.sds_id.clone(),
        rows,
        histograms,
        quadrants,
    })
}

fn institution_reports(sds: &[SdsReport], area: Option<&str>) -> Result<Vec<InstitutionReport>> {
    let mut by_dmu: IndexMap<&str, Vec<InstitutionRow>> = IndexMap::new();
    for report in sds
        .iter()
        .filter(|s| area.is_none_or(|a| s.sds_id.starts_with(a)))
    {
        for row in &report.rows {
            by_dmu.entry(&row.dmu_id).or_default().push(InstitutionRow {
                sds_id: report.sds_id.clone(),
                staff_cost: row.staff_cost,
                scores: row.scores.triple(),
                percentiles: row.percentiles,
            });
        }
    }
    let mut out = by_dmu
        .into_iter()
        .map(|(dmu, rows)| {
            let weighted: Vec<(ScoreTriple, f64)> =
                rows.iter().map(|r| (r.scores, r.staff_cost)).collect();
            Ok(InstitutionReport {
                dmu_id: dmu.to_owned(),
                aggregate: aggregate_weighted(&weighted)?,
                rows,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    let aggregates: Vec<ScoreTriple> = out.iter().map(|i| i.aggregate.triple()).collect();
    for inst in &mut out {
        inst.aggregate.percentiles = triple_percentiles(&aggregates, inst.aggregate.triple())?;
    }
    out.sort_by(|a, b| a.dmu_id.cmp(&b.dmu_id));
    Ok(out)
}

fn with_sds_context(sds_id: &str, e: Error) -> Error {
    match e {
        Error::Solver { context, source } => Error::Solver {
            context: format!("{context} [{sds_id}]"),
            source,
        },
        Error::Inconsistent(msg) => Error::Inconsistent(format!("{sds_id}: {msg}")),
        other => other,
    }
}

/// Computes output where needed, screens each subfield, scores the
/// eligible ones and attaches every summary.
pub fn run_assessment(
    data: &AssessmentData,
    config: &AssessmentConfig,
) -> Result<AssessmentReport> {
    config.validate()?;
    if data.unit_count() == 0 {
        return Err(Error::Empty("dataset has no units".into()));
    }
    let datasets = data.sds_datasets()?;
    let mut eligibility = Vec::with_capacity(datasets.len());
    let mut sds = Vec::new();
    for ds in &datasets {
        let summary = data.summaries.get(&ds.sds_id);
        let universities_active = summary
            .and_then(|s| s.universities_active)
            .unwrap_or(ds.len());
        let fraction_publishing = summary.map(|s| s.fraction_publishing);
        let decision = if config.apply_filter {
            eligibility_filter(
                universities_active,
                fraction_publishing,
                &config.eligibility,
            )
        } else {
            Eligibility::Include
        };
        let include = decision.is_included();
        eligibility.push(EligibilityRecord {
            sds_id: ds.sds_id.clone(),
            universities_active,
            fraction_publishing,
            eligibility: decision,
        });
        if include {
            let scores =
                evaluate_sds(ds, &config.costs).map_err(|e| with_sds_context(&ds.sds_id, e))?;
            sds.push(sds_report(ds, scores, config)?);
        }
    }
    let institutions = institution_reports(&sds, None)?;
    Ok(AssessmentReport {
        census_date: config.census_date.clone(),
        mode: data.mode,
        costs: config.costs,
        quadrant_threshold: config.quadrant_threshold,
        sds,
        institutions,
        eligibility,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum OutputFormat {
    Json,
    Csv,
    Svg,
}

impl std::str::FromStr for OutputFormat {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        match s.to_ascii_lowercase().as_str() {
            "json" => Ok(OutputFormat::Json),
            "csv" => Ok(OutputFormat::Csv),
            "svg" => Ok(OutputFormat::Svg),
            other => Err(format!("unknown format '{other}' (json, csv, svg)")),
        }
    }
}

/// Filesystem-safe stem for a subfield id (`CHIM/08` -> `CHIM_08`).
pub fn file_stem(id: &str) -> String {
    id.chars()
        .map(|c| {
            if c.is_ascii_alphanumeric() || c == '-' || c == '.' {
                c
            } else {
                '_'
            }
        })
        .collect()
}

fn fixed(v: f64, precision: usize) -> String {
    format!("{v:.precision$}")
}

fn opt_fixed(v: Option<f64>, precision: usize) -> String {
    v.map(|v| fixed(v, precision)).unwrap_or_default()
}

fn csv_bytes(header: &[&str], rows: Vec<Vec<String>>) -> Vec<u8> {
    let mut w = csv::Writer::from_writer(Vec::new());
    w.write_record(header).expect("in-memory write");
    for r in rows {
        w.write_record(&r).expect("in-memory write");
    }
    w.into_inner().expect("in-memory flush")
}

/// Score table with columns `dmu_id, SS, FP, AP, RF, TE, AE, CE`.
pub fn sds_table_csv(report: &SdsReport, precision: usize) -> Vec<u8> {
    let rows = report
        .rows
        .iter()
        .map(|r| {
            vec![
                r.dmu_id.clone(),
                fixed(r.ss, precision),
                r.fp_years.to_string(),
                r.ap_years.to_string(),
                r.rf_years.to_string(),
                fixed(r.scores.te, precision),
                fixed(r.scores.ae, precision),
                fixed(r.scores.ce, precision),
            ]
        })
        .collect();
    csv_bytes(&["dmu_id", "SS", "FP", "AP", "RF", "TE", "AE", "CE"], rows)
}

pub fn sds_percentiles_csv(report: &SdsReport, precision: usize) -> Vec<u8> {
    let rows = report
        .rows
        .iter()
        .map(|r| {
            let p = r.percentiles;
            vec![
                r.dmu_id.clone(),
                fixed(r.staff_cost, precision),
                fixed(r.productivity, precision),
                opt_fixed(p.map(|p| p.te), 0),
                opt_fixed(p.map(|p| p.ae), 0),
                opt_fixed(p.map(|p| p.ce), 0),
            ]
        })
        .collect();
    csv_bytes(
        &[
            "dmu_id",
            "staff_cost",
            "SS_per_staff_year",
            "TE_R%",
            "AE_R%",
            "CE_R%",
        ],
        rows,
    )
}

pub fn institution_csv(inst: &InstitutionReport, precision: usize) -> Vec<u8> {
    let mut rows: Vec<Vec<String>> = inst
        .rows
        .iter()
        .map(|r| {
            let p = r.percentiles;
            vec![
                r.sds_id.clone(),
                fixed(r.staff_cost, precision),
                fixed(r.scores.te, precision),
                opt_fixed(p.map(|p| p.te), 0),
                fixed(r.scores.ae, precision),
                opt_fixed(p.map(|p| p.ae), 0),
                fixed(r.scores.ce, precision),
                opt_fixed(p.map(|p| p.ce), 0),
            ]
        })
        .collect();
    let a = &inst.aggregate;
    let p = a.percentiles;
    rows.push(vec![
        "Total/average".into(),
        fixed(a.total_weight, precision),
        fixed(a.te, precision),
        opt_fixed(p.map(|p| p.te), 0),
        fixed(a.ae, precision),
        opt_fixed(p.map(|p| p.ae), 0),
        fixed(a.ce, precision),
        opt_fixed(p.map(|p| p.ce), 0),
    ]);
    csv_bytes(
        &[
            "sds_id",
            "staff_cost",
            "TE",
            "TE_R%",
            "AE",
            "AE_R%",
            "CE",
            "CE_R%",
        ],
        rows,
    )
}

fn institutions_summary_csv(report: &AssessmentReport, precision: usize) -> Vec<u8> {
    let rows = report
        .institutions
        .iter()
        .map(|i| {
            let a = &i.aggregate;
            let p = a.percentiles;
            vec![
                i.dmu_id.clone(),
                i.rows.len().to_string(),
                fixed(a.total_weight, precision),
                fixed(a.te, precision),
                opt_fixed(p.map(|p| p.te), 0),
                fixed(a.ae, precision),
                opt_fixed(p.map(|p| p.ae), 0),
                fixed(a.ce, precision),
                opt_fixed(p.map(|p| p.ce), 0),
            ]
        })
        .collect();
    csv_bytes(
        &[
            "dmu_id",
            "sds_count",
            "staff_cost",
            "TE",
            "TE_R%",
            "AE",
            "AE_R%",
            "CE",
            "CE_R%",
        ],
        rows,
    )
}

fn eligibility_csv(report: &AssessmentReport) -> Vec<u8> {
    let rows = report
        .eligibility
        .iter()
        .map(|e| {
            let (decision, reasons) = match &e.eligibility {
                Eligibility::Include => ("include".to_owned(), String::new()),
                Eligibility::Exclude(r) => (
                    "exclude".to_owned(),
                    r.iter()
                        .map(|x| {
                            serde_json::to_value(x)
                                .expect("enum")
                                .as_str()
                                .unwrap_or("")
                                .to_owned()
                        })
                        .collect::<Vec<_>>()
                        .join(";"),
                ),
            };
            vec![
                e.sds_id.clone(),
                e.universities_active.to_string(),
                e.fraction_publishing
                    .map(|f| f.to_string())
                    .unwrap_or_default(),
                decision,
                reasons,
            ]
        })
        .collect();
    csv_bytes(
        &[
            "sds_id",
            "universities_active",
            "fraction_publishing",
            "decision",
            "failed",
        ],
        rows,
    )
}

/// Plain-text score table for terminal output.
pub fn render_sds_table(report: &SdsReport, precision: usize) -> String {
    let width = report
        .rows
        .iter()
        .map(|r| r.dmu_id.chars().count())
        .max()
        .unwrap_or(0)
        .max(10);
    let col = precision + 4;
    let mut out = String::new();
    let _ = writeln!(
        out,
        "{:<width$} {:>col$} {:>5} {:>5} {:>5} {:>col$} {:>col$} {:>col$}",
        report.sds_id, "SS", "FP", "AP", "RF", "TE", "AE", "CE"
    );
    for r in &report.rows {
        let _ = writeln!(
            out,
            "{:<width$} {:>col$.p$} {:>5} {:>5} {:>5} {:>col$.p$} {:>col$.p$} {:>col$.p$}",
            r.dmu_id,
            r.ss,
            r.fp_years,
            r.ap_years,
            r.rf_years,
            r.scores.te,
            r.scores.ae,
            r.scores.ce,
            p = precision
        );
    }
    let h = &report.histograms;
    let q = &report.quadrants;
    let _ = writeln!(
        out,
        "medians TE {:.p$} AE {:.p$} CE {:.p$}",
        h.te.median,
        h.ae.median,
        h.ce.median,
        p = precision
    );
    let _ = writeln!(
        out,
        "quadrants low/low {} lowTE/highAE {} high/high {} highTE/lowAE {}",
        q.low_te_low_ae, q.low_te_high_ae, q.high_te_high_ae, q.high_te_low_ae
    );
    out
}

pub fn render_institution(inst: &InstitutionReport, precision: usize) -> String {
    let mut out = String::new();
    let pct = |v: Option<f64>| v.map(|v| format!("{v:.0}")).unwrap_or_else(|| "-".into());
    let _ = writeln!(
        out,
        "{:<14} {:>12} {:>8} {:>4} {:>8} {:>4} {:>8} {:>4}",
        inst.dmu_id, "cost k€", "TE", "R%", "AE", "R%", "CE", "R%"
    );
    for r in &inst.rows {
        let p = r.percentiles;
        let _ = writeln!(
            out,
            "{:<14} {:>12.p$} {:>8.p$} {:>4} {:>8.p$} {:>4} {:>8.p$} {:>4}",
            r.sds_id,
            r.staff_cost,
            r.scores.te,
            pct(p.map(|p| p.te)),
            r.scores.ae,
            pct(p.map(|p| p.ae)),
            r.scores.ce,
            pct(p.map(|p| p.ce)),
            p = precision
        );
    }
    let a = &inst.aggregate;
    let p = a.percentiles;
    let _ = writeln!(
        out,
        "{:<14} {:>12.p$} {:>8.p$} {:>4} {:>8.p$} {:>4} {:>8.p$} {:>4}",
        "Total/average",
        a.total_weight,
        a.te,
        pct(p.map(|p| p.te)),
        a.ae,
        pct(p.map(|p| p.ae)),
        a.ce,
        pct(p.map(|p| p.ce)),
        p = precision
    );
    out
}

/// Three side-by-side quintile bar charts.
pub fn histograms_svg(report: &SdsReport) -> String {
    let panels = [
        ("TE", &report.histograms.te),
        ("AE", &report.histograms.ae),
        ("CE", &report.histograms.ce),
    ];
    let max = panels
        .iter()
        .flat_map(|(_, h)| h.counts.iter().copied())
        .max()
        .unwrap_or(1)
        .max(1) as f64;
    let (pw, ph, bar_h) = (220.0, 200.0, 140.0);
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{}" height="{}" font-family="sans-serif" font-size="10">"#,
        pw * 3.0,
        ph
    );
    for (i, (label, h)) in panels.iter().enumerate() {
        let x0 = i as f64 * pw + 20.0;
        let _ = writeln!(
            s,
            r#"<text x="{x:.1}" y="14">{sds} {label} (median {m:.3})</text>"#,
            x = x0,
            sds = xml_escape(&report.sds_id),
            m = h.median
        );
        for (b, &c) in h.counts.iter().enumerate() {
            let height = bar_h * c as f64 / max;
            let x = x0 + b as f64 * 36.0;
            let y = 20.0 + bar_h - height;
            let _ = writeln!(
                s,
                r##"<rect x="{x:.1}" y="{y:.1}" width="30" height="{height:.1}" fill="#4a7ab5"/><text x="{tx:.1}" y="{ty:.1}">{c}</text><text x="{x:.1}" y="{ly:.1}">{lo:.1}</text>"##,
                tx = x + 10.0,
                ty = y - 2.0,
                ly = 20.0 + bar_h + 12.0,
                lo = Histogram::lower_edge(b)
            );
        }
    }
    s.push_str("</svg>\n");
    s
}

/// Scatter of units on the technical (x) / allocative (y) plane with the
/// quadrant threshold drawn in.
pub fn matrix_svg(report: &SdsReport, threshold: f64) -> String {
    let (size, pad) = (300.0, 30.0);
    let to_x = |v: f64| pad + v * size;
    let to_y = |v: f64| pad + (1.0 - v) * size;
    let mut s = String::new();
    let _ = writeln!(
        s,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{w}" height="{w}" font-family="sans-serif" font-size="10">"#,
        w = size + 2.0 * pad
    );
    let _ = writeln!(
        s,
        r#"<rect x="{pad}" y="{pad}" width="{size}" height="{size}" fill="none" stroke="black"/>"#
    );
    let _ = writeln!(
        s,
        r#"<line x1="{x:.1}" y1="{pad}" x2="{x:.1}" y2="{e}" stroke="gray" stroke-dasharray="4"/><line x1="{pad}" y1="{y:.1}" x2="{e}" y2="{y:.1}" stroke="gray" stroke-dasharray="4"/>"#,
        x = to_x(threshold),
        y = to_y(threshold),
        e = pad + size
    );
    let _ = writeln!(
        s,
        r#"<text x="{pad}" y="{b}">TE</text><text x="4" y="{pad}">AE</text>"#,
        b = size + 2.0 * pad - 6.0
    );
    for r in &report.rows {
        let _ = writeln!(
            s,
            r##"<circle cx="{:.1}" cy="{:.1}" r="3" fill="#b5524a"><title>{}</title></circle>"##,
            to_x(r.scores.te),
            to_y(r.scores.ae),
            xml_escape(&r.dmu_id)
        );
    }
    s.push_str("</svg>\n");
    s
}

fn xml_escape(s: &str) -> String {
    s.replace('&', "&amp;")
        .replace('<', "&lt;")
        .replace('>', "&gt;")
        .replace('"', "&quot;")
}

fn write_file(path: PathBuf, bytes: &[u8], written: &mut Vec<PathBuf>) -> Result<()> {
    std::fs::write(&path, bytes).map_err(|e| Error::io(&path, e))?;
    written.push(path);
    Ok(())
}

/// Writes the requested formats into `out_dir` and returns the files
/// written, in order. Output depends only on the report and precision.
pub fn emit(
    report: &AssessmentReport,
    formats: &[OutputFormat],
    out_dir: &Path,
    precision: usize,
) -> Result<Vec<PathBuf>> {
    std::fs::create_dir_all(out_dir).map_err(|e| Error::io(out_dir, e))?;
    let mut written = Vec::new();
    let wants = |f: OutputFormat| formats.contains(&f);
    if wants(OutputFormat::Json) {
        write_file(
            out_dir.join("report.json"),
            report.to_json().as_bytes(),
            &mut written,
        )?;
    }
    if wants(OutputFormat::Csv) {
        for sds in &report.sds {
            let stem = file_stem(&sds.sds_id);
            write_file(
                out_dir.join(format!("scores_{stem}.csv")),
                &sds_table_csv(sds, precision),
                &mut written,
            )?;
            write_file(
                out_dir.join(format!("percentiles_{stem}.csv")),
                &sds_percentiles_csv(sds, precision),
                &mut written,
            )?;
        }
        write_file(
            out_dir.join("institutions.csv"),
            &institutions_summary_csv(report, precision),
            &mut written,
        )?;
        write_file(
            out_dir.join("eligibility.csv"),
            &eligibility_csv(report),
            &mut written,
        )?;
    }
    if wants(OutputFormat::Svg) {
        for sds in &report.sds {
            let stem = file_stem(&sds.sds_id);
            write_file(
                out_dir.join(format!("histograms_{stem}.svg")),
                histograms_svg(sds).as_bytes(),
                &mut written,
            )?;
            write_file(
                out_dir.join(format!("matrix_{stem}.svg")),
                matrix_svg(sds, report.quadrant_threshold).as_bytes(),
                &mut written,
            )?;
        }
    }
    Ok(written)
}
