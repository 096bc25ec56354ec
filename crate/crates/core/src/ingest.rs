//! Reading and cross-checking the delimited input files.
//!
//! All files are comma-separated UTF-8 with a mandatory header row and
//! period decimals.
//!
//! | file          | columns                                                                 |
//! |---------------|-------------------------------------------------------------------------|
//! | staff         | `dmu_id, sds_id, fp_years, ap_years, rf_years[, ss]`                    |
//! | publications  | `pub_id, dmu_id, sds_id, year, citations, categories, total_authors, dmu_positions, life_science` |
//! | medians       | `year, category, median[, mean]`                                        |
//! | sds summary   | `sds_id, fraction_publishing[, universities_active]`                    |
//!
//! `categories` and `dmu_positions` are semicolon-joined lists;
//! `life_science` is `0` or `1`.

use std::collections::{BTreeMap, BTreeSet, HashSet};
use std::path::{Path, PathBuf};

use indexmap::IndexMap;
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::bibliometrics::scientific_strength;
use crate::error::{Error, Result};
use crate::model::{DmuInput, MedianTable, PublicationRecord, SdsDataset, SdsUnit};

/// Where each unit's output comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum OutputMode {
    /// The staff file carries a precomputed `ss` column.
    Passthrough,
    /// Output is computed from publications and reference medians.
    Computed,
}

#[derive(Debug, Clone, Default)]
pub struct InputPaths {
    pub staff: PathBuf,
    pub publications: Option<PathBuf>,
    pub medians: Option<PathBuf>,
    pub sds_summary: Option<PathBuf>,
}

impl InputPaths {
    pub fn staff(path: impl Into<PathBuf>) -> Self {
        InputPaths {
            staff: path.into(),
            ..Default::default()
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct StaffRow {
    pub input: DmuInput,
    pub ss: Option<f64>,
}

#[derive(Debug, Clone, PartialEq)]
pub struct PublicationRow {
    pub dmu_id: String,
    pub sds_id: String,
    pub record: PublicationRecord,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SdsSummary {
    pub fraction_publishing: f64,
    pub universities_active: Option<usize>,
}

/// Cross-referenced inputs ready for assessment.
#[derive(Debug, Clone, PartialEq)]
pub struct AssessmentData {
    pub mode: OutputMode,
    pub staff: Vec<StaffRow>,
    pub publications: Vec<PublicationRow>,
    pub medians: MedianTable,
    pub summaries: BTreeMap<String, SdsSummary>,
}

impl AssessmentData {
    /// Subfield ids in order of first appearance in the staff file.
    pub fn sds_ids(&self) -> Vec<String> {
        let mut seen = HashSet::new();
        self.staff
            .iter()
            .filter(|r| seen.insert(r.input.sds_id.as_str()))
            .map(|r| r.input.sds_id.clone())
            .collect()
    }

    pub fn unit_count(&self) -> usize {
        self.staff.len()
    }

    /// Per-subfield datasets with output filled in, computing it from
    /// publications when not passed through.
    pub fn sds_datasets(&self) -> Result<Vec<SdsDataset>> {
        let mut by_unit: BTreeMap<(&str, &str), Vec<&PublicationRecord>> = BTreeMap::new();
        if self.mode == OutputMode::Computed {
            for p in &self.publications {
                by_unit
                    .entry((p.sds_id.as_str(), p.dmu_id.as_str()))
                    .or_default()
                    .push(&p.record);
            }
        }
        let mut groups: IndexMap<&str, Vec<SdsUnit>> = IndexMap::new();
        for row in &self.staff {
            let ss = match (self.mode, row.ss) {
                (OutputMode::Passthrough, Some(ss)) => ss,
                _ => {
                    let key = (row.input.sds_id.as_str(), row.input.dmu_id.as_str());
                    let pubs = by_unit.get(&key).map(Vec::as_slice).unwrap_or(&[]);
                    scientific_strength(pubs.iter().copied(), &self.medians)?
                }
            };
            groups
                .entry(row.input.sds_id.as_str())
                .or_default()
                .push(SdsUnit::new(row.input.clone(), ss));
        }
        groups
            .into_iter()
            .map(|(sds, units)| SdsDataset::new(sds, units))
            .collect()
    }
}

fn parse_err(path: &Path, line: u64, message: impl Into<String>) -> Error {
    Error::Parse {
        path: path.to_owned(),
        line,
        message: message.into(),
    }
}

fn read_rows<T: DeserializeOwned>(path: &Path) -> Result<Vec<(u64, T)>> {
    let file = std::fs::File::open(path).map_err(|e| Error::io(path, e))?;
    read_rows_from(path, file)
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    let line = e.position().map(|p| p.line()).unwrap_or(0);
    if e.is_io_error() {
        if let csv::ErrorKind::Io(io) = e.into_kind() {
            return Error::io(path, io);
        }
        return parse_err(path, line, "read failed");
    }
    parse_err(path, line, e.to_string())
}

fn read_rows_from<T: DeserializeOwned, R: std::io::Read>(
    path: &Path,
    reader: R,
) -> Result<Vec<(u64, T)>> {
    let mut rdr = csv::ReaderBuilder::new()
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(|e| csv_error(path, e))?.clone();
    let mut out = Vec::new();
    for record in rdr.records() {
        let record = record.map_err(|e| csv_error(path, e))?;
        let line = record.position().map(|p| p.line()).unwrap_or(0);
        let row = record
            .deserialize(Some(&headers))
            .map_err(|e| parse_err(path, line, e.to_string()))?;
        out.push((line, row));
    }
    Ok(out)
}

#[derive(Deserialize)]
struct StaffCsv {
    dmu_id: String,
    sds_id: String,
    fp_years: f64,
    ap_years: f64,
    rf_years: f64,
    #[serde(default)]
    ss: Option<f64>,
}

#[derive(Deserialize)]
struct PublicationCsv {
    pub_id: String,
    dmu_id: String,
    sds_id: String,
    year: i32,
    citations: u32,
    categories: String,
    total_authors: u32,
    dmu_positions: String,
    life_science: String,
}

#[derive(Deserialize)]
struct MedianCsv {
    year: i32,
    category: String,
    median: f64,
    #[serde(default)]
    mean: Option<f64>,
}

#[derive(Deserialize)]
struct SummaryCsv {
    sds_id: String,
    fraction_publishing: f64,
    #[serde(default)]
    universities_active: Option<usize>,
}

fn split_list(s: &str) -> impl Iterator<Item = &str> {
    s.split(';').map(str::trim).filter(|x| !x.is_empty())
}

pub fn read_staff(path: &Path) -> Result<Vec<StaffRow>> {
    let mut seen = HashSet::new();
    read_rows::<StaffCsv>(path)?
        .into_iter()
        .map(|(line, r)| {
            if !seen.insert((r.sds_id.clone(), r.dmu_id.clone())) {
                return Err(parse_err(
                    path,
                    line,
                    format!("duplicate unit '{}' in {}", r.dmu_id, r.sds_id),
                ));
            }
            if let Some(ss) = r.ss {
                if !ss.is_finite() || ss < 0.0 {
                    return Err(parse_err(
                        path,
                        line,
                        format!("ss must be non-negative, got {ss}"),
                    ));
                }
            }
            let input = DmuInput::new(r.dmu_id, r.sds_id, r.fp_years, r.ap_years, r.rf_years)
                .map_err(|e| parse_err(path, line, e.to_string()))?;
            Ok(StaffRow { input, ss: r.ss })
        })
        .collect()
}

pub fn read_publications(path: &Path) -> Result<Vec<PublicationRow>> {
    let mut seen = HashSet::new();
    read_rows::<PublicationCsv>(path)?
        .into_iter()
        .map(|(line, r)| {
            let life_science = match r.life_science.as_str() {
                "0" | "false" => false,
                "1" | "true" => true,
                other => {
                    return Err(parse_err(
                        path,
                        line,
                        format!("life_science must be 0 or 1, got '{other}'"),
                    ))
                }
            };
            let positions = split_list(&r.dmu_positions)
                .map(|p| {
                    p.parse::<u32>()
                        .map_err(|_| parse_err(path, line, format!("bad author position '{p}'")))
                })
                .collect::<Result<Vec<_>>>()?;
            let categories = split_list(&r.categories).map(str::to_owned).collect();
            let record = PublicationRecord::new(
                r.pub_id,
                r.year,
                r.citations,
                categories,
                r.total_authors,
                positions,
                life_science,
            )
            .map_err(|e| parse_err(path, line, e.to_string()))?;
            if !seen.insert((record.pub_id.clone(), r.dmu_id.clone(), r.sds_id.clone())) {
                return Err(parse_err(
                    path,
                    line,
                    format!(
                        "publication '{}' listed twice for '{}' in {}",
                        record.pub_id, r.dmu_id, r.sds_id
                    ),
                ));
            }
            Ok(PublicationRow {
                dmu_id: r.dmu_id,
                sds_id: r.sds_id,
                record,
            })
        })
        .collect()
}

pub fn read_medians(path: &Path) -> Result<MedianTable> {
    let mut table = MedianTable::new();
    for (line, r) in read_rows::<MedianCsv>(path)? {
        if table.contains(r.year, &r.category) {
            return Err(parse_err(
                path,
                line,
                format!("duplicate median for ({}, {})", r.year, r.category),
            ));
        }
        table
            .insert(r.year, r.category.clone(), r.median)
            .map_err(|e| parse_err(path, line, e.to_string()))?;
        if let Some(mean) = r.mean {
            table
                .insert_mean(r.year, r.category, mean)
                .map_err(|e| parse_err(path, line, e.to_string()))?;
        }
    }
    Ok(table)
}

pub fn read_sds_summary(path: &Path) -> Result<BTreeMap<String, SdsSummary>> {
    let mut out = BTreeMap::new();
    for (line, r) in read_rows::<SummaryCsv>(path)? {
        if !(0.0..=1.0).contains(&r.fraction_publishing) {
            return Err(parse_err(
                path,
                line,
                format!(
                    "fraction_publishing must lie in [0, 1], got {}",
                    r.fraction_publishing
                ),
            ));
        }
        let summary = SdsSummary {
            fraction_publishing: r.fraction_publishing,
            universities_active: r.universities_active,
        };
        if out.insert(r.sds_id.clone(), summary).is_some() {
            return Err(parse_err(
                path,
                line,
                format!("duplicate summary for {}", r.sds_id),
            ));
        }
    }
    Ok(out)
}

/// Reads every input file and checks them against each other.
///
/// A staff file whose rows all carry `ss` runs in passthrough mode; one
/// without the column needs publications and medians. Publications must
/// reference staff rows, and medians must cover every (year, category) the
/// publications use.
pub fn ingest(paths: &InputPaths) -> Result<AssessmentData> {
    let staff = read_staff(&paths.staff)?;
    let publications = match &paths.publications {
        Some(p) => read_publications(p)?,
        None => Vec::new(),
    };
    let medians = match &paths.medians {
        Some(p) => read_medians(p)?,
        None => MedianTable::new(),
    };
    let summaries = match &paths.sds_summary {
        Some(p) => read_sds_summary(p)?,
        None => BTreeMap::new(),
    };
    let data = assemble(staff, publications, medians, summaries, paths)?;
    Ok(data)
}

fn assemble(
    staff: Vec<StaffRow>,
    publications: Vec<PublicationRow>,
    medians: MedianTable,
    summaries: BTreeMap<String, SdsSummary>,
    paths: &InputPaths,
) -> Result<AssessmentData> {
    if staff.is_empty() {
        return Err(Error::Empty(format!(
            "staff file {} has no rows",
            paths.staff.display()
        )));
    }
    let with_ss = staff.iter().filter(|r| r.ss.is_some()).count();
    let mode = if with_ss == staff.len() {
        OutputMode::Passthrough
    } else if with_ss == 0 {
        if paths.publications.is_none() || paths.medians.is_none() {
            return Err(Error::InvalidInput(
                "staff file has no ss column; publications and medians files are required".into(),
            ));
        }
        OutputMode::Computed
    } else {
        let missing: Vec<String> = staff
            .iter()
            .filter(|r| r.ss.is_none())
            .map(|r| format!("{}/{}", r.input.sds_id, r.input.dmu_id))
            .collect();
        return Err(Error::Integrity {
            message: "ss given for some units but not these".into(),
            keys: missing,
        });
    };

    let units: HashSet<(&str, &str)> = staff
        .iter()
        .map(|r| (r.input.sds_id.as_str(), r.input.dmu_id.as_str()))
        .collect();
    let orphans: BTreeSet<String> = publications
        .iter()
        .filter(|p| !units.contains(&(p.sds_id.as_str(), p.dmu_id.as_str())))
        .map(|p| format!("{}/{}", p.sds_id, p.dmu_id))
        .collect();
    if !orphans.is_empty() {
        return Err(Error::Integrity {
            message: "publications reference units missing from the staff file".into(),
            keys: orphans.into_iter().collect(),
        });
    }

    let sds: HashSet<&str> = staff.iter().map(|r| r.input.sds_id.as_str()).collect();
    let unknown: Vec<String> = summaries
        .keys()
        .filter(|k| !sds.contains(k.as_str()))
        .cloned()
        .collect();
    if !unknown.is_empty() {
        return Err(Error::Integrity {
            message: "summary rows for subfields missing from the staff file".into(),
            keys: unknown,
        });
    }

    for p in &publications {
        for c in &p.record.categories {
            if !medians.contains(p.record.year, c) {
                return Err(Error::MissingMedian {
                    year: p.record.year,
                    category: c.clone(),
                });
            }
        }
    }

    Ok(AssessmentData {
        mode,
        staff,
        publications,
        medians,
        summaries,
    })
}

impl AssessmentData {
    /// Passthrough data built directly from scored datasets.
    pub fn from_datasets(datasets: &[SdsDataset]) -> Result<Self> {
        let staff: Vec<StaffRow> = datasets
            .iter()
            .flat_map(|ds| {
                ds.units.iter().map(|u| StaffRow {
                    input: u.input.clone(),
                    ss: Some(u.ss),
                })
            })
            .collect();
        if staff.is_empty() {
            return Err(Error::Empty("no units".into()));
        }
        Ok(AssessmentData {
            mode: OutputMode::Passthrough,
            staff,
            publications: Vec::new(),
            medians: MedianTable::new(),
            summaries: BTreeMap::new(),
        })
    }
}
