//! Shared domain types: publications, reference medians, staff inputs,
//! the cost vector and per-subfield datasets.
//!
//! Values are plain data after construction. Constructors check the
//! invariants; [`validate_dataset`] re-checks a whole subfield at once and
//! reports every violation instead of stopping at the first.

use std::collections::{BTreeMap, HashSet};

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result, Violation};

/// One publication as seen from a single assessed unit.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PublicationRecord {
    pub pub_id: String,
    pub year: i32,
    pub citations: u32,
    pub categories: Vec<String>,
    pub total_authors: u32,
    /// 1-based byline positions held by the unit's authors.
    pub dmu_author_positions: Vec<u32>,
    pub life_science: bool,
}

impl PublicationRecord {
    pub fn new(
        pub_id: impl Into<String>,
        year: i32,
        citations: u32,
        categories: Vec<String>,
        total_authors: u32,
        dmu_author_positions: Vec<u32>,
        life_science: bool,
    ) -> Result<Self> {
        let record = PublicationRecord {
            pub_id: pub_id.into(),
            year,
            citations,
            categories,
            total_authors,
            dmu_author_positions,
            life_science,
        };
        record.check()?;
        Ok(record)
    }

    pub fn check(&self) -> Result<()> {
        let id = &self.pub_id;
        if self.categories.is_empty() {
            return Err(Error::InvalidInput(format!(
                "publication '{id}' has no subject category"
            )));
        }
        if self.total_authors == 0 {
            return Err(Error::InvalidInput(format!(
                "publication '{id}' has zero authors"
            )));
        }
        let mut seen = HashSet::new();
        for &p in &self.dmu_author_positions {
            if p == 0 || p > self.total_authors {
                return Err(Error::InvalidInput(format!(
                    "publication '{id}': author position {p} outside 1..={}",
                    self.total_authors
                )));
            }
            if !seen.insert(p) {
                return Err(Error::InvalidInput(format!(
                    "publication '{id}': author position {p} listed twice"
                )));
            }
        }
        Ok(())
    }

    /// True when the unit holds both the first and the last byline slot.
    pub fn first_and_last_in_unit(&self) -> bool {
        let n = self.total_authors;
        self.dmu_author_positions.contains(&1) && self.dmu_author_positions.contains(&n)
    }
}

/// Reference citation medians keyed by (year, subject category), with
/// optional reference means used only when a median divisor is zero.
#[derive(Debug, Clone, Default, PartialEq, Serialize, Deserialize)]
pub struct MedianTable {
    medians: BTreeMap<(i32, String), f64>,
    means: BTreeMap<(i32, String), f64>,
}

impl MedianTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn insert(&mut self, year: i32, category: impl Into<String>, median: f64) -> Result<()> {
        let category = category.into();
        if !median.is_finite() || median < 0.0 {
            return Err(Error::InvalidInput(format!(
                "median for ({year}, {category}) must be finite and non-negative, got {median}"
            )));
        }
        self.medians.insert((year, category), median);
        Ok(())
    }

    pub fn insert_mean(&mut self, year: i32, category: impl Into<String>, mean: f64) -> Result<()> {
        let category = category.into();
        if !mean.is_finite() || mean < 0.0 {
            return Err(Error::InvalidInput(format!(
                "mean for ({year}, {category}) must be finite and non-negative, got {mean}"
            )));
        }
        self.means.insert((year, category), mean);
        Ok(())
    }

    pub fn with(mut self, year: i32, category: &str, median: f64) -> Result<Self> {
        self.insert(year, category, median)?;
        Ok(self)
    }

    pub fn median(&self, year: i32, category: &str) -> Result<f64> {
        self.medians
            .get(&(year, category.to_owned()))
            .copied()
            .ok_or_else(|| Error::MissingMedian {
                year,
                category: category.to_owned(),
            })
    }

    pub fn mean(&self, year: i32, category: &str) -> Option<f64> {
        self.means.get(&(year, category.to_owned())).copied()
    }

    pub fn contains(&self, year: i32, category: &str) -> bool {
        self.medians.contains_key(&(year, category.to_owned()))
    }

    pub fn len(&self) -> usize {
        self.medians.len()
    }

    pub fn is_empty(&self) -> bool {
        self.medians.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (i32, &str, f64, Option<f64>)> + '_ {
        self.medians.iter().map(move |((y, c), m)| {
            (
                *y,
                c.as_str(),
                *m,
                self.means.get(&(*y, c.clone())).copied(),
            )
        })
    }

    /// Builds a table from raw reference citation counts, one entry per
    /// (year, category). Even-sized groups take the midpoint of the two
    /// central order statistics. Means are recorded alongside.
    pub fn from_reference<I, S>(citations: I) -> Self
    where
        I: IntoIterator<Item = (i32, S, u32)>,
        S: Into<String>,
    {
        let mut groups: BTreeMap<(i32, String), Vec<f64>> = BTreeMap::new();
        for (year, category, c) in citations {
            groups
                .entry((year, category.into()))
                .or_default()
                .push(f64::from(c));
        }
        let mut table = MedianTable::new();
        for (key, values) in groups {
            let mean = values.iter().sum::<f64>() / values.len() as f64;
            let median = crate::analytics::median(&values).expect("non-empty group");
            table.means.insert(key.clone(), mean);
            table.medians.insert(key, median);
        }
        table
    }
}

/// Staff-years per academic rank for one university within one subfield.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DmuInput {
    pub dmu_id: String,
    pub sds_id: String,
    /// Full professors.
    pub fp_years: f64,
    /// Associate professors.
    pub ap_years: f64,
    /// Assistant professors.
    pub rf_years: f64,
}

impl DmuInput {
    pub fn new(
        dmu_id: impl Into<String>,
        sds_id: impl Into<String>,
        fp_years: f64,
        ap_years: f64,
        rf_years: f64,
    ) -> Result<Self> {
        let input = DmuInput {
            dmu_id: dmu_id.into(),
            sds_id: sds_id.into(),
            fp_years,
            ap_years,
            rf_years,
        };
        if let Some(v) = input.violations().into_iter().next() {
            return Err(Error::InvalidInput(v.to_string()));
        }
        Ok(input)
    }

    pub fn inputs(&self) -> [f64; 3] {
        [self.fp_years, self.ap_years, self.rf_years]
    }

    pub fn total_years(&self) -> f64 {
        self.fp_years + self.ap_years + self.rf_years
    }

    /// Same unit with every staff-year figure multiplied by `factor`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        DmuInput::new(
            self.dmu_id.clone(),
            self.sds_id.clone(),
            self.fp_years * factor,
            self.ap_years * factor,
            self.rf_years * factor,
        )
    }

    fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let fields = [
            ("fp_years", self.fp_years),
            ("ap_years", self.ap_years),
            ("rf_years", self.rf_years),
        ];
        for (field, value) in fields {
            if !value.is_finite() {
                out.push(Violation::NonFiniteValue {
                    dmu_id: self.dmu_id.clone(),
                    field,
                });
            } else if value < 0.0 {
                out.push(Violation::NegativeInput {
                    dmu_id: self.dmu_id.clone(),
                    field,
                    value,
                });
            }
        }
        if out.is_empty() && self.total_years() <= 0.0 {
            out.push(Violation::ZeroInput {
                dmu_id: self.dmu_id.clone(),
            });
        }
        out
    }
}

/// Average cost per staff-year of each rank, in k€.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct CostVector {
    pub fp_cost: f64,
    pub ap_cost: f64,
    pub rf_cost: f64,
}

impl Default for CostVector {
    fn default() -> Self {
        CostVector {
            fp_cost: 111.700,
            ap_cost: 79.700,
            rf_cost: 56.650,
        }
    }
}

impl CostVector {
    pub fn new(fp_cost: f64, ap_cost: f64, rf_cost: f64) -> Result<Self> {
        let costs = CostVector {
            fp_cost,
            ap_cost,
            rf_cost,
        };
        costs.check()?;
        Ok(costs)
    }

    pub fn check(&self) -> Result<()> {
        for (name, c) in [
            ("fp_cost", self.fp_cost),
            ("ap_cost", self.ap_cost),
            ("rf_cost", self.rf_cost),
        ] {
            if !c.is_finite() || c <= 0.0 {
                return Err(Error::InvalidInput(format!(
                    "{name} must be finite and strictly positive, got {c}"
                )));
            }
        }
        Ok(())
    }

    pub fn as_array(&self) -> [f64; 3] {
        [self.fp_cost, self.ap_cost, self.rf_cost]
    }
}

/// Cost of a unit's research staff in k€.
pub fn staff_cost(dmu: &DmuInput, costs: &CostVector) -> f64 {
    dmu.fp_years * costs.fp_cost + dmu.ap_years * costs.ap_cost + dmu.rf_years * costs.rf_cost
}

/// Technical, allocative and cost efficiency of one unit.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ScoreTriple {
    pub te: f64,
    pub ae: f64,
    pub ce: f64,
}

impl ScoreTriple {
    pub const ZERO: ScoreTriple = ScoreTriple {
        te: 0.0,
        ae: 0.0,
        ce: 0.0,
    };

    pub fn new(te: f64, ae: f64, ce: f64) -> Self {
        ScoreTriple { te, ae, ce }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EfficiencyScores {
    pub te: f64,
    pub ae: f64,
    pub ce: f64,
    /// Non-zero intensity weights of the technical-efficiency solution,
    /// keyed by peer `dmu_id`.
    pub reference_weights: IndexMap<String, f64>,
}

impl EfficiencyScores {
    pub fn nil() -> Self {
        EfficiencyScores {
            te: 0.0,
            ae: 0.0,
            ce: 0.0,
            reference_weights: IndexMap::new(),
        }
    }

    pub fn triple(&self) -> ScoreTriple {
        ScoreTriple::new(self.te, self.ae, self.ce)
    }
}

/// One university's staff inputs together with its output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdsUnit {
    pub input: DmuInput,
    pub ss: f64,
}

impl SdsUnit {
    pub fn new(input: DmuInput, ss: f64) -> Self {
        SdsUnit { input, ss }
    }

    pub fn dmu_id(&self) -> &str {
        &self.input.dmu_id
    }
}

/// All universities active in one subfield.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SdsDataset {
    pub sds_id: String,
    pub units: Vec<SdsUnit>,
}

impl SdsDataset {
    pub fn new(sds_id: impl Into<String>, units: Vec<SdsUnit>) -> Result<Self> {
        validate_dataset(SdsDataset {
            sds_id: sds_id.into(),
            units,
        })
    }

    pub fn len(&self) -> usize {
        self.units.len()
    }

    pub fn is_empty(&self) -> bool {
        self.units.is_empty()
    }

    pub fn position(&self, dmu_id: &str) -> Option<usize> {
        self.units.iter().position(|u| u.dmu_id() == dmu_id)
    }

    pub fn violations(&self) -> Vec<Violation> {
        let mut out = Vec::new();
        let mut seen = HashSet::new();
        for unit in &self.units {
            let id = unit.dmu_id();
            if !seen.insert(id) {
                out.push(Violation::DuplicateDmu {
                    dmu_id: id.to_owned(),
                });
            }
            if unit.input.sds_id != self.sds_id {
                out.push(Violation::SdsMismatch {
                    dmu_id: id.to_owned(),
                    expected: self.sds_id.clone(),
                    found: unit.input.sds_id.clone(),
                });
            }
            if !unit.ss.is_finite() {
                out.push(Violation::NonFiniteValue {
                    dmu_id: id.to_owned(),
                    field: "ss",
                });
            } else if unit.ss < 0.0 {
                out.push(Violation::NegativeOutput {
                    dmu_id: id.to_owned(),
                    ss: unit.ss,
                });
            }
            out.extend(unit.input.violations());
        }
        out
    }
}

/// Returns the dataset unchanged if every invariant holds, otherwise the
/// full list of violations.
pub fn validate_dataset(ds: SdsDataset) -> Result<SdsDataset> {
    let violations = ds.violations();
    if violations.is_empty() {
        Ok(ds)
    } else {
        Err(Error::Validation {
            sds_id: ds.sds_id,
            violations,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn unit(id: &str, fp: f64, ap: f64, rf: f64, ss: f64) -> SdsUnit {
        SdsUnit::new(
            DmuInput {
                dmu_id: id.into(),
                sds_id: "S".into(),
                fp_years: fp,
                ap_years: ap,
                rf_years: rf,
            },
            ss,
        )
    }

    #[test]
    fn staff_cost_matches_printed_rows() {
        let c = CostVector::default();
        let agr = DmuInput::new("X", "AGR/02", 0.0, 5.0, 0.0).unwrap();
        let bio = DmuInput::new("X", "BIO/05", 1.0, 0.0, 0.0).unwrap();
        assert!((staff_cost(&agr, &c) - 398.5).abs() < 1e-9);
        assert!((staff_cost(&bio, &c) - 111.7).abs() < 1e-9);
    }

    #[test]
    fn zero_input_rejected_at_construction() {
        let err = DmuInput::new("X", "S", 0.0, 0.0, 0.0).unwrap_err();
        assert!(err.to_string().contains("zero total"));
        assert!(DmuInput::new("X", "S", -1.0, 2.0, 0.0).is_err());
        assert!(DmuInput::new("X", "S", f64::NAN, 2.0, 0.0).is_err());
    }

    #[test]
    fn cost_vector_must_be_positive() {
        assert!(CostVector::new(1.0, 0.0, 1.0).is_err());
        assert!(CostVector::new(1.0, 2.0, 3.0).is_ok());
    }

    #[test]
    fn duplicate_ids_reported() {
        let ds = SdsDataset {
            sds_id: "S".into(),
            units: vec![unit("A", 1.0, 0.0, 0.0, 1.0), unit("A", 2.0, 0.0, 0.0, 1.0)],
        };
        match validate_dataset(ds).unwrap_err() {
            Error::Validation { violations, .. } => {
                assert_eq!(
                    violations,
                    vec![Violation::DuplicateDmu { dmu_id: "A".into() }]
                );
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn negative_output_and_zero_input_both_listed() {
        let ds = SdsDataset {
            sds_id: "S".into(),
            units: vec![
                unit("A", 1.0, 0.0, 0.0, -1.0),
                unit("B", 0.0, 0.0, 0.0, 1.0),
            ],
        };
        match validate_dataset(ds).unwrap_err() {
            Error::Validation { violations, .. } => {
                assert_eq!(violations.len(), 2);
                assert!(matches!(violations[0], Violation::NegativeOutput { .. }));
                assert!(matches!(violations[1], Violation::ZeroInput { .. }));
            }
            e => panic!("unexpected {e}"),
        }
    }

    #[test]
    fn publication_positions_checked() {
        let cats = vec!["A".to_string()];
        assert!(PublicationRecord::new("p", 2005, 1, cats.clone(), 3, vec![1, 3], false).is_ok());
        assert!(PublicationRecord::new("p", 2005, 1, cats.clone(), 3, vec![4], false).is_err());
        assert!(PublicationRecord::new("p", 2005, 1, cats.clone(), 3, vec![0], false).is_err());
        assert!(PublicationRecord::new("p", 2005, 1, cats, 3, vec![2, 2], false).is_err());
        assert!(PublicationRecord::new("p", 2005, 1, vec![], 3, vec![], false).is_err());
    }

    #[test]
    fn missing_median_is_an_error_not_zero() {
        let t = MedianTable::new().with(2005, "A", 3.0).unwrap();
        assert_eq!(t.median(2005, "A").unwrap(), 3.0);
        assert!(matches!(
            t.median(2006, "A"),
            Err(Error::MissingMedian { year: 2006, .. })
        ));
    }

    #[test]
    fn reference_medians_use_midpoint() {
        let t = MedianTable::from_reference(vec![
            (2005, "A", 1),
            (2005, "A", 4),
            (2005, "A", 6),
            (2005, "A", 10),
            (2006, "A", 3),
        ]);
        assert_eq!(t.median(2005, "A").unwrap(), 5.0);
        assert_eq!(t.mean(2005, "A"), Some(5.25));
        assert_eq!(t.median(2006, "A").unwrap(), 3.0);
    }
}
