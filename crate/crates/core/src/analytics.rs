//! Post-processing of efficiency scores: percentile ranks, cost-weighted
//! aggregates, score histograms, the technical/allocative quadrant matrix,
//! output per staff-year, and subfield eligibility.

use indexmap::IndexMap;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{DmuInput, EfficiencyScores, ScoreTriple};

/// Median with the midpoint convention for even counts. `None` when empty
/// or when any value is NaN.
pub fn median(values: &[f64]) -> Option<f64> {
    if values.is_empty() || values.iter().any(|v| v.is_nan()) {
        return None;
    }
    let mut v = values.to_vec();
    v.sort_by(f64::total_cmp);
    let mid = v.len() / 2;
    Some(if v.len().is_multiple_of(2) {
        (v[mid - 1] + v[mid]) / 2.0
    } else {
        v[mid]
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PercentileScore {
    pub score: f64,
    pub r_pct: f64,
}

/// Percentile rank of `target` among `scores`, 100 best and 0 worst.
///
/// Counts strictly worse scores plus half of the other scores tied with the
/// target, over `len - 1`.
pub fn percentile_rank(scores: &[f64], target: f64) -> Result<f64> {
    if scores.len() < 2 {
        return Err(Error::UndefinedRank(format!(
            "need at least two scores, got {}",
            scores.len()
        )));
    }
    if scores.iter().any(|s| s.is_nan()) || target.is_nan() {
        return Err(Error::UndefinedRank("NaN score".into()));
    }
    let worse = scores.iter().filter(|&&s| s < target).count();
    let equal = scores.iter().filter(|&&s| s == target).count();
    if equal == 0 {
        return Err(Error::UndefinedRank(format!(
            "target {target} is not among the scores"
        )));
    }
    let tied_others = (equal - 1) as f64;
    Ok(100.0 * (worse as f64 + 0.5 * tied_others) / (scores.len() - 1) as f64)
}

/// Percentile of every score in `scores`, in input order.
pub fn percentile_ranks(scores: &[f64]) -> Result<Vec<PercentileScore>> {
    scores
        .iter()
        .map(|&s| percentile_rank(scores, s).map(|r_pct| PercentileScore { score: s, r_pct }))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TriplePercentiles {
    pub te: f64,
    pub ae: f64,
    pub ce: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AggregateScores {
    pub te: f64,
    pub ae: f64,
    pub ce: f64,
    /// Sum of the weights, k€.
    pub total_weight: f64,
    /// Rank of this aggregate among comparable aggregates, when known.
    pub percentiles: Option<TriplePercentiles>,
}

impl AggregateScores {
    pub fn triple(&self) -> ScoreTriple {
        ScoreTriple::new(self.te, self.ae, self.ce)
    }
}

/// Cost-weighted mean of each score.
pub fn aggregate_weighted(rows: &[(ScoreTriple, f64)]) -> Result<AggregateScores> {
    if rows.is_empty() {
        return Err(Error::Empty("no rows to aggregate".into()));
    }
    if let Some((_, w)) = rows.iter().find(|(_, w)| !w.is_finite() || *w <= 0.0) {
        return Err(Error::InvalidInput(format!(
            "aggregation weights must be positive, got {w}"
        )));
    }
    let total: f64 = rows.iter().map(|(_, w)| w).sum();
    let mean = |pick: fn(&ScoreTriple) -> f64| -> f64 {
        rows.iter().map(|(s, w)| pick(s) * w).sum::<f64>() / total
    };
    Ok(AggregateScores {
        te: mean(|s| s.te),
        ae: mean(|s| s.ae),
        ce: mean(|s| s.ce),
        total_weight: total,
        percentiles: None,
    })
}

pub const HISTOGRAM_BINS: usize = 5;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Histogram {
    /// Bins `[0,0.2)`, `[0.2,0.4)`, `[0.4,0.6)`, `[0.6,0.8)`, `[0.8,1.0]`.
    pub counts: [usize; HISTOGRAM_BINS],
    pub median: f64,
}

impl Histogram {
    pub fn lower_edge(bin: usize) -> f64 {
        bin as f64 / HISTOGRAM_BINS as f64
    }

    /// Index of the most populated bin; the lowest wins ties.
    pub fn modal_bin(&self) -> usize {
        let max = self.counts.iter().copied().max().unwrap_or(0);
        self.counts.iter().position(|&c| c == max).unwrap_or(0)
    }

    pub fn total(&self) -> usize {
        self.counts.iter().sum()
    }
}

/// Quintile histogram of scores in `[0, 1]` plus their median.
pub fn histogram(scores: &[f64]) -> Result<Histogram> {
    if scores.is_empty() {
        return Err(Error::Empty("no scores for histogram".into()));
    }
    let mut counts = [0usize; HISTOGRAM_BINS];
    for &s in scores {
        if !(0.0..=1.0).contains(&s) {
            return Err(Error::InvalidInput(format!("score {s} outside [0, 1]")));
        }
        let bin = (1..HISTOGRAM_BINS)
            .rev()
            .find(|&b| s >= Histogram::lower_edge(b))
            .unwrap_or(0);
        counts[bin] += 1;
    }
    Ok(Histogram {
        counts,
        median: median(scores).expect("non-empty, no NaN"),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct QuadrantSummary {
    pub low_te_low_ae: usize,
    pub low_te_high_ae: usize,
    pub high_te_high_ae: usize,
    pub high_te_low_ae: usize,
}

impl QuadrantSummary {
    pub fn total(&self) -> usize {
        self.low_te_low_ae + self.low_te_high_ae + self.high_te_high_ae + self.high_te_low_ae
    }
}

pub const DEFAULT_QUADRANT_THRESHOLD: f64 = 0.5;

/// Splits units by `te >= threshold` and `ae >= threshold`.
pub fn efficiency_matrix<'a, I>(scores: I, threshold: f64) -> QuadrantSummary
where
    I: IntoIterator<Item = &'a EfficiencyScores>,
{
    let mut q = QuadrantSummary::default();
    for s in scores {
        match (s.te >= threshold, s.ae >= threshold) {
            (false, false) => q.low_te_low_ae += 1,
            (false, true) => q.low_te_high_ae += 1,
            (true, true) => q.high_te_high_ae += 1,
            (true, false) => q.high_te_low_ae += 1,
        }
    }
    q
}

/// Output per staff-year.
pub fn productivity_ratio(ss: f64, dmu: &DmuInput) -> f64 {
    ss / dmu.total_years()
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct EligibilityCriteria {
    pub min_universities: usize,
    pub min_fraction_publishing: f64,
}

impl Default for EligibilityCriteria {
    fn default() -> Self {
        EligibilityCriteria {
            min_universities: 24,
            min_fraction_publishing: 0.5,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ExclusionReason {
    /// Too few scientists in the subfield publish for output to be
    /// measured by publications.
    Significance,
    /// Too few universities active for a stable frontier.
    Robustness,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "decision", content = "failed", rename_all = "snake_case")]
pub enum Eligibility {
    Include,
    Exclude(Vec<ExclusionReason>),
}

impl Eligibility {
    pub fn is_included(&self) -> bool {
        matches!(self, Eligibility::Include)
    }
}

/// Decides whether a subfield enters the assessment. `None` for the
/// publishing fraction skips the significance check.
pub fn eligibility_filter(
    universities_active: usize,
    fraction_publishing: Option<f64>,
    criteria: &EligibilityCriteria,
) -> Eligibility {
    let mut failed = Vec::new();
    if let Some(f) = fraction_publishing {
        if f < criteria.min_fraction_publishing {
            failed.push(ExclusionReason::Significance);
        }
    }
    if universities_active < criteria.min_universities {
        failed.push(ExclusionReason::Robustness);
    }
    if failed.is_empty() {
        Eligibility::Include
    } else {
        Eligibility::Exclude(failed)
    }
}

/// 1-based competition ranks, best (highest) first.
fn ranks(values: &[(String, f64)]) -> IndexMap<&str, usize> {
    values
        .iter()
        .map(|(id, v)| {
            let better = values.iter().filter(|(_, o)| o > v).count();
            (id.as_str(), better + 1)
        })
        .collect()
}

/// Per-unit `rank_by_ratio - rank_by_ce`; positive means the unit ranks
/// lower by the simple ratio than by cost efficiency.
pub fn rank_divergence(
    scores_by_ce: &[(String, f64)],
    scores_by_ratio: &[(String, f64)],
) -> Result<IndexMap<String, i64>> {
    let ce = ranks(scores_by_ce);
    let ratio = ranks(scores_by_ratio);
    let mut orphans: Vec<String> = ce
        .keys()
        .filter(|k| !ratio.contains_key(*k))
        .chain(ratio.keys().filter(|k| !ce.contains_key(*k)))
        .map(|k| k.to_string())
        .collect();
    if ce.len() != scores_by_ce.len() || ratio.len() != scores_by_ratio.len() {
        orphans.push("<duplicate ids>".into());
    }
    if !orphans.is_empty() {
        return Err(Error::Integrity {
            message: "rank lists cover different units".into(),
            keys: orphans,
        });
    }
    Ok(ce
        .iter()
        .map(|(id, &r)| (id.to_string(), ratio[id] as i64 - r as i64))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn es(te: f64, ae: f64) -> EfficiencyScores {
        EfficiencyScores {
            te,
            ae,
            ce: te * ae,
            reference_weights: IndexMap::new(),
        }
    }

    #[test]
    fn percentile_endpoints_and_midpoint() {
        let s = [0.3, 0.1, 0.9, 0.5];
        assert_eq!(percentile_rank(&s, 0.9).unwrap(), 100.0);
        assert_eq!(percentile_rank(&s, 0.1).unwrap(), 0.0);
        assert_eq!(percentile_rank(&[1.0, 2.0, 3.0], 2.0).unwrap(), 50.0);
    }

    #[test]
    fn percentile_errors() {
        assert!(matches!(
            percentile_rank(&[1.0], 1.0),
            Err(Error::UndefinedRank(_))
        ));
        assert!(percentile_rank(&[1.0, 2.0], 3.0).is_err());
    }

    #[test]
    fn ties_take_half_credit() {
        assert_eq!(percentile_rank(&[0.0, 0.0, 1.0], 0.0).unwrap(), 25.0);
        assert_eq!(percentile_rank(&[1.0, 1.0], 1.0).unwrap(), 50.0);
    }

    #[test]
    fn single_row_aggregate_is_identity() {
        let t = ScoreTriple::new(0.4, 0.5, 0.2);
        let a = aggregate_weighted(&[(t, 398.5)]).unwrap();
        assert_eq!(a.triple(), t);
        assert_eq!(a.total_weight, 398.5);
        assert!(aggregate_weighted(&[]).is_err());
        assert!(aggregate_weighted(&[(t, 0.0)]).is_err());
    }

    #[test]
    fn histogram_edges() {
        let h = histogram(&[0.0, 0.2, 0.4, 0.6, 0.8, 1.0, 0.1999]).unwrap();
        assert_eq!(h.counts, [2, 1, 1, 1, 2]);
        let h = histogram(&[1.0, 1.0]).unwrap();
        assert_eq!(h.counts, [0, 0, 0, 0, 2]);
        assert_eq!(h.median, 1.0);
        assert!(histogram(&[]).is_err());
        assert!(histogram(&[1.5]).is_err());
    }

    #[test]
    fn quadrants() {
        let s = [es(1.0, 1.0), es(0.2, 0.9), es(0.1, 0.1), es(0.9, 0.2)];
        let q = efficiency_matrix(&s, 0.5);
        assert_eq!(
            q,
            QuadrantSummary {
                low_te_low_ae: 1,
                low_te_high_ae: 1,
                high_te_high_ae: 1,
                high_te_low_ae: 1
            }
        );
        assert_eq!(efficiency_matrix(&s, 0.0).high_te_high_ae, 4);
    }

    #[test]
    fn eligibility_boundaries() {
        let c = EligibilityCriteria::default();
        assert_eq!(eligibility_filter(28, Some(0.8), &c), Eligibility::Include);
        assert_eq!(eligibility_filter(24, Some(0.5), &c), Eligibility::Include);
        assert_eq!(
            eligibility_filter(23, Some(0.9), &c),
            Eligibility::Exclude(vec![ExclusionReason::Robustness])
        );
        assert_eq!(
            eligibility_filter(30, Some(0.49), &c),
            Eligibility::Exclude(vec![ExclusionReason::Significance])
        );
        assert_eq!(eligibility_filter(30, None, &c), Eligibility::Include);
    }

    #[test]
    fn rank_divergence_cases() {
        let a: Vec<(String, f64)> = vec![("x".into(), 3.0), ("y".into(), 2.0), ("z".into(), 1.0)];
        let d = rank_divergence(&a, &a).unwrap();
        assert!(d.values().all(|&v| v == 0));
        let b: Vec<(String, f64)> = vec![("x".into(), 2.0), ("y".into(), 3.0), ("z".into(), 1.0)];
        let d = rank_divergence(&a, &b).unwrap();
        assert_eq!((d["x"], d["y"], d["z"]), (1, -1, 0));
        let c: Vec<(String, f64)> = vec![("x".into(), 2.0), ("w".into(), 3.0), ("z".into(), 1.0)];
        assert!(rank_divergence(&a, &c).is_err());
    }

    #[test]
    fn median_convention() {
        assert_eq!(median(&[3.0, 1.0, 2.0]), Some(2.0));
        assert_eq!(median(&[4.0, 1.0, 2.0, 3.0]), Some(2.5));
        assert_eq!(median(&[]), None);
    }
}
