//! Scientific Strength: field-standardized citations times fractional
//! author counts, summed over a unit's publications.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::model::{MedianTable, PublicationRecord};

/// Byline weighting used for life-science publications.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum PositionalScheme {
    /// First and last author share the assessed university: 40% to each
    /// end, 20% split across the rest.
    SharedEnds,
    /// 30% to each end, 15% to the second and second-to-last, 10% split
    /// across the rest.
    SplitEnds,
}

impl PositionalScheme {
    pub fn select(first_last_same_university: bool) -> Self {
        if first_last_same_university {
            PositionalScheme::SharedEnds
        } else {
            PositionalScheme::SplitEnds
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StandardizedPublication {
    pub pub_id: String,
    pub c_bar: f64,
    pub f: f64,
    pub contribution: f64,
}

/// Citations divided by the mean of the reference medians of every listed
/// category for that year.
///
/// A zero divisor yields 0 for uncited papers. Cited papers fall back to the
/// mean of the reference means when every category has one, and fail
/// otherwise.
pub fn standardize_citations(
    citations: u32,
    year: i32,
    categories: &[String],
    medians: &MedianTable,
) -> Result<f64> {
    if categories.is_empty() {
        return Err(Error::InvalidInput(
            "publication without subject category".into(),
        ));
    }
    let mut sum = 0.0;
    for c in categories {
        sum += medians.median(year, c)?;
    }
    let divisor = sum / categories.len() as f64;
    let citations = f64::from(citations);
    if divisor > 0.0 {
        return Ok(citations / divisor);
    }
    if citations == 0.0 {
        return Ok(0.0);
    }
    let means: Option<Vec<f64>> = categories.iter().map(|c| medians.mean(year, c)).collect();
    match means {
        Some(m) => {
            let mean_divisor = m.iter().sum::<f64>() / m.len() as f64;
            if mean_divisor > 0.0 {
                Ok(citations / mean_divisor)
            } else {
                Err(Error::ZeroMedian {
                    year,
                    categories: categories.to_vec(),
                })
            }
        }
        None => Err(Error::ZeroMedian {
            year,
            categories: categories.to_vec(),
        }),
    }
}

/// Share of the byline held by the unit.
pub fn fractional_count_standard(total_authors: u32, dmu_author_positions: &[u32]) -> f64 {
    if total_authors == 0 {
        return 0.0;
    }
    dmu_author_positions.len() as f64 / f64::from(total_authors)
}

/// Weight of every byline position (index 0 is author 1), normalized to sum
/// to one.
///
/// Positions are claimed from the outside in: the two ends first, then (for
/// [`PositionalScheme::SplitEnds`]) the second and second-to-last slots,
/// then the remaining interior shares the leftover pool. A slot claimed by
/// an earlier tier keeps that weight only. Short bylines leave tiers empty,
/// so the raw weights are rescaled to sum to one.
pub fn positional_weights(total_authors: u32, scheme: PositionalScheme) -> Vec<f64> {
    let n = total_authors as usize;
    if n == 0 {
        return Vec::new();
    }
    let (end_w, second_w, pool) = match scheme {
        PositionalScheme::SharedEnds => (0.40, None, 0.20),
        PositionalScheme::SplitEnds => (0.30, Some(0.15), 0.10),
    };
    let mut w: Vec<Option<f64>> = vec![None; n];
    w[0] = Some(end_w);
    w[n - 1] = Some(end_w);
    if let Some(sw) = second_w {
        for idx in [1, n.saturating_sub(2)] {
            if idx < n && w[idx].is_none() {
                w[idx] = Some(sw);
            }
        }
    }
    let interior = w.iter().filter(|x| x.is_none()).count();
    let share = if interior > 0 {
        pool / interior as f64
    } else {
        0.0
    };
    let raw: Vec<f64> = w.into_iter().map(|x| x.unwrap_or(share)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|x| x / total).collect()
}

pub fn fractional_count_life_science(
    total_authors: u32,
    dmu_author_positions: &[u32],
    first_last_same_university: bool,
) -> f64 {
    let weights = positional_weights(
        total_authors,
        PositionalScheme::select(first_last_same_university),
    );
    let f: f64 = dmu_author_positions
        .iter()
        .filter_map(|&p| weights.get((p as usize).wrapping_sub(1)))
        .fold(0.0, |a, w| a + w);
    f.min(1.0)
}

/// Fractional count for a record, picking the life-science scheme when the
/// record is flagged.
pub fn fractional_count(record: &PublicationRecord) -> f64 {
    if record.life_science {
        fractional_count_life_science(
            record.total_authors,
            &record.dmu_author_positions,
            record.first_and_last_in_unit(),
        )
    } else {
        fractional_count_standard(record.total_authors, &record.dmu_author_positions)
    }
}

pub fn standardize(
    record: &PublicationRecord,
    medians: &MedianTable,
) -> Result<StandardizedPublication> {
    record.check()?;
    let c_bar = standardize_citations(record.citations, record.year, &record.categories, medians)?;
    let f = fractional_count(record);
    Ok(StandardizedPublication {
        pub_id: record.pub_id.clone(),
        c_bar,
        f,
        contribution: c_bar * f,
    })
}

/// Sum of standardized contributions; an empty list scores zero.
pub fn scientific_strength<'a, I>(pubs: I, medians: &MedianTable) -> Result<f64>
where
    I: IntoIterator<Item = &'a PublicationRecord>,
{
    pubs.into_iter().try_fold(
        0.0,
        |acc, p| Ok(acc + standardize(p, medians)?.contribution),
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cats(c: &[&str]) -> Vec<String> {
        c.iter().map(|s| s.to_string()).collect()
    }

    fn close(a: f64, b: f64) -> bool {
        (a - b).abs() < 1e-12
    }

    #[test]
    fn citations_use_average_of_medians() {
        let t = MedianTable::new()
            .with(2006, "A", 4.0)
            .unwrap()
            .with(2006, "B", 6.0)
            .unwrap();
        assert!(close(
            standardize_citations(12, 2006, &cats(&["A", "B"]), &t).unwrap(),
            2.4
        ));
        assert_eq!(
            standardize_citations(0, 2006, &cats(&["A"]), &t).unwrap(),
            0.0
        );
        let t7 = MedianTable::new().with(2006, "C", 7.0).unwrap();
        assert!(close(
            standardize_citations(7, 2006, &cats(&["C"]), &t7).unwrap(),
            1.0
        ));
    }

    #[test]
    fn missing_key_names_the_key() {
        let t = MedianTable::new().with(2006, "A", 4.0).unwrap();
        let err = standardize_citations(3, 2006, &cats(&["A", "Z"]), &t).unwrap_err();
        assert!(err.to_string().contains("'Z'"), "{err}");
    }

    #[test]
    fn zero_median_fallback() {
        let mut t = MedianTable::new().with(2006, "A", 0.0).unwrap();
        assert_eq!(
            standardize_citations(0, 2006, &cats(&["A"]), &t).unwrap(),
            0.0
        );
        assert!(matches!(
            standardize_citations(3, 2006, &cats(&["A"]), &t),
            Err(Error::ZeroMedian { .. })
        ));
        t.insert_mean(2006, "A", 1.5).unwrap();
        assert!(close(
            standardize_citations(3, 2006, &cats(&["A"]), &t).unwrap(),
            2.0
        ));
    }

    #[test]
    fn standard_fractional_counts() {
        assert!(close(fractional_count_standard(5, &[1, 3]), 0.4));
        assert!(close(fractional_count_standard(1, &[1]), 1.0));
        assert_eq!(fractional_count_standard(4, &[]), 0.0);
    }

    #[test]
    fn life_science_examples() {
        assert!(close(fractional_count_life_science(6, &[1, 6], true), 0.80));
        assert!(close(fractional_count_life_science(6, &[2], false), 0.15));
        assert!(close(fractional_count_life_science(1, &[1], true), 1.0));
        assert!(close(fractional_count_life_science(1, &[1], false), 1.0));
        assert!(close(fractional_count_life_science(5, &[3], false), 0.10));
    }

    #[test]
    fn short_bylines_are_renormalized() {
        // 0.3/0.15/0.15/0.3 sums to 0.9 before rescaling
        let w = positional_weights(4, PositionalScheme::SplitEnds);
        let expected = [1.0 / 3.0, 1.0 / 6.0, 1.0 / 6.0, 1.0 / 3.0];
        for (a, b) in w.iter().zip(expected) {
            assert!(close(*a, b));
        }
        assert_eq!(
            positional_weights(2, PositionalScheme::SharedEnds),
            vec![0.5, 0.5]
        );
        let w3 = positional_weights(3, PositionalScheme::SplitEnds);
        assert!(close(w3[0], 0.4) && close(w3[1], 0.2) && close(w3[2], 0.4));
    }

    #[test]
    fn scheme_follows_unit_holding_both_ends() {
        let r = PublicationRecord::new("p", 2006, 10, cats(&["A"]), 6, vec![1, 6], true).unwrap();
        assert!(close(fractional_count(&r), 0.8));
        let r = PublicationRecord::new("p", 2006, 10, cats(&["A"]), 6, vec![1], true).unwrap();
        assert!(close(fractional_count(&r), 0.3));
    }

    #[test]
    fn strength_of_simple_lists() {
        let t = MedianTable::new().with(2006, "A", 5.0).unwrap();
        assert_eq!(scientific_strength(&[], &t).unwrap(), 0.0);
        let p = PublicationRecord::new("p", 2006, 10, cats(&["A"]), 1, vec![1], false).unwrap();
        assert!(close(scientific_strength([&p], &t).unwrap(), 2.0));
    }
}
