use indexmap::IndexMap;
use proptest::prelude::*;
use research_efficiency::analytics::{median, percentile_ranks};
use research_efficiency::{
    aggregate_weighted, efficiency_matrix, histogram, percentile_rank, rank_divergence,
    EfficiencyScores, ScoreTriple,
};

fn scores(min: usize) -> impl Strategy<Value = Vec<f64>> {
    // Coarse grid so ties actually occur.
    prop::collection::vec((0u32..=20).prop_map(|k| f64::from(k) / 20.0), min..40)
}

/// Average 1-based rank of each value after an ascending sort, mapped to [0, 100].
fn average_rank_oracle(values: &[f64]) -> Vec<f64> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]));
    let mut out = vec![0.0; values.len()];
    let mut start = 0;
    while start < idx.len() {
        let mut end = start;
        while end + 1 < idx.len() && values[idx[end + 1]] == values[idx[start]] {
            end += 1;
        }
        let avg = (start + end) as f64 / 2.0;
        for &i in &idx[start..=end] {
            out[i] = 100.0 * avg / (values.len() - 1) as f64;
        }
        start = end + 1;
    }
    out
}

fn eff(te: f64, ae: f64) -> EfficiencyScores {
    EfficiencyScores {
        te,
        ae,
        ce: te * ae,
        reference_weights: IndexMap::new(),
    }
}

proptest! {
    #[test]
    fn percentiles_match_average_rank(v in scores(2)) {
        let got = percentile_ranks(&v).unwrap();
        for (g, o) in got.iter().zip(average_rank_oracle(&v)) {
            prop_assert!((g.r_pct - o).abs() < 1e-9);
            prop_assert!((0.0..=100.0).contains(&g.r_pct));
        }
    }

    #[test]
    fn percentiles_preserve_order(v in scores(2)) {
        let r = percentile_ranks(&v).unwrap();
        for i in 0..v.len() {
            for j in 0..v.len() {
                if v[i] < v[j] {
                    prop_assert!(r[i].r_pct < r[j].r_pct);
                } else if v[i] == v[j] {
                    prop_assert_eq!(r[i].r_pct, r[j].r_pct);
                }
            }
        }
    }

    #[test]
    fn percentiles_survive_monotone_transforms(v in scores(2)) {
        let mapped: Vec<f64> = v.iter().map(|x| (3.0 * x).exp() - 7.0).collect();
        let a = percentile_ranks(&v).unwrap();
        let b = percentile_ranks(&mapped).unwrap();
        for (x, y) in a.iter().zip(&b) {
            prop_assert!((x.r_pct - y.r_pct).abs() < 1e-12);
        }
    }

    #[test]
    fn aggregate_stays_within_range(
        rows in prop::collection::vec((0.0f64..=1.0, 0.0f64..=1.0, 0.1f64..1e4), 1..30),
        scale in 0.001f64..1000.0,
    ) {
        let rows: Vec<(ScoreTriple, f64)> = rows
            .into_iter()
            .map(|(te, ae, w)| (ScoreTriple::new(te, ae, te * ae), w))
            .collect();
        let agg = aggregate_weighted(&rows).unwrap();
        let bounds = |f: fn(&ScoreTriple) -> f64| {
            let v: Vec<f64> = rows.iter().map(|(s, _)| f(s)).collect();
            (v.iter().cloned().fold(f64::INFINITY, f64::min), v.iter().cloned().fold(0.0, f64::max))
        };
        for (value, (lo, hi)) in [
            (agg.te, bounds(|s| s.te)),
            (agg.ae, bounds(|s| s.ae)),
            (agg.ce, bounds(|s| s.ce)),
        ] {
            prop_assert!(value >= lo - 1e-12 && value <= hi + 1e-12);
        }
        let rescaled: Vec<(ScoreTriple, f64)> = rows.iter().map(|&(s, w)| (s, w * scale)).collect();
        let b = aggregate_weighted(&rescaled).unwrap();
        prop_assert!((agg.te - b.te).abs() < 1e-9);
        prop_assert!((agg.ae - b.ae).abs() < 1e-9);
        prop_assert!((agg.ce - b.ce).abs() < 1e-9);
    }

    #[test]
    fn histogram_counts_every_score(v in prop::collection::vec(0.0f64..=1.0, 1..60)) {
        let h = histogram(&v).unwrap();
        prop_assert_eq!(h.total(), v.len());
        for (bin, &count) in h.counts.iter().enumerate() {
            let expect = v.iter().filter(|&&s| ((s * 5.0).floor() as usize).min(4) == bin).count();
            prop_assert_eq!(count, expect);
        }
        prop_assert_eq!(Some(h.median), median(&v));
    }

    #[test]
    fn quadrants_partition_units(
        pairs in prop::collection::vec((0.0f64..=1.0, 0.0f64..=1.0), 0..40),
        t1 in 0.0f64..=1.0,
        t2 in 0.0f64..=1.0,
    ) {
        let units: Vec<EfficiencyScores> = pairs.iter().map(|&(te, ae)| eff(te, ae)).collect();
        let (lo, hi) = if t1 <= t2 { (t1, t2) } else { (t2, t1) };
        let a = efficiency_matrix(&units, lo);
        let b = efficiency_matrix(&units, hi);
        prop_assert_eq!(a.total(), units.len());
        prop_assert_eq!(b.total(), units.len());
        prop_assert!(b.high_te_high_ae <= a.high_te_high_ae);
        prop_assert!(b.low_te_low_ae >= a.low_te_low_ae);
    }

    #[test]
    fn divergence_is_zero_when_orders_agree(v in prop::collection::vec(0.0f64..10.0, 1..20)) {
        let ce: Vec<(String, f64)> = v.iter().enumerate().map(|(i, &x)| (format!("u{i}"), x)).collect();
        let ratio: Vec<(String, f64)> = ce.iter().map(|(id, x)| (id.clone(), 2.0 * x + 1.0)).collect();
        let d = rank_divergence(&ce, &ratio).unwrap();
        prop_assert!(d.values().all(|&x| x == 0));
        let mut distinct = v.clone();
        distinct.sort_by(f64::total_cmp);
        distinct.dedup();
        if distinct.len() == v.len() {
            // Reversing a strict order maps rank r to n + 1 - r.
            let flipped: Vec<(String, f64)> = ce.iter().map(|(id, x)| (id.clone(), -x)).collect();
            let d = rank_divergence(&ce, &flipped).unwrap();
            let n = v.len() as i64;
            for (id, x) in &ce {
                let r = ce.iter().filter(|(_, o)| o > x).count() as i64 + 1;
                prop_assert_eq!(d[id], (n + 1 - r) - r);
            }
        }
    }
}

#[test]
fn percentile_needs_two_scores() {
    assert!(percentile_rank(&[0.4], 0.4).is_err());
    assert!(percentile_rank(&[], 0.4).is_err());
    assert_eq!(percentile_rank(&[0.1, 0.9], 0.9).unwrap(), 100.0);
    assert_eq!(percentile_rank(&[0.1, 0.9], 0.1).unwrap(), 0.0);
}

#[test]
fn histogram_edges_are_left_closed() {
    let h = histogram(&[0.0, 0.2, 0.4, 0.6, 0.8, 1.0]).unwrap();
    assert_eq!(h.counts, [1, 1, 1, 1, 2]);
}
