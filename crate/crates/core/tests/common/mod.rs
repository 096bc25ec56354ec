#![allow(dead_code, clippy::approx_constant)]

use nalgebra::{DMatrix, DVector};
use research_efficiency::lp::{LinearProgram, Sense};
use research_efficiency::{CostVector, DmuInput, ScoreTriple, SdsDataset, SdsUnit};

pub const FIXTURES: &str = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures");

/// Pharmaceutical chemistry (CHIM/08): name, SS, FP, AP, RF, printed TE, AE, CE.
pub type Chim08Row = (&'static str, f64, f64, f64, f64, f64, f64, f64);

pub const CHIM08: [Chim08Row; 28] = [
    ("Ferrara", 64.026, 25.0, 18.0, 20.0, 1.000, 1.000, 1.000),
    (
        "Piemonte Orientale Avogadro",
        24.970,
        5.0,
        10.0,
        15.0,
        1.000,
        0.948,
        0.948,
    ),
    ("Bologna", 151.659, 47.0, 65.0, 53.0, 1.000, 0.945, 0.945),
    ("Siena", 57.508, 25.0, 24.0, 19.0, 0.918, 0.907, 0.833),
    ("Pavia", 40.293, 10.0, 29.0, 17.0, 1.000, 0.768, 0.768),
    ("Perugia", 42.115, 17.0, 29.0, 19.0, 0.772, 0.864, 0.667),
    ("Milano", 77.785, 50.0, 20.0, 46.0, 1.000, 0.666, 0.666),
    (
        "Roma \"La Sapienza\"",
        80.585,
        22.0,
        69.0,
        41.0,
        0.882,
        0.744,
        0.656,
    ),
    ("Messina", 41.627, 24.0, 30.0, 8.0, 1.000, 0.631, 0.631),
    ("Padova", 62.036, 40.0, 45.0, 22.0, 0.729, 0.766, 0.558),
    (
        "Urbino \"Carlo Bo\"",
        22.055,
        5.0,
        21.0,
        23.0,
        0.883,
        0.591,
        0.522,
    ),
    (
        "Napoli \"Federico II\"",
        53.332,
        29.0,
        43.0,
        53.0,
        0.484,
        0.955,
        0.462,
    ),
    ("Parma", 29.019, 20.0, 31.0, 24.0, 0.437, 0.918, 0.401),
    ("Trieste", 21.015, 13.0, 27.0, 17.0, 0.465, 0.829, 0.385),
    (
        "Modena e Reggio Emilia",
        23.199,
        9.0,
        35.0,
        23.0,
        0.553,
        0.689,
        0.381,
    ),
    ("Firenze", 46.893, 34.0, 50.0, 45.0, 0.404, 0.941, 0.380),
    ("Cagliari", 16.012, 10.0, 15.0, 22.0, 0.396, 0.951, 0.377),
    ("Pisa", 38.584, 32.0, 39.0, 35.0, 0.389, 0.957, 0.373),
    ("Salerno", 11.998, 10.0, 15.0, 17.0, 0.322, 0.951, 0.307),
    ("Torino", 27.728, 20.0, 40.0, 39.0, 0.341, 0.893, 0.304),
    ("Camerino", 23.703, 40.0, 27.0, 11.0, 0.502, 0.546, 0.274),
    ("Bari", 43.205, 42.0, 67.0, 62.0, 0.288, 0.928, 0.267),
    ("Sassari", 18.698, 19.0, 25.0, 43.0, 0.266, 0.897, 0.239),
    ("Calabria", 4.180, 10.0, 5.0, 4.0, 0.303, 0.663, 0.201),
    ("Catania", 16.047, 22.0, 50.0, 25.0, 0.225, 0.759, 0.171),
    ("Genova", 16.147, 30.0, 42.0, 22.0, 0.217, 0.786, 0.170),
    ("Palermo", 19.871, 40.0, 40.0, 48.0, 0.164, 0.979, 0.160),
    (
        "Gabriele D'Annunzio",
        6.323,
        13.0,
        5.0,
        27.0,
        0.325,
        0.482,
        0.157,
    ),
];

/// Biology SDSs at one institution: sds, staff cost k€, printed TE, AE, CE.
/// The first cost is printed as "4,4730"; 4,473.0 matches the printed total.
pub const BIOLOGY: [(&str, f64, f64, f64, f64); 19] = [
    ("BIO/01", 4473.0, 0.592, 0.592, 0.351),
    ("BIO/02", 3773.50, 0.148, 0.486, 0.072),
    ("BIO/03", 2435.75, 0.946, 0.376, 0.355),
    ("BIO/04", 3880.75, 0.079, 0.681, 0.054),
    ("BIO/05", 5548.10, 0.064, 0.705, 0.045),
    ("BIO/06", 13995.50, 0.157, 0.805, 0.126),
    ("BIO/07", 2136.70, 0.258, 0.339, 0.087),
    ("BIO/08", 558.50, 0.949, 0.680, 0.645),
    ("BIO/09", 11579.55, 0.105, 0.464, 0.049),
    ("BIO/10", 24884.55, 0.092, 0.544, 0.050),
    ("BIO/11", 7202.65, 0.146, 0.706, 0.103),
    ("BIO/12", 4846.35, 0.188, 0.506, 0.095),
    ("BIO/13", 5394.30, 0.245, 0.696, 0.170),
    ("BIO/14", 8859.70, 0.676, 0.770, 0.521),
    ("BIO/15", 2697.15, 1.000, 1.000, 1.000),
    ("BIO/16", 2701.95, 0.130, 0.959, 0.125),
    ("BIO/17", 1351.95, 0.013, 0.526, 0.007),
    ("BIO/18", 6575.35, 0.150, 0.680, 0.102),
    ("BIO/19", 2023.40, 0.565, 0.547, 0.309),
];
pub const BIOLOGY_TOTAL: (f64, f64, f64, f64) = (114918.70, 0.239, 0.635, 0.160);

/// All SDSs at a small institution: sds, staff cost k€, printed TE, AE, CE.
pub const SMALL_UNIVERSITY: [(&str, f64, f64, f64, f64); 23] = [
    ("AGR/02", 398.500, 1.000, 1.000, 1.000),
    ("BIO/03", 957.000, 0.000, 0.000, 0.000),
    ("BIO/05", 111.700, 0.000, 0.000, 0.000),
    ("BIO/07", 3826.050, 0.251, 0.845, 0.212),
    ("BIO/10", 1355.500, 0.062, 0.480, 0.030),
    ("BIO/19", 1117.000, 0.867, 0.167, 0.145),
    ("CHIM/01", 5281.000, 0.323, 0.832, 0.268),
    ("CHIM/02", 4129.200, 0.084, 0.426, 0.036),
    ("CHIM/03", 7065.550, 0.168, 0.639, 0.107),
    ("CHIM/06", 3722.700, 0.385, 0.884, 0.341),
    ("CHIM/12", 2871.000, 0.236, 0.603, 0.142),
    ("FIS/01", 1844.250, 0.701, 0.762, 0.534),
    ("FIS/03", 681.750, 0.117, 1.000, 0.117),
    ("GEO/02", 283.250, 1.000, 0.416, 0.416),
    ("GEO/05", 558.500, 0.466, 1.000, 0.466),
    ("GEO/07", 398.500, 0.000, 0.000, 0.000),
    ("GEO/08", 398.500, 0.358, 0.355, 0.127),
    ("INF/01", 7453.400, 0.461, 0.822, 0.379),
    ("ING-IND/25", 1195.500, 1.000, 0.418, 0.418),
    ("ING-INF/05", 558.500, 0.318, 0.575, 0.183),
    ("MAT/02", 1240.250, 0.180, 0.588, 0.106),
    ("MAT/08", 398.500, 0.541, 0.130, 0.070),
    ("MAT/09", 1572.150, 0.672, 0.346, 0.232),
];
pub const SMALL_UNIVERSITY_TOTAL: (f64, f64, f64, f64) = (45846.100, 0.352, 0.684, 0.228);

pub fn chim08() -> SdsDataset {
    SdsDataset::new(
        "CHIM/08",
        CHIM08
            .iter()
            .map(|&(name, ss, fp, ap, rf, ..)| {
                SdsUnit::new(DmuInput::new(name, "CHIM/08", fp, ap, rf).unwrap(), ss)
            })
            .collect(),
    )
    .unwrap()
}

pub fn weighted_rows(table: &[(&str, f64, f64, f64, f64)]) -> Vec<(ScoreTriple, f64)> {
    table
        .iter()
        .map(|&(_, cost, te, ae, ce)| (ScoreTriple::new(te, ae, ce), cost))
        .collect()
}

/// Closed-form cost efficiency for a single output under constant returns:
/// the cheapest plan scales the unit with the lowest cost per unit of output.
pub fn closed_form_ce(ds: &SdsDataset, dmu0: usize, costs: &CostVector) -> f64 {
    let w = costs.as_array();
    let cost = |x: [f64; 3]| w.iter().zip(x).map(|(a, b)| a * b).sum::<f64>();
    let best = ds
        .units
        .iter()
        .filter(|u| u.ss > 0.0)
        .map(|u| cost(u.input.inputs()) / u.ss)
        .fold(f64::INFINITY, f64::min);
    let u0 = &ds.units[dmu0];
    u0.ss * best / cost(u0.input.inputs())
}

/// Optimal objective of `lp` by brute force over every basis of its
/// standard form (slack/surplus columns added). `None` when no basic
/// feasible solution exists. Exponential; only for tiny problems.
pub fn enumerate_basic_solutions(lp: &LinearProgram) -> Option<f64> {
    let m = lp.constraints.len();
    let n = lp.objective.len();
    let slack_rows: Vec<usize> = (0..m)
        .filter(|&i| lp.constraints[i].sense != Sense::Eq)
        .collect();
    let cols = n + slack_rows.len();
    let mut a = DMatrix::<f64>::zeros(m, cols);
    let mut b = DVector::<f64>::zeros(m);
    for (i, c) in lp.constraints.iter().enumerate() {
        for j in 0..n {
            a[(i, j)] = c.coefficients[j];
        }
        b[i] = c.rhs;
    }
    for (k, &i) in slack_rows.iter().enumerate() {
        a[(i, n + k)] = match lp.constraints[i].sense {
            Sense::Le => 1.0,
            Sense::Ge => -1.0,
            Sense::Eq => unreachable!(),
        };
    }
    let mut cost = lp.objective.clone();
    cost.resize(cols, 0.0);

    let mut best: Option<f64> = None;
    let mut subset: Vec<usize> = (0..m).collect();
    loop {
        let basis = DMatrix::from_fn(m, m, |r, c| a[(r, subset[c])]);
        if let Some(x) = basis.clone().lu().solve(&b) {
            let residual = (&basis * &x - &b).amax();
            if residual < 1e-9 && x.iter().all(|&v| v >= -1e-10) {
                let obj: f64 = subset.iter().zip(x.iter()).map(|(&j, v)| cost[j] * v).sum();
                best = Some(best.map_or(obj, |b: f64| b.min(obj)));
            }
        }
        // next m-combination of 0..cols
        let Some(i) = (0..m).rev().find(|&i| subset[i] < cols - m + i) else {
            return best;
        };
        subset[i] += 1;
        for k in i + 1..m {
            subset[k] = subset[k - 1] + 1;
        }
    }
}

pub fn random_dataset(rng: &mut impl rand::Rng, units: usize, inputs: usize) -> SdsDataset {
    let rows = (0..units)
        .map(|j| {
            let mut x = [0.0; 3];
            for v in x.iter_mut().take(inputs) {
                *v = rng.gen_range(0.5..20.0);
            }
            SdsUnit::new(
                DmuInput::new(format!("U{j}"), "R", x[0], x[1], x[2]).unwrap(),
                rng.gen_range(0.1..10.0),
            )
        })
        .collect();
    SdsDataset::new("R", rows).unwrap()
}
