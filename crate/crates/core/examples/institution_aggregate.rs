// Cost-weighted aggregate of one university's biology subfields, weighting
// each subfield's scores by its staff cost.
//
// cargo run --example institution_aggregate

use std::error::Error;

use research_efficiency::{aggregate_weighted, percentile_rank, ScoreTriple};

const BIOLOGY: [(&str, f64, f64, f64, f64); 19] = [
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

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let rows: Vec<(ScoreTriple, f64)> = BIOLOGY
        .iter()
        .map(|&(_, cost, te, ae, ce)| (ScoreTriple::new(te, ae, ce), cost))
        .collect();
    let agg = aggregate_weighted(&rows)?;
    println!(
        "{} subfields, staff cost {:.2} k€: TE {:.3}  AE {:.3}  CE {:.3}",
        rows.len(),
        agg.total_weight,
        agg.te,
        agg.ae,
        agg.ce
    );
    assert!((agg.te - 0.239).abs() < 0.01);
    assert!((agg.ae - 0.635).abs() < 0.01);
    assert!((agg.ce - 0.160).abs() < 0.01);

    // Within-university spread of CE; in a full assessment the rank is taken
    // against the same subfield at every other university.
    let ce: Vec<f64> = BIOLOGY.iter().map(|r| r.4).collect();
    for &(sds, .., c) in BIOLOGY.iter().filter(|r| r.4 > 0.5 || r.4 < 0.01) {
        println!("{sds}: CE {c:.3}, rank {:.1}", percentile_rank(&ce, c)?);
    }
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
