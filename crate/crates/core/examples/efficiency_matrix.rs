// Distribution views of one subfield: quintile histograms, the TE/AE
// quadrant matrix, output per staff-year and how its ranking differs from
// cost efficiency.
//
// cargo run --example efficiency_matrix

use std::error::Error;
use std::path::Path;

use research_efficiency::report::matrix_svg;
use research_efficiency::{
    efficiency_matrix, histogram, ingest, productivity_ratio, rank_divergence, run_assessment,
    AssessmentConfig, Histogram, InputPaths,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let staff = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/chim08_staff.csv");
    let report = run_assessment(
        &ingest(&InputPaths::staff(staff))?,
        &AssessmentConfig::default(),
    )?;
    let chim = report.sds("CHIM/08").ok_or("CHIM/08 missing")?;

    for (name, pick) in [("TE", 0usize), ("AE", 1), ("CE", 2)] {
        let v: Vec<f64> = chim
            .rows
            .iter()
            .map(|r| [r.scores.te, r.scores.ae, r.scores.ce][pick])
            .collect();
        let h = histogram(&v)?;
        let bars: Vec<String> = (0..h.counts.len())
            .map(|b| format!("{:.1}+:{}", Histogram::lower_edge(b), h.counts[b]))
            .collect();
        println!("{name}  median {:.3}  {}", h.median, bars.join("  "));
    }

    let q = efficiency_matrix(chim.rows.iter().map(|r| &r.scores), 0.5);
    println!(
        "quadrants at 0.5: low/low {}  low TE high AE {}  high/high {}  high TE low AE {}",
        q.low_te_low_ae, q.low_te_high_ae, q.high_te_high_ae, q.high_te_low_ae
    );
    assert_eq!(q.total(), 28);

    let by_ce: Vec<(String, f64)> = chim
        .rows
        .iter()
        .map(|r| (r.dmu_id.clone(), r.scores.ce))
        .collect();
    let by_ratio: Vec<(String, f64)> = chim
        .rows
        .iter()
        .map(|r| {
            (
                r.dmu_id.clone(),
                productivity_ratio(r.ss, &r.input(&chim.sds_id)),
            )
        })
        .collect();
    let shift = rank_divergence(&by_ce, &by_ratio)?;
    println!("largest rank shifts, SS per staff-year vs CE:");
    let mut moved: Vec<(&String, &i64)> = shift.iter().filter(|(_, d)| **d != 0).collect();
    moved.sort_by_key(|(_, d)| -d.abs());
    for (id, d) in moved.iter().take(5) {
        println!("  {id:<30} {d:+}");
    }

    let svg = matrix_svg(chim, report.quadrant_threshold);
    println!("matrix SVG: {} bytes", svg.len());
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
