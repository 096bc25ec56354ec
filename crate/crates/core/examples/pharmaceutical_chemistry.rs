// Scores the 28 pharmaceutical chemistry units from the bundled staff file
// and shows the reference set of an inefficient unit.
//
// cargo run --example pharmaceutical_chemistry

use std::error::Error;
use std::path::Path;

use research_efficiency::report::render_sds_table;
use research_efficiency::{ingest, run_assessment, AssessmentConfig, InputPaths};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let staff = Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures/chim08_staff.csv");
    let data = ingest(&InputPaths::staff(staff))?;
    let config = AssessmentConfig::default();
    let report = run_assessment(&data, &config)?;
    let chim = report.sds("CHIM/08").ok_or("CHIM/08 was screened out")?;
    print!("{}", render_sds_table(chim, config.precision));

    let siena = chim.row("Siena").ok_or("no Siena row")?;
    println!("\nSiena benchmarks (lambda):");
    for (peer, lambda) in &siena.scores.reference_weights {
        println!("  {peer:<30} {lambda:.4}");
    }
    assert!((siena.scores.te - 0.918).abs() < 0.01);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
