// End-to-end run on the demo files: Scientific Strength computed from
// publications, eligibility screening, scoring and every output format.
//
// cargo run --example csv_pipeline [OUT_DIR]

use std::error::Error;
use std::path::{Path, PathBuf};

use research_efficiency::{
    emit, ingest, run_assessment, AssessmentConfig, InputPaths, OutputFormat,
};

fn demo(file: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures/demo")
        .join(file)
}

fn pipeline(out: &Path) -> Result<(), Box<dyn Error>> {
    let paths = InputPaths {
        staff: demo("staff.csv"),
        publications: Some(demo("publications.csv")),
        medians: Some(demo("medians.csv")),
        sds_summary: Some(demo("sds_summary.csv")),
    };
    let config = AssessmentConfig::load(&demo("config.toml"))?;
    let data = ingest(&paths)?;
    println!(
        "{} units, {} publications, output {:?}",
        data.unit_count(),
        data.publications.len(),
        data.mode
    );
    let report = run_assessment(&data, &config)?;
    for e in &report.eligibility {
        println!("{:<8} {:?}", e.sds_id, e.eligibility);
    }
    for sds in &report.sds {
        for r in &sds.rows {
            println!(
                "{:<8} {:<8} SS {:>7.3}  CE {:.3}",
                sds.sds_id, r.dmu_id, r.ss, r.scores.ce
            );
        }
    }
    let files = emit(
        &report,
        &[OutputFormat::Json, OutputFormat::Csv, OutputFormat::Svg],
        out,
        config.precision,
    )?;
    for f in &files {
        println!("wrote {}", f.display());
    }
    Ok(())
}

pub fn run_example() -> Result<(), Box<dyn Error>> {
    let dir = tempfile::tempdir()?;
    pipeline(dir.path())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    match std::env::args_os().nth(1) {
        Some(out) => pipeline(Path::new(&out)),
        None => run_example(),
    }
}
