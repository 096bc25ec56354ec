use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use research_efficiency::config::CONFIG_ENV;
use research_efficiency::report::{render_institution, render_sds_table};
use research_efficiency::{
    emit, ingest, run_assessment, AssessmentConfig, Error, InputPaths, OutputFormat,
};

#[derive(Parser)]
#[command(version, about = "DEA research efficiency assessment")]
struct Cli {
    /// TOML configuration file.
    #[arg(long, global = true, env = CONFIG_ENV)]
    config: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct Inputs {
    /// Staff file: dmu_id, sds_id, fp_years, ap_years, rf_years[, ss]
    #[arg(long)]
    staff: PathBuf,
    /// Publication file; required with --medians when the staff file has no ss column.
    #[arg(long)]
    publications: Option<PathBuf>,
    /// Reference citation medians: year, category, median[, mean]
    #[arg(long)]
    medians: Option<PathBuf>,
    /// Per-subfield file: sds_id, fraction_publishing[, universities_active]
    #[arg(long)]
    sds_summary: Option<PathBuf>,
}

#[derive(Args)]
struct RunOpts {
    /// Output directory; nothing is written without it.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Comma-separated output formats.
    #[arg(long, value_delimiter = ',', default_value = "json,csv")]
    format: Vec<OutputFormat>,
    /// TE/AE cut-off for the efficiency matrix (default 0.5).
    #[arg(long)]
    threshold_quadrant: Option<f64>,
    /// Assess every subfield regardless of eligibility.
    #[arg(long)]
    no_filter: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Full pipeline over every subfield.
    Assess {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Score table, histograms and quadrants for one subfield.
    SdsReport {
        #[arg(long)]
        sds: String,
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        run: RunOpts,
    },
    /// One university across its subfields, with cost-weighted aggregate.
    InstitutionReport {
        #[arg(long)]
        dmu: String,
        /// Restrict to subfields whose id starts with this prefix (e.g. BIO).
        #[arg(long)]
        area: Option<String>,
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        run: RunOpts,
    },
    /// Ingest and cross-check inputs only.
    Validate {
        #[command(flatten)]
        inputs: Inputs,
    },
}

impl Inputs {
    fn paths(&self) -> InputPaths {
        InputPaths {
            staff: self.staff.clone(),
            publications: self.publications.clone(),
            medians: self.medians.clone(),
            sds_summary: self.sds_summary.clone(),
        }
    }
}

fn configure(path: Option<&PathBuf>, run: &RunOpts) -> Result<AssessmentConfig, Error> {
    let mut config = match path {
        Some(p) => AssessmentConfig::load(p)?,
        None => AssessmentConfig::default(),
    };
    if let Some(t) = run.threshold_quadrant {
        config.quadrant_threshold = t;
    }
    if run.no_filter {
        config.apply_filter = false;
    }
    config.validate()?;
    Ok(config)
}

fn run(cli: Cli) -> Result<(), Error> {
    match &cli.command {
        Command::Validate { inputs } => {
            let data = ingest(&inputs.paths())?;
            println!(
                "ok: {} units in {} subfields, {} publications ({:?} output)",
                data.unit_count(),
                data.sds_ids().len(),
                data.publications.len(),
                data.mode
            );
        }
        Command::Assess { inputs, run } => {
            let config = configure(cli.config.as_ref(), run)?;
            let report = run_assessment(&ingest(&inputs.paths())?, &config)?;
            let included = report.sds.len();
            println!(
                "assessed {} units in {included} subfields ({} excluded)",
                report.unit_count(),
                report.eligibility.len() - included
            );
            if let Some(out) = &run.out {
                for p in emit(&report, &run.format, out, config.precision)? {
                    println!("wrote {}", p.display());
                }
            }
        }
        Command::SdsReport { sds, inputs, run } => {
            let config = configure(cli.config.as_ref(), run)?;
            let mut report = run_assessment(&ingest(&inputs.paths())?, &config)?;
            let Some(one) = report.sds(sds).cloned() else {
                let why = report
                    .eligibility
                    .iter()
                    .find(|e| &e.sds_id == sds)
                    .map(|e| format!("excluded: {:?}", e.eligibility))
                    .unwrap_or_else(|| "not in the staff file".into());
                return Err(Error::Empty(format!("subfield {sds} {why}")));
            };
            print!("{}", render_sds_table(&one, config.precision));
            if let Some(out) = &run.out {
                report.sds = vec![one];
                report.institutions = report.institution_views(None)?;
                report.eligibility.retain(|e| &e.sds_id == sds);
                for p in emit(&report, &run.format, out, config.precision)? {
                    println!("wrote {}", p.display());
                }
            }
        }
        Command::InstitutionReport {
            dmu,
            area,
            inputs,
            run,
        } => {
            let config = configure(cli.config.as_ref(), run)?;
            let report = run_assessment(&ingest(&inputs.paths())?, &config)?;
            let views = report.institution_views(area.as_deref())?;
            let inst = views
                .iter()
                .find(|i| &i.dmu_id == dmu)
                .ok_or_else(|| Error::Empty(format!("no assessed subfields for {dmu}")))?;
            print!("{}", render_institution(inst, config.precision));
            if let Some(out) = &run.out {
                std::fs::create_dir_all(out).map_err(|e| Error::Io {
                    path: out.clone(),
                    source: e,
                })?;
                let path = out.join(format!(
                    "institution_{}.csv",
                    research_efficiency::report::file_stem(dmu)
                ));
                let bytes = research_efficiency::report::institution_csv(inst, config.precision);
                std::fs::write(&path, bytes).map_err(|e| Error::Io {
                    path: path.clone(),
                    source: e,
                })?;
                println!("wrote {}", path.display());
            }
        }
    }
    Ok(())
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
