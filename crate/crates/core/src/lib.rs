//! Research efficiency assessment for university subfields.
//!
//! Output is the field-standardized Scientific Strength of a unit's
//! publications ([`bibliometrics`]). Inputs are staff-years of full,
//! associate and assistant professors ([`model`]). Each subfield is scored
//! with input-oriented constant-returns-to-scale DEA ([`dea`], on top of the
//! simplex in [`lp`]), giving technical, allocative and cost efficiency.
//! Those are then ranked, aggregated by staff cost and summarized
//! ([`analytics`]).
//!
//! [`ingest`], [`config`] and [`report`] tie the pieces into a file-driven
//! pipeline; the `research-efficiency` binary is a thin wrapper over them.
//! See the `examples/` directory for one runnable program per capability.

pub mod analytics;
pub mod bibliometrics;
pub mod config;
pub mod dea;
pub mod error;
pub mod ingest;
pub mod lp;
pub mod model;
pub mod report;

pub use analytics::{
    aggregate_weighted, efficiency_matrix, eligibility_filter, histogram, percentile_rank,
    productivity_ratio, rank_divergence, AggregateScores, Eligibility, EligibilityCriteria,
    Histogram, QuadrantSummary,
};
pub use bibliometrics::{
    fractional_count_life_science, fractional_count_standard, scientific_strength,
    standardize_citations,
};
pub use config::AssessmentConfig;
pub use dea::{allocative_efficiency, cost_efficiency, evaluate_sds, technical_efficiency};
pub use error::{Error, Result, Violation};
pub use ingest::{ingest, AssessmentData, InputPaths, OutputMode};
pub use lp::{solve_lp, LinearProgram, LpSolution, LpStatus, Sense};
pub use model::{
    staff_cost, validate_dataset, CostVector, DmuInput, EfficiencyScores, MedianTable,
    PublicationRecord, ScoreTriple, SdsDataset, SdsUnit,
};
pub use report::{emit, run_assessment, AssessmentReport, OutputFormat};
