//! Input-oriented, constant-returns-to-scale DEA with a single output.
//!
//! Technical efficiency is the smallest radial contraction `θ` of a unit's
//! staff inputs that a non-negative combination of peers can match while
//! producing at least the same output. Cost efficiency compares the
//! cheapest input bundle able to produce that output with the unit's actual
//! staff cost; allocative efficiency is their ratio.

use indexmap::IndexMap;
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::lp::{solve_lp, LinearProgram, LpStatus, Sense};
use crate::model::{staff_cost, validate_dataset, CostVector, EfficiencyScores, SdsDataset};

/// Scores within this distance outside `[0, 1]` are clamped silently.
pub const CLAMP_TOL: f64 = 1e-7;

/// Intensity weights below this are dropped from the reported peer set.
const WEIGHT_EPS: f64 = 1e-12;

fn clamp_score(v: f64, what: &str, dmu: &str) -> Result<f64> {
    if !(-CLAMP_TOL..=1.0 + CLAMP_TOL).contains(&v) {
        return Err(Error::Inconsistent(format!(
            "{what} of '{dmu}' is {v}, outside [0, 1]"
        )));
    }
    Ok(v.clamp(0.0, 1.0))
}

fn solver_context(ds: &SdsDataset, dmu0: usize, what: &str) -> String {
    format!("{what} of '{}' in {}", ds.units[dmu0].dmu_id(), ds.sds_id)
}

fn unit_at(ds: &SdsDataset, dmu0: usize) -> Result<()> {
    if dmu0 >= ds.len() {
        return Err(Error::InvalidInput(format!(
            "unit index {dmu0} out of range for {} ({} units)",
            ds.sds_id,
            ds.len()
        )));
    }
    Ok(())
}

/// Envelopment program for unit `dmu0`. Variables are `[θ, λ_1..λ_n]`.
pub fn technical_efficiency_lp(dmu0: usize, ds: &SdsDataset) -> LinearProgram {
    let n = ds.len();
    let mut objective = vec![0.0; n + 1];
    objective[0] = 1.0;
    let mut lp = LinearProgram::minimize(objective);

    let mut output = vec![0.0];
    output.extend(ds.units.iter().map(|u| u.ss));
    lp.add_constraint(output, Sense::Ge, ds.units[dmu0].ss);

    let x0 = ds.units[dmu0].input.inputs();
    for (k, &x0k) in x0.iter().enumerate() {
        let mut row = vec![-x0k];
        row.extend(ds.units.iter().map(|u| u.input.inputs()[k]));
        lp.add_constraint(row, Sense::Le, 0.0);
    }
    lp
}

/// Technical efficiency of unit `dmu0` and the non-zero intensity weights
/// of its optimal peer combination.
///
/// Assumes the unit has positive output; zero-output units are scored by
/// [`evaluate_sds`] without solving.
pub fn technical_efficiency(dmu0: usize, ds: &SdsDataset) -> Result<(f64, IndexMap<String, f64>)> {
    unit_at(ds, dmu0)?;
    let lp = technical_efficiency_lp(dmu0, ds);
    let sol = solve_lp(&lp).map_err(|source| Error::Solver {
        context: solver_context(ds, dmu0, "technical efficiency"),
        source,
    })?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Inconsistent(format!(
            "{} LP is {:?}",
            solver_context(ds, dmu0, "technical efficiency"),
            sol.status
        )));
    }
    let te = clamp_score(
        sol.values[0],
        "technical efficiency",
        ds.units[dmu0].dmu_id(),
    )?;
    let weights = ds
        .units
        .iter()
        .zip(&sol.values[1..])
        .filter(|(_, &l)| l > WEIGHT_EPS)
        .map(|(u, &l)| (u.dmu_id().to_owned(), l))
        .collect();
    Ok((te, weights))
}

/// Cost-minimization program for unit `dmu0`. Variables are
/// `[x_fp, x_ap, x_rf, λ_1..λ_n]`.
pub fn cost_efficiency_lp(dmu0: usize, ds: &SdsDataset, costs: &CostVector) -> LinearProgram {
    let n = ds.len();
    let mut objective = costs.as_array().to_vec();
    objective.extend(std::iter::repeat_n(0.0, n));
    let mut lp = LinearProgram::minimize(objective);

    for k in 0..3 {
        let mut row = vec![0.0; 3];
        row[k] = -1.0;
        row.extend(ds.units.iter().map(|u| u.input.inputs()[k]));
        lp.add_constraint(row, Sense::Le, 0.0);
    }
    let mut output = vec![0.0; 3];
    output.extend(ds.units.iter().map(|u| u.ss));
    lp.add_constraint(output, Sense::Ge, ds.units[dmu0].ss);
    lp
}

/// Minimum attainable staff cost for unit `dmu0`'s output divided by its
/// actual staff cost.
pub fn cost_efficiency(dmu0: usize, ds: &SdsDataset, costs: &CostVector) -> Result<f64> {
    unit_at(ds, dmu0)?;
    costs.check()?;
    let lp = cost_efficiency_lp(dmu0, ds, costs);
    let sol = solve_lp(&lp).map_err(|source| Error::Solver {
        context: solver_context(ds, dmu0, "cost efficiency"),
        source,
    })?;
    if sol.status != LpStatus::Optimal {
        return Err(Error::Inconsistent(format!(
            "{} LP is {:?}",
            solver_context(ds, dmu0, "cost efficiency"),
            sol.status
        )));
    }
    let actual = staff_cost(&ds.units[dmu0].input, costs);
    clamp_score(
        sol.objective / actual,
        "cost efficiency",
        ds.units[dmu0].dmu_id(),
    )
}

/// `ce / te`, or zero for technically nil units.
pub fn allocative_efficiency(te: f64, ce: f64) -> Result<f64> {
    if ce > te + CLAMP_TOL {
        return Err(Error::Inconsistent(format!(
            "cost efficiency {ce} exceeds technical efficiency {te}"
        )));
    }
    if te <= 0.0 {
        return Ok(0.0);
    }
    Ok((ce / te).clamp(0.0, 1.0))
}

fn evaluate_unit(i: usize, ds: &SdsDataset, costs: &CostVector) -> Result<EfficiencyScores> {
    if ds.units[i].ss == 0.0 {
        return Ok(EfficiencyScores::nil());
    }
    let (te, reference_weights) = technical_efficiency(i, ds)?;
    let ce = cost_efficiency(i, ds, costs)?;
    let ae = allocative_efficiency(te, ce).map_err(|e| match e {
        Error::Inconsistent(msg) => Error::Inconsistent(format!(
            "'{}' in {}: {msg}",
            ds.units[i].dmu_id(),
            ds.sds_id
        )),
        other => other,
    })?;
    Ok(EfficiencyScores {
        te,
        ae,
        ce: ce.min(te),
        reference_weights,
    })
}

/// Scores every unit of a subfield, in dataset order.
///
/// Units are solved in parallel; each solve is independent, so the result
/// does not depend on scheduling.
pub fn evaluate_sds(
    ds: &SdsDataset,
    costs: &CostVector,
) -> Result<IndexMap<String, EfficiencyScores>> {
    let ds = validate_dataset(ds.clone())?;
    costs.check()?;
    let scores: Vec<EfficiencyScores> = (0..ds.len())
        .into_par_iter()
        .map(|i| evaluate_unit(i, &ds, costs))
        .collect::<Result<_>>()?;
    Ok(ds
        .units
        .iter()
        .map(|u| u.dmu_id().to_owned())
        .zip(scores)
        .collect())
}
