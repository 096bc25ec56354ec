// The dense two-phase simplex on its own, then the technical efficiency
// program it solves for one unit.
//
// cargo run --example lp_solver

use std::error::Error;

use research_efficiency::dea::technical_efficiency_lp;
use research_efficiency::{
    solve_lp, DmuInput, LinearProgram, LpStatus, SdsDataset, SdsUnit, Sense,
};

pub fn run_example() -> Result<(), Box<dyn Error>> {
    // min x + y  s.t.  x + 2y >= 4,  3x + y >= 6
    let lp = LinearProgram::minimize(vec![1.0, 1.0])
        .constraint(vec![1.0, 2.0], Sense::Ge, 4.0)
        .constraint(vec![3.0, 1.0], Sense::Ge, 6.0);
    let s = solve_lp(&lp)?;
    println!(
        "{:?}: objective {:.4} at {:?}",
        s.status, s.objective, s.values
    );
    assert!((s.objective - 2.8).abs() < 1e-12);

    let infeasible = LinearProgram::minimize(vec![1.0])
        .constraint(vec![1.0], Sense::Le, 1.0)
        .constraint(vec![1.0], Sense::Ge, 2.0);
    assert_eq!(solve_lp(&infeasible)?.status, LpStatus::Infeasible);

    let ds = SdsDataset::new(
        "X",
        vec![
            SdsUnit::new(DmuInput::new("A", "X", 2.0, 4.0, 1.0)?, 6.0),
            SdsUnit::new(DmuInput::new("B", "X", 4.0, 2.0, 1.0)?, 6.0),
            SdsUnit::new(DmuInput::new("C", "X", 4.0, 4.0, 2.0)?, 6.0),
        ],
    )?;
    let te_lp = technical_efficiency_lp(2, &ds);
    let s = solve_lp(&te_lp)?;
    println!(
        "TE of C: {:.4} with {} variables and {} constraints",
        s.objective,
        te_lp.num_vars(),
        te_lp.constraints.len()
    );
    assert!((s.objective - 0.75).abs() < 1e-9);
    Ok(())
}

#[allow(dead_code)]
fn main() -> Result<(), Box<dyn Error>> {
    run_example()
}
