//! Dense two-phase simplex for small linear programs.
//!
//! Problems are stated as `minimize c·x` subject to row constraints with
//! `≤`, `≥` or `=` senses and `x ≥ 0`. Pivoting follows Bland's rule
//! (lowest-index entering column, lowest-index leaving variable on ratio
//! ties), so degenerate problems terminate.

use serde::{Deserialize, Serialize};

/// Primal feasibility tolerance, relative to the largest right-hand side.
pub const FEASIBILITY_TOL: f64 = 1e-9;

const PIVOT_TOL: f64 = 1e-11;
const REDUCED_COST_TOL: f64 = 1e-11;
const MAX_PIVOTS: usize = 100_000;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum LpError {
    #[error("constraint {row} has {found} coefficients, expected {expected}")]
    DimensionMismatch {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("non-finite value in {0}")]
    NonFinite(String),
    #[error("pivot limit of {0} reached")]
    PivotLimit(usize),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Sense {
    Le,
    Ge,
    Eq,
}

impl Sense {
    fn flipped(self) -> Self {
        match self {
            Sense::Le => Sense::Ge,
            Sense::Ge => Sense::Le,
            Sense::Eq => Sense::Eq,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Constraint {
    pub coefficients: Vec<f64>,
    pub sense: Sense,
    pub rhs: f64,
}

/// `minimize objective·x` subject to `constraints`, with every variable
/// bounded below by zero.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LinearProgram {
    pub objective: Vec<f64>,
    pub constraints: Vec<Constraint>,
}

impl LinearProgram {
    pub fn minimize(objective: Vec<f64>) -> Self {
        LinearProgram {
            objective,
            constraints: Vec::new(),
        }
    }

    pub fn constraint(mut self, coefficients: Vec<f64>, sense: Sense, rhs: f64) -> Self {
        self.add_constraint(coefficients, sense, rhs);
        self
    }

    pub fn add_constraint(&mut self, coefficients: Vec<f64>, sense: Sense, rhs: f64) {
        self.constraints.push(Constraint {
            coefficients,
            sense,
            rhs,
        });
    }

    pub fn num_vars(&self) -> usize {
        self.objective.len()
    }

    pub fn check(&self) -> Result<(), LpError> {
        let n = self.num_vars();
        if self.objective.iter().any(|c| !c.is_finite()) {
            return Err(LpError::NonFinite("objective".into()));
        }
        for (row, c) in self.constraints.iter().enumerate() {
            if c.coefficients.len() != n {
                return Err(LpError::DimensionMismatch {
                    row,
                    expected: n,
                    found: c.coefficients.len(),
                });
            }
            if c.coefficients.iter().any(|a| !a.is_finite()) || !c.rhs.is_finite() {
                return Err(LpError::NonFinite(format!("constraint {row}")));
            }
        }
        Ok(())
    }

    /// Largest constraint or bound violation of `x`.
    pub fn max_violation(&self, x: &[f64]) -> f64 {
        let mut worst = x.iter().fold(0.0_f64, |w, &v| w.max(-v));
        for c in &self.constraints {
            let lhs: f64 = c.coefficients.iter().zip(x).map(|(a, v)| a * v).sum();
            let v = match c.sense {
                Sense::Le => lhs - c.rhs,
                Sense::Ge => c.rhs - lhs,
                Sense::Eq => (lhs - c.rhs).abs(),
            };
            worst = worst.max(v);
        }
        worst
    }

    pub fn objective_value(&self, x: &[f64]) -> f64 {
        self.objective.iter().zip(x).map(|(c, v)| c * v).sum()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum LpStatus {
    Optimal,
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct LpSolution {
    pub status: LpStatus,
    /// Objective at the optimum; NaN unless `status` is `Optimal`.
    pub objective: f64,
    pub values: Vec<f64>,
}

impl LpSolution {
    fn without_optimum(status: LpStatus, n: usize) -> Self {
        LpSolution {
            status,
            objective: f64::NAN,
            values: vec![0.0; n],
        }
    }

    pub fn is_optimal(&self) -> bool {
        self.status == LpStatus::Optimal
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum ColumnKind {
    Structural,
    Slack,
    Artificial,
}

struct Tableau {
    /// m rows of `cols + 1` entries, the last being the right-hand side.
    rows: Vec<Vec<f64>>,
    /// Reduced costs, with the negated objective value in the last entry.
    cost: Vec<f64>,
    basis: Vec<usize>,
    kinds: Vec<ColumnKind>,
    pivots: usize,
}

enum Outcome {
    Optimal,
    Unbounded,
}

impl Tableau {
    fn cols(&self) -> usize {
        self.kinds.len()
    }

    fn rhs(&self, i: usize) -> f64 {
        self.rows[i][self.cols()]
    }

    fn pivot(&mut self, r: usize, c: usize) {
        let width = self.cols() + 1;
        let p = self.rows[r][c];
        for v in self.rows[r].iter_mut() {
            *v /= p;
        }
        self.rows[r][c] = 1.0;
        let pivot_row = self.rows[r].clone();
        for (i, row) in self.rows.iter_mut().enumerate() {
            if i == r {
                continue;
            }
            let f = row[c];
            if f != 0.0 {
                for k in 0..width {
                    row[k] -= f * pivot_row[k];
                }
                row[c] = 0.0;
            }
        }
        let f = self.cost[c];
        if f != 0.0 {
            for (v, p) in self.cost.iter_mut().zip(&pivot_row) {
                *v -= f * p;
            }
            self.cost[c] = 0.0;
        }
        self.basis[r] = c;
        self.pivots += 1;
    }

    /// Loads `costs` (one per column) and prices out the current basis.
    fn set_costs(&mut self, costs: &[f64]) {
        let width = self.cols() + 1;
        self.cost = costs.to_vec();
        self.cost.push(0.0);
        for (i, &b) in self.basis.iter().enumerate() {
            let cb = self.cost[b];
            if cb != 0.0 {
                for k in 0..width {
                    self.cost[k] -= cb * self.rows[i][k];
                }
            }
        }
    }

    fn run(&mut self, allow: impl Fn(ColumnKind) -> bool) -> Result<Outcome, LpError> {
        loop {
            if self.pivots > MAX_PIVOTS {
                return Err(LpError::PivotLimit(MAX_PIVOTS));
            }
            let entering = (0..self.cols())
                .find(|&j| allow(self.kinds[j]) && self.cost[j] < -REDUCED_COST_TOL);
            let Some(c) = entering else {
                return Ok(Outcome::Optimal);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows.len() {
                let a = self.rows[i][c];
                if a <= PIVOT_TOL {
                    continue;
                }
                let ratio = self.rhs(i).max(0.0) / a;
                leave = match leave {
                    None => Some((i, ratio)),
                    Some((best, best_ratio)) => {
                        let tie = (ratio - best_ratio).abs() <= 1e-12 * best_ratio.abs().max(1.0);
                        if ratio < best_ratio && !tie || tie && self.basis[i] < self.basis[best] {
                            Some((i, ratio))
                        } else {
                            Some((best, best_ratio))
                        }
                    }
                };
            }
            match leave {
                Some((r, _)) => self.pivot(r, c),
                None => return Ok(Outcome::Unbounded),
            }
        }
    }
}

/// Solves `lp` and reports an optimal basic solution or the reason none
/// exists.
pub fn solve_lp(lp: &LinearProgram) -> Result<LpSolution, LpError> {
    lp.check()?;
    let n = lp.num_vars();

    let normalized: Vec<Constraint> = lp
        .constraints
        .iter()
        .map(|c| {
            if c.rhs < 0.0 {
                Constraint {
                    coefficients: c.coefficients.iter().map(|a| -a).collect(),
                    sense: c.sense.flipped(),
                    rhs: -c.rhs,
                }
            } else {
                c.clone()
            }
        })
        .collect();

    let mut kinds = vec![ColumnKind::Structural; n];
    let n_slack = normalized.iter().filter(|c| c.sense != Sense::Eq).count();
    let n_art = normalized.iter().filter(|c| c.sense != Sense::Le).count();
    kinds.extend(std::iter::repeat_n(ColumnKind::Slack, n_slack));
    kinds.extend(std::iter::repeat_n(ColumnKind::Artificial, n_art));
    let cols = kinds.len();

    let mut rows = Vec::with_capacity(normalized.len());
    let mut basis = Vec::with_capacity(normalized.len());
    let (mut next_slack, mut next_art) = (n, n + n_slack);
    for c in &normalized {
        let mut row = vec![0.0; cols + 1];
        row[..n].copy_from_slice(&c.coefficients);
        row[cols] = c.rhs;
        match c.sense {
            Sense::Le => {
                row[next_slack] = 1.0;
                basis.push(next_slack);
                next_slack += 1;
            }
            Sense::Ge => {
                row[next_slack] = -1.0;
                next_slack += 1;
                row[next_art] = 1.0;
                basis.push(next_art);
                next_art += 1;
            }
            Sense::Eq => {
                row[next_art] = 1.0;
                basis.push(next_art);
                next_art += 1;
            }
        }
        rows.push(row);
    }

    let mut t = Tableau {
        rows,
        cost: Vec::new(),
        basis,
        kinds,
        pivots: 0,
    };

    if n_art > 0 {
        let phase1: Vec<f64> = t
            .kinds
            .iter()
            .map(|k| {
                if *k == ColumnKind::Artificial {
                    1.0
                } else {
                    0.0
                }
            })
            .collect();
        t.set_costs(&phase1);
        t.run(|_| true)?;
        let infeasibility = -t.cost[cols];
        let scale = normalized.iter().fold(1.0_f64, |s, c| s.max(c.rhs.abs()));
        if infeasibility > FEASIBILITY_TOL * scale {
            return Ok(LpSolution::without_optimum(LpStatus::Infeasible, n));
        }
        // Drive remaining zero-level artificials out of the basis; rows
        // where that is impossible are redundant and dropped.
        let mut i = 0;
        while i < t.rows.len() {
            if t.kinds[t.basis[i]] == ColumnKind::Artificial {
                let replacement = (0..cols).find(|&j| {
                    t.kinds[j] != ColumnKind::Artificial && t.rows[i][j].abs() > PIVOT_TOL
                });
                match replacement {
                    Some(j) => t.pivot(i, j),
                    None => {
                        t.rows.remove(i);
                        t.basis.remove(i);
                        continue;
                    }
                }
            }
            i += 1;
        }
    }

    let mut phase2 = lp.objective.clone();
    phase2.resize(cols, 0.0);
    t.set_costs(&phase2);
    match t.run(|k| k != ColumnKind::Artificial)? {
        Outcome::Unbounded => Ok(LpSolution::without_optimum(LpStatus::Unbounded, n)),
        Outcome::Optimal => {
            let mut values = vec![0.0; n];
            for (i, &b) in t.basis.iter().enumerate() {
                if b < n {
                    values[b] = t.rhs(i).max(0.0);
                }
            }
            Ok(LpSolution {
                status: LpStatus::Optimal,
                objective: lp.objective_value(&values),
                values,
            })
        }
    }
}
