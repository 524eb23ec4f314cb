//! Dense two-phase simplex for small standard-form linear programs.
//!
//! Solves `min c'x  s.t.  Ax = b, x >= 0` and reports both the optimal
//! point and the dual vector of the equality rows. Bland's rule is used
//! throughout, so the method terminates on degenerate problems. Sizes here
//! are tiny (tens of rows, at most a few thousand columns), so a full
//! tableau is the simplest correct representation.

use crate::error::{Error, Result};

const PIVOT_TOL: f64 = 1e-9;
const COST_TOL: f64 = 1e-9;
const MAX_PIVOTS: usize = 50_000;

#[derive(Debug, Clone)]
pub(crate) struct LpSolution {
    pub x: Vec<f64>,
    pub value: f64,
    /// One multiplier per equality row of the input.
    pub duals: Vec<f64>,
}

#[derive(Debug, Clone)]
pub(crate) enum LpOutcome {
    Optimal(LpSolution),
    Infeasible,
    Unbounded,
}

struct Tableau {
    rows: usize,
    cols: usize, // structural columns
    /// rows x (cols + rows + 1): structural | artificial | rhs
    t: Vec<Vec<f64>>,
    basis: Vec<usize>,
    row_sign: Vec<f64>,
}

impl Tableau {
    fn new(a: &[Vec<f64>], b: &[f64]) -> Self {
        let rows = a.len();
        let cols = if rows == 0 { 0 } else { a[0].len() };
        let width = cols + rows + 1;
        let mut t = vec![vec![0.0; width]; rows];
        let mut row_sign = vec![1.0; rows];
        for i in 0..rows {
            let sign = if b[i] < 0.0 { -1.0 } else { 1.0 };
            row_sign[i] = sign;
            for j in 0..cols {
                t[i][j] = sign * a[i][j];
            }
            t[i][cols + i] = 1.0;
            t[i][width - 1] = sign * b[i];
        }
        let basis = (cols..cols + rows).collect();
        Tableau { rows, cols, t, basis, row_sign }
    }

    fn rhs(&self, i: usize) -> f64 {
        self.t[i][self.cols + self.rows]
    }

    fn pivot(&mut self, row: usize, col: usize) {
        let width = self.cols + self.rows + 1;
        let piv = self.t[row][col];
        for j in 0..width {
            self.t[row][j] /= piv;
        }
        for i in 0..self.rows {
            if i != row {
                let factor = self.t[i][col];
                if factor != 0.0 {
                    for j in 0..width {
                        self.t[i][j] -= factor * self.t[row][j];
                    }
                }
            }
        }
        self.basis[row] = col;
    }

    /// Reduced costs of every column under the given per-column costs.
    fn reduced_costs(&self, cost: &[f64]) -> Vec<f64> {
        let width = self.cols + self.rows;
        let mut red = vec![0.0; width];
        for (j, r) in red.iter_mut().enumerate() {
            let mut z = 0.0;
            for i in 0..self.rows {
                z += cost[self.basis[i]] * self.t[i][j];
            }
            *r = cost[j] - z;
        }
        red
    }

    /// Runs Bland-rule simplex on the given costs. `allow` marks columns
    /// that may enter the basis. Returns false when unbounded.
    fn optimize(&mut self, cost: &[f64], allow: &[bool]) -> Result<bool> {
        for _ in 0..MAX_PIVOTS {
            let red = self.reduced_costs(cost);
            let entering = (0..red.len()).find(|&j| allow[j] && red[j] < -COST_TOL);
            let Some(col) = entering else {
                return Ok(true);
            };
            let mut leave: Option<(usize, f64)> = None;
            for i in 0..self.rows {
                if self.t[i][col] > PIVOT_TOL {
                    let ratio = self.rhs(i) / self.t[i][col];
                    let better = match leave {
                        None => true,
                        Some((li, lr)) => {
                            ratio < lr - 1e-12
                                || (ratio < lr + 1e-12 && self.basis[i] < self.basis[li])
                        }
                    };
                    if better {
                        leave = Some((i, ratio));
                    }
                }
            }
            match leave {
                Some((row, _)) => self.pivot(row, col),
                None => return Ok(false),
            }
        }
        Err(Error::Numerical("simplex pivot cap exhausted".into()))
    }
}

/// Solves `min c'x  s.t.  Ax = b, x >= 0`.
pub(crate) fn solve_standard(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpOutcome> {
    let rows = a.len();
    if rows == 0 || rows != b.len() {
        return Err(Error::Input("lp: empty or inconsistent constraint data".into()));
    }
    let cols = a[0].len();
    if cols != c.len() || a.iter().any(|row| row.len() != cols) {
        return Err(Error::Input("lp: ragged constraint matrix".into()));
    }

    let mut tab = Tableau::new(a, b);
    let width = cols + rows;

    // Phase 1: drive artificial variables to zero.
    let mut phase1_cost = vec![0.0; width];
    for item in phase1_cost.iter_mut().take(width).skip(cols) {
        *item = 1.0;
    }
    let allow_all: Vec<bool> = (0..width).map(|j| j < cols || tab.basis.contains(&j)).collect();
    if !tab.optimize(&phase1_cost, &allow_all)? {
        return Err(Error::Numerical("phase-1 objective unbounded".into()));
    }
    let infeasibility: f64 = (0..rows)
        .map(|i| if tab.basis[i] >= cols { tab.rhs(i) } else { 0.0 })
        .sum();
    if infeasibility > 1e-7 {
        return Ok(LpOutcome::Infeasible);
    }
    // Pivot lingering zero-level artificials out where possible.
    for i in 0..rows {
        if tab.basis[i] >= cols {
            if let Some(col) = (0..cols).find(|&j| tab.t[i][j].abs() > 1e-7) {
                tab.pivot(i, col);
            }
        }
    }

    // Phase 2: original objective, artificials barred from entering.
    let mut phase2_cost = vec![0.0; width];
    phase2_cost[..cols].copy_from_slice(c);
    let allow: Vec<bool> = (0..width).map(|j| j < cols).collect();
    if !tab.optimize(&phase2_cost, &allow)? {
        return Ok(LpOutcome::Unbounded);
    }

    let mut x = vec![0.0; cols];
    for i in 0..rows {
        if tab.basis[i] < cols {
            x[tab.basis[i]] = tab.rhs(i);
        }
    }
    let value: f64 = (0..cols).map(|j| c[j] * x[j]).sum();
    // Duals read off the artificial columns: reduced cost there is -y_i
    // (artificial cost is zero in phase 2), adjusted for row negation.
    let red = tab.reduced_costs(&phase2_cost);
    let duals: Vec<f64> = (0..rows).map(|i| -red[cols + i] * tab.row_sign[i]).collect();

    Ok(LpOutcome::Optimal(LpSolution { x, value, duals }))
}
