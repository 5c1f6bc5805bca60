//! Small dense two-phase simplex for linear programs in the form
//!
//! ```text
//!     minimize    c' x
//!     subject to  A x <= b,   x >= 0
//! ```
//!
//! Exact enough for the column programs of the precision-matrix estimator
//! (tens of variables); Bland's rule guarantees termination.

#[derive(Debug, Clone, PartialEq)]
pub(crate) enum LpError {
    Infeasible,
    Unbounded,
}

#[derive(Debug, Clone)]
pub(crate) struct LpSolution {
    pub x: Vec<f64>,
}

const EPS: f64 = 1e-9;

struct Tableau {
    /// Constraint rows, each `ncols` coefficients followed by the rhs.
    rows: Vec<Vec<f64>>,
    /// Reduced-cost row, `ncols` coefficients.
    cost: Vec<f64>,
    basis: Vec<usize>,
    ncols: usize,
}

impl Tableau {
    fn pivot(&mut self, pivot_row: usize, entering: usize) {
        let scale = self.rows[pivot_row][entering];
        for v in self.rows[pivot_row].iter_mut() {
            *v /= scale;
        }
        for i in 0..self.rows.len() {
            if i == pivot_row {
                continue;
            }
            let factor = self.rows[i][entering];
            if factor == 0.0 {
                continue;
            }
            for j in 0..=self.ncols {
                let delta = factor * self.rows[pivot_row][j];
                self.rows[i][j] -= delta;
            }
        }
        let factor = self.cost[entering];
        if factor != 0.0 {
            for j in 0..self.ncols {
                self.cost[j] -= factor * self.rows[pivot_row][j];
            }
        }
        self.basis[pivot_row] = entering;
    }

    /// Runs simplex iterations with entering columns restricted to
    /// `0..allowed_cols`. Returns Err on unboundedness.
    fn optimize(&mut self, allowed_cols: usize) -> Result<(), LpError> {
        loop {
            // Bland's rule: lowest-index column with negative reduced cost.
            let entering = (0..allowed_cols).find(|&j| self.cost[j] < -EPS);
            let entering = match entering {
                Some(j) => j,
                None => return Ok(()),
            };
            let mut pivot_row: Option<usize> = None;
            let mut best_ratio = f64::INFINITY;
            for i in 0..self.rows.len() {
                let a = self.rows[i][entering];
                if a > EPS {
                    let ratio = self.rows[i][self.ncols] / a;
                    let better = ratio < best_ratio - EPS
                        || (ratio < best_ratio + EPS
                            && pivot_row.is_some_and(|p| self.basis[i] < self.basis[p]));
                    if better {
                        best_ratio = ratio;
                        pivot_row = Some(i);
                    }
                }
            }
            match pivot_row {
                Some(p) => self.pivot(p, entering),
                None => return Err(LpError::Unbounded),
            }
        }
    }
}

/// Solves `min c'x  s.t.  A x <= b, x >= 0`.
pub(crate) fn solve_lp_leq(c: &[f64], a: &[Vec<f64>], b: &[f64]) -> Result<LpSolution, LpError> {
    let n = c.len();
    let m = a.len();
    assert_eq!(m, b.len(), "constraint count mismatch");
    assert!(a.iter().all(|row| row.len() == n), "ragged constraint row");

    // Column layout: structural (n) | slack (m) | artificial (appended).
    let mut artificial_cols: Vec<usize> = Vec::new();
    let base_cols = n + m;
    let mut rows: Vec<Vec<f64>> = Vec::with_capacity(m);
    let mut basis = vec![0usize; m];
    for i in 0..m {
        let mut row = vec![0.0; base_cols];
        let negate = b[i] < 0.0;
        let sgn = if negate { -1.0 } else { 1.0 };
        for j in 0..n {
            row[j] = sgn * a[i][j];
        }
        row[n + i] = sgn; // slack
        if negate {
            artificial_cols.push(base_cols + artificial_cols.len());
            basis[i] = usize::MAX; // assigned below once total width is known
        } else {
            basis[i] = n + i;
        }
        row.push(sgn * b[i]); // rhs placeholder; fixed width below
        rows.push(row);
    }

    let ncols = base_cols + artificial_cols.len();
    // Widen rows to final column count, moving the rhs to the end and
    // installing artificial unit columns.
    let mut art_iter = artificial_cols.iter();
    for (i, row) in rows.iter_mut().enumerate() {
        let rhs = row.pop().expect("rhs present");
        row.resize(ncols, 0.0);
        if basis[i] == usize::MAX {
            let col = *art_iter.next().expect("artificial column reserved");
            row[col] = 1.0;
            basis[i] = col;
        }
        row.push(rhs);
    }

    let mut t = Tableau {
        rows,
        cost: vec![0.0; ncols],
        basis,
        ncols,
    };

    if !artificial_cols.is_empty() {
        // Phase 1: minimize the sum of artificials.
        for &col in &artificial_cols {
            t.cost[col] = 1.0;
        }
        let art_set: Vec<bool> = {
            let mut v = vec![false; ncols];
            for &c in &artificial_cols {
                v[c] = true;
            }
            v
        };
        // Express reduced costs in terms of the starting basis.
        for i in 0..m {
            if art_set[t.basis[i]] {
                for j in 0..ncols {
                    t.cost[j] -= t.rows[i][j];
                }
            }
        }
        t.optimize(ncols)?;
        let infeasibility: f64 = (0..m)
            .filter(|&i| art_set[t.basis[i]])
            .map(|i| t.rows[i][t.ncols])
            .sum();
        if infeasibility > 1e-7 {
            return Err(LpError::Infeasible);
        }
        // Drive any remaining (zero-level) artificials out of the basis.
        let mut drop_rows: Vec<usize> = Vec::new();
        for i in 0..m {
            if !art_set[t.basis[i]] {
                continue;
            }
            match (0..base_cols).find(|&j| t.rows[i][j].abs() > EPS) {
                Some(j) => t.pivot(i, j),
                None => drop_rows.push(i), // redundant constraint
            }
        }
        for &i in drop_rows.iter().rev() {
            t.rows.remove(i);
            t.basis.remove(i);
        }
    }

    // Phase 2 with the original objective; artificial columns are barred
    // from entering.
    t.cost = vec![0.0; ncols];
    t.cost[..n].copy_from_slice(c);
    for i in 0..t.rows.len() {
        let b_col = t.basis[i];
        let cb = if b_col < n { c[b_col] } else { 0.0 };
        if cb != 0.0 {
            for j in 0..ncols {
                t.cost[j] -= cb * t.rows[i][j];
            }
        }
    }
    t.optimize(base_cols)?;

    let mut x = vec![0.0; n];
    for (i, &b_col) in t.basis.iter().enumerate() {
        if b_col < n {
            x[b_col] = t.rows[i][t.ncols];
        }
    }
    Ok(LpSolution { x })
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;

    fn objective(c: &[f64], x: &[f64]) -> f64 {
        c.iter().zip(x).map(|(ci, xi)| ci * xi).sum()
    }

    #[test]
    fn simple_feasible_program() {
        // min -x1 - 2 x2 s.t. x1 + x2 <= 4, x2 <= 2: optimum at (2, 2).
        let sol = solve_lp_leq(
            &[-1.0, -2.0],
            &[vec![1.0, 1.0], vec![0.0, 1.0]],
            &[4.0, 2.0],
        )
        .unwrap();
        assert_abs_diff_eq!(objective(&[-1.0, -2.0], &sol.x), -6.0, epsilon = 1e-9);
        assert_abs_diff_eq!(sol.x[0], 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(sol.x[1], 2.0, epsilon = 1e-9);
    }

    #[test]
    fn negative_rhs_requires_phase_one() {
        // min x1 + x2 s.t. -x1 <= -3 (x1 >= 3): optimum (3, 0).
        let sol = solve_lp_leq(&[1.0, 1.0], &[vec![-1.0, 0.0]], &[-3.0]).unwrap();
        assert_abs_diff_eq!(objective(&[1.0, 1.0], &sol.x), 3.0, epsilon = 1e-9);
        assert_abs_diff_eq!(sol.x[0], 3.0, epsilon = 1e-9);
    }

    #[test]
    fn detects_infeasibility() {
        // x1 <= 1 and x1 >= 2 cannot hold together.
        let got = solve_lp_leq(&[1.0], &[vec![1.0], vec![-1.0]], &[1.0, -2.0]);
        assert_eq!(got.unwrap_err(), LpError::Infeasible);
    }

    #[test]
    fn detects_unboundedness() {
        // min -x1 with no upper bound on x1.
        let got = solve_lp_leq(&[-1.0], &[vec![0.0]], &[1.0]);
        assert_eq!(got.unwrap_err(), LpError::Unbounded);
    }

    #[test]
    fn equality_via_paired_constraints() {
        // min x1 + 3 x2 s.t. x1 + x2 = 2 (two inequalities): optimum (2, 0).
        let sol = solve_lp_leq(
            &[1.0, 3.0],
            &[vec![1.0, 1.0], vec![-1.0, -1.0]],
            &[2.0, -2.0],
        )
        .unwrap();
        assert_abs_diff_eq!(objective(&[1.0, 3.0], &sol.x), 2.0, epsilon = 1e-9);
        assert_abs_diff_eq!(sol.x[0], 2.0, epsilon = 1e-9);
    }
}
