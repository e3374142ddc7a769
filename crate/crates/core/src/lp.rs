//! Exact rational simplex for packing-form linear programs
//!
//! ```text
//! maximize  c·x   subject to  A x <= b,  x >= 0,  b >= 0
//! ```
//!
//! The origin is feasible, so the dictionary starts from the all-slack basis
//! and no phase one is needed. Pivoting follows Bland's rule (lowest-index
//! entering column, lowest-index leaving variable among ratio ties), which
//! guarantees termination and makes the returned vertex deterministic.

use num_traits::{Signed, Zero};

use crate::rational::Rational;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LpError {
    /// The objective is unbounded above.
    Unbounded { column: usize },
    /// Some right-hand side is negative, so the slack basis is infeasible.
    NegativeRhs { row: usize },
    /// Row lengths disagree with the objective length.
    Shape,
}

#[derive(Clone, Debug)]
pub struct LpSolution {
    pub value: Rational,
    /// Primal optimum.
    pub x: Vec<Rational>,
    /// Dual optimum: `y >= 0`, `yᵀA >= c`, `b·y = value`.
    pub duals: Vec<Rational>,
    /// Basic variable of each row at the optimum. Indices `< n` are
    /// structural columns, `n + i` is the slack of row `i`.
    pub basis: Vec<usize>,
    pub pivots: usize,
}

impl LpSolution {
    /// Rows whose slack is nonbasic at the optimum, i.e. the constraints
    /// defining the optimal vertex.
    pub fn tight_rows(&self) -> Vec<usize> {
        let n = self.x.len();
        let m = self.duals.len();
        let mut basic_slack = vec![false; m];
        for &b in &self.basis {
            if b >= n {
                basic_slack[b - n] = true;
            }
        }
        (0..m).filter(|&i| !basic_slack[i]).collect()
    }
}

/// Solves `max c·x s.t. rows·x <= rhs, x >= 0`.
pub fn maximize(c: &[Rational], rows: &[Vec<Rational>], rhs: &[Rational]) -> Result<LpSolution, LpError> {
    let n = c.len();
    let m = rows.len();
    if rhs.len() != m || rows.iter().any(|r| r.len() != n) {
        return Err(LpError::Shape);
    }
    if let Some(row) = rhs.iter().position(|b| b.is_negative()) {
        return Err(LpError::NegativeRhs { row });
    }

    let width = n + m;
    let mut tab: Vec<Vec<Rational>> = Vec::with_capacity(m);
    for (i, row) in rows.iter().enumerate() {
        let mut t = Vec::with_capacity(width + 1);
        t.extend(row.iter().cloned());
        t.extend((0..m).map(|j| if j == i { Rational::from_integer(1.into()) } else { Rational::zero() }));
        t.push(rhs[i].clone());
        tab.push(t);
    }
    // Reduced costs c_j - yᵀA_j; last entry holds minus the objective value.
    let mut obj: Vec<Rational> = c.iter().cloned().chain((0..=m).map(|_| Rational::zero())).collect();
    let mut basis: Vec<usize> = (n..n + m).collect();
    let mut pivots = 0usize;

    while let Some(col) = (0..width).find(|&j| obj[j].is_positive()) {
        let mut leave: Option<(usize, Rational)> = None;
        for (r, t) in tab.iter().enumerate() {
            if !t[col].is_positive() {
                continue;
            }
            let ratio = &t[width] / &t[col];
            let better = match &leave {
                None => true,
                Some((lr, best)) => ratio < *best || (ratio == *best && basis[r] < basis[*lr]),
            };
            if better {
                leave = Some((r, ratio));
            }
        }
        let Some((row, _)) = leave else {
            return Err(LpError::Unbounded { column: col });
        };
        pivot(&mut tab, &mut obj, row, col);
        basis[row] = col;
        pivots += 1;
    }

    let mut x = vec![Rational::zero(); n];
    for (r, &b) in basis.iter().enumerate() {
        if b < n {
            x[b] = tab[r][width].clone();
        }
    }
    let duals: Vec<Rational> = (0..m).map(|i| -obj[n + i].clone()).collect();
    let value = -obj[width].clone();
    Ok(LpSolution {
        value,
        x,
        duals,
        basis,
        pivots,
    })
}

fn pivot(tab: &mut [Vec<Rational>], obj: &mut [Rational], row: usize, col: usize) {
    let p = tab[row][col].clone();
    for v in tab[row].iter_mut() {
        if !v.is_zero() {
            *v /= &p;
        }
    }
    let pivot_row = tab[row].clone();
    let support: Vec<usize> = (0..pivot_row.len()).filter(|&j| !pivot_row[j].is_zero()).collect();
    for (r, t) in tab.iter_mut().enumerate() {
        if r == row || t[col].is_zero() {
            continue;
        }
        let f = t[col].clone();
        for &j in &support {
            let delta = &f * &pivot_row[j];
            t[j] -= delta;
        }
    }
    if !obj[col].is_zero() {
        let f = obj[col].clone();
        for &j in &support {
            let delta = &f * &pivot_row[j];
            obj[j] -= delta;
        }
    }
}
