//! Dense primal simplex for `max c'x s.t. A x <= b, x >= 0` with `b >= 0`,
//! pivoting by Bland's rule.

use crate::error::{Error, Result};

const EPS: f64 = 1e-9;
const TIE: f64 = 1e-12;

/// Optimal point, objective value and constraint duals.
#[derive(Debug, Clone, PartialEq)]
pub struct LpOptimum {
    pub x: Vec<f64>,
    pub duals: Vec<f64>,
    pub value: f64,
    pub pivots: usize,
}

pub fn maximize(c: &[f64], a: &[Vec<f64>], b: &[f64], max_pivots: usize) -> Result<LpOptimum> {
    let m = a.len();
    let n = c.len();
    if b.iter().any(|&v| v < 0.0) {
        return Err(Error::InvalidParameter("right-hand side must be nonnegative".into()));
    }
    // Tableau rows: constraints with slack columns, then the objective row.
    let width = n + m + 1;
    let mut t = vec![0.0; (m + 1) * width];
    for i in 0..m {
        let row = &mut t[i * width..(i + 1) * width];
        row[..n].copy_from_slice(&a[i]);
        row[n + i] = 1.0;
        row[width - 1] = b[i];
    }
    for j in 0..n {
        t[m * width + j] = -c[j];
    }
    let mut basis: Vec<usize> = (n..n + m).collect();

    let mut pivots = 0;
    loop {
        // Entering column: lowest index with a negative reduced cost.
        let obj = &t[m * width..(m + 1) * width];
        let Some(enter) = (0..n + m).find(|&j| obj[j] < -EPS) else {
            break;
        };
        // Leaving row: minimum ratio, ties to the lowest basic index.
        let ratios: Vec<(usize, f64)> = (0..m)
            .filter(|&i| t[i * width + enter] > EPS)
            .map(|i| (i, t[i * width + width - 1].max(0.0) / t[i * width + enter]))
            .collect();
        let Some(best) = ratios.iter().map(|r| r.1).reduce(f64::min) else {
            return Err(Error::Internal("linear program is unbounded".into()));
        };
        let window = best + TIE * (1.0 + best);
        let row = ratios
            .iter()
            .filter(|r| r.1 <= window)
            .min_by_key(|r| basis[r.0])
            .map(|r| r.0)
            .expect("minimum ratio row exists");
        if pivots >= max_pivots {
            return Err(Error::SolverBudget { iterations: pivots });
        }
        pivot(&mut t, width, m, row, enter);
        basis[row] = enter;
        pivots += 1;
    }

    let mut x = vec![0.0; n];
    for (i, &var) in basis.iter().enumerate() {
        if var < n {
            x[var] = t[i * width + width - 1];
        }
    }
    let duals = (0..m).map(|i| t[m * width + n + i]).collect();
    Ok(LpOptimum {
        value: t[m * width + width - 1],
        x,
        duals,
        pivots,
    })
}

fn pivot(t: &mut [f64], width: usize, m: usize, row: usize, col: usize) {
    let p = t[row * width + col];
    for v in &mut t[row * width..(row + 1) * width] {
        *v /= p;
    }
    let pivot_row: Vec<f64> = t[row * width..(row + 1) * width].to_vec();
    for i in 0..=m {
        if i == row {
            continue;
        }
        let f = t[i * width + col];
        if f != 0.0 {
            for (v, pr) in t[i * width..(i + 1) * width].iter_mut().zip(&pivot_row) {
                *v -= f * pr;
            }
            t[i * width + col] = 0.0;
            // Round-off must not make a basic variable negative.
            if i < m && t[i * width + width - 1] < 0.0 {
                t[i * width + width - 1] = 0.0;
            }
        }
    }
}
