//! Maximum-weight bipartite matching with nonnegative weights.

/// Below this many rows or columns (on the smaller side) matchings are
/// enumerated exhaustively.
pub const ENUMERATION_LIMIT: usize = 6;

/// Weight of the heaviest matching in the `rows x cols` matrix `w`.
pub fn max_weight_matching(w: &[Vec<f64>]) -> f64 {
    let rows = w.len();
    let cols = w.first().map_or(0, |r| r.len());
    if rows == 0 || cols == 0 {
        return 0.0;
    }
    if rows.min(cols) <= ENUMERATION_LIMIT {
        enumerate(w)
    } else {
        hungarian(w)
    }
}

/// Exhaustive search, assigning each row of the smaller side to a free
/// column or to nothing.
pub fn enumerate(w: &[Vec<f64>]) -> f64 {
    let rows = w.len();
    let cols = w.first().map_or(0, |r| r.len());
    if rows == 0 || cols == 0 {
        return 0.0;
    }
    // Recurse over the smaller side.
    let m: Vec<Vec<f64>> = if rows <= cols {
        w.to_vec()
    } else {
        (0..cols).map(|j| (0..rows).map(|i| w[i][j]).collect()).collect()
    };
    fn go(m: &[Vec<f64>], row: usize, used: &mut Vec<bool>) -> f64 {
        if row == m.len() {
            return 0.0;
        }
        let mut best = go(m, row + 1, used);
        for j in 0..used.len() {
            if !used[j] {
                used[j] = true;
                best = best.max(m[row][j] + go(m, row + 1, used));
                used[j] = false;
            }
        }
        best
    }
    let mut used = vec![false; m[0].len()];
    go(&m, 0, &mut used)
}

/// Kuhn-Munkres on the zero-padded square matrix. With nonnegative weights
/// the padding never lowers the optimum, and a perfect matching on the
/// padded matrix restricted to real entries is a matching of equal weight.
pub fn hungarian(w: &[Vec<f64>]) -> f64 {
    let rows = w.len();
    let cols = w.first().map_or(0, |r| r.len());
    let n = rows.max(cols);
    if n == 0 {
        return 0.0;
    }
    let top = w.iter().flatten().fold(0.0f64, |a, &b| a.max(b));
    let cost = |i: usize, j: usize| -> f64 {
        let v = if i < rows && j < cols { w[i][j] } else { 0.0 };
        top - v
    };
    // Potentials formulation with 1-based sentinels.
    let inf = f64::INFINITY;
    let mut u = vec![0.0; n + 1];
    let mut v = vec![0.0; n + 1];
    let mut p = vec![0usize; n + 1];
    let mut way = vec![0usize; n + 1];
    for i in 1..=n {
        p[0] = i;
        let mut j0 = 0;
        let mut minv = vec![inf; n + 1];
        let mut used = vec![false; n + 1];
        loop {
            used[j0] = true;
            let i0 = p[j0];
            let mut delta = inf;
            let mut j1 = 0;
            for j in 1..=n {
                if !used[j] {
                    let cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
                    if cur < minv[j] {
                        minv[j] = cur;
                        way[j] = j0;
                    }
                    if minv[j] < delta {
                        delta = minv[j];
                        j1 = j;
                    }
                }
            }
            for j in 0..=n {
                if used[j] {
                    u[p[j]] += delta;
                    v[j] -= delta;
                } else {
                    minv[j] -= delta;
                }
            }
            j0 = j1;
            if p[j0] == 0 {
                break;
            }
        }
        loop {
            let j1 = way[j0];
            p[j0] = p[j1];
            j0 = j1;
            if j0 == 0 {
                break;
            }
        }
    }
    (1..=n)
        .filter(|&j| p[j] - 1 < rows && j - 1 < cols)
        .map(|j| w[p[j] - 1][j - 1])
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn small_cases() {
        assert_eq!(max_weight_matching(&[]), 0.0);
        assert_eq!(max_weight_matching(&[vec![1.7]]), 1.7);
        let w = vec![vec![1.2, 1.0], vec![1.3, 0.7]];
        assert!((max_weight_matching(&w) - 2.3).abs() < 1e-12);
        let w = vec![vec![3.0, 1.0, 0.0]];
        assert_eq!(max_weight_matching(&w), 3.0);
        assert!((hungarian(&[vec![1.2, 1.0], vec![1.3, 0.7]]) - 2.3).abs() < 1e-12);
    }

    proptest! {
        #[test]
        fn hungarian_matches_enumeration(
            rows in 1usize..7,
            cols in 1usize..7,
            seed in proptest::collection::vec(0.0..3.0f64, 36),
        ) {
            let w: Vec<Vec<f64>> = (0..rows).map(|i| (0..cols).map(|j| seed[i * 6 + j]).collect()).collect();
            prop_assert!((hungarian(&w) - enumerate(&w)).abs() < 1e-9);
        }
    }
}
