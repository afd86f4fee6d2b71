//! Derivative-free scalar and low-dimensional maximizers.

const INV_PHI: f64 = 0.618_033_988_749_894_9;

/// Golden-section maximization of `f` on `[a, b]`. The endpoints are also
/// evaluated, so a monotone objective returns the right boundary value.
/// Returns `(argmax, max)`.
pub fn golden_max(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> (f64, f64) {
    let (mut lo, mut hi) = (a, b);
    let mut x1 = hi - INV_PHI * (hi - lo);
    let mut x2 = lo + INV_PHI * (hi - lo);
    let mut f1 = f(x1);
    let mut f2 = f(x2);
    while hi - lo > tol {
        if f1 >= f2 {
            hi = x2;
            x2 = x1;
            f2 = f1;
            x1 = hi - INV_PHI * (hi - lo);
            f1 = f(x1);
        } else {
            lo = x1;
            x1 = x2;
            f1 = f2;
            x2 = lo + INV_PHI * (hi - lo);
            f2 = f(x2);
        }
    }
    let mut best = if f1 >= f2 { (x1, f1) } else { (x2, f2) };
    for x in [a, b] {
        let v = f(x);
        if v > best.1 || (v == best.1 && x < best.0) {
            best = (x, v);
        }
    }
    best
}

/// Finds the sign change of `f` on `[a, b]` by bisection, assuming
/// `f(a) <= 0 <= f(b)` (or the reverse). Returns the midpoint of the final
/// bracket.
pub fn bisect(f: impl Fn(f64) -> f64, a: f64, b: f64, iterations: usize) -> f64 {
    let (mut lo, mut hi) = (a, b);
    let rising = f(a) <= f(b);
    for _ in 0..iterations {
        let m = 0.5 * (lo + hi);
        let below = f(m) < 0.0;
        if below == rising {
            lo = m;
        } else {
            hi = m;
        }
    }
    0.5 * (lo + hi)
}

/// Point and value found by a maximizer over the unit square.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Max2 {
    pub x: f64,
    pub y: f64,
    pub value: f64,
}

/// Maximizes `f` over `[0, 1]^2`: a grid scan at `step`, then nested golden
/// section (outer `x`, inner `y`) inside the grid cells around the best few
/// grid points. Ties on the grid resolve to the smallest `x`, then `y`.
pub fn grid_golden_2d(f: impl Fn(f64, f64) -> f64 + Sync, step: f64, seeds: usize, tol: f64) -> Max2 {
    grid_golden_2d_seeded(f, step, seeds, tol, &[])
}

/// [`grid_golden_2d`] with extra candidate points that are refined alongside
/// the best grid points.
pub fn grid_golden_2d_seeded(
    f: impl Fn(f64, f64) -> f64 + Sync,
    step: f64,
    seeds: usize,
    tol: f64,
    extra: &[(f64, f64)],
) -> Max2 {
    let n = (1.0 / step).round() as usize;
    let coord = |k: usize| (k as f64 / n as f64).min(1.0);
    let mut pts: Vec<Max2> = Vec::with_capacity((n + 1) * (n + 1));
    for i in 0..=n {
        for j in 0..=n {
            let (x, y) = (coord(i), coord(j));
            pts.push(Max2 { x, y, value: f(x, y) });
        }
    }
    let mut best = pts[0];
    for p in &pts {
        if p.value > best.value {
            best = *p;
        }
    }
    let mut order: Vec<usize> = (0..pts.len()).collect();
    order.sort_by(|&a, &b| pts[b].value.partial_cmp(&pts[a].value).unwrap().then(a.cmp(&b)));

    let mut starts: Vec<Max2> = Vec::new();
    for &(x, y) in extra {
        let p = Max2 { x, y, value: f(x, y) };
        if p.value > best.value {
            best = p;
        }
        starts.push(p);
    }
    // Grid seeds are thinned so that neighbouring cells of one peak are not
    // refined twice; extra seeds are always refined.
    let mut tried: Vec<(f64, f64)> = Vec::new();
    for &k in order.iter() {
        if tried.len() >= seeds {
            break;
        }
        let p = pts[k];
        if tried.iter().any(|&(x, y)| (x - p.x).abs() < 1.5 * step && (y - p.y).abs() < 1.5 * step) {
            continue;
        }
        tried.push((p.x, p.y));
        starts.push(p);
    }

    for p in starts {
        let q = climb_boxes(&f, p, step, tol);
        if q.value > best.value {
            best = q;
        }
    }
    best
}

/// Nested golden refinement in a box of half-width `step` around `p`. The box
/// is recentred while the optimum lands on an interior edge and keeps
/// improving, so that narrow diagonal ridges are followed to their end.
fn climb_boxes(f: &impl Fn(f64, f64) -> f64, mut p: Max2, step: f64, tol: f64) -> Max2 {
    const MAX_MOVES: usize = 200;
    for _ in 0..MAX_MOVES {
        let (xa, xb) = ((p.x - step).max(0.0), (p.x + step).min(1.0));
        let (ya, yb) = ((p.y - step).max(0.0), (p.y + step).min(1.0));
        let inner = |x: f64| golden_max(|y| f(x, y), ya, yb, tol);
        let (x, _) = golden_max(|x| inner(x).1, xa, xb, tol);
        let (y, value) = inner(x);
        if value <= p.value {
            break;
        }
        let edge = |v: f64, lo: f64, hi: f64| (v - lo < 2.0 * tol && lo > 0.0) || (hi - v < 2.0 * tol && hi < 1.0);
        p = Max2 { x, y, value };
        if !edge(x, xa, xb) && !edge(y, ya, yb) {
            break;
        }
    }
    p
}

/// Nelder-Mead simplex minimizer on an unconstrained domain. Returns the best
/// vertex, its value and whether the size tolerance was met within the
/// budget.
pub fn nelder_mead(
    f: impl Fn(&[f64]) -> f64,
    start: &[f64],
    scale: f64,
    ftol: f64,
    max_evals: usize,
) -> (Vec<f64>, f64, bool) {
    let n = start.len();
    let mut simplex: Vec<Vec<f64>> = vec![start.to_vec()];
    for i in 0..n {
        let mut p = start.to_vec();
        p[i] += scale;
        simplex.push(p);
    }
    let mut values: Vec<f64> = simplex.iter().map(|p| f(p)).collect();
    let mut evals = n + 1;
    let mut converged = false;
    while evals < max_evals {
        let mut idx: Vec<usize> = (0..=n).collect();
        idx.sort_by(|&a, &b| values[a].partial_cmp(&values[b]).unwrap_or(std::cmp::Ordering::Equal));
        simplex = idx.iter().map(|&i| simplex[i].clone()).collect();
        values = idx.iter().map(|&i| values[i]).collect();
        if (values[n] - values[0]).abs() <= ftol {
            converged = true;
            break;
        }
        let mut centroid = vec![0.0; n];
        for p in &simplex[..n] {
            for (c, v) in centroid.iter_mut().zip(p) {
                *c += v / n as f64;
            }
        }
        let along = |t: f64| -> Vec<f64> {
            centroid
                .iter()
                .zip(&simplex[n])
                .map(|(c, w)| c + t * (w - c))
                .collect()
        };
        let xr = along(-1.0);
        let fr = f(&xr);
        evals += 1;
        if fr < values[0] {
            let xe = along(-2.0);
            let fe = f(&xe);
            evals += 1;
            if fe < fr {
                simplex[n] = xe;
                values[n] = fe;
            } else {
                simplex[n] = xr;
                values[n] = fr;
            }
        } else if fr < values[n - 1] {
            simplex[n] = xr;
            values[n] = fr;
        } else {
            let (xc, fc) = if fr < values[n] {
                let xc = along(-0.5);
                let fc = f(&xc);
                (xc, fc)
            } else {
                let xc = along(0.5);
                let fc = f(&xc);
                (xc, fc)
            };
            evals += 1;
            if fc < values[n].min(fr) {
                simplex[n] = xc;
                values[n] = fc;
            } else {
                for i in 1..=n {
                    let p: Vec<f64> = simplex[0]
                        .iter()
                        .zip(&simplex[i])
                        .map(|(b, x)| b + 0.5 * (x - b))
                        .collect();
                    values[i] = f(&p);
                    simplex[i] = p;
                }
                evals += n;
            }
        }
    }
    let mut best = 0;
    for i in 1..=n {
        if values[i] < values[best] {
            best = i;
        }
    }
    (simplex[best].clone(), values[best], converged)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn golden_finds_interior_and_boundary() {
        let (x, v) = golden_max(|x| -(x - 0.3) * (x - 0.3), 0.0, 1.0, 1e-9);
        assert!((x - 0.3).abs() < 1e-6 && v.abs() < 1e-12);
        let (x, _) = golden_max(|x| x, 0.0, 1.0, 1e-9);
        assert_eq!(x, 1.0);
        let (x, _) = golden_max(|x| -x, 0.0, 1.0, 1e-9);
        assert_eq!(x, 0.0);
    }

    #[test]
    fn bisect_root() {
        let r = bisect(|x| x * x - 2.0, 0.0, 2.0, 60);
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
        let r = bisect(|x| 2.0 - x * x, 0.0, 2.0, 60);
        assert!((r - 2f64.sqrt()).abs() < 1e-12);
    }

    #[test]
    fn grid_golden_on_smooth_bump() {
        let m = grid_golden_2d(|x, y| -((x - 0.4137).powi(2) + 2.0 * (y - 0.777).powi(2)), 0.02, 4, 1e-9);
        assert!((m.x - 0.4137).abs() < 1e-5 && (m.y - 0.777).abs() < 1e-5, "{m:?}");
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let f = |p: &[f64]| (1.0 - p[0]).powi(2) + 100.0 * (p[1] - p[0] * p[0]).powi(2);
        let (x, v, ok) = nelder_mead(f, &[-1.2, 1.0], 0.5, 1e-14, 10_000);
        assert!(ok && v < 1e-8 && (x[0] - 1.0).abs() < 1e-3, "{x:?} {v}");
    }
}
