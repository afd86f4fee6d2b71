//! Mutual information between a binary switch and the output of a
//! two-component circularly-symmetric complex Gaussian mixture.
//!
//! The phase of the output is uniform and independent of the switch, so only
//! the squared magnitude carries information. Conditioned on the switch, the
//! squared magnitude is exponential, which turns the entropy integral into a
//! one-dimensional integral against `exp(-x)`.

use std::f64::consts::LN_2;

use crate::info::binary_entropy;

/// Two-component mixture: with probability `gamma` the output variance is
/// `v0`, otherwise `v1`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MixtureSpec {
    pub gamma: f64,
    pub v0: f64,
    pub v1: f64,
}

impl MixtureSpec {
    pub fn new(gamma: f64, v0: f64, v1: f64) -> Self {
        Self { gamma, v0, v1 }
    }
}

const MAX_DEPTH: u32 = 40;
const X_MAX: f64 = 44.0;
/// Points of the Gauss-Legendre rule applied on each panel.
const GL_POINTS: usize = 16;
/// Extent, in units of the kink width, beyond which the smooth correction is
/// below double precision.
const KINK_REACH: f64 = 40.0;
// Past X_MAX the correction is below ln(2) exp(-X_MAX) ~ 5e-20.

fn simpson(f: &impl Fn(f64) -> f64, a: f64, fa: f64, b: f64, fb: f64) -> (f64, f64, f64) {
    let m = 0.5 * (a + b);
    let fm = f(m);
    (m, fm, (b - a) / 6.0 * (fa + 4.0 * fm + fb))
}

#[allow(clippy::too_many_arguments)]
fn adapt(
    f: &impl Fn(f64) -> f64,
    a: f64,
    fa: f64,
    b: f64,
    fb: f64,
    m: f64,
    fm: f64,
    whole: f64,
    tol: f64,
    depth: u32,
) -> f64 {
    let (lm, flm, left) = simpson(f, a, fa, m, fm);
    let (rm, frm, right) = simpson(f, m, fm, b, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        return left + right + delta / 15.0;
    }
    adapt(f, a, fa, m, fm, lm, flm, left, 0.5 * tol, depth - 1)
        + adapt(f, m, fm, b, fb, rm, frm, right, 0.5 * tol, depth - 1)
}

/// Adaptive Simpson integration of `f` over `[a, b]` to absolute tolerance
/// `tol`.
pub fn adaptive_simpson(f: impl Fn(f64) -> f64, a: f64, b: f64, tol: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let fa = f(a);
    let fb = f(b);
    let (m, fm, whole) = simpson(&f, a, fa, b, fb);
    adapt(&f, a, fa, b, fb, m, fm, whole, tol, MAX_DEPTH)
}

/// Nodes and weights of the Gauss-Legendre rule on `[-1, 1]`.
pub fn gauss_legendre(n: usize) -> (Vec<f64>, Vec<f64>) {
    let mut nodes = vec![0.0; n];
    let mut weights = vec![0.0; n];
    for i in 0..n {
        let mut x = (std::f64::consts::PI * (i as f64 + 0.75) / (n as f64 + 0.5)).cos();
        let mut dp = 0.0;
        for _ in 0..100 {
            let (mut p0, mut p1) = (1.0, x);
            for k in 2..=n {
                let p2 = ((2 * k - 1) as f64 * x * p1 - (k - 1) as f64 * p0) / k as f64;
                p0 = p1;
                p1 = p2;
            }
            dp = n as f64 * (x * p1 - p0) / (x * x - 1.0);
            let dx = p1 / dp;
            x -= dx;
            if dx.abs() < 1e-16 {
                break;
            }
        }
        nodes[i] = x;
        weights[i] = 2.0 / ((1.0 - x * x) * dp * dp);
    }
    (nodes, weights)
}

fn rule() -> &'static (Vec<f64>, Vec<f64>) {
    static RULE: std::sync::OnceLock<(Vec<f64>, Vec<f64>)> = std::sync::OnceLock::new();
    RULE.get_or_init(|| gauss_legendre(GL_POINTS))
}

/// Composite Gauss-Legendre over `[a, b]` with panels no wider than `width`.
fn composite(f: &impl Fn(f64) -> f64, a: f64, b: f64, width: f64) -> f64 {
    if b <= a {
        return 0.0;
    }
    let (nodes, weights) = rule();
    let panels = ((b - a) / width).ceil().max(1.0) as usize;
    let h = (b - a) / panels as f64;
    let mut total = 0.0;
    for p in 0..panels {
        let mid = a + (p as f64 + 0.5) * h;
        let mut acc = 0.0;
        for (x, w) in nodes.iter().zip(weights) {
            acc += w * f(mid + 0.5 * h * x);
        }
        total += 0.5 * h * acc;
    }
    total
}

/// `E[max(a, b + s X)]` for `X ~ Exp(1)`.
fn expected_max_affine(a: f64, b: f64, s: f64) -> f64 {
    if s == 0.0 {
        return a.max(b);
    }
    let cross = (a - b) / s;
    if s > 0.0 {
        if cross <= 0.0 {
            b + s
        } else {
            a + s * (-cross).exp()
        }
    } else if cross <= 0.0 {
        a
    } else {
        b + s * (-(-cross).exp_m1())
    }
}

/// `E[ln(exp(a) + exp(b + s X))]` for `X ~ Exp(1)`.
///
/// The log-sum-exp is split into the maximum of its two arguments, which
/// integrates in closed form, and the softplus correction
/// `ln(1 + exp(-|a - b - s x|))`, a bump of width `1 / |s|` around the
/// crossing of the two arguments that is smooth on either side of it.
pub(crate) fn expected_log_sum_exp(a: f64, b: f64, s: f64) -> f64 {
    let head = expected_max_affine(a, b, s);
    let corr = |x: f64| (-x).exp() * (-(a - b - s * x).abs()).exp().ln_1p();
    if s == 0.0 {
        return head + (-(a - b).abs()).exp().ln_1p();
    }
    let scale = 1.0 / s.abs();
    let cross = (a - b) / s;
    // Each side of the kink is analytic within a strip of half-width pi in
    // kink units, so 16-point panels of width 4 are accurate to ~1e-17.
    let width = 4.0 * scale.min(1.0);
    let reach = KINK_REACH * scale;
    let left = composite(&corr, (cross - reach).clamp(0.0, X_MAX), cross.clamp(0.0, X_MAX), width);
    let right = composite(&corr, cross.clamp(0.0, X_MAX), (cross + reach).clamp(0.0, X_MAX), width);
    head + left + right
}

/// `E[ln(w_self + w_other * r * exp(X (1 - r)))]` for `X ~ Exp(1)`: the
/// expected log-ratio of the mixture density to the density of the component
/// with variance `v_self`, where `r = v_self / v_other`.
fn log_ratio_expectation(w_self: f64, w_other: f64, r: f64) -> f64 {
    expected_log_sum_exp(w_self.ln(), (w_other * r).ln(), 1.0 - r)
}

/// Mutual information in bits between the switch and the output of `m`,
/// clamped to `[0, H(gamma)]`.
pub fn switch_info_mixture(m: MixtureSpec) -> f64 {
    mixture_info(m.gamma, m.v0, m.v1)
}

/// Same as [`switch_info_mixture`] with the fields passed directly.
pub fn mixture_info(gamma: f64, v0: f64, v1: f64) -> f64 {
    let h = binary_entropy(gamma);
    if h == 0.0 || v0 == v1 {
        return 0.0;
    }
    let r01 = v0 / v1;
    let nats = -(gamma * log_ratio_expectation(gamma, 1.0 - gamma, r01)
        + (1.0 - gamma) * log_ratio_expectation(1.0 - gamma, gamma, 1.0 / r01));
    (nats / LN_2).clamp(0.0, h)
}
