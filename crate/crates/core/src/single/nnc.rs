//! Noisy-network-coding lower bounds: the relay quantizes what it hears and
//! the destination decodes the message jointly with the quantization index.

use super::cutset::split_harmonic;
use super::maximize_split;
use crate::channel::{BoundKind, ChannelGains, OptimizerPoint, RateBound};
use crate::info::{log2_1p, tlog};
use crate::optimize::{golden_max, nelder_mead};
use crate::quadrature::mixture_info;

/// Rate and quantization noise with the relay listening in the first of two
/// fixed phases.
pub fn nnc_det_at(g: &ChannelGains, gamma: f64, beta: f64) -> (f64, f64) {
    if gamma <= 0.0 {
        return (log2_1p(g.s), 0.0);
    }
    if gamma >= 1.0 {
        return (log2_1p(g.s * beta), f64::INFINITY);
    }
    let p_listen = beta / gamma;
    let p_tx = (1.0 - beta) / (1.0 - gamma);
    let a = g.i / (1.0 - gamma) / (1.0 + g.s * p_tx);
    let b = g.c * p_listen / (1.0 + g.s * p_listen);
    // Equating the two constraints gives the noise in closed form.
    let denom = ((1.0 / gamma - 1.0) * a.ln_1p()).exp_m1();
    let sigma2 = if denom == 0.0 {
        f64::INFINITY
    } else {
        (b + 1.0) / denom
    };
    let effective = g.s + g.c / (1.0 + sigma2);
    let rate = tlog(gamma, effective * beta) + tlog(1.0 - gamma, g.s * (1.0 - beta));
    (rate, sigma2)
}

/// NNC with the time-sharing variable equal to the relay state.
pub fn nnc_lower_det(g: &ChannelGains) -> RateBound {
    let m = maximize_split(|gamma, beta| nnc_det_at(g, gamma, beta).0);
    let (value, sigma2) = nnc_det_at(g, m.x, m.y);
    RateBound::new(
        BoundKind::NncDeterministic,
        value,
        OptimizerPoint {
            gamma: Some(m.x),
            beta: Some(m.y),
            sigma2: Some(sigma2),
            ..Default::default()
        },
    )
}

/// NNC rate at a fixed listen fraction with the relay state deterministic.
pub fn nnc_det_at_gamma(g: &ChannelGains, gamma: f64) -> f64 {
    super::maximize_beta(|beta| nnc_det_at(g, gamma, beta).0).1
}

/// Closed-form NNC lower bound (unit quantization noise, balancing listen
/// fraction), floored at zero.
pub fn nnc_lower_analytic(g: &ChannelGains) -> RateBound {
    let direct = log2_1p(g.s);
    let x1 = log2_1p(g.i + g.s) - direct;
    let x2 = log2_1p(g.c / 2.0 + g.s) - direct;
    let (gamma, extra) = split_harmonic(x1, x2);
    RateBound::new(
        BoundKind::NncAnalytic,
        (direct + extra - 1.0).max(0.0),
        OptimizerPoint {
            gamma: Some(gamma),
            sigma2: Some(1.0),
            ..Default::default()
        },
    )
}

/// Input distribution of the general scheme. `probs[2 q + r]` is the
/// probability of time-sharing label `q` with relay state `r` (1 =
/// transmitting). The source power depends on the label only; the relay
/// power is the one used in the transmitting state of each label.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NncPoint {
    pub probs: [f64; 4],
    pub source_power: [f64; 2],
    pub relay_power: [f64; 2],
}

impl NncPoint {
    /// The point on which the general scheme reduces to the
    /// deterministic-state one.
    pub fn deterministic(gamma: f64, beta: f64) -> Self {
        Self {
            probs: [gamma, 0.0, 0.0, 1.0 - gamma],
            source_power: [ratio(beta, gamma), ratio(1.0 - beta, 1.0 - gamma)],
            relay_power: [0.0, ratio(1.0, 1.0 - gamma)],
        }
    }

    /// Constant time-sharing: the source always uses unit power and the relay
    /// state is independent of it.
    pub fn no_time_sharing(gamma: f64) -> Self {
        Self {
            probs: [gamma, 1.0 - gamma, 0.0, 0.0],
            source_power: [1.0, 0.0],
            relay_power: [ratio(1.0, 1.0 - gamma), 0.0],
        }
    }

    fn label_prob(&self, q: usize) -> f64 {
        self.probs[2 * q] + self.probs[2 * q + 1]
    }

    /// Swaps the time-sharing labels so that label 1 carries more listening
    /// probability than label 0.
    pub fn canonical(self) -> Self {
        if self.probs[0] > self.probs[2] {
            Self {
                probs: [self.probs[2], self.probs[3], self.probs[0], self.probs[1]],
                source_power: [self.source_power[1], self.source_power[0]],
                relay_power: [self.relay_power[1], self.relay_power[0]],
            }
        } else {
            self
        }
    }
}

fn ratio(num: f64, den: f64) -> f64 {
    if den > 0.0 {
        num / den
    } else {
        0.0
    }
}

/// Rate of the general scheme at `p`, with the quantization noises chosen
/// optimally. Returns the rate and the noise variance of each label's
/// listening state (infinite when that state is unused or useless).
pub fn nnc_random_rate(g: &ChannelGains, p: &NncPoint) -> (f64, [f64; 2]) {
    let mut base = 0.0;
    let mut forward = 0.0;
    let mut relay_gain = [1.0; 2];
    for q in 0..2 {
        let label = p.label_prob(q);
        if label <= 0.0 {
            continue;
        }
        let direct_energy = g.s * p.source_power[q];
        let quiet = 1.0 + direct_energy;
        let loud = quiet + g.i * p.relay_power[q];
        base += label * log2_1p(direct_energy);
        forward += p.probs[2 * q + 1] * (loud.log2() - quiet.log2());
        forward += label * mixture_info(p.probs[2 * q] / label, quiet, loud);
        relay_gain[q] = 1.0 + g.c * p.source_power[q] / quiet;
    }

    // With x = 1 / sigma^2 the quantization costs `w log(1 + x)` and buys
    // `w log(1 + x C)`; the optimal noises are water-filling in the form
    // x = [lambda (C - 1) - 1]^+ / C, with lambda set so that the bits
    // bought match what the destination can resolve.
    let weights = [p.probs[0], p.probs[2]];
    let inv_noise = |lambda: f64| -> [f64; 2] {
        let mut x = [0.0; 2];
        for q in 0..2 {
            if weights[q] > 0.0 && relay_gain[q] > 1.0 {
                x[q] = (lambda * (relay_gain[q] - 1.0) - 1.0).max(0.0) / relay_gain[q];
            }
        }
        x
    };
    let bought = |x: [f64; 2]| -> f64 {
        (0..2)
            .map(|q| weights[q] * log2_1p(x[q] * relay_gain[q]))
            .sum()
    };
    let useful = (0..2).any(|q| weights[q] > 0.0 && relay_gain[q] > 1.0);
    let x = if forward <= 0.0 || !useful {
        [0.0; 2]
    } else {
        let mut hi = 1.0;
        while bought(inv_noise(hi)) < forward && hi < 1e300 {
            hi *= 4.0;
        }
        let mut lo = 0.0;
        for _ in 0..200 {
            let mid = 0.5 * (lo + hi);
            if bought(inv_noise(mid)) < forward {
                lo = mid;
            } else {
                hi = mid;
            }
            if hi - lo <= 1e-15 * hi {
                break;
            }
        }
        inv_noise(hi)
    };
    let cost: f64 = (0..2).map(|q| weights[q] * log2_1p(x[q])).sum();
    let rate = base - cost + bought(x).min(forward);
    let sigma2 = [1.0 / x[0], 1.0 / x[1]];
    (rate, sigma2)
}

/// Unconstrained coordinates for the local search: squared components give
/// exact zeros on the simplex, squared sines give the energy fractions.
pub fn decode(z: &[f64]) -> NncPoint {
    let sq: Vec<f64> = z[..4].iter().map(|v| v * v).collect();
    let total: f64 = sq.iter().sum::<f64>().max(1e-300);
    let probs = [sq[0] / total, sq[1] / total, sq[2] / total, sq[3] / total];
    let src = z[4].sin().powi(2);
    let rly = z[5].sin().powi(2);
    point_from(probs, src, rly)
}

pub fn encode(p: &NncPoint) -> Vec<f64> {
    let mut z: Vec<f64> = p.probs.iter().map(|v| v.max(0.0).sqrt()).collect();
    let src = p.source_power[0] * p.label_prob(0);
    let rly = p.relay_power[0] * p.probs[1];
    z.push(src.clamp(0.0, 1.0).sqrt().asin());
    z.push(rly.clamp(0.0, 1.0).sqrt().asin());
    z
}

/// Spends a fraction `src` of the source energy and `rly` of the relay
/// energy in label 0.
pub fn point_from(probs: [f64; 4], src: f64, rly: f64) -> NncPoint {
    let q0 = probs[0] + probs[1];
    let q1 = probs[2] + probs[3];
    let src = if q1 <= 0.0 {
        1.0
    } else if q0 <= 0.0 {
        0.0
    } else {
        src
    };
    let rly = if probs[3] <= 0.0 {
        1.0
    } else if probs[1] <= 0.0 {
        0.0
    } else {
        rly
    };
    NncPoint {
        probs,
        source_power: [ratio(src, q0), ratio(1.0 - src, q1)],
        relay_power: [ratio(rly, probs[1]), ratio(1.0 - rly, probs[3])],
    }
}

const SIMPLEX_STEPS: usize = 10;
const ENERGY_STEPS: [f64; 5] = [0.0, 0.25, 0.5, 0.75, 1.0];
const RESTARTS: usize = 8;
const LOCAL_EVALS: usize = 3000;

/// NNC with a time-sharing variable and a random relay state, maximized by a
/// coarse scan over the state probabilities and energy splits followed by
/// local simplex searches from the best scan points and from the optima of
/// the two restricted families.
pub fn nnc_lower_random(g: &ChannelGains) -> RateBound {
    let eval = |p: &NncPoint| nnc_random_rate(g, p).0;
    let mut candidates: Vec<(f64, NncPoint)> = Vec::new();
    let n = SIMPLEX_STEPS;
    for a in 0..=n {
        for b in 0..=n - a {
            for c in 0..=n - a - b {
                let d = n - a - b - c;
                let probs = [a, b, c, d].map(|k| k as f64 / n as f64);
                for &src in &ENERGY_STEPS {
                    for &rly in &ENERGY_STEPS {
                        let p = point_from(probs, src, rly);
                        candidates.push((eval(&p), p));
                    }
                }
            }
        }
    }
    candidates.sort_by(|x, y| y.0.partial_cmp(&x.0).unwrap());

    let det = nnc_lower_det(g);
    let det_point = NncPoint::deterministic(det.optimizer.gamma.unwrap(), det.optimizer.beta.unwrap());
    let noq = nnc_lower_noq(g);
    let noq_point = NncPoint::no_time_sharing(noq.optimizer.gamma.unwrap());

    let mut starts = vec![det_point, noq_point];
    for (_, p) in &candidates {
        if starts.len() >= RESTARTS + 2 {
            break;
        }
        let c = p.canonical();
        let distinct = starts.iter().all(|s| {
            let s = s.canonical();
            (0..4).map(|k| (s.probs[k] - c.probs[k]).abs()).sum::<f64>() > 0.15
        });
        if distinct {
            starts.push(*p);
        }
    }

    let mut best = (eval(&det_point), det_point, true);
    for start in &starts {
        let v0 = eval(start);
        if v0 > best.0 {
            best = (v0, *start, true);
        }
        let (z, neg, converged) = nelder_mead(|z| -eval(&decode(z)), &encode(start), 0.15, 1e-11, LOCAL_EVALS);
        let p = decode(&z);
        if -neg > best.0 {
            best = (-neg, p, converged);
        }
    }

    let (value, point, converged) = best;
    let point = point.canonical();
    let (_, sigma2) = nnc_random_rate(g, &point);
    let listen = point.probs[0] + point.probs[2];
    let mut bound = RateBound::new(
        BoundKind::NncRandom,
        value,
        OptimizerPoint {
            gamma: Some(listen),
            sigma2: Some(sigma2[1]),
            state_probs: Some(point.probs),
            ..Default::default()
        },
    );
    if !converged {
        bound.warning = Some("local search stopped on its evaluation budget".into());
    }
    bound
}

/// NNC with a random relay state but no time-sharing: the source ignores
/// the relay state.
pub fn nnc_lower_noq(g: &ChannelGains) -> RateBound {
    let f = |gamma: f64| nnc_random_rate(g, &NncPoint::no_time_sharing(gamma)).0;
    let mut best = (1.0, f(1.0));
    let n = 50;
    for k in 0..n {
        let gamma = k as f64 / n as f64;
        let v = f(gamma);
        if v > best.1 {
            best = (gamma, v);
        }
    }
    let step = 1.0 / n as f64;
    let refined = golden_max(f, (best.0 - step).max(0.0), (best.0 + step).min(1.0), 1e-7);
    if refined.1 > best.1 {
        best = refined;
    }
    let (gamma, value) = best;
    let (_, sigma2) = nnc_random_rate(g, &NncPoint::no_time_sharing(gamma));
    RateBound::new(
        BoundKind::NncNoQ,
        value,
        OptimizerPoint {
            gamma: Some(gamma),
            sigma2: Some(sigma2[0]),
            state_probs: Some([gamma, 1.0 - gamma, 0.0, 0.0]),
            ..Default::default()
        },
    )
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gains(s: f64, i: f64, c: f64) -> ChannelGains {
        ChannelGains::new(s, i, c).unwrap()
    }

    #[test]
    fn det_limits() {
        let g = gains(3.0, 10.0, 20.0);
        assert!((nnc_det_at(&g, 1.0, 1.0).0 - 2.0).abs() < 1e-12);
        assert!((nnc_det_at(&g, 0.0, 0.0).0 - 2.0).abs() < 1e-12);
        let (v, s2) = nnc_det_at(&g, 1.0 - 1e-12, 1.0);
        assert!((v - 2.0).abs() < 1e-6 && s2 > 1e6);
    }

    #[test]
    fn det_noise_equates_constraints() {
        let g = gains(2.0, 30.0, 50.0);
        for &(gamma, beta) in &[(0.3, 0.4), (0.6, 0.9), (0.5, 0.5)] {
            let (rate, s2) = nnc_det_at(&g, gamma, beta);
            let p0 = beta / gamma;
            let p1 = (1.0 - beta) / (1.0 - gamma);
            let pr = 1.0 / (1.0 - gamma);
            let dest = gamma * (log2_1p(g.s * p0) - log2_1p(1.0 / s2)) + (1.0 - gamma) * log2_1p(g.s * p1 + g.i * pr);
            assert!((dest - rate).abs() < 1e-9, "{dest} vs {rate}");
        }
    }

    #[test]
    fn general_scheme_reduces_to_deterministic() {
        for &(s, i, c) in &[(0.0, 3.0, 15.0), (1.0, 8.0, 8.0), (1000.0, 3000.0, 5800.0)] {
            let g = gains(s, i, c);
            for &(gamma, beta) in &[(0.3, 0.5), (0.55, 0.8), (0.7, 0.7)] {
                let det = nnc_det_at(&g, gamma, beta).0;
                let gen = nnc_random_rate(&g, &NncPoint::deterministic(gamma, beta)).0;
                assert!((det - gen).abs() < 1e-6, "{det} vs {gen}");
            }
        }
    }

    #[test]
    fn analytic_below_det() {
        let g = gains(1.0, 8.0, 8.0);
        assert!(nnc_lower_analytic(&g).value <= nnc_lower_det(&g).value + 1e-9);
        let weak = nnc_lower_analytic(&gains(3.0, 1.0, 1e-6)).value;
        assert!((weak - 1.0).abs() < 1e-5);
    }

    #[test]
    fn canonical_labels() {
        let p = point_from([0.5, 0.1, 0.2, 0.2], 0.7, 0.3).canonical();
        assert_eq!(p.probs, [0.2, 0.2, 0.5, 0.1]);
        let g = gains(1.0, 5.0, 9.0);
        let a = nnc_random_rate(&g, &point_from([0.5, 0.1, 0.2, 0.2], 0.7, 0.3)).0;
        let b = nnc_random_rate(&g, &p).0;
        assert!((a - b).abs() < 1e-12);
    }

    #[test]
    fn coordinates_round_trip() {
        let p = point_from([0.1, 0.3, 0.4, 0.2], 0.35, 0.6);
        let q = decode(&encode(&p));
        for k in 0..4 {
            assert!((p.probs[k] - q.probs[k]).abs() < 1e-12);
        }
        for k in 0..2 {
            assert!((p.source_power[k] - q.source_power[k]).abs() < 1e-9);
            assert!((p.relay_power[k] - q.relay_power[k]).abs() < 1e-9);
        }
    }
}
