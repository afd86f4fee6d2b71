//! Partial-decode-and-forward lower bounds.

use super::cutset::split_harmonic;
use super::{coherent_energy, max_min_crossing, maximize_beta, maximize_split, maximize_split_coarse};
use crate::channel::{BoundKind, ChannelGains, OptimizerPoint, RateBound};
use crate::info::{log2_1p, tlog};
use crate::quadrature::mixture_info;

/// Whether the relay's listen/transmit state carries information.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Switch {
    Deterministic,
    Random,
}

/// Destination-decoding and relay-decoding constraints at a fixed schedule.
pub fn pdf_terms(g: &ChannelGains, switch: Switch, gamma: f64, beta: f64, alpha1: f64) -> (f64, f64) {
    let s_tx = g.s * (1.0 - beta);
    let combined = coherent_energy(s_tx, g.i, alpha1);
    let switch_info = match switch {
        Switch::Deterministic => 0.0,
        Switch::Random if gamma > 0.0 && gamma < 1.0 => {
            mixture_info(gamma, 1.0 + g.s * beta / gamma, 1.0 + combined / (1.0 - gamma))
        }
        Switch::Random => 0.0,
    };
    let dest = switch_info + tlog(gamma, g.s * beta) + tlog(1.0 - gamma, combined);
    let relay = tlog(gamma, g.c.max(g.s) * beta) + tlog(1.0 - gamma, (1.0 - alpha1 * alpha1) * s_tx);
    (dest, relay)
}

/// Best correlation at a fixed `(gamma, beta)`: `(alpha1, value)`.
pub fn pdf_at(g: &ChannelGains, switch: Switch, gamma: f64, beta: f64) -> (f64, f64) {
    if g.s * (1.0 - beta) == 0.0 {
        let (a, b) = pdf_terms(g, switch, gamma, beta, 0.0);
        return (0.0, a.min(b));
    }
    max_min_crossing(
        |a| pdf_terms(g, switch, gamma, beta, a).0,
        |a| pdf_terms(g, switch, gamma, beta, a).1,
    )
}

fn kind(switch: Switch) -> BoundKind {
    match switch {
        Switch::Deterministic => BoundKind::PdfDeterministic,
        Switch::Random => BoundKind::PdfRandom,
    }
}

/// PDF rate maximized over the schedule, power split and correlation.
pub fn pdf_lower(g: &ChannelGains, switch: Switch) -> RateBound {
    let objective = |gamma, beta| pdf_at(g, switch, gamma, beta).1;
    let m = match switch {
        Switch::Deterministic => maximize_split(objective),
        Switch::Random => {
            // The random switch only adds information, so the deterministic
            // optimum is a feasible starting point for the costlier search.
            let det = maximize_split(|gamma, beta| pdf_at(g, Switch::Deterministic, gamma, beta).1);
            maximize_split_coarse(objective, &[(det.x, det.y)])
        }
    };
    let (alpha1, value) = pdf_at(g, switch, m.x, m.y);
    RateBound::new(
        kind(switch),
        value,
        OptimizerPoint {
            gamma: Some(m.x),
            beta: Some(m.y),
            alpha1: Some(alpha1),
            ..Default::default()
        },
    )
}

/// PDF rate at a fixed listen fraction.
pub fn pdf_at_gamma(g: &ChannelGains, switch: Switch, gamma: f64) -> f64 {
    maximize_beta(|beta| pdf_at(g, switch, gamma, beta).1).1
}

/// Closed-form PDF lower bound with the listen fraction chosen to balance
/// the two constraints.
pub fn pdf_lower_analytic(g: &ChannelGains) -> RateBound {
    let direct = log2_1p(g.s);
    let x1 = log2_1p(g.i + g.s) - direct;
    let x2 = log2_1p(g.c.max(g.s)) - direct;
    let (gamma, extra) = split_harmonic(x1, x2);
    RateBound::new(
        BoundKind::PdfAnalytic,
        direct + extra,
        OptimizerPoint {
            gamma: Some(gamma),
            ..Default::default()
        },
    )
}
