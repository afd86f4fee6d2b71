//! Cut-set upper bounds.

use super::{coherent_energy, max_min_crossing, maximize_beta, maximize_split};
use crate::channel::{BoundKind, ChannelGains, OptimizerPoint, RateBound};
use crate::error::{Error, Result};
use crate::info::{binary_entropy, log2_1p, tlog};

/// Broadcast and multiple-access cut values at a fixed schedule.
pub fn cutset_terms(g: &ChannelGains, gamma: f64, beta: f64, alpha1: f64) -> (f64, f64) {
    let s_tx = g.s * (1.0 - beta);
    let mac = binary_entropy(gamma)
        + tlog(gamma, g.s * beta)
        + tlog(1.0 - gamma, coherent_energy(s_tx, g.i, alpha1));
    let bc = tlog(gamma, (g.c + g.s) * beta) + tlog(1.0 - gamma, (1.0 - alpha1 * alpha1) * s_tx);
    (mac, bc)
}

/// Best correlation at a fixed `(gamma, beta)`: `(alpha1, value)`.
pub fn cutset_at(g: &ChannelGains, gamma: f64, beta: f64) -> (f64, f64) {
    if g.s * (1.0 - beta) == 0.0 {
        let (a, b) = cutset_terms(g, gamma, beta, 0.0);
        return (0.0, a.min(b));
    }
    max_min_crossing(
        |a| cutset_terms(g, gamma, beta, a).0,
        |a| cutset_terms(g, gamma, beta, a).1,
    )
}

/// Cut-set bound maximized over the schedule, power split and correlation.
pub fn cutset_upper(g: &ChannelGains) -> RateBound {
    let m = maximize_split(|gamma, beta| cutset_at(g, gamma, beta).1);
    let (alpha1, value) = cutset_at(g, m.x, m.y);
    RateBound::new(
        BoundKind::CutsetNumeric,
        value,
        OptimizerPoint {
            gamma: Some(m.x),
            beta: Some(m.y),
            alpha1: Some(alpha1),
            ..Default::default()
        },
    )
}

/// Cut-set bound at a fixed listen fraction.
pub fn cutset_at_gamma(g: &ChannelGains, gamma: f64) -> f64 {
    maximize_beta(|beta| cutset_at(g, gamma, beta).1).1
}

/// Closed-form relaxation of the cut-set bound, exact at `S = 0`.
pub fn cutset_upper_analytic(g: &ChannelGains) -> RateBound {
    let direct = log2_1p(g.s);
    let x1 = log2_1p((g.i.sqrt() + g.s.sqrt()).powi(2)) - direct;
    let x2 = log2_1p(g.c + g.s) - direct;
    let (gamma, extra) = split_harmonic(x1, x2);
    RateBound::new(
        BoundKind::CutsetAnalytic,
        2.0 + direct + extra,
        OptimizerPoint {
            gamma: Some(gamma),
            ..Default::default()
        },
    )
}

/// For the listen-phase gain `x2` and transmit-phase gain `x1` of an
/// analytic bound, returns the balancing listen fraction and the gain it
/// buys, `x1 x2 / (x1 + x2)`.
pub(crate) fn split_harmonic(x1: f64, x2: f64) -> (f64, f64) {
    let (x1, x2) = (x1.max(0.0), x2.max(0.0));
    if x1 + x2 <= 0.0 {
        return (1.0, 0.0);
    }
    (x1 / (x1 + x2), x1 * x2 / (x1 + x2))
}

/// Full-duplex capacity without a direct link.
pub fn fd_cutset_s0(g: &ChannelGains) -> Result<RateBound> {
    if g.s != 0.0 {
        return Err(Error::Domain(format!(
            "full-duplex cut-set capacity needs S = 0, got {}",
            g.s
        )));
    }
    Ok(RateBound::new(
        BoundKind::FdCutset,
        log2_1p(g.c.min(g.i)),
        OptimizerPoint::default(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn gains(s: f64, i: f64, c: f64) -> ChannelGains {
        ChannelGains::new(s, i, c).unwrap()
    }

    #[test]
    fn s0_examples() {
        let b = cutset_upper(&gains(0.0, 1.5, 7.5));
        assert!(b.value >= 2.0 - 1e-9, "{}", b.value);
        let fd = fd_cutset_s0(&gains(0.0, 1.5, 7.5)).unwrap();
        assert!((fd.value - 2.5f64.log2()).abs() < 1e-12);
        assert!((fd_cutset_s0(&gains(0.0, 3.0, 15.0)).unwrap().value - 2.0).abs() < 1e-12);
        assert!((fd_cutset_s0(&gains(0.0, 4.0, 4.0)).unwrap().value - 5f64.log2()).abs() < 1e-12);
        assert!(matches!(fd_cutset_s0(&gains(1.0, 3.0, 15.0)), Err(Error::Domain(_))));
    }

    #[test]
    fn direct_floor() {
        let b = cutset_upper(&gains(3.0, 1e-9, 1e-9));
        assert!(b.value >= 2.0 - 1e-9);
        assert!(b.value < 2.01);
    }

    #[test]
    fn analytic_dominates_numeric() {
        for &(s, i, c) in &[(0.0, 3.0, 15.0), (1.0, 8.0, 8.0), (1e3, 3000.0, 5800.0), (5.0, 0.1, 300.0)] {
            let g = gains(s, i, c);
            let n = cutset_upper(&g).value;
            let a = cutset_upper_analytic(&g).value;
            assert!(n <= a + 1e-9, "{s} {i} {c}: {n} > {a}");
        }
    }

    #[test]
    fn follows_ridge_to_full_listen_power() {
        // Optimum sits at beta = 1 along a diagonal ridge of the max-min.
        let b = cutset_upper(&gains(0.0, 3886.136, 98668.84));
        assert!((b.value - 8.00875).abs() < 1e-4, "{}", b.value);
    }

    #[test]
    fn analytic_small_gain_limit() {
        let b = cutset_upper_analytic(&gains(1.0, 1e-12, 1e-12));
        assert!((b.value - 3.0).abs() < 1e-9);
    }
}
