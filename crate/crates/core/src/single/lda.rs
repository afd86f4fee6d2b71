//! Two-phase scheme inspired by the linear deterministic model: while the
//! relay listens it learns extra bits sent below the destination's noise
//! floor, and it forwards them while transmitting.

use crate::channel::{BoundKind, ChannelGains, OptimizerPoint, RateBound};
use crate::info::{log2_1p, pos};

/// Extra bits per listen slot and per transmit slot: the rate the relay can
/// decode beyond what the destination sees, and the rate the relay can
/// deliver while the source keeps the direct link busy.
pub fn lda_phase_rates(g: &ChannelGains) -> (f64, f64) {
    let noise = 1.0 + g.s;
    let listen = pos(log2_1p(g.c / noise) - log2_1p(g.s / noise));
    let transmit = log2_1p(g.i / noise);
    (listen, transmit)
}

/// Rate of the scheme at listen fraction `gamma`.
pub fn lda_at_gamma(g: &ChannelGains, gamma: f64) -> f64 {
    let (listen, transmit) = lda_phase_rates(g);
    log2_1p(g.s) + (gamma * listen).min((1.0 - gamma) * transmit)
}

/// Rate of the scheme with the balancing listen fraction.
pub fn lda_rate(g: &ChannelGains) -> RateBound {
    let (listen, transmit) = lda_phase_rates(g);
    let (gamma, extra) = if listen > 0.0 {
        let gamma = transmit / (listen + transmit);
        (gamma, listen * transmit / (listen + transmit))
    } else {
        (1.0, 0.0)
    };
    RateBound::new(
        BoundKind::Lda,
        log2_1p(g.s) + extra,
        OptimizerPoint {
            gamma: Some(gamma),
            ..Default::default()
        },
    )
}
