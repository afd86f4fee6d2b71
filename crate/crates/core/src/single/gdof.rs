//! High-SNR slopes of the single-relay channel.

use crate::channel::{ExponentTriple, GdofValue};
use crate::info::pos;

/// Half-duplex gDoF.
pub fn gdof_hd(e: ExponentTriple) -> GdofValue {
    let up = e.beta_sr - e.beta_sd;
    let down = e.beta_rd - e.beta_sd;
    if up > 0.0 && down > 0.0 {
        GdofValue(e.beta_sd + up * down / (up + down))
    } else {
        GdofValue(e.beta_sd)
    }
}

/// Full-duplex gDoF.
pub fn gdof_fd(e: ExponentTriple) -> GdofValue {
    GdofValue(e.beta_sd + pos(e.beta_sr - e.beta_sd).min(pos(e.beta_rd - e.beta_sd)))
}

/// Fraction of time the relay listens in the gDoF-optimal half-duplex
/// schedule; 1 when the relay is useless.
pub fn gdof_listen_fraction(e: ExponentTriple) -> f64 {
    let up = e.beta_sr - e.beta_sd;
    let down = e.beta_rd - e.beta_sd;
    if up > 0.0 && down > 0.0 {
        down / (up + down)
    } else {
        1.0
    }
}
