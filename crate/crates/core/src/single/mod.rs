//! Finite-SNR bounds and gDoF formulas for the half-duplex single-relay
//! channel.
//!
//! Every numeric bound is a max-min over the relay listen fraction `gamma`,
//! the source energy split `beta` and, where coherent combining helps, the
//! correlation magnitude `alpha1`. The listen-state source power is
//! `beta / gamma`, the transmit-state source power `(1 - beta) / (1 - gamma)`
//! and the relay spends all its energy while transmitting.

pub mod cutset;
pub mod gaps;
pub mod gdof;
pub mod lda;
pub mod nnc;
pub mod pdf;

pub use cutset::{cutset_upper, cutset_upper_analytic, fd_cutset_s0};
pub use gaps::{analytic_gap_constants, gap_sweep, GapConstants, Scheme, SweepGrid};
pub use gdof::{gdof_fd, gdof_hd};
pub use lda::lda_rate;
pub use nnc::{nnc_lower_analytic, nnc_lower_det, nnc_lower_noq, nnc_lower_random};
pub use pdf::{pdf_lower, pdf_lower_analytic, Switch};

use crate::optimize::{golden_max, grid_golden_2d, grid_golden_2d_seeded, Max2};

/// Grid step of the coarse scan over `(gamma, beta)`.
pub(crate) const GRID_STEP: f64 = 0.02;
/// Final bracket width of the golden-section refinement.
pub(crate) const REFINE_TOL: f64 = 1e-6;
const REFINE_SEEDS: usize = 6;
const COARSE_GRID_STEP: f64 = 0.05;
const COARSE_SEEDS: usize = 3;
const COARSE_TOL: f64 = 2e-5;
const CROSSING_ITERS: usize = 200;
const CROSSING_TOL: f64 = 1e-12;
const CROSSING_VALUE_TOL: f64 = 1e-12;

/// Maximizes `min{f1(a), f2(a)}` over `a` in `[0, 1]` when `f1` is
/// nondecreasing and `f2` nonincreasing: the optimum is an endpoint or the
/// crossing. Returns `(a, value)`.
pub(crate) fn max_min_crossing(f1: impl Fn(f64) -> f64, f2: impl Fn(f64) -> f64) -> (f64, f64) {
    let (a0, b0) = (f1(0.0), f2(0.0));
    if a0 >= b0 {
        return (0.0, b0);
    }
    let (a1, b1) = (f1(1.0), f2(1.0));
    if a1 <= b1 {
        return (1.0, a1);
    }
    // Illinois false position on d = f1 - f2, which is increasing. The
    // bracket end `lo` always satisfies f1 <= f2, so f1(lo) is attainable.
    let (mut lo, mut dlo) = (0.0, a0 - b0);
    let (mut hi, mut dhi) = (1.0, a1 - b1);
    let mut best = (0.0, a0);
    let mut side = 0i8;
    for _ in 0..CROSSING_ITERS {
        if hi - lo <= CROSSING_TOL {
            break;
        }
        let mut m = lo - dlo * (hi - lo) / (dhi - dlo);
        if !(m > lo && m < hi) {
            m = 0.5 * (lo + hi);
        }
        let (u, v) = (f1(m), f2(m));
        let d = u - v;
        if d <= 0.0 {
            lo = m;
            dlo = d;
            best = (m, u);
            if side == -1 {
                dhi *= 0.5;
            }
            side = -1;
        } else {
            hi = m;
            dhi = d;
            if v > best.1 {
                best = (m, v);
            }
            if side == 1 {
                dlo *= 0.5;
            }
            side = 1;
        }
        if d.abs() <= CROSSING_VALUE_TOL {
            break;
        }
    }
    best
}

/// Maximizes a `(gamma, beta)` objective on the unit square.
pub(crate) fn maximize_split(f: impl Fn(f64, f64) -> f64 + Sync) -> Max2 {
    grid_golden_2d(f, GRID_STEP, REFINE_SEEDS, REFINE_TOL)
}

/// Coarser variant of [`maximize_split`] for objectives that need a
/// quadrature per evaluation, refined also around the given points.
pub(crate) fn maximize_split_coarse(f: impl Fn(f64, f64) -> f64 + Sync, extra: &[(f64, f64)]) -> Max2 {
    grid_golden_2d_seeded(f, COARSE_GRID_STEP, COARSE_SEEDS, COARSE_TOL, extra)
}

/// Maximizes over `beta` at a fixed `gamma`; used for rate-versus-`gamma`
/// curves.
pub(crate) fn maximize_beta(f: impl Fn(f64) -> f64) -> (f64, f64) {
    let n = (1.0 / GRID_STEP).round() as usize;
    let mut best = (0.0, f(0.0));
    for k in 1..=n {
        let b = k as f64 / n as f64;
        let v = f(b);
        if v > best.1 {
            best = (b, v);
        }
    }
    let (lo, hi) = ((best.0 - GRID_STEP).max(0.0), (best.0 + GRID_STEP).min(1.0));
    let refined = golden_max(&f, lo, hi, REFINE_TOL);
    if refined.1 > best.1 {
        refined
    } else {
        best
    }
}

/// Sum of the source and relay signal energies in the transmit state when
/// they combine with correlation `alpha1`.
pub(crate) fn coherent_energy(s_tx: f64, i: f64, alpha1: f64) -> f64 {
    s_tx + i + 2.0 * alpha1 * (s_tx * i).sqrt()
}
