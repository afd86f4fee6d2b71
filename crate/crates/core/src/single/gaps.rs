//! Gap constants and gap sweeps between the cut-set bound and the
//! achievable schemes.

use rayon::prelude::*;
use serde::Serialize;

use super::cutset::{cutset_upper, fd_cutset_s0};
use super::lda::lda_rate;
use super::nnc::nnc_lower_det;
use super::pdf::{pdf_lower, Switch};
use crate::channel::{db_to_linear, exponents_to_gains, ChannelGains, ExponentTriple};
use crate::error::{Error, Result};
use crate::info::{binary_entropy, log2_1p};
use crate::optimize::golden_max;

/// Worst-case gaps obtained by scalar maximizations in the constant-gap
/// arguments.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GapConstants {
    /// LDA gap without a direct link.
    pub lda_s0_gap: f64,
    /// NNC (deterministic switch) gap.
    pub nnc_gap: f64,
    /// Listen fraction attaining `nnc_gap`.
    pub nnc_gap_gamma: f64,
    /// Supremum estimate of the general LDA gap expression.
    pub lda_gap_sup: f64,
}

fn lda_s0_expression(gamma: f64) -> f64 {
    if gamma >= 1.0 {
        return 0.0;
    }
    binary_entropy(gamma) - (1.0 - gamma) * (1.0 - gamma).log2()
}

/// The NNC gap expression at `gamma`, with the quantization noise chosen to
/// balance its two terms.
pub fn nnc_gap_expression(gamma: f64) -> f64 {
    if gamma <= 0.0 {
        return 1.0;
    }
    let head = binary_entropy(gamma) + (1.0 - gamma);
    let sigma2 = (head / gamma).exp2();
    (head + gamma * log2_1p(1.0 / sigma2)).max(gamma * log2_1p(sigma2))
}

fn lda_gap_expression(x: f64, y: f64) -> f64 {
    let num = x * x + y * y + x * y + x;
    let den = x * x + y * y + 2.0 * x * y + x + y;
    if den <= 0.0 {
        return 2.0;
    }
    2.0 + num / den
}

pub fn analytic_gap_constants() -> GapConstants {
    let scan = |f: &dyn Fn(f64) -> f64| {
        let n = 1000;
        let mut best = (0.0, f(0.0));
        for k in 1..=n {
            let x = k as f64 / n as f64;
            let v = f(x);
            if v > best.1 {
                best = (x, v);
            }
        }
        golden_max(f, (best.0 - 1e-3).max(0.0), (best.0 + 1e-3).min(1.0), 1e-10)
    };
    let (_, lda_s0_gap) = scan(&lda_s0_expression);
    let (nnc_gap_gamma, nnc_gap) = scan(&nnc_gap_expression);

    // The expression depends on the ratio of its arguments and on their
    // scale; scan a log-spaced box.
    let axis: Vec<f64> = std::iter::once(0.0)
        .chain((0..=120).map(|k| 10f64.powf(-6.0 + k as f64 * 0.1)))
        .collect();
    let mut lda_gap_sup = f64::NEG_INFINITY;
    for &x in &axis {
        for &y in &axis {
            lda_gap_sup = lda_gap_sup.max(lda_gap_expression(x, y));
        }
    }
    GapConstants {
        lda_s0_gap,
        nnc_gap,
        nnc_gap_gamma,
        lda_gap_sup,
    }
}

/// Achievable scheme compared against the cut-set bound in a sweep.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum Scheme {
    PdfDeterministic,
    PdfRandom,
    NncDeterministic,
    Lda,
}

impl Scheme {
    pub fn label(self) -> &'static str {
        match self {
            Scheme::PdfDeterministic => "pdf-det",
            Scheme::PdfRandom => "pdf-rand",
            Scheme::NncDeterministic => "nnc-det",
            Scheme::Lda => "lda",
        }
    }

    pub fn rate(self, g: &ChannelGains) -> f64 {
        match self {
            Scheme::PdfDeterministic => pdf_lower(g, Switch::Deterministic).value,
            Scheme::PdfRandom => pdf_lower(g, Switch::Random).value,
            Scheme::NncDeterministic => nnc_lower_det(g).value,
            Scheme::Lda => lda_rate(g).value,
        }
    }
}

impl std::str::FromStr for Scheme {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "pdf-det" => Ok(Scheme::PdfDeterministic),
            "pdf-rand" => Ok(Scheme::PdfRandom),
            "nnc-det" => Ok(Scheme::NncDeterministic),
            "lda" => Ok(Scheme::Lda),
            other => Err(Error::InvalidParameter(format!("unknown scheme {other:?}"))),
        }
    }
}

/// Evenly spaced axis `start, start + step, ...` up to `stop` inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Axis {
    pub start: f64,
    pub stop: f64,
    pub step: f64,
}

impl Axis {
    pub fn new(start: f64, stop: f64, step: f64) -> Result<Self> {
        if !(step > 0.0) || !start.is_finite() || !stop.is_finite() || stop < start {
            return Err(Error::InvalidParameter(format!(
                "bad axis {start}:{stop}:{step}"
            )));
        }
        Ok(Self { start, stop, step })
    }

    pub fn values(&self) -> Vec<f64> {
        let n = ((self.stop - self.start) / self.step + 1e-9).floor() as usize;
        (0..=n).map(|k| self.start + k as f64 * self.step).collect()
    }
}

/// Worst gap at one SNR.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub snr_db: f64,
    pub scheme: Scheme,
    pub max_gap: f64,
    pub beta_rd: f64,
    pub beta_sr: f64,
}

/// Result of [`gap_sweep`]: rows ordered by SNR, then by scheme in the order
/// requested.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SweepGrid {
    pub beta_sd: f64,
    pub beta_axis: Axis,
    pub rows: Vec<SweepRow>,
}

impl SweepGrid {
    /// Largest gap over all SNRs for `scheme`.
    pub fn overall_max(&self, scheme: Scheme) -> Option<f64> {
        self.rows
            .iter()
            .filter(|r| r.scheme == scheme)
            .map(|r| r.max_gap)
            .fold(None, |acc, v| Some(acc.map_or(v, |a: f64| a.max(v))))
    }
}

fn gains_at(beta_sd: f64, beta_rd: f64, beta_sr: f64, snr_db: f64) -> Result<ChannelGains> {
    exponents_to_gains(ExponentTriple::new(beta_sd, beta_rd, beta_sr)?, db_to_linear(snr_db))
}

/// For each SNR, the largest gap between the cut-set bound and each scheme
/// over the `(beta_rd, beta_sr)` grid. Exponents on the grid that are 0 are
/// kept: the corresponding gains are 1.
pub fn gap_sweep(snr_db: &[f64], beta_sd: f64, beta_axis: Axis, schemes: &[Scheme]) -> Result<SweepGrid> {
    let betas = beta_axis.values();
    let mut points = Vec::new();
    for &snr in snr_db {
        for &brd in &betas {
            for &bsr in &betas {
                points.push((snr, brd, bsr));
            }
        }
    }
    let gaps: Vec<Vec<f64>> = points
        .par_iter()
        .map(|&(snr, brd, bsr)| {
            let g = gains_at(beta_sd, brd, bsr, snr)?;
            let upper = cutset_upper(&g).value;
            Ok(schemes.iter().map(|s| upper - s.rate(&g)).collect())
        })
        .collect::<Result<_>>()?;

    let per_snr = betas.len() * betas.len();
    let mut rows = Vec::new();
    for (k, &snr) in snr_db.iter().enumerate() {
        for (j, &scheme) in schemes.iter().enumerate() {
            let mut best = SweepRow {
                snr_db: snr,
                scheme,
                max_gap: f64::NEG_INFINITY,
                beta_rd: f64::NAN,
                beta_sr: f64::NAN,
            };
            for idx in k * per_snr..(k + 1) * per_snr {
                if gaps[idx][j] > best.max_gap {
                    best.max_gap = gaps[idx][j];
                    best.beta_rd = points[idx].1;
                    best.beta_sr = points[idx].2;
                }
            }
            rows.push(best);
        }
    }
    Ok(SweepGrid {
        beta_sd,
        beta_axis,
        rows,
    })
}

/// Gain of the random switch over the deterministic one at a grid point.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DeltaPoint {
    pub beta_rd: f64,
    pub beta_sr: f64,
    pub delta: f64,
}

/// Random-switch PDF rate minus deterministic-switch PDF rate over the
/// exponent grid at one SNR, in row-major `(beta_rd, beta_sr)` order.
pub fn switch_delta_map(snr_db: f64, beta_sd: f64, beta_axis: Axis) -> Result<Vec<DeltaPoint>> {
    let betas = beta_axis.values();
    let pairs: Vec<(f64, f64)> = betas
        .iter()
        .flat_map(|&a| betas.iter().map(move |&b| (a, b)))
        .collect();
    pairs
        .par_iter()
        .map(|&(beta_rd, beta_sr)| {
            let g = gains_at(beta_sd, beta_rd, beta_sr, snr_db)?;
            let delta = pdf_lower(&g, Switch::Random).value - pdf_lower(&g, Switch::Deterministic).value;
            Ok(DeltaPoint {
                beta_rd,
                beta_sr,
                delta,
            })
        })
        .collect()
}

/// Worst gaps without a direct link, each measured from the tighter of the
/// full-duplex capacity and the half-duplex cut-set bound.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DirectlessGaps {
    pub lda: f64,
    pub pdf_det: f64,
    pub nnc_det: f64,
}

pub fn directless_gap_scan(c_db: &[f64], i_db: &[f64]) -> Result<DirectlessGaps> {
    let pairs: Vec<(f64, f64)> = c_db
        .iter()
        .flat_map(|&c| i_db.iter().map(move |&i| (c, i)))
        .collect();
    let gaps: Vec<[f64; 3]> = pairs
        .par_iter()
        .map(|&(c, i)| {
            let g = ChannelGains::new(0.0, db_to_linear(i), db_to_linear(c))?;
            let upper = fd_cutset_s0(&g)?.value.min(cutset_upper(&g).value);
            Ok([
                upper - lda_rate(&g).value,
                upper - pdf_lower(&g, Switch::Deterministic).value,
                upper - nnc_lower_det(&g).value,
            ])
        })
        .collect::<Result<_>>()?;
    let max = |k: usize| gaps.iter().map(|g| g[k]).fold(f64::NEG_INFINITY, f64::max);
    Ok(DirectlessGaps {
        lda: max(0),
        pdf_det: max(1),
        nnc_det: max(2),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn lda_expression_bounded_by_three() {
        for &(x, y) in &[(0.0, 0.0), (1.0, 0.0), (0.0, 1.0), (3.0, 7.0), (1e6, 1e-6)] {
            let v = lda_gap_expression(x, y);
            assert!(v <= 3.0 + 1e-12 && v >= 2.0, "{x} {y} {v}");
        }
    }

    #[test]
    fn axis_values() {
        let a = Axis::new(0.0, 2.4, 0.1).unwrap();
        let v = a.values();
        assert_eq!(v.len(), 25);
        assert!((v[24] - 2.4).abs() < 1e-12);
        assert!(Axis::new(0.0, 1.0, 0.0).is_err());
        assert_eq!("nnc-det".parse::<Scheme>().unwrap(), Scheme::NncDeterministic);
        assert!("cf".parse::<Scheme>().is_err());
    }

    #[test]
    fn sweep_rows_are_ordered() {
        let grid = gap_sweep(
            &[0.0, 10.0],
            1.0,
            Axis::new(0.0, 2.0, 1.0).unwrap(),
            &[Scheme::Lda, Scheme::PdfDeterministic],
        )
        .unwrap();
        assert_eq!(grid.rows.len(), 4);
        assert_eq!(grid.rows[0].scheme, Scheme::Lda);
        assert_eq!(grid.rows[3].snr_db, 10.0);
        assert!(grid.rows.iter().all(|r| r.max_gap >= -1e-9));
    }
}
