//! Channel parameterizations shared by every bound computation.
//!
//! Gains are kept in linear scale. High-SNR exponents follow the usual
//! `gain = SNR^exponent` convention, so a link with exponent 1 is as strong as
//! the reference direct link.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest node count accepted by [`NetworkExponents`] unless overridden.
pub const DEFAULT_MAX_NODES: usize = 12;

pub fn db_to_linear(db: f64) -> f64 {
    10f64.powf(db / 10.0)
}

pub fn linear_to_db(x: f64) -> f64 {
    10.0 * x.log10()
}

/// Linear power gains of the three links of a single-relay channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ChannelGains {
    /// source -> destination
    pub s: f64,
    /// relay -> destination
    pub i: f64,
    /// source -> relay
    pub c: f64,
}

impl ChannelGains {
    pub fn new(s: f64, i: f64, c: f64) -> Result<Self> {
        for (name, v) in [("S", s), ("I", i), ("C", c)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        if i <= 0.0 || c <= 0.0 {
            return Err(Error::InvalidParameter(format!(
                "relay links must be strictly positive (I = {i}, C = {c})"
            )));
        }
        Ok(Self { s, i, c })
    }

    pub fn from_db(s_db: f64, i_db: f64, c_db: f64) -> Result<Self> {
        Self::new(db_to_linear(s_db), db_to_linear(i_db), db_to_linear(c_db))
    }

    pub fn to_db(&self) -> (f64, f64, f64) {
        (linear_to_db(self.s), linear_to_db(self.i), linear_to_db(self.c))
    }
}

/// SNR exponents `(beta_sd, beta_rd, beta_sr)` of a single-relay channel.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ExponentTriple {
    pub beta_sd: f64,
    pub beta_rd: f64,
    pub beta_sr: f64,
}

impl ExponentTriple {
    pub fn new(beta_sd: f64, beta_rd: f64, beta_sr: f64) -> Result<Self> {
        for (name, v) in [("beta_sd", beta_sd), ("beta_rd", beta_rd), ("beta_sr", beta_sr)] {
            if !v.is_finite() || v < 0.0 {
                return Err(Error::InvalidParameter(format!(
                    "{name} must be finite and nonnegative, got {v}"
                )));
            }
        }
        Ok(Self {
            beta_sd,
            beta_rd,
            beta_sr,
        })
    }

    pub fn max_exponent(&self) -> f64 {
        self.beta_sd.max(self.beta_rd).max(self.beta_sr)
    }
}

/// Maps exponents to linear gains at the given reference SNR.
pub fn exponents_to_gains(e: ExponentTriple, snr: f64) -> Result<ChannelGains> {
    if !(snr > 0.0) || !snr.is_finite() {
        return Err(Error::InvalidParameter(format!(
            "snr must be positive and finite, got {snr}"
        )));
    }
    let pow = |beta: f64, name: &str| {
        let v = snr.powf(beta);
        if v.is_finite() {
            Ok(v)
        } else {
            Err(Error::Overflow(format!("{snr}^{beta} for {name}")))
        }
    };
    let s = pow(e.beta_sd, "S")?;
    let i = pow(e.beta_rd, "I")?;
    let c = pow(e.beta_sr, "C")?;
    ChannelGains::new(s, i, c)
}

/// Generalized degrees of freedom (dimensionless).
#[derive(Debug, Clone, Copy, PartialEq, PartialOrd, Serialize, Deserialize)]
pub struct GdofValue(pub f64);

impl GdofValue {
    pub fn value(self) -> f64 {
        self.0
    }
}

impl fmt::Display for GdofValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:.4}", self.0)
    }
}

/// Exponent matrix of a K-node network. Node 0 is the source, node K-1 the
/// destination, nodes 1..=K-2 are relays. `alpha[i][j]` is the exponent of the
/// link from transmitter `j` to receiver `i`.
///
/// Row 0 (the source never receives), column K-1 (the destination never
/// transmits) and the diagonal are masked: they are stored as zero and never
/// read.
#[derive(Debug, Clone, PartialEq)]
pub struct NetworkExponents {
    k: usize,
    alpha: Vec<Vec<f64>>,
}

#[derive(Debug, Serialize, Deserialize)]
struct Descriptor {
    #[serde(rename = "K")]
    k: usize,
    alpha: Vec<Vec<Option<f64>>>,
}

fn is_masked(k: usize, rx: usize, tx: usize) -> bool {
    rx == 0 || tx == k - 1 || rx == tx
}

impl NetworkExponents {
    pub fn new(alpha: Vec<Vec<f64>>) -> Result<Self> {
        Self::with_max_nodes(alpha, DEFAULT_MAX_NODES)
    }

    pub fn with_max_nodes(alpha: Vec<Vec<f64>>, max_nodes: usize) -> Result<Self> {
        let k = alpha.len();
        if k < 3 {
            return Err(Error::Descriptor(format!("need at least 3 nodes, got {k}")));
        }
        if k > max_nodes {
            return Err(Error::Unsupported(format!(
                "{k} nodes exceeds the configured maximum of {max_nodes}"
            )));
        }
        let mut clean = vec![vec![0.0; k]; k];
        for (rx, row) in alpha.iter().enumerate() {
            if row.len() != k {
                return Err(Error::Descriptor(format!(
                    "row {rx} has {} entries, expected {k}",
                    row.len()
                )));
            }
            for (tx, &v) in row.iter().enumerate() {
                if is_masked(k, rx, tx) {
                    continue;
                }
                if !v.is_finite() || v < 0.0 {
                    return Err(Error::Descriptor(format!(
                        "alpha[{rx}][{tx}] = {v} is not a finite nonnegative exponent"
                    )));
                }
                clean[rx][tx] = v;
            }
        }
        Ok(Self { k, alpha: clean })
    }

    /// Embeds a single-relay triple as a 3-node network.
    pub fn from_triple(e: ExponentTriple) -> Self {
        let mut alpha = vec![vec![0.0; 3]; 3];
        alpha[1][0] = e.beta_sr;
        alpha[2][0] = e.beta_sd;
        alpha[2][1] = e.beta_rd;
        Self { k: 3, alpha }
    }

    /// Two-relay network in the `(a_s1, a_s2, a_1d, a_2d, b_1, b_2)`
    /// parameterization with a unit-exponent direct link. `b_1` is the link
    /// relay 2 -> relay 1 and `b_2` the link relay 1 -> relay 2.
    pub fn two_relay(a_s1: f64, a_s2: f64, a_1d: f64, a_2d: f64, b_1: f64, b_2: f64) -> Result<Self> {
        let mut alpha = vec![vec![0.0; 4]; 4];
        alpha[1][0] = a_s1;
        alpha[1][2] = b_1;
        alpha[2][0] = a_s2;
        alpha[2][1] = b_2;
        alpha[3][0] = 1.0;
        alpha[3][1] = a_1d;
        alpha[3][2] = a_2d;
        Self::new(alpha)
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let d: Descriptor =
            serde_json::from_str(text).map_err(|e| Error::Descriptor(e.to_string()))?;
        if d.alpha.len() != d.k {
            return Err(Error::Descriptor(format!(
                "K = {} but alpha has {} rows",
                d.k,
                d.alpha.len()
            )));
        }
        let k = d.k;
        let mut rows = Vec::with_capacity(k);
        for (rx, row) in d.alpha.into_iter().enumerate() {
            let mut out = Vec::with_capacity(row.len());
            for (tx, v) in row.into_iter().enumerate() {
                match v {
                    Some(x) => out.push(x),
                    None if k > 0 && is_masked(k, rx, tx) => out.push(0.0),
                    None => {
                        return Err(Error::Descriptor(format!(
                            "alpha[{rx}][{tx}] is null but the link is used"
                        )))
                    }
                }
            }
            rows.push(out);
        }
        Self::new(rows)
    }

    pub fn to_json(&self) -> String {
        let alpha = (0..self.k)
            .map(|rx| {
                (0..self.k)
                    .map(|tx| (!is_masked(self.k, rx, tx)).then(|| self.alpha[rx][tx]))
                    .collect()
            })
            .collect();
        serde_json::to_string(&Descriptor { k: self.k, alpha }).expect("descriptor serializes")
    }

    pub fn nodes(&self) -> usize {
        self.k
    }

    pub fn relays(&self) -> usize {
        self.k - 2
    }

    pub fn destination(&self) -> usize {
        self.k - 1
    }

    /// Exponent of the link `tx -> rx`. Panics on a masked entry.
    pub fn exponent(&self, rx: usize, tx: usize) -> f64 {
        assert!(
            !is_masked(self.k, rx, tx),
            "masked link {tx} -> {rx} read in a {}-node network",
            self.k
        );
        self.alpha[rx][tx]
    }

    /// The single-relay triple seen through relay node `relay` alone.
    pub fn relay_triple(&self, relay: usize) -> ExponentTriple {
        let d = self.destination();
        ExponentTriple {
            beta_sd: self.exponent(d, 0),
            beta_rd: self.exponent(d, relay),
            beta_sr: self.exponent(relay, 0),
        }
    }
}

/// Which bound or scheme a [`RateBound`] value comes from.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum BoundKind {
    CutsetNumeric,
    CutsetAnalytic,
    PdfRandom,
    PdfDeterministic,
    PdfAnalytic,
    Lda,
    NncDeterministic,
    NncRandom,
    NncNoQ,
    NncAnalytic,
    FdCutset,
}

impl BoundKind {
    pub fn label(self) -> &'static str {
        match self {
            BoundKind::CutsetNumeric => "cutset",
            BoundKind::CutsetAnalytic => "cutset-analytic",
            BoundKind::PdfRandom => "pdf-rand",
            BoundKind::PdfDeterministic => "pdf-det",
            BoundKind::PdfAnalytic => "pdf-analytic",
            BoundKind::Lda => "lda",
            BoundKind::NncDeterministic => "nnc-det",
            BoundKind::NncRandom => "nnc-rand",
            BoundKind::NncNoQ => "nnc-noq",
            BoundKind::NncAnalytic => "nnc-analytic",
            BoundKind::FdCutset => "fd-cutset",
        }
    }
}

impl fmt::Display for BoundKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.label())
    }
}

/// Argmax of a bound. Fields that do not apply to the bound are `None`.
#[derive(Debug, Clone, Copy, Default, PartialEq, Serialize, Deserialize)]
pub struct OptimizerPoint {
    /// Fraction of time the relay listens.
    pub gamma: Option<f64>,
    /// Fraction of source energy spent while the relay listens.
    pub beta: Option<f64>,
    /// Magnitude of the source/relay input correlation.
    pub alpha1: Option<f64>,
    /// Quantization noise variance at the relay.
    pub sigma2: Option<f64>,
    /// Joint time-sharing/switch probabilities `[g00, g01, g10, g11]`.
    pub state_probs: Option<[f64; 4]>,
}

/// A bound value in bits per channel use together with its optimizer.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RateBound {
    pub value: f64,
    pub kind: BoundKind,
    pub optimizer: OptimizerPoint,
    /// Set when a numerical search stopped on its budget rather than its
    /// tolerance.
    pub warning: Option<String>,
}

impl RateBound {
    pub fn new(kind: BoundKind, value: f64, optimizer: OptimizerPoint) -> Self {
        Self {
            value,
            kind,
            optimizer,
            warning: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn db_conversions() {
        assert_eq!(db_to_linear(0.0), 1.0);
        assert!((db_to_linear(30.0) - 1000.0).abs() < 1e-9);
        assert!((db_to_linear(37.63) - 5794.29).abs() < 0.01);
        for x in [-100.0, -3.3, 0.0, 17.25, 60.0, 200.0] {
            let back = linear_to_db(db_to_linear(x));
            assert!((back - x).abs() <= 1e-12 * x.abs().max(1.0), "{x} -> {back}");
        }
    }

    #[test]
    fn exponent_mapping() {
        let g = exponents_to_gains(ExponentTriple::new(1.0, 1.0, 1.0).unwrap(), 100.0).unwrap();
        assert_eq!((g.s, g.i, g.c), (100.0, 100.0, 100.0));

        let g = exponents_to_gains(ExponentTriple::new(1.0, 2.0, 2.0).unwrap(), 10.0).unwrap();
        assert!((g.s - 10.0).abs() < 1e-12 && (g.i - 100.0).abs() < 1e-9 && (g.c - 100.0).abs() < 1e-9);

        let g = exponents_to_gains(ExponentTriple::new(1.0, 1.8, 1.4).unwrap(), 1e6).unwrap();
        assert!((g.s.log10() - 6.0).abs() < 1e-12);
        assert!((g.i.log10() - 10.8).abs() < 1e-12);
        assert!((g.c.log10() - 8.4).abs() < 1e-12);
    }

    #[test]
    fn exponent_overflow() {
        let e = ExponentTriple::new(1.0, 400.0, 1.0).unwrap();
        assert!(matches!(exponents_to_gains(e, 1e6), Err(Error::Overflow(_))));
        assert!(exponents_to_gains(e, 0.0).is_err());
    }

    #[test]
    fn gains_validation() {
        assert!(ChannelGains::new(0.0, 3.0, 15.0).is_ok());
        assert!(ChannelGains::new(-1.0, 3.0, 15.0).is_err());
        assert!(ChannelGains::new(1.0, 0.0, 15.0).is_err());
        assert!(ChannelGains::new(1.0, 3.0, 0.0).is_err());
        assert!(ChannelGains::new(f64::NAN, 3.0, 1.0).is_err());
        assert!(ExponentTriple::new(1.0, -0.1, 1.0).is_err());
    }

    #[test]
    fn descriptor_round_trip() {
        let net = NetworkExponents::two_relay(2.5, 1.4, 0.5, 1.8, 0.6, 0.8).unwrap();
        let text = net.to_json();
        assert!(text.contains("\"K\":4"));
        let back = NetworkExponents::from_json(&text).unwrap();
        assert_eq!(back, net);
    }

    #[test]
    fn descriptor_ignores_masked_entries() {
        let text = r#"{"K": 3, "alpha": [[9, -5, 7], [1.4, 123, null], [1, 1.8, 0]]}"#;
        let net = NetworkExponents::from_json(text).unwrap();
        assert_eq!(net.relay_triple(1), ExponentTriple::new(1.0, 1.8, 1.4).unwrap());
        let bad = r#"{"K": 3, "alpha": [[0, 0, 0], [null, 0, 0], [1, 1.8, 0]]}"#;
        assert!(NetworkExponents::from_json(bad).is_err());
        let neg = r#"{"K": 3, "alpha": [[0, 0, 0], [-1, 0, 0], [1, 1.8, 0]]}"#;
        assert!(NetworkExponents::from_json(neg).is_err());
    }

    #[test]
    fn node_limit() {
        let alpha = vec![vec![1.0; 13]; 13];
        assert!(matches!(NetworkExponents::new(alpha.clone()), Err(Error::Unsupported(_))));
        assert!(NetworkExponents::with_max_nodes(alpha, 13).is_ok());
    }
}
