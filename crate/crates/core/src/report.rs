//! CSV tables consumed by the plotting scripts. Missing values are written
//! as empty fields and every table starts with a header row.

use std::io::Write;

use crate::channel::{linear_to_db, ChannelGains, RateBound};
use crate::error::{Error, Result};
use crate::lda_det::LdaCurves;
use crate::multi::{diamond_gap, gap_asymptotic, gap_bound};
use crate::single::gaps::{DeltaPoint, SweepGrid};

pub const RATE_HEADER: [&str; 14] = [
    "kind", "S_dB", "I_dB", "C_dB", "value_bits", "gamma", "beta", "alpha1", "sigma2", "g00",
    "g01", "g10", "g11", "warning",
];

pub const LDA_CURVE_HEADER: [&str; 6] = [
    "gamma",
    "rate_iid_det",
    "rate_iid_rand",
    "rate_iidq_rand",
    "q_opt",
    "rate_optimal",
];

pub const SWEEP_HEADER: [&str; 5] = ["snr_db", "scheme", "max_gap", "beta_rd", "beta_sr"];

pub const DELTA_HEADER: [&str; 3] = ["beta_rd", "beta_sr", "delta"];

pub const GAP_FORMULA_HEADER: [&str; 5] = [
    "K",
    "gap_bound",
    "gap_asymptotic",
    "diamond_gap",
    "diamond_gap_sparse",
];

/// Shortest round-trip decimal; `-inf` for a zero gain in dB.
pub fn num(x: f64) -> String {
    format!("{x}")
}

fn opt(x: Option<f64>) -> String {
    x.map(num).unwrap_or_default()
}

fn io(e: impl std::fmt::Display) -> Error {
    Error::Output(e.to_string())
}

/// Thin wrapper over a CSV writer that maps errors into [`Error`].
pub struct Table<W: Write> {
    inner: csv::Writer<W>,
}

impl<W: Write> Table<W> {
    pub fn new(out: W, header: &[&str]) -> Result<Self> {
        let mut inner = csv::Writer::from_writer(out);
        inner.write_record(header).map_err(io)?;
        Ok(Self { inner })
    }

    pub fn row<I, S>(&mut self, fields: I) -> Result<()>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<[u8]>,
    {
        self.inner.write_record(fields).map_err(io)
    }

    pub fn finish(mut self) -> Result<()> {
        self.inner.flush().map_err(io)
    }
}

pub fn rate_row(g: &ChannelGains, b: &RateBound) -> Vec<String> {
    let (s_db, i_db, c_db) = (linear_to_db(g.s), linear_to_db(g.i), linear_to_db(g.c));
    let o = &b.optimizer;
    let probs: [Option<f64>; 4] = match o.state_probs {
        Some(p) => p.map(Some),
        None => [None; 4],
    };
    let mut row = vec![
        b.kind.label().to_string(),
        num(s_db),
        num(i_db),
        num(c_db),
        num(b.value),
        opt(o.gamma),
        opt(o.beta),
        opt(o.alpha1),
        opt(o.sigma2),
    ];
    row.extend(probs.into_iter().map(opt));
    row.push(b.warning.clone().unwrap_or_default());
    row
}

pub fn write_rates<W: Write>(out: W, g: &ChannelGains, bounds: &[RateBound]) -> Result<()> {
    let mut t = Table::new(out, &RATE_HEADER)?;
    for b in bounds {
        t.row(rate_row(g, b))?;
    }
    t.finish()
}

pub fn write_lda_curves<W: Write>(out: W, c: &LdaCurves) -> Result<()> {
    let mut t = Table::new(out, &LDA_CURVE_HEADER)?;
    for k in 0..c.gamma.len() {
        t.row([
            num(c.gamma[k]),
            num(c.iid_det[k]),
            num(c.iid_rand[k]),
            num(c.iidq_rand[k]),
            num(c.q_opt[k]),
            num(c.optimal[k]),
        ])?;
    }
    t.finish()
}

pub fn write_sweep<W: Write>(out: W, grid: &SweepGrid) -> Result<()> {
    let mut t = Table::new(out, &SWEEP_HEADER)?;
    for r in &grid.rows {
        t.row([
            num(r.snr_db),
            r.scheme.label().to_string(),
            num(r.max_gap),
            num(r.beta_rd),
            num(r.beta_sr),
        ])?;
    }
    t.finish()
}

pub fn write_delta_map<W: Write>(out: W, points: &[DeltaPoint]) -> Result<()> {
    let mut t = Table::new(out, &DELTA_HEADER)?;
    for p in points {
        t.row([num(p.beta_rd), num(p.beta_sr), num(p.delta)])?;
    }
    t.finish()
}

pub fn write_gap_formulas<W: Write>(out: W, nodes: &[usize]) -> Result<()> {
    let mut t = Table::new(out, &GAP_FORMULA_HEADER)?;
    for &k in nodes {
        t.row([
            k.to_string(),
            num(gap_bound(k)),
            num(gap_asymptotic(k)),
            num(diamond_gap(k, false)),
            num(diamond_gap(k, true)),
        ])?;
    }
    t.finish()
}
