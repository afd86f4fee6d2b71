//! `relaybounds` command-line front end. Every command writes a CSV table
//! (or JSON for the multi-relay program) to stdout or `--out`.

mod parse;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use relaybounds::lda_det::{lda_achievable_variants, lda_capacity_fd, lda_capacity_hd, simulate_lda_scheme, LdaChannel};
use relaybounds::multi::{best_relay_gdof, gdof_fd_network, gdof_lp, Duplex, LpSolutionJson};
use relaybounds::report::{self, num, Table};
use relaybounds::single::cutset::cutset_at_gamma;
use relaybounds::single::gaps::{directless_gap_scan, gap_sweep, switch_delta_map, Axis, Scheme};
use relaybounds::single::lda::lda_at_gamma;
use relaybounds::single::nnc::{nnc_det_at_gamma, nnc_random_rate, NncPoint};
use relaybounds::single::pdf::pdf_at_gamma;
use relaybounds::single::gdof::gdof_listen_fraction;
use relaybounds::{
    cutset_upper, cutset_upper_analytic, fd_cutset_s0, gdof_fd, gdof_hd, lda_rate, nnc_lower_analytic,
    nnc_lower_det, nnc_lower_noq, nnc_lower_random, pdf_lower, pdf_lower_analytic, ChannelGains,
    ExponentTriple, NetworkExponents, RateBound, Switch,
};

#[derive(Parser)]
#[command(name = "relaybounds", version, about = "Capacity bounds and gDoF for half-duplex relay networks")]
struct Cli {
    /// Worker threads for sweeps (defaults to all cores).
    #[arg(long, env = "RELAYBOUNDS_JOBS", global = true)]
    jobs: Option<usize>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Half- and full-duplex gDoF of a single-relay exponent triple.
    Gdof(GdofArgs),
    /// Upper and lower bounds for one set of channel gains.
    Rates(RatesArgs),
    /// Worst gap to the cut-set bound over an exponent grid, per SNR.
    GapSweep(GapSweepArgs),
    /// Random-switch gain of PDF over an exponent grid at one SNR.
    SwitchDelta(SwitchDeltaArgs),
    /// Worst gaps without a direct link over a grid of gains.
    DirectlessGaps(DirectlessArgs),
    /// Linear deterministic channel: rate curves, capacities, simulation.
    Lda(LdaArgs),
    /// gDoF linear program of a multi-relay network.
    Multirelay(MultirelayArgs),
    /// Constant-gap formulas versus the number of nodes.
    GapFormula(GapFormulaArgs),
}

#[derive(Args)]
struct Output {
    /// Output file; stdout when omitted.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct GdofArgs {
    #[arg(long)]
    bsd: f64,
    #[arg(long)]
    brd: f64,
    #[arg(long)]
    bsr: f64,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, ValueEnum)]
enum CurveAxis {
    Gamma,
}

#[derive(Args)]
struct RatesArgs {
    /// Source-destination gain (linear, or with a dB suffix).
    #[arg(long = "S", value_parser = parse::gain)]
    s: f64,
    /// Relay-destination gain.
    #[arg(long = "I", value_parser = parse::gain)]
    i: f64,
    /// Source-relay gain.
    #[arg(long = "C", value_parser = parse::gain)]
    c: f64,
    /// Emit rate curves against this parameter instead of optimized bounds.
    #[arg(long, value_enum)]
    curve: Option<CurveAxis>,
    /// Curve points, endpoints included.
    #[arg(long, default_value_t = 101)]
    points: usize,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct GapSweepArgs {
    #[arg(long, value_delimiter = ',', default_value = "pdf-det,nnc-det,lda")]
    scheme: Vec<Scheme>,
    /// SNR axis in dB.
    #[arg(long, value_parser = parse::axis, default_value = "0:60:5")]
    snr: Axis,
    #[arg(long, default_value_t = 1.0)]
    bsd: f64,
    /// Axis shared by the relay-destination and source-relay exponents.
    #[arg(long, value_parser = parse::axis, default_value = "0:2.4:0.1")]
    grid: Axis,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct SwitchDeltaArgs {
    /// SNR in dB.
    #[arg(long, default_value_t = 20.0)]
    snr: f64,
    #[arg(long, default_value_t = 1.0)]
    bsd: f64,
    #[arg(long, value_parser = parse::axis, default_value = "0:2.4:0.1")]
    grid: Axis,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct DirectlessArgs {
    /// Source-relay gain axis in dB.
    #[arg(long = "C", value_parser = parse::axis, default_value = "0:60:2")]
    c: Axis,
    /// Relay-destination gain axis in dB.
    #[arg(long = "I", value_parser = parse::axis, default_value = "0:60:2")]
    i: Axis,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct LdaArgs {
    #[arg(long, default_value_t = 0)]
    bsd: u32,
    #[arg(long, default_value_t = 1)]
    brd: u32,
    #[arg(long, default_value_t = 1)]
    bsr: u32,
    /// Spacing of the listen-fraction axis.
    #[arg(long, default_value_t = 0.01)]
    gamma_step: f64,
    /// Print capacities (and simulation results) instead of curves.
    #[arg(long)]
    summary: bool,
    /// Simulate this many blocks of the two-phase scheme.
    #[arg(long, default_value_t = 0, requires = "summary")]
    runs: usize,
    /// Channel uses per simulated block.
    #[arg(long, default_value_t = 100)]
    slots: usize,
    #[arg(long, default_value_t = 1)]
    seed: u64,
    #[command(flatten)]
    output: Output,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args)]
struct MultirelayArgs {
    /// Network descriptor files.
    #[arg(long, required_unless_present = "params", conflicts_with = "params")]
    file: Vec<PathBuf>,
    /// Two-relay networks as a_s1,a_s2,a_1d,a_2d,b_1,b_2 with a unit direct link.
    #[arg(long, value_parser = parse::two_relay)]
    params: Vec<[f64; 6]>,
    #[arg(long, value_enum, default_value = "json")]
    format: Format,
    #[command(flatten)]
    output: Output,
}

#[derive(Args)]
struct GapFormulaArgs {
    /// Node counts, `first:last`.
    #[arg(long, value_parser = parse::count_range, default_value = "3:200")]
    k: (usize, usize),
    #[command(flatten)]
    output: Output,
}

/// Set when a result is usable but a search stopped on its budget.
struct Outcome {
    warnings: Vec<String>,
}

fn open(output: &Output) -> Result<Box<dyn Write>> {
    Ok(match &output.out {
        Some(path) => Box::new(BufWriter::new(
            File::create(path).with_context(|| format!("cannot create {}", path.display()))?,
        )),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn finish(out: Box<dyn Write>, output: &Output) -> Result<()> {
    let mut out = out;
    out.flush().with_context(|| match &output.out {
        Some(p) => format!("cannot write {}", p.display()),
        None => "cannot write stdout".to_string(),
    })
}

fn cmd_gdof(a: &GdofArgs) -> Result<Outcome> {
    let e = ExponentTriple::new(a.bsd, a.brd, a.bsr)?;
    let mut out = open(&a.output)?;
    let mut t = Table::new(&mut out, &["beta_sd", "beta_rd", "beta_sr", "hd", "fd", "listen_fraction"])?;
    t.row([
        num(a.bsd),
        num(a.brd),
        num(a.bsr),
        num(gdof_hd(e).0),
        num(gdof_fd(e).0),
        num(gdof_listen_fraction(e)),
    ])?;
    t.finish()?;
    finish(out, &a.output)?;
    Ok(Outcome { warnings: vec![] })
}

fn all_bounds(g: &ChannelGains) -> Result<Vec<RateBound>> {
    let mut bounds = vec![cutset_upper(g), cutset_upper_analytic(g)];
    if g.s == 0.0 {
        bounds.push(fd_cutset_s0(g)?);
    }
    bounds.extend([
        pdf_lower(g, Switch::Random),
        pdf_lower(g, Switch::Deterministic),
        pdf_lower_analytic(g),
        nnc_lower_random(g),
        nnc_lower_det(g),
        nnc_lower_noq(g),
        nnc_lower_analytic(g),
        lda_rate(g),
    ]);
    Ok(bounds)
}

fn cmd_rates(a: &RatesArgs) -> Result<Outcome> {
    let g = ChannelGains::new(a.s, a.i, a.c)?;
    let mut out = open(&a.output)?;
    let mut warnings = vec![];
    match a.curve {
        None => {
            let bounds = all_bounds(&g)?;
            warnings.extend(bounds.iter().filter_map(|b| {
                b.warning.as_ref().map(|w| format!("{}: {w}", b.kind.label()))
            }));
            report::write_rates(&mut out, &g, &bounds)?;
        }
        Some(CurveAxis::Gamma) => {
            if a.points < 2 {
                bail!("--points must be at least 2");
            }
            let fd = if g.s == 0.0 { Some(fd_cutset_s0(&g)?.value) } else { None };
            let rows: Vec<Vec<String>> = (0..a.points)
                .into_par_iter()
                .map(|k| {
                    let gamma = k as f64 / (a.points - 1) as f64;
                    vec![
                        num(gamma),
                        num(cutset_at_gamma(&g, gamma)),
                        fd.map(num).unwrap_or_default(),
                        num(pdf_at_gamma(&g, Switch::Random, gamma)),
                        num(pdf_at_gamma(&g, Switch::Deterministic, gamma)),
                        num(nnc_random_rate(&g, &NncPoint::no_time_sharing(gamma)).0),
                        num(nnc_det_at_gamma(&g, gamma)),
                        num(lda_at_gamma(&g, gamma)),
                    ]
                })
                .collect();
            let mut t = Table::new(
                &mut out,
                &["gamma", "cutset", "fd_cutset", "pdf_rand", "pdf_det", "nnc_noq", "nnc_det", "lda"],
            )?;
            for r in rows {
                t.row(r)?;
            }
            t.finish()?;
        }
    }
    finish(out, &a.output)?;
    Ok(Outcome { warnings })
}

fn cmd_gap_sweep(a: &GapSweepArgs) -> Result<Outcome> {
    let grid = gap_sweep(&a.snr.values(), a.bsd, a.grid, &a.scheme)?;
    let mut out = open(&a.output)?;
    report::write_sweep(&mut out, &grid)?;
    finish(out, &a.output)?;
    Ok(Outcome { warnings: vec![] })
}

fn cmd_switch_delta(a: &SwitchDeltaArgs) -> Result<Outcome> {
    let points = switch_delta_map(a.snr, a.bsd, a.grid)?;
    let mut out = open(&a.output)?;
    report::write_delta_map(&mut out, &points)?;
    finish(out, &a.output)?;
    Ok(Outcome { warnings: vec![] })
}

fn cmd_directless(a: &DirectlessArgs) -> Result<Outcome> {
    let gaps = directless_gap_scan(&a.c.values(), &a.i.values())?;
    let mut out = open(&a.output)?;
    let mut t = Table::new(&mut out, &["lda", "pdf_det", "nnc_det"])?;
    t.row([num(gaps.lda), num(gaps.pdf_det), num(gaps.nnc_det)])?;
    t.finish()?;
    finish(out, &a.output)?;
    Ok(Outcome { warnings: vec![] })
}

fn cmd_lda(a: &LdaArgs) -> Result<Outcome> {
    let ch = LdaChannel::new(a.bsd, a.brd, a.bsr)?;
    let mut out = open(&a.output)?;
    let mut warnings = vec![];
    if a.summary {
        let mut header = vec!["beta_sd", "beta_rd", "beta_sr", "capacity_hd", "capacity_fd", "balanced_gamma"];
        let mut row = vec![
            a.bsd.to_string(),
            a.brd.to_string(),
            a.bsr.to_string(),
            num(lda_capacity_hd(&ch)),
            num(lda_capacity_fd(&ch)),
            num(ch.balanced_listen_fraction()),
        ];
        if a.runs > 0 {
            let reports = (0..a.runs)
                .map(|r| simulate_lda_scheme(&ch, a.slots, None, a.seed.wrapping_add(r as u64)))
                .collect::<relaybounds::Result<Vec<_>>>()?;
            let failures = reports.iter().filter(|r| !r.decoded_ok).count();
            if failures > 0 {
                warnings.push(format!("{failures} of {} simulated blocks failed to decode", a.runs));
            }
            header.extend(["runs", "decode_failures", "achieved_rate"]);
            row.extend([a.runs.to_string(), failures.to_string(), num(reports[0].achieved_rate)]);
        }
        let mut t = Table::new(&mut out, &header)?;
        t.row(row)?;
        t.finish()?;
    } else {
        let gammas = Axis::new(0.0, 1.0, a.gamma_step)?.values();
        let curves = lda_achievable_variants(&ch, &gammas)?;
        report::write_lda_curves(&mut out, &curves)?;
    }
    finish(out, &a.output)?;
    Ok(Outcome { warnings })
}

fn load_network(path: &Path) -> Result<NetworkExponents> {
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))?;
    NetworkExponents::from_json(&text).with_context(|| format!("in {}", path.display()))
}

fn cmd_multirelay(a: &MultirelayArgs) -> Result<Outcome> {
    let inputs: Vec<(String, NetworkExponents)> = if a.file.is_empty() {
        a.params
            .iter()
            .map(|p| {
                let net = NetworkExponents::two_relay(p[0], p[1], p[2], p[3], p[4], p[5])?;
                Ok((p.iter().map(|v| num(*v)).collect::<Vec<_>>().join(" "), net))
            })
            .collect::<Result<_>>()?
    } else {
        a.file
            .iter()
            .map(|f| Ok((f.display().to_string(), load_network(f)?)))
            .collect::<Result<_>>()?
    };
    let solutions = inputs
        .iter()
        .map(|(_, net)| gdof_lp(net))
        .collect::<relaybounds::Result<Vec<_>>>()?;
    let mut out = open(&a.output)?;
    match a.format {
        Format::Json => {
            let views: Vec<LpSolutionJson> = solutions.iter().map(|s| s.to_json_view()).collect();
            let text = if views.len() == 1 {
                serde_json::to_string_pretty(&views[0])?
            } else {
                serde_json::to_string_pretty(&views)?
            };
            writeln!(out, "{text}")?;
        }
        Format::Csv => {
            let mut t = Table::new(
                &mut out,
                &["input", "K", "best_relay_fd", "both_relays_fd", "best_relay_hd", "gdof_hd", "active_states"],
            )?;
            for ((name, net), lp) in inputs.iter().zip(&solutions) {
                t.row([
                    name.clone(),
                    net.nodes().to_string(),
                    num(best_relay_gdof(net, Duplex::Full)),
                    num(gdof_fd_network(net)),
                    num(best_relay_gdof(net, Duplex::Half)),
                    num(lp.gdof),
                    lp.active_states.to_string(),
                ])?;
            }
            t.finish()?;
        }
    }
    finish(out, &a.output)?;
    Ok(Outcome { warnings: vec![] })
}

fn cmd_gap_formula(a: &GapFormulaArgs) -> Result<Outcome> {
    let (first, last) = a.k;
    if first < 3 {
        bail!("gap formulas need at least 3 nodes");
    }
    let nodes: Vec<usize> = (first..=last).collect();
    let mut out = open(&a.output)?;
    report::write_gap_formulas(&mut out, &nodes)?;
    finish(out, &a.output)?;
    Ok(Outcome { warnings: vec![] })
}

fn run(cli: &Cli) -> Result<Outcome> {
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            bail!("--jobs must be positive");
        }
        rayon::ThreadPoolBuilder::new().num_threads(jobs).build_global()?;
    }
    match &cli.command {
        Command::Gdof(a) => cmd_gdof(a),
        Command::Rates(a) => cmd_rates(a),
        Command::GapSweep(a) => cmd_gap_sweep(a),
        Command::SwitchDelta(a) => cmd_switch_delta(a),
        Command::DirectlessGaps(a) => cmd_directless(a),
        Command::Lda(a) => cmd_lda(a),
        Command::Multirelay(a) => cmd_multirelay(a),
        Command::GapFormula(a) => cmd_gap_formula(a),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(outcome) if outcome.warnings.is_empty() => ExitCode::SUCCESS,
        Ok(outcome) => {
            for w in outcome.warnings {
                eprintln!("warning: {w}");
            }
            ExitCode::from(2)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::FAILURE
        }
    }
}
