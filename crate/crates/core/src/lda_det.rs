//! The linear deterministic half-duplex relay channel: links are bit pipes
//! that deliver the most significant `beta` bits of the transmitted word, and
//! signals arriving at a receiver add modulo 2 level by level.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::info::{binary_entropy, entropy};
use crate::optimize::golden_max;

/// Largest relay-destination level difference for which mixture entropies are
/// enumerated.
pub const MAX_ENUMERATED_WIDTH: u32 = 16;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct LdaChannel {
    pub beta_sd: u32,
    pub beta_rd: u32,
    pub beta_sr: u32,
}

impl LdaChannel {
    pub fn new(beta_sd: u32, beta_rd: u32, beta_sr: u32) -> Result<Self> {
        let ch = Self {
            beta_sd,
            beta_rd,
            beta_sr,
        };
        if ch.levels() == 0 {
            return Err(Error::InvalidParameter("all link levels are zero".into()));
        }
        Ok(ch)
    }

    /// Word length `n`.
    pub fn levels(&self) -> u32 {
        self.beta_sd.max(self.beta_rd).max(self.beta_sr)
    }

    /// Levels the relay hears above the destination's view of the source.
    pub fn relay_excess(&self) -> u32 {
        self.beta_sr.saturating_sub(self.beta_sd)
    }

    /// Levels the relay can place above the source at the destination.
    pub fn forward_excess(&self) -> u32 {
        self.beta_rd.saturating_sub(self.beta_sd)
    }

    /// Whether the relay can help at all.
    pub fn relay_useful(&self) -> bool {
        self.relay_excess() > 0 && self.forward_excess() > 0
    }

    /// Listen fraction balancing the two phases of the simple scheme.
    pub fn balanced_listen_fraction(&self) -> f64 {
        let (up, down) = (self.relay_excess() as f64, self.forward_excess() as f64);
        if up + down == 0.0 {
            return 1.0;
        }
        down / (up + down)
    }
}

/// Listen fraction and probability that the relay's upper word is all zero.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct LdaSchedule {
    pub gamma: f64,
    pub p0: f64,
}

/// Largest entropy of the relay's upper word (`log2 L` bits wide) when it is
/// forced to zero a fraction `gamma` of the time.
pub fn max_relay_word_entropy(width: u32, gamma: f64) -> f64 {
    let levels = (width as f64).exp2();
    if width == 0 {
        return 0.0;
    }
    if gamma <= 1.0 / levels {
        width as f64
    } else {
        binary_entropy(gamma) + (1.0 - gamma) * (levels - 1.0).log2()
    }
}

/// Optimal schedule for a listen fraction: the zero word takes probability
/// `max(1/L, gamma)`, the rest is uniform.
pub fn optimal_schedule(width: u32, gamma: f64) -> LdaSchedule {
    let levels = (width as f64).exp2();
    let p0 = if gamma >= 1.0 {
        0.0
    } else {
        (1.0 / levels - gamma).max(0.0) / (1.0 - gamma)
    };
    LdaSchedule { gamma, p0 }
}

/// Half-duplex capacity in bits per channel use.
pub fn lda_capacity_hd(ch: &LdaChannel) -> f64 {
    if !ch.relay_useful() {
        return ch.beta_sd as f64;
    }
    let up = ch.relay_excess() as f64;
    let width = ch.forward_excess();
    // The relay-word entropy falls and the listening rate rises with gamma,
    // so their minimum is unimodal.
    let (_, v) = golden_max(
        |g| max_relay_word_entropy(width, g).min(g * up),
        0.0,
        1.0,
        1e-10,
    );
    ch.beta_sd as f64 + v
}

/// Full-duplex capacity in bits per channel use.
pub fn lda_capacity_fd(ch: &LdaChannel) -> f64 {
    ch.beta_sd as f64 + ch.relay_excess().min(ch.forward_excess()) as f64
}

/// Entropy of the relay's upper word when it is zero with probability
/// `gamma` (listening) and otherwise carries i.i.d. Bernoulli(`q`) bits.
pub fn bernoulli_word_entropy(width: u32, gamma: f64, q: f64) -> f64 {
    let mut probs = Vec::with_capacity(width as usize + 1);
    let mut mult = Vec::with_capacity(width as usize + 1);
    let mut binom = 1.0f64;
    for k in 0..=width {
        let word = q.powi(k as i32) * (1.0 - q).powi((width - k) as i32);
        let p = (1.0 - gamma) * word + if k == 0 { gamma } else { 0.0 };
        probs.push(p);
        mult.push(binom);
        binom = binom * (width - k) as f64 / (k + 1) as f64;
    }
    probs
        .iter()
        .zip(&mult)
        .filter(|(p, _)| **p > 0.0)
        .map(|(p, m)| -m * p * p.log2())
        .sum()
}

/// Rate curves of the four relay strategies over listen fraction.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LdaCurves {
    pub gamma: Vec<f64>,
    /// Uniform bits, deterministic schedule.
    pub iid_det: Vec<f64>,
    /// Uniform bits, random schedule.
    pub iid_rand: Vec<f64>,
    /// Bernoulli(q) bits with the best q, random schedule.
    pub iidq_rand: Vec<f64>,
    pub q_opt: Vec<f64>,
    /// Capacity-achieving distribution at each listen fraction.
    pub optimal: Vec<f64>,
}

pub fn lda_achievable_variants(ch: &LdaChannel, gammas: &[f64]) -> Result<LdaCurves> {
    let width = ch.forward_excess();
    if width > MAX_ENUMERATED_WIDTH {
        return Err(Error::Unsupported(format!(
            "relay word of {width} bits exceeds the enumeration limit of {MAX_ENUMERATED_WIDTH}"
        )));
    }
    let base = ch.beta_sd as f64;
    let up = ch.relay_excess() as f64;
    let useful = ch.relay_useful();
    let levels = (width as f64).exp2();
    let mut out = LdaCurves {
        gamma: gammas.to_vec(),
        iid_det: Vec::new(),
        iid_rand: Vec::new(),
        iidq_rand: Vec::new(),
        q_opt: Vec::new(),
        optimal: Vec::new(),
    };
    let q_grid: Vec<f64> = (0..=1000).map(|k| k as f64 / 1000.0).collect();
    for &g in gammas {
        if !useful {
            for c in [&mut out.iid_det, &mut out.iid_rand, &mut out.iidq_rand, &mut out.optimal] {
                c.push(base);
            }
            out.q_opt.push(0.5);
            continue;
        }
        let listen = g * up;
        out.iid_det.push(base + listen.min((1.0 - g) * width as f64));
        let mut uniform = vec![(1.0 - g) / levels; 1 << width];
        uniform[0] += g;
        out.iid_rand.push(base + listen.min(entropy(&uniform)));
        let mut best = (0.5, bernoulli_word_entropy(width, g, 0.5));
        for &q in &q_grid {
            let h = bernoulli_word_entropy(width, g, q);
            if h > best.1 {
                best = (q, h);
            }
        }
        out.iidq_rand.push(base + listen.min(best.1));
        out.q_opt.push(best.0);
        out.optimal.push(base + listen.min(max_relay_word_entropy(width, g)));
    }
    Ok(out)
}

/// Outcome of a simulated block of the two-phase scheme.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LdaReport {
    pub decoded_ok: bool,
    pub achieved_rate: f64,
    pub listen_slots: usize,
    pub transmit_slots: usize,
    /// Payload bits routed through the relay.
    pub relayed_bits: usize,
    /// Bits per channel use lost to rounding the phase lengths to slots.
    pub rounding_loss: f64,
}

type Word = Vec<bool>;

/// What a receiver sees from a link of `beta` levels: the top `beta` bits of
/// the `n`-bit word, shifted down to the least significant positions.
fn shift_down(x: &[bool], beta: u32) -> Word {
    let n = x.len();
    let shift = n - beta as usize;
    (0..n).map(|i| i >= shift && x[i - shift]).collect()
}

fn xor(a: &[bool], b: &[bool]) -> Word {
    a.iter().zip(b).map(|(x, y)| x ^ y).collect()
}

struct Source<'a> {
    bits: &'a [bool],
    pos: usize,
}

impl Source<'_> {
    fn take(&mut self, k: usize) -> Vec<bool> {
        let out: Vec<bool> = (0..k)
            .map(|j| self.bits.get(self.pos + j).copied().unwrap_or(false))
            .collect();
        self.pos += k;
        out
    }
}

/// Random payload of `len` bits.
pub fn random_payload(len: usize, seed: u64) -> Vec<bool> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..len).map(|_| rng.gen()).collect()
}

/// Number of payload bits one block of `slots` channel uses carries.
pub fn block_payload_len(ch: &LdaChannel, slots: usize) -> usize {
    let listen = (ch.balanced_listen_fraction() * slots as f64).floor() as usize;
    let relayed = (listen * ch.relay_excess() as usize).min((slots - listen) * ch.forward_excess() as usize);
    slots * ch.beta_sd as usize + relayed
}

/// Runs one block of `slots` channel uses of the two-phase scheme on the
/// bit-level channel. `payload` is consumed in transmission order and padded
/// with zeros if short; without one, a payload is drawn from `seed`.
///
/// While the relay listens, the source places fresh bits on the levels the
/// destination hears and relay-bound bits on the levels only the relay hears.
/// While the relay transmits, it sends the stored bits on the levels above the
/// source at the destination, which removes them before reading the source's
/// fresh bits.
pub fn simulate_lda_scheme(
    ch: &LdaChannel,
    slots: usize,
    payload: Option<&[bool]>,
    seed: u64,
) -> Result<LdaReport> {
    if !ch.relay_useful() {
        return Err(Error::Domain(
            "the two-phase scheme needs beta_sr > beta_sd and beta_rd > beta_sd".into(),
        ));
    }
    if slots == 0 {
        return Err(Error::InvalidParameter("block needs at least one slot".into()));
    }
    let n = ch.levels() as usize;
    let (sd, up, down) = (ch.beta_sd as usize, ch.relay_excess() as usize, ch.forward_excess() as usize);
    let gamma = ch.balanced_listen_fraction();
    let listen_slots = (gamma * slots as f64).floor() as usize;
    let transmit_slots = slots - listen_slots;
    let relayed = (listen_slots * up).min(transmit_slots * down);

    let owned;
    let bits = match payload {
        Some(p) => p,
        None => {
            owned = random_payload(block_payload_len(ch, slots), seed);
            &owned
        }
    };
    let mut src = Source { bits, pos: 0 };
    let mut sent: Vec<bool> = Vec::new();
    let mut direct_rx: Vec<bool> = Vec::new();
    let mut relay_queue: Vec<bool> = Vec::new();

    // Listening phase.
    let mut relay_budget = relayed;
    for _ in 0..listen_slots {
        let fresh = src.take(sd);
        let k = up.min(relay_budget);
        relay_budget -= k;
        let routed = src.take(k);
        sent.extend(&fresh);
        sent.extend(&routed);
        let mut x = vec![false; n];
        x[..sd].copy_from_slice(&fresh);
        x[sd..sd + k].copy_from_slice(&routed);

        let y_r = shift_down(&x, ch.beta_sr);
        let heard = &y_r[n - ch.beta_sr as usize..];
        relay_queue.extend(&heard[sd..sd + k]);

        let y_d = shift_down(&x, ch.beta_sd);
        direct_rx.extend(&y_d[n - sd..]);
    }
    if relay_queue.len() != relayed {
        return Err(Error::Internal("relay stored an unexpected number of bits".into()));
    }

    // Transmitting phase.
    let mut relay_rx: Vec<bool> = Vec::new();
    let mut queue = relay_queue.iter().copied();
    for _ in 0..transmit_slots {
        let fresh = src.take(sd);
        sent.extend(&fresh);
        let mut x_s = vec![false; n];
        x_s[..sd].copy_from_slice(&fresh);
        let mut x_r = vec![false; n];
        for slot in x_r.iter_mut().take(down) {
            *slot = queue.next().unwrap_or(false);
        }

        let y_d = xor(&shift_down(&x_s, ch.beta_sd), &shift_down(&x_r, ch.beta_rd));
        let top = n - ch.beta_rd as usize;
        let a: Vec<bool> = y_d[top..top + down].to_vec();
        let mut echo = vec![false; n];
        echo[..down].copy_from_slice(&a);
        let clean = xor(&y_d, &shift_down(&echo, ch.beta_rd));
        relay_rx.extend(a);
        direct_rx.extend(&clean[n - sd..]);
    }

    // Reassemble in transmission order: each listening slot carried `sd`
    // direct bits followed by its share of the relayed bits.
    let mut decoded = Vec::with_capacity(sent.len());
    let mut direct = direct_rx.iter().copied();
    let mut via_relay = relay_rx.iter().copied();
    let mut relay_budget = relayed;
    for _ in 0..listen_slots {
        decoded.extend(direct.by_ref().take(sd));
        let k = up.min(relay_budget);
        relay_budget -= k;
        decoded.extend(via_relay.by_ref().take(k));
    }
    decoded.extend(direct);
    if decoded != sent {
        return Err(Error::Internal("destination decoded a different payload".into()));
    }

    let achieved_rate = sent.len() as f64 / slots as f64;
    let target = ch.beta_sd as f64 + gamma * up as f64;
    Ok(LdaReport {
        decoded_ok: true,
        achieved_rate,
        listen_slots,
        transmit_slots,
        relayed_bits: relayed,
        rounding_loss: target - achieved_rate,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn ch(a: u32, b: u32, c: u32) -> LdaChannel {
        LdaChannel::new(a, b, c).unwrap()
    }

    #[test]
    fn capacities() {
        assert_eq!(lda_capacity_hd(&ch(1, 0, 2)), 1.0);
        let c = lda_capacity_hd(&ch(0, 1, 1));
        assert!((c - 0.772_9).abs() < 1e-3, "{c}");
        assert!((binary_entropy(c) - c).abs() < 1e-8);
        assert!((lda_capacity_hd(&ch(1, 2, 2)) - 1.0 - c).abs() < 1e-9);
        assert_eq!(lda_capacity_fd(&ch(1, 0, 2)), 1.0);
        assert_eq!(lda_capacity_fd(&ch(1, 2, 2)), 2.0);
        assert_eq!(lda_capacity_fd(&ch(2, 3, 5)), 3.0);
        assert!(LdaChannel::new(0, 0, 0).is_err());
    }

    #[test]
    fn bernoulli_half_is_uniform() {
        for w in 1..6 {
            for &g in &[0.0, 0.2, 0.7] {
                let mut uniform = vec![(1.0 - g) / (w as f64).exp2(); 1 << w];
                uniform[0] += g;
                assert!((bernoulli_word_entropy(w, g, 0.5) - entropy(&uniform)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn optimal_schedule_attains_bound() {
        for w in 1..5u32 {
            for &g in &[0.05, 0.3, 0.6, 0.9] {
                let s = optimal_schedule(w, g);
                let levels = 1usize << w;
                let zero = g + (1.0 - g) * s.p0;
                let mut probs = vec![(1.0 - zero) / (levels - 1) as f64; levels];
                probs[0] = zero;
                assert!((entropy(&probs) - max_relay_word_entropy(w, g)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn curves_for_symmetric_channel() {
        let gammas: Vec<f64> = (0..=100).map(|k| k as f64 / 100.0).collect();
        let c = lda_achievable_variants(&ch(1, 2, 2), &gammas).unwrap();
        let peak = c.iid_det.iter().cloned().fold(0.0, f64::max);
        assert!((peak - 1.5).abs() < 1e-12);
        assert!((c.iid_det[50] - 1.5).abs() < 1e-12);
        assert!(lda_achievable_variants(&ch(0, 17, 20), &gammas).is_err());
    }

    #[test]
    fn simulator_examples() {
        let r = simulate_lda_scheme(&ch(1, 2, 2), 10_000, None, 7).unwrap();
        assert!(r.decoded_ok && (r.achieved_rate - 1.5).abs() <= 1.0 / 10_000.0);
        let r = simulate_lda_scheme(&ch(1, 3, 2), 9_999, None, 3).unwrap();
        assert!((r.achieved_rate - 5.0 / 3.0).abs() <= 2.0 / 9_999.0, "{r:?}");
        let zeros = vec![false; 20_000];
        assert!(simulate_lda_scheme(&ch(1, 3, 2), 1000, Some(&zeros), 0).unwrap().decoded_ok);
        assert!(matches!(simulate_lda_scheme(&ch(2, 1, 3), 10, None, 0), Err(Error::Domain(_))));
    }

    proptest! {
        #[test]
        fn hd_between_fd_bounds(a in 0u32..6, b in 0u32..8, c in 0u32..8) {
            prop_assume!(a.max(b).max(c) > 0);
            let x = ch(a, b, c);
            let hd = lda_capacity_hd(&x);
            let fd = lda_capacity_fd(&x);
            prop_assert!(hd <= fd + 1e-9);
            if x.relay_useful() {
                let simple = a as f64 + x.balanced_listen_fraction() * x.relay_excess() as f64;
                prop_assert!(hd >= simple - 1e-9);
                prop_assert!(hd <= simple + 1.0 + 1e-9);
            } else {
                prop_assert_eq!(hd, fd);
            }
        }

        #[test]
        fn simulator_never_fails(a in 0u32..5, d1 in 1u32..5, d2 in 1u32..5, slots in 1usize..300, seed in any::<u64>()) {
            let x = ch(a, a + d1, a + d2);
            let r = simulate_lda_scheme(&x, slots, None, seed).unwrap();
            prop_assert!(r.decoded_ok);
            prop_assert!(r.rounding_loss >= -1e-12);
            prop_assert!(r.rounding_loss <= (d1.max(d2) as f64) / slots as f64 + 1e-12);
        }
    }
}
