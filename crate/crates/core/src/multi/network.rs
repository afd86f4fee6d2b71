//! High-SNR cut-set analysis of K-node half-duplex networks.
//!
//! Relay subsets and relay states are bitmasks over the relays: bit `j`
//! refers to relay node `j + 1` (0-based node numbering, source = 0). For a
//! state, a set bit means the relay transmits; for a cut, a set bit means the
//! relay is on the source side.

use std::collections::BTreeMap;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::matching::max_weight_matching;
use super::simplex;
use crate::channel::NetworkExponents;
use crate::error::{Error, Result};
use crate::single::{gdof_fd, gdof_hd};

/// Weights below this count as inactive.
pub const ACTIVE_TOL: f64 = 1e-9;
/// Cuts within this distance of the optimum are reported as tight.
pub const TIGHT_TOL: f64 = 1e-9;
const PIVOT_BUDGET: usize = 1_000_000;

/// Duplex mode of the relays.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Duplex {
    Half,
    Full,
}

/// Probability weights over the `2^(K-2)` relay states.
#[derive(Debug, Clone, PartialEq)]
pub struct StateSchedule {
    pub k: usize,
    pub lambda: Vec<f64>,
}

/// Optimal schedule of the state-enumerated cut-set program.
#[derive(Debug, Clone, PartialEq)]
pub struct LpSolution {
    pub gdof: f64,
    pub schedule: StateSchedule,
    pub tight_cuts: Vec<u32>,
    pub active_states: usize,
}

/// JSON view of an [`LpSolution`]; states and cuts are written as strings
/// whose `j`-th character is the bit of relay `j + 1`.
#[derive(Debug, Clone, Serialize, Deserialize, PartialEq)]
pub struct LpSolutionJson {
    pub gdof: f64,
    pub lambda: BTreeMap<String, f64>,
    pub tight_cuts: Vec<String>,
    pub active_states: usize,
}

/// Renders a relay bitmask as a string of `0`/`1`, first relay first.
pub fn relay_bits(mask: u32, relays: usize) -> String {
    (0..relays)
        .map(|j| if mask >> j & 1 == 1 { '1' } else { '0' })
        .collect()
}

impl LpSolution {
    pub fn to_json_view(&self) -> LpSolutionJson {
        let relays = self.schedule.k - 2;
        LpSolutionJson {
            gdof: self.gdof,
            lambda: self
                .schedule
                .lambda
                .iter()
                .enumerate()
                .map(|(s, &w)| (relay_bits(s as u32, relays), w))
                .collect(),
            tight_cuts: self.tight_cuts.iter().map(|&a| relay_bits(a, relays)).collect(),
            active_states: self.active_states,
        }
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_json_view()).expect("solution serializes")
    }
}

fn relay_node(j: usize) -> usize {
    j + 1
}

/// Matching exponent between transmitters `tx` on the source side and
/// receivers `rx` on the destination side.
fn cut_matching(net: &NetworkExponents, tx: &[usize], rx: &[usize]) -> f64 {
    let w: Vec<Vec<f64>> = rx
        .iter()
        .map(|&r| tx.iter().map(|&t| net.exponent(r, t)).collect())
        .collect();
    max_weight_matching(&w)
}

/// High-SNR exponent of cut `a` while the relays are in state `s`.
pub fn cut_exponent(net: &NetworkExponents, a: u32, s: u32) -> f64 {
    let relays = net.relays();
    let mut tx = vec![0];
    let mut rx = vec![net.destination()];
    for j in 0..relays {
        let in_a = a >> j & 1 == 1;
        let on = s >> j & 1 == 1;
        if in_a && on {
            tx.push(relay_node(j));
        } else if !in_a && !on {
            rx.push(relay_node(j));
        }
    }
    cut_matching(net, &tx, &rx)
}

/// Table of `cut_exponent(net, a, s)` indexed `[a][s]`.
pub fn cut_table(net: &NetworkExponents) -> Vec<Vec<f64>> {
    let n = 1u32 << net.relays();
    (0..n)
        .into_par_iter()
        .map(|a| (0..n).map(|s| cut_exponent(net, a, s)).collect())
        .collect()
}

/// Half-duplex gDoF: the max-min linear program over state schedules.
///
/// Solved through the equivalent packing program
/// `max sum(mu) s.t. sum_A mu_A D[A][s] <= 1`, whose duals `y` give the
/// schedule `y / sum(y)` and the gDoF `1 / sum(y)`. All right-hand sides are
/// one, which keeps the tableau far from the degenerate max-min form.
pub fn gdof_lp(net: &NetworkExponents) -> Result<LpSolution> {
    let table = cut_table(net);
    let n = table.len();
    let mut packing_value = None;
    let lambda = if table.iter().any(|cut| cut.iter().all(|&d| d == 0.0)) {
        // Some cut carries nothing in any state; every schedule is optimal.
        let mut w = vec![0.0; n];
        w[0] = 1.0;
        w
    } else {
        let rows: Vec<Vec<f64>> = (0..n).map(|s| table.iter().map(|cut| cut[s]).collect()).collect();
        let opt = simplex::maximize(&vec![1.0; n], &rows, &vec![1.0; n], PIVOT_BUDGET)?;
        packing_value = Some(opt.value);
        let mut w: Vec<f64> = opt.duals.iter().map(|&y| y.max(0.0)).collect();
        let sum: f64 = w.iter().sum();
        if !(sum > 0.0) {
            return Err(Error::Internal("packing program returned zero duals".into()));
        }
        w.iter_mut().for_each(|y| *y /= sum);
        w
    };
    let scheduled: Vec<f64> = table
        .iter()
        .map(|cut| cut.iter().zip(&lambda).map(|(d, w)| d * w).sum())
        .collect();
    let gdof = scheduled.iter().copied().fold(f64::INFINITY, f64::min);
    if let Some(v) = packing_value {
        if (gdof * v - 1.0).abs() > 1e-7 {
            return Err(Error::Internal(format!(
                "schedule value {gdof} disagrees with the packing optimum {}",
                1.0 / v
            )));
        }
    }
    let tight_cuts = (0..n as u32)
        .filter(|&a| scheduled[a as usize] <= gdof + TIGHT_TOL)
        .collect();
    let active_states = lambda.iter().filter(|&&w| w > ACTIVE_TOL).count();
    Ok(LpSolution {
        gdof,
        schedule: StateSchedule { k: net.nodes(), lambda },
        tight_cuts,
        active_states,
    })
}

/// Full-duplex gDoF: every relay transmits and receives at once.
pub fn gdof_fd_network(net: &NetworkExponents) -> f64 {
    let relays = net.relays();
    (0..1u32 << relays)
        .map(|a| {
            let mut tx = vec![0];
            let mut rx = vec![net.destination()];
            for j in 0..relays {
                if a >> j & 1 == 1 {
                    tx.push(relay_node(j));
                } else {
                    rx.push(relay_node(j));
                }
            }
            cut_matching(net, &tx, &rx)
        })
        .fold(f64::INFINITY, f64::min)
}

/// gDoF when only the single best relay is used and the others stay silent.
pub fn best_relay_gdof(net: &NetworkExponents, mode: Duplex) -> f64 {
    let direct = net.exponent(net.destination(), 0);
    (1..=net.relays())
        .map(|r| {
            let e = net.relay_triple(r);
            match mode {
                Duplex::Half => gdof_hd(e).0,
                Duplex::Full => gdof_fd(e).0,
            }
        })
        .fold(direct, f64::max)
}

/// True when the only nonzero links are source -> relay and relay -> destination.
pub fn is_diamond(net: &NetworkExponents) -> bool {
    let d = net.destination();
    if net.exponent(d, 0) != 0.0 {
        return false;
    }
    (1..d).all(|r| (1..d).all(|t| r == t || net.exponent(r, t) == 0.0))
}

/// Number of states the optimal schedule of a diamond network uses.
pub fn diamond_state_sparsity(net: &NetworkExponents) -> Result<usize> {
    if !is_diamond(net) {
        return Err(Error::Domain(
            "network has a direct or relay-to-relay link and is not a diamond".into(),
        ));
    }
    Ok(gdof_lp(net)?.active_states)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channel::ExponentTriple;
    use proptest::prelude::*;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const TABLE_ONE: [[f64; 6]; 4] = [
        [2.5, 1.4, 0.5, 1.8, 0.6, 0.8],
        [2.5, 0.3, 0.7, 1.3, 0.4, 0.8],
        [1.8, 1.2, 1.3, 2.0, 0.7, 1.2],
        [1.7, 1.1, 1.2, 1.4, 0.4, 1.5],
    ];

    fn two_relay(p: [f64; 6]) -> NetworkExponents {
        NetworkExponents::two_relay(p[0], p[1], p[2], p[3], p[4], p[5]).unwrap()
    }

    /// Closed-form two-relay cut table, indexed `[cut][state]` with the
    /// state written as (first relay on, second relay on).
    fn closed_form_table(p: [f64; 6]) -> [[f64; 4]; 4] {
        let [s1, s2, a1d, a2d, b1, b2] = p;
        let m = |v: &[f64]| v.iter().copied().fold(f64::NEG_INFINITY, f64::max);
        [
            [m(&[1.0, s1, s2]), m(&[1.0, s1]), m(&[1.0, s2]), 1.0],
            [m(&[1.0, s2]), 1.0, m(&[s2 + a1d, b2 + 1.0]), m(&[1.0, a1d])],
            [m(&[1.0, s1]), m(&[s1 + a2d, b1 + 1.0]), 1.0, m(&[1.0, a2d])],
            [1.0, m(&[1.0, a2d]), m(&[1.0, a1d]), m(&[1.0, a1d, a2d])],
        ]
    }

    /// Maps (cut, state) in the closed-form ordering to bitmasks.
    fn masks(cut: usize, state: usize) -> (u32, u32) {
        let a = [0u32, 0b01, 0b10, 0b11][cut];
        let s = ((state >> 1) & 1) as u32 | (((state & 1) as u32) << 1);
        (a, s)
    }

    #[test]
    fn single_link_and_empty_sets() {
        let net = NetworkExponents::from_triple(ExponentTriple::new(0.7, 0.0, 0.0).unwrap());
        assert_eq!(cut_exponent(&net, 0b1, 0b0), 0.7);
        let diamond = NetworkExponents::from_triple(ExponentTriple::new(0.0, 0.0, 0.0).unwrap());
        assert_eq!(cut_exponent(&diamond, 0b0, 0b0), 0.0);
    }

    #[test]
    fn table_example_cut() {
        let net = two_relay(TABLE_ONE[2]);
        assert!((cut_exponent(&net, 0b01, 0b01) - 2.5).abs() < 1e-12);
    }

    #[test]
    fn silent_relays_reduce_to_best_source_link() {
        let net = two_relay(TABLE_ONE[0]);
        // Cut with nothing on the source side: every relay listens.
        assert!((cut_exponent(&net, 0b00, 0b00) - 2.5).abs() < 1e-12);
        // Second relay on the source side but silent: T = {source}.
        assert!((cut_exponent(&net, 0b10, 0b00) - 2.5).abs() < 1e-12);
        assert!((cut_exponent(&net, 0b01, 0b00) - 1.4).abs() < 1e-12);
    }

    #[test]
    fn matches_closed_form_tables() {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let p: [f64; 6] = std::array::from_fn(|_| rng.gen_range(0.0..3.0));
            let net = two_relay(p);
            let table = closed_form_table(p);
            for (cut, row) in table.iter().enumerate() {
                for (state, &want) in row.iter().enumerate() {
                    let (a, s) = masks(cut, state);
                    assert!((cut_exponent(&net, a, s) - want).abs() < 1e-12, "{p:?} {cut} {state}");
                }
            }
            let fd = [table[0][0], table[1][2], table[2][1], table[3][3]]
                .into_iter()
                .fold(f64::INFINITY, f64::min);
            assert!((gdof_fd_network(&net) - fd).abs() < 1e-12);
        }
    }

    #[test]
    fn table_one_values() {
        let hd = [1.4235, 1.2182, 1.5808, 1.3604];
        let fd = [1.8, 1.3, 1.8, 1.4];
        let best_hd = [1.267, 1.000, 1.218, 1.156];
        let best_fd = [1.4, 1.0, 1.3, 1.2];
        for (i, p) in TABLE_ONE.iter().enumerate() {
            let net = two_relay(*p);
            let lp = gdof_lp(&net).unwrap();
            assert!((lp.gdof - hd[i]).abs() < 1e-3, "row {i}: {}", lp.gdof);
            assert!((gdof_fd_network(&net) - fd[i]).abs() < 1e-9);
            assert!((best_relay_gdof(&net, Duplex::Half) - best_hd[i]).abs() < 1e-3);
            assert!((best_relay_gdof(&net, Duplex::Full) - best_fd[i]).abs() < 1e-9);
            assert!(best_relay_gdof(&net, Duplex::Half) < lp.gdof);
            assert!(lp.gdof < gdof_fd_network(&net));
        }
    }

    #[test]
    fn json_view() {
        let lp = gdof_lp(&two_relay(TABLE_ONE[0])).unwrap();
        let v = lp.to_json_view();
        assert_eq!(v.lambda.len(), 4);
        assert!(v.lambda.contains_key("10"));
        let back: LpSolutionJson = serde_json::from_str(&lp.to_json()).unwrap();
        assert_eq!(back, v);
    }

    #[test]
    fn diamond_checks() {
        let net = two_relay(TABLE_ONE[0]);
        assert!(matches!(diamond_state_sparsity(&net), Err(Error::Domain(_))));
        let mut alpha = vec![vec![0.0; 4]; 4];
        alpha[1][0] = 2.0;
        alpha[3][1] = 1.5;
        // Second relay is dead: behaves as a single-relay diamond.
        let net = NetworkExponents::new(alpha).unwrap();
        assert!(diamond_state_sparsity(&net).unwrap() <= 2);
        let lp = gdof_lp(&net).unwrap();
        let single = gdof_hd(ExponentTriple::new(0.0, 1.5, 2.0).unwrap()).0;
        assert!((lp.gdof - single).abs() < 1e-9);
    }

    #[test]
    fn random_diamond_sparsity() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for k in [3usize, 4] {
            for _ in 0..100 {
                let mut alpha = vec![vec![0.0; k]; k];
                for r in 1..k - 1 {
                    alpha[r][0] = rng.gen_range(0.0..3.0);
                    alpha[k - 1][r] = rng.gen_range(0.0..3.0);
                }
                let net = NetworkExponents::new(alpha).unwrap();
                assert!(diamond_state_sparsity(&net).unwrap() < k);
            }
        }
    }

    #[test]
    fn larger_network_solves() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let k = 8;
        let alpha: Vec<Vec<f64>> = (0..k)
            .map(|_| (0..k).map(|_| rng.gen_range(0.0..2.0)).collect())
            .collect();
        let net = NetworkExponents::new(alpha).unwrap();
        let lp = gdof_lp(&net).unwrap();
        assert!(lp.gdof + 1e-9 >= best_relay_gdof(&net, Duplex::Half));
        assert!(lp.gdof <= gdof_fd_network(&net) + 1e-9);
        assert!(!lp.tight_cuts.is_empty());
    }

    proptest! {
        #[test]
        fn three_node_lp_matches_closed_form(sd in 0.0..3.0f64, rd in 0.0..3.0f64, sr in 0.0..3.0f64) {
            let e = ExponentTriple::new(sd, rd, sr).unwrap();
            let lp = gdof_lp(&NetworkExponents::from_triple(e)).unwrap();
            prop_assert!((lp.gdof - gdof_hd(e).0).abs() < 1e-9);
            prop_assert!((gdof_fd_network(&NetworkExponents::from_triple(e)) - gdof_fd(e).0).abs() < 1e-12);
        }

        #[test]
        fn lp_certificate_and_ordering(p in proptest::array::uniform6(0.0..3.0f64), direct in 0.0..2.0f64) {
            let mut net = two_relay(p);
            let mut alpha: Vec<Vec<f64>> = (0..4).map(|r| (0..4).map(|t| {
                if r == 0 || t == 3 || r == t { 0.0 } else { net.exponent(r, t) }
            }).collect()).collect();
            alpha[3][0] = direct;
            net = NetworkExponents::new(alpha).unwrap();
            let lp = gdof_lp(&net).unwrap();
            let sum: f64 = lp.schedule.lambda.iter().sum();
            prop_assert!((sum - 1.0).abs() < 1e-9);
            prop_assert!(lp.schedule.lambda.iter().all(|&w| w >= 0.0));
            let table = cut_table(&net);
            for cut in &table {
                let v: f64 = cut.iter().zip(&lp.schedule.lambda).map(|(d, w)| d * w).sum();
                prop_assert!(v >= lp.gdof - 1e-9);
            }
            prop_assert!(!lp.tight_cuts.is_empty());
            prop_assert!(lp.gdof >= direct - 1e-9);
            prop_assert!(best_relay_gdof(&net, Duplex::Half) <= lp.gdof + 1e-9);
            prop_assert!(lp.gdof <= gdof_fd_network(&net) + 1e-9);
        }
    }
}
