//! Multi-relay networks: high-SNR cut-set linear program, best-relay
//! baselines and constant-gap formulas.

pub mod gap;
pub mod matching;
pub mod network;
pub mod simplex;

pub use gap::{diamond_gap, gap_asymptotic, gap_bound};
pub use matching::max_weight_matching;
pub use network::{
    best_relay_gdof, cut_exponent, cut_table, diamond_state_sparsity, gdof_fd_network, gdof_lp,
    is_diamond, relay_bits, Duplex, LpSolution, LpSolutionJson, StateSchedule,
};
