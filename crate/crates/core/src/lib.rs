//! Capacity bounds, generalized degrees of freedom and half-duplex schedules
//! for Gaussian relay networks.

pub mod channel;
pub mod error;
pub mod info;
pub mod lda_det;
pub mod multi;
pub mod optimize;
pub mod quadrature;
pub mod report;
pub mod single;

pub use channel::{
    db_to_linear, exponents_to_gains, linear_to_db, BoundKind, ChannelGains, ExponentTriple,
    GdofValue, NetworkExponents, OptimizerPoint, RateBound,
};
pub use error::{Error, Result};
pub use lda_det::{
    lda_achievable_variants, lda_capacity_fd, lda_capacity_hd, simulate_lda_scheme, LdaChannel,
    LdaCurves, LdaReport, LdaSchedule,
};
pub use multi::{
    best_relay_gdof, cut_exponent, diamond_gap, diamond_state_sparsity, gap_asymptotic,
    gap_bound, gdof_fd_network, gdof_lp, Duplex, LpSolution, StateSchedule,
};
pub use quadrature::{switch_info_mixture, MixtureSpec};
pub use single::{
    analytic_gap_constants, cutset_upper, cutset_upper_analytic, fd_cutset_s0, gap_sweep, gdof_fd,
    gdof_hd, lda_rate, nnc_lower_analytic, nnc_lower_det, nnc_lower_noq, nnc_lower_random,
    pdf_lower, pdf_lower_analytic, Switch,
};
