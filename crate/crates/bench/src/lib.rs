//! Fixed inputs shared by the benchmarks.

use relaybounds::{ChannelGains, NetworkExponents};

/// No direct link, strong source-relay link.
pub fn directless_gains() -> ChannelGains {
    ChannelGains::new(0.0, 3.0, 15.0).expect("valid gains")
}

/// Direct link at 30 dB with stronger relay links.
pub fn direct_link_gains() -> ChannelGains {
    ChannelGains::from_db(30.0, 34.77, 37.63).expect("valid gains")
}

/// Two-relay network where both relays beat the best single relay.
pub fn two_relay_network() -> NetworkExponents {
    NetworkExponents::two_relay(2.5, 1.4, 0.5, 1.8, 0.6, 0.8).expect("valid network")
}

/// Fully connected network of `k` nodes with deterministic exponents in
/// `[0, 2)`.
pub fn dense_network(k: usize) -> NetworkExponents {
    let alpha = (0..k)
        .map(|r| (0..k).map(|t| ((r * 7 + t * 13) % 20) as f64 / 10.0).collect())
        .collect();
    NetworkExponents::new(alpha).expect("valid network")
}
