//! Constant-gap formulas for K-node half-duplex networks, in bits.

use std::f64::consts::E;

/// Gap between the cut-set bound and noisy network coding, maximized over
/// the split `l` of the relays.
pub fn gap_bound(k: usize) -> f64 {
    assert!(k >= 3, "gap formulas need at least 3 nodes");
    (0..=k - 2)
        .map(|l| gap_term(k, l))
        .fold(f64::NEG_INFINITY, f64::max)
}

/// Value of the gap expression at split `l`.
pub fn gap_term(k: usize, l: usize) -> f64 {
    let (k, l) = (k as f64, l as f64);
    (1.0 + l).min(k - 1.0 - l) * (1.0 + l).log2() + (1.0 + 3.0 * l).min(l + k - 1.0)
}

/// Large-network approximation of [`gap_bound`].
pub fn gap_asymptotic(k: usize) -> f64 {
    let k = k as f64;
    k / 2.0 * (4.0 * k).log2()
}

/// Gap for diamond networks; `assume_sparse_schedule` uses the bound that
/// holds when at most K-1 relay states are active.
pub fn diamond_gap(k: usize, assume_sparse_schedule: bool) -> f64 {
    assert!(k >= 3, "gap formulas need at least 3 nodes");
    let kf = k as f64;
    let tail = 2.0 * (E / 2.0).log2();
    if assume_sparse_schedule {
        5.0 * kf.log2() + tail
    } else {
        (kf - 2.0) + 4.0 * kf.log2() + tail
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_networks() {
        assert_eq!(gap_bound(3), 4.0);
        assert!((gap_bound(4) - (3f64.log2() + 5.0)).abs() < 1e-12);
        assert!((gap_bound(4) - 6.585).abs() < 1e-3);
    }

    #[test]
    fn asymptotic_ratio() {
        let r = gap_bound(200) / gap_asymptotic(200);
        assert!((r - 1.0).abs() < 0.1, "{r}");
    }

    #[test]
    fn diamond_bounds() {
        for k in 3..50 {
            assert!(diamond_gap(k, true) > 0.0);
            assert!(diamond_gap(k, false) > 0.0);
        }
        assert!(diamond_gap(100, true) < diamond_gap(100, false));
        assert!(diamond_gap(100, true) < gap_bound(100));
    }
}
