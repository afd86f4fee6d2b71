//! Small information-theoretic helpers. Everything returned here is in bits.

/// `t * log2(1 + x / t)`, the rate of a link used a fraction `t` of the time
/// with energy `x` concentrated into that fraction. Equal to 0 at `t = 0`.
pub fn tlog(t: f64, x: f64) -> f64 {
    if t <= 0.0 || x <= 0.0 {
        return 0.0;
    }
    let ratio = x / t;
    if ratio.is_finite() {
        t * ratio.ln_1p() / std::f64::consts::LN_2
    } else {
        t * ((t + x).ln() - t.ln()) / std::f64::consts::LN_2
    }
}

/// `log2(1 + x)`.
pub fn log2_1p(x: f64) -> f64 {
    x.ln_1p() / std::f64::consts::LN_2
}

/// Binary entropy in bits; 0 outside the open unit interval.
pub fn binary_entropy(p: f64) -> f64 {
    if p <= 0.0 || p >= 1.0 {
        return 0.0;
    }
    -(p * p.log2() + (1.0 - p) * (1.0 - p).log2())
}

/// Entropy in bits of a probability vector. Zero entries contribute nothing.
pub fn entropy(probs: &[f64]) -> f64 {
    probs
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.log2())
        .sum()
}

/// `max(x, 0)`.
pub fn pos(x: f64) -> f64 {
    x.max(0.0)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn tlog_limits() {
        assert_eq!(tlog(0.0, 5.0), 0.0);
        assert!((tlog(1.0, 3.0) - 2.0).abs() < 1e-15);
        assert!((tlog(0.5, 1.5) - 1.0).abs() < 1e-15);
        let tiny = tlog(1e-300, 1e300);
        assert!(tiny.is_finite() && tiny > 0.0);
        assert!(tlog(1e-12, 1.0) < 1e-10);
    }

    #[test]
    fn entropies() {
        assert_eq!(binary_entropy(0.5), 1.0);
        assert_eq!(binary_entropy(0.0), 0.0);
        assert_eq!(binary_entropy(1.0), 0.0);
        assert!((entropy(&[0.25; 4]) - 2.0).abs() < 1e-15);
        assert!((entropy(&[0.3, 0.7]) - binary_entropy(0.3)).abs() < 1e-15);
    }
}
