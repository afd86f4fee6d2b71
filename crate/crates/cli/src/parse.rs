//! Value parsers for command-line flags.

use relaybounds::db_to_linear;
use relaybounds::single::gaps::Axis;

/// A linear gain, or a dB value when suffixed with `dB`.
pub fn gain(text: &str) -> Result<f64, String> {
    let t = text.trim();
    let lower = t.to_ascii_lowercase();
    let value = match lower.strip_suffix("db") {
        Some(db) => {
            let db = db.trim();
            if db == "-inf" {
                0.0
            } else {
                db_to_linear(db.parse::<f64>().map_err(|e| format!("{t}: {e}"))?)
            }
        }
        None => t.parse::<f64>().map_err(|e| format!("{t}: {e}"))?,
    };
    if !value.is_finite() || value < 0.0 {
        return Err(format!("{t}: gain must be finite and nonnegative"));
    }
    Ok(value)
}

/// `start:stop:step`, or a single value.
pub fn axis(text: &str) -> Result<Axis, String> {
    let parts: Vec<f64> = text
        .split(':')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{text}: {e}")))
        .collect::<Result<_, _>>()?;
    let (start, stop, step) = match parts[..] {
        [v] => (v, v, 1.0),
        [a, b, s] => (a, b, s),
        _ => return Err(format!("{text}: expected start:stop:step")),
    };
    Axis::new(start, stop, step).map_err(|e| e.to_string())
}

/// `first:last` or a single count, inclusive.
pub fn count_range(text: &str) -> Result<(usize, usize), String> {
    let parts: Vec<usize> = text
        .split(':')
        .map(|p| p.trim().parse::<usize>().map_err(|e| format!("{text}: {e}")))
        .collect::<Result<_, _>>()?;
    let (a, b) = match parts[..] {
        [v] => (v, v),
        [a, b] => (a, b),
        _ => return Err(format!("{text}: expected first:last")),
    };
    if a > b {
        return Err(format!("{text}: empty range"));
    }
    Ok((a, b))
}

/// Six comma-separated two-relay exponents.
pub fn two_relay(text: &str) -> Result<[f64; 6], String> {
    let v: Vec<f64> = text
        .split(',')
        .map(|p| p.trim().parse::<f64>().map_err(|e| format!("{text}: {e}")))
        .collect::<Result<_, _>>()?;
    v.try_into()
        .map_err(|_| format!("{text}: expected a_s1,a_s2,a_1d,a_2d,b_1,b_2"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gains() {
        assert_eq!(gain("15").unwrap(), 15.0);
        assert!((gain("30dB").unwrap() - 1000.0).abs() < 1e-9);
        assert!((gain("30 db").unwrap() - 1000.0).abs() < 1e-9);
        assert_eq!(gain("-infdB").unwrap(), 0.0);
        assert!(gain("-1").is_err());
        assert!(gain("x").is_err());
    }

    #[test]
    fn axes_and_ranges() {
        assert_eq!(axis("0:60:5").unwrap().values().len(), 13);
        assert_eq!(axis("20").unwrap().values(), vec![20.0]);
        assert!(axis("0:1:0").is_err());
        assert!(axis("0:1").is_err());
        assert_eq!(count_range("3:200").unwrap(), (3, 200));
        assert!(count_range("5:3").is_err());
        assert_eq!(two_relay("1,2,3,4,5,6").unwrap()[5], 6.0);
        assert!(two_relay("1,2").is_err());
    }
}
