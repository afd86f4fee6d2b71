//! Ordering of the bounds on random channels.

use proptest::prelude::*;
use relaybounds::{
    cutset_upper, cutset_upper_analytic, lda_rate, nnc_lower_analytic, nnc_lower_det,
    nnc_lower_random, pdf_lower, pdf_lower_analytic, ChannelGains, Switch,
};

fn gains() -> impl Strategy<Value = ChannelGains> {
    (-20.0..60.0f64, -20.0..60.0f64, -20.0..60.0f64, prop::bool::weighted(0.15)).prop_map(
        |(s, i, c, directless)| {
            let g = ChannelGains::from_db(s, i, c).unwrap();
            if directless {
                ChannelGains::new(0.0, g.i, g.c).unwrap()
            } else {
                g
            }
        },
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn pdf_chain(g in gains()) {
        let a = pdf_lower_analytic(&g).value;
        let d = pdf_lower(&g, Switch::Deterministic).value;
        let r = pdf_lower(&g, Switch::Random).value;
        let u = cutset_upper(&g).value;
        let ua = cutset_upper_analytic(&g).value;
        prop_assert!(a <= d + 1e-9, "analytic {a} > det {d}");
        prop_assert!(d <= r + 1e-9, "det {d} > rand {r}");
        prop_assert!(r <= u + 1e-9, "rand {r} > cutset {u}");
        prop_assert!(u <= ua + 1e-9, "cutset {u} > analytic {ua}");
        prop_assert!(lda_rate(&g).value <= u + 1e-9);
    }

    #[test]
    fn nnc_chain(g in gains()) {
        let a = nnc_lower_analytic(&g).value;
        let d = nnc_lower_det(&g).value;
        let r = nnc_lower_random(&g).value;
        prop_assert!(a <= d + 1e-9, "analytic {a} > det {d}");
        prop_assert!(d <= r + 1e-6, "det {d} > rand {r}");
        prop_assert!(r <= cutset_upper(&g).value + 1e-9);
    }
}
