//! Randomized properties of the spectral layer, the parameter conversions
//! and the number formatting.

use approx::assert_abs_diff_eq;
use proptest::prelude::*;

use vorwave::io::{fmt_f64, from_json, to_json};
use vorwave::operators::{hilbert_strip, hilbert_strip_inverse, StripDepth};
use vorwave::wave::{convert_lambda_mu_to_mq, convert_mq_to_lambda_mu, dispersion_lambdas, dispersion_residual};
use vorwave::{PeriodicFunction, PhysicalParams};

const MODES: usize = 16;

fn coefficients() -> impl Strategy<Value = (f64, Vec<f64>, Vec<f64>)> {
    (
        -2.0..2.0f64,
        prop::collection::vec(-1.0..1.0f64, MODES),
        prop::collection::vec(-1.0..1.0f64, MODES - 1),
    )
        .prop_map(|(mean, a, mut b)| {
            b.push(0.0);
            (mean, a, b)
        })
}

fn params() -> impl Strategy<Value = PhysicalParams> {
    (-4.0..4.0f64, 0.1..3.0f64, 0.2..3.0f64, 0.05..4.0f64)
        .prop_map(|(gamma, g, k, h)| PhysicalParams::new(gamma, g, k, h).unwrap())
}

proptest! {
    #[test]
    fn samples_determine_coefficients((mean, a, b) in coefficients()) {
        let f = PeriodicFunction::from_coefficients(MODES, mean, a.clone(), b.clone()).unwrap();
        let g = PeriodicFunction::from_values(f.values().to_vec()).unwrap();
        assert_abs_diff_eq!(g.mean(), mean, epsilon = 1e-13);
        for n in 0..MODES {
            assert_abs_diff_eq!(g.cos_coeffs()[n], a[n], epsilon = 1e-13);
            assert_abs_diff_eq!(g.sin_coeffs()[n], b[n], epsilon = 1e-13);
        }
    }

    #[test]
    fn strip_transform_inverts((_, a, b) in coefficients(), d in 0.05..5.0f64) {
        let mut a = a;
        a[MODES - 1] = 0.0;
        let f = PeriodicFunction::from_coefficients(MODES, 0.0, a, b).unwrap();
        let d = StripDepth::new(d).unwrap();
        let back = hilbert_strip_inverse(&hilbert_strip(&f, d).unwrap(), d).unwrap();
        for (x, y) in back.values().iter().zip(f.values()) {
            assert_abs_diff_eq!(x, y, epsilon = 1e-12);
        }
    }

    #[test]
    fn low_band_products_are_pointwise(
        a in prop::collection::vec(-1.0..1.0f64, MODES / 2),
        c in prop::collection::vec(-1.0..1.0f64, MODES / 2),
    ) {
        let pad = |v: &[f64]| {
            let mut out = v.to_vec();
            out.resize(MODES, 0.0);
            out
        };
        let f = PeriodicFunction::from_cosines(MODES, 0.3, pad(&a[..MODES / 2 - 1])).unwrap();
        let g = PeriodicFunction::from_cosines(MODES, -0.7, pad(&c[..MODES / 2 - 1])).unwrap();
        let fg = f.multiply(&g);
        for ((p, x), y) in fg.values().iter().zip(f.values()).zip(g.values()) {
            assert_abs_diff_eq!(*p, x * y, epsilon = 1e-12);
        }
    }

    #[test]
    fn dispersion_roots_straddle_zero(p in params(), n in 1usize..6) {
        let (plus, minus) = dispersion_lambdas(n, &p);
        prop_assert!(plus > 0.0 && minus < 0.0);
        for l in [plus, minus] {
            let scale = p.g + (l * p.gamma).abs();
            prop_assert!(dispersion_residual(l, n, &p).abs() <= 1e-12 * scale);
        }
    }

    #[test]
    fn flux_and_head_conversions_invert(p in params(), lambda in -3.0..3.0f64, mu in -1.0..1.0f64) {
        let (m, q) = convert_lambda_mu_to_mq(lambda, mu, &p);
        let (l2, mu2) = convert_mq_to_lambda_mu(m, q, &p);
        assert_abs_diff_eq!(l2, lambda, epsilon = 1e-12 * (1.0 + p.gamma.abs() * p.h));
        assert_abs_diff_eq!(mu2, mu, epsilon = 1e-11 * (1.0 + q.abs()));
    }

    #[test]
    fn formatted_floats_round_trip(x in any::<f64>().prop_filter("finite", |x| x.is_finite())) {
        let s = fmt_f64(x);
        prop_assert_eq!(s.parse::<f64>().unwrap().to_bits(), x.to_bits());
        let back: Vec<f64> = from_json(&to_json(&vec![x]).unwrap()).unwrap();
        prop_assert_eq!(back[0].to_bits(), x.to_bits());
    }
}
