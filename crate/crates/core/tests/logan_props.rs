use jacobi_logan::jacobi::{phi, phi_jet, JacobiParams};
use jacobi_logan::logan::{
    build_extremizer, chebyshev_zero_count, derivatives_at_tau, lambda_sup_extremizer, p_polynomial,
    partial_fraction_coefficients, shape_before_zero, ExtremizerKind, Family,
};
use jacobi_logan::specfun::SeriesConfig;
use jacobi_logan::transform::{integrate_dmu, QuadConfig};
use jacobi_logan::zeros::lambda_zeros;
use proptest::prelude::*;

fn params() -> impl Strategy<Value = JacobiParams> {
    (-0.5f64..2.0, 0.0f64..1.0).prop_map(|(b, f)| JacobiParams::new(b + 2.0 * f, b).unwrap())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(500))]

    #[test]
    fn partial_fractions(raw in prop::collection::vec(0.1f64..30.0, 1..8), l in 0.0f64..40.0) {
        let mut nodes = raw.clone();
        nodes.sort_by(f64::total_cmp);
        nodes.dedup_by(|a, b| (*a - *b).abs() < 0.05);
        prop_assume!(nodes.iter().all(|&x| (x - l).abs() > 1e-3));
        let a = partial_fraction_coefficients(&nodes);
        let terms: Vec<f64> = a.iter().zip(&nodes).map(|(ai, li)| ai / (li * li - l * l)).collect();
        let sum: f64 = terms.iter().sum();
        let scale: f64 = terms.iter().map(|t| t.abs()).sum();
        let direct: f64 = nodes.iter().map(|li| 1.0 / (1.0 - l * l / (li * li))).product();
        prop_assert!((sum - direct).abs() <= 1e-10 * scale.max(direct.abs()), "{sum} vs {direct}");
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn product_integral_identity(p in params(), mu in 0.0f64..20.0, l in 0.0f64..20.0, tau in 0.1f64..3.0) {
        prop_assume!((mu - l).abs() > 0.1);
        let cfg = SeriesConfig::default();
        let (jm, jl) = (phi_jet(&p, mu, tau, &cfg).unwrap(), phi_jet(&p, l, tau, &cfg).unwrap());
        let closed = p.delta(tau) * (jm.value * jl.dt - jm.dt * jl.value) / (mu * mu - l * l);
        let qc = QuadConfig::default();
        let q = integrate_dmu(&|s| Ok(phi(&p, mu, s)? * phi(&p, l, s)?), tau, &p, &qc).unwrap().value;
        let nm = integrate_dmu(&|s| Ok(phi(&p, mu, s)?.powi(2)), tau, &p, &qc).unwrap().value;
        let nl = integrate_dmu(&|s| Ok(phi(&p, l, s)?.powi(2)), tau, &p, &qc).unwrap().value;
        prop_assert!((closed - q).abs() <= 1e-6 * (nm * nl).sqrt());
    }

    #[test]
    fn sign_pattern_and_logan_value(p in params(), m in 1usize..4, tau in 0.5f64..2.0) {
        let f = build_extremizer(&p, m, tau, ExtremizerKind::SmallFM).unwrap();
        let big = build_extremizer(&p, m, tau, ExtremizerKind::FM).unwrap();
        let z = lambda_zeros(&p, tau, m + 11).unwrap().zeros;
        let sm = if m % 2 == 0 { 1.0 } else { -1.0 };
        for k in m..=m + 10 {
            let mid = 0.5 * (z[k - 1] + z[k]);
            prop_assert!(sm * f.eval(mid).unwrap() > 0.0, "f_{m} sign at k={k}");
            let sk = if (k + m) % 2 == 0 { 1.0 } else { -1.0 };
            prop_assert!(sk * big.eval(mid).unwrap() > 0.0, "F_{m} sign at k={k}");
        }
        let sup = lambda_sup_extremizer(&f).unwrap();
        prop_assert!((sup.value - z[m - 1]).abs() <= 1e-8 * z[m - 1]);
    }

    #[test]
    fn eigenfunction_polynomial_shape(p in params(), m in 1usize..4, tau in 0.5f64..1.5) {
        let pm = p_polynomial(&p, m, tau).unwrap();
        let d = derivatives_at_tau(&pm, 2 * m - 1).unwrap();
        let r = d.ratios();
        for (k, v) in r[..2 * m - 1].iter().enumerate() {
            prop_assert!(*v <= 1e-6, "order {k}: {v}");
        }
        let shape = shape_before_zero(&pm, tau, 2 * m - 1, d.values[2 * m - 1], d.scales[0], 200).unwrap();
        prop_assert!(shape.positive_decreasing(), "{shape:?}");
    }

    #[test]
    fn chebyshev_families(p in params(), tau in 0.5f64..2.0, coeffs in prop::collection::vec(-1.0f64..1.0, 1..6)) {
        prop_assume!(coeffs.iter().any(|c| c.abs() > 1e-3));
        let n = coeffs.len();
        for fam in Family::ALL {
            let grid = fam.grid(tau, 2000);
            let basis = fam.sample(&p, tau, n, &grid).unwrap();
            let c = chebyshev_zero_count(&basis, &coeffs).unwrap();
            prop_assert!(c.count < n, "{fam:?}: {} zeros with {n} terms", c.count);
        }
    }
}
